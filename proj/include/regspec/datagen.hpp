#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "regspec/keyword.hpp"
#include "regspec/predicates.hpp"
#include "regspec/random.hpp"
#include "regspec/registry.hpp"
#include "regspec/value.hpp"

namespace regspec {

struct GenContext {
  std::uint64_t seed = 0;
  /// Upper bound for unbounded collection lengths and string sizes.
  std::uint32_t size = 30;
  /// Attempts for and-filters, with-gen and predicate generators.
  std::uint32_t max_retries = 100;
  /// Maximum nesting of spec references (refs and map-key lookups).
  std::uint32_t max_depth = 16;
  /// Probability of including each optional map key.
  double optional_key_probability = 0.5;
};

/// Handed to generator functions: the deterministic random stream plus the
/// active context.
class GenState {
 public:
  GenState(SplitMix64 rng, const GenContext& ctx) : rng_(rng), ctx_(ctx) {}
  SplitMix64& rng() { return rng_; }
  const GenContext& ctx() const { return ctx_; }

 private:
  SplitMix64 rng_;
  const GenContext& ctx_;
};

struct GeneratorDef {
  std::string name;
  std::function<Value(const Value& params, GenState& state)> produce;
};

class GeneratorLib {
 public:
  GeneratorLib();

  /// Generators for every built-in predicate (same names as the predicates,
  /// plus `regex-sampler` for string-regex) and `lei` for lei-checksum.
  static const GeneratorLib& standard();

  /// Throws DuplicateGenerator when the name is taken.
  [[nodiscard]] GeneratorLib with(GeneratorDef def) const;
  const GeneratorDef* find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  using Defs = std::map<std::string, GeneratorDef, std::less<>>;
  explicit GeneratorLib(std::shared_ptr<const Defs> defs) : defs_(std::move(defs)) {}
  std::shared_ptr<const Defs> defs_;
};

/// A random value satisfying `name`, fully determined by (registry, libs,
/// ctx). Throws NoGenerator, RetryExhausted, DepthExceeded, UnknownSpec or
/// UnknownPredicate; never returns an invalid value.
Value generate(const Registry& registry, const Keyword& name, const GenContext& ctx,
               const PredicateLib& preds = PredicateLib::standard(),
               const GeneratorLib& gens = GeneratorLib::standard());

/// `count` independent generations; element i uses the i-th sub-seed drawn
/// from a SplitMix64 stream seeded with ctx.seed.
std::vector<Value> sample(const Registry& registry, const Keyword& name, std::size_t count,
                          const GenContext& ctx,
                          const PredicateLib& preds = PredicateLib::standard(),
                          const GeneratorLib& gens = GeneratorLib::standard());

/// True when every predicate reachable from `name` has a generator, either
/// by default or through an enclosing with-gen.
bool generatable(const Registry& registry, const Keyword& name,
                 const PredicateLib& preds = PredicateLib::standard(),
                 const GeneratorLib& gens = GeneratorLib::standard());

}  // namespace regspec
