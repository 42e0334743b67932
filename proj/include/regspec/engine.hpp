#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "regspec/keyword.hpp"
#include "regspec/predicates.hpp"
#include "regspec/registry.hpp"
#include "regspec/value.hpp"

namespace regspec {

/// One step into a value: a map key or a vector index.
using PathStep = std::variant<Keyword, std::size_t>;
using Path = std::vector<PathStep>;

/// Why (part of) a value failed a contract.
struct Problem {
  /// Where the offending sub-value sits, relative to the validated root.
  Path in;
  /// Registered specs traversed to reach the failing check, outermost first.
  std::vector<Keyword> via;
  std::string pred;
  Value val;

  friend bool operator==(const Problem&, const Problem&) = default;
};

std::string path_to_string(const Path& path);

/// Follows `path` from `root`; nullptr when a step does not exist.
const Value* value_at(const Value& root, const Path& path);

/// Either the conformed tree (each matched or contributes `[tag, child]`) or
/// a non-empty list of problems.
class ConformResult {
 public:
  static ConformResult conformed(Value tree) { return ConformResult(std::move(tree)); }
  static ConformResult invalid(std::vector<Problem> problems) {
    return ConformResult(std::move(problems));
  }

  bool ok() const noexcept { return data_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  const Value& value() const { return std::get<Value>(data_); }
  const std::vector<Problem>& problems() const { return std::get<std::vector<Problem>>(data_); }

 private:
  explicit ConformResult(Value v) : data_(std::move(v)) {}
  explicit ConformResult(std::vector<Problem> p) : data_(std::move(p)) {}
  std::variant<Value, std::vector<Problem>> data_;
};

// The operations below throw UnknownSpec for names that are not registered
// (including map keys whose spec is missing) and UnknownPredicate for pred
// nodes naming no predicate in `lib`.

bool validate(const Registry& registry, const Keyword& name, const Value& value,
              const PredicateLib& lib = PredicateLib::standard());

ConformResult conform(const Registry& registry, const Keyword& name, const Value& value,
                      const PredicateLib& lib = PredicateLib::standard());

/// Empty iff `validate` holds. An and reports only its first failing
/// conjunct; an or that fails reports every branch.
std::vector<Problem> explain(const Registry& registry, const Keyword& name, const Value& value,
                             const PredicateLib& lib = PredicateLib::standard());

/// Inverse of conform: strips the or tags from a conformed tree.
Value unform(const Registry& registry, const Keyword& name, const Value& conformed);

/// Inline-form variants, for anonymous specs.
bool validate_form(const Registry& registry, const SpecForm& form, const Value& value,
                   const PredicateLib& lib = PredicateLib::standard());
std::vector<Problem> explain_form(const Registry& registry, const SpecForm& form, const Value& value,
                                  const PredicateLib& lib = PredicateLib::standard());

}  // namespace regspec
