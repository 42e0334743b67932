#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "regspec/json_io.hpp"
#include "regspec/keyword.hpp"
#include "regspec/predicates.hpp"
#include "regspec/registry.hpp"
#include "regspec/value.hpp"

namespace regspec {

/// A loaded ruleset file:
///
///   {"namespace": "mmsr",
///    "root": "::mmsr/report-file",
///    "specs": {"::mmsr/trade-date": <spec node>, ...}}
///
/// A top-level spec node may also carry `"source"` (regulation text) and
/// `"opaque": true`.
struct Ruleset {
  std::string ns;
  Registry registry;
  Keyword root;
};

/// Throws ParseError (bad JSON or node), CyclicDefinition, MalformedSpec,
/// UnknownPredicate (pred not in `lib`) and UnknownSpec (root or any
/// reference left unresolved).
Ruleset parse_ruleset(std::string_view json_text, const PredicateLib& lib = PredicateLib::standard());
Ruleset load_ruleset(const std::filesystem::path& path, const PredicateLib& lib = PredicateLib::standard());

Json ruleset_to_json(const Ruleset& ruleset);

/// Every predicate name used anywhere in the registry.
std::vector<std::string> predicates_used(const Registry& registry);

std::string read_file(const std::filesystem::path& path);

namespace mmsr {

inline const std::string kNamespace = "mmsr";

inline Keyword kw(std::string name) { return Keyword(kNamespace, std::move(name)); }

/// A secured-segment message satisfying ::mmsr/secured-report whose trade
/// date uses the millisecond form.
Value canonical_example();

}  // namespace mmsr

}  // namespace regspec
