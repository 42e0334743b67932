#pragma once

// Single-edit mutations of a registry, used to measure how many structural
// edits the CNL soundness check detects.

#include <string>
#include <vector>

#include "regspec/cnl.hpp"
#include "regspec/registry.hpp"

namespace regspec::testing {

struct Mutant {
  std::string description;
  Registry registry;
};

/// For every element the CNL document states as a compound: swap its
/// combinator (to each other combinator, to a bare ref and to a predicate
/// leaf), drop each child, and apply every non-identity reordering of
/// or/and children. For every registered name: delete it. Edits the CNL
/// cannot express (and/ref aliasing) are skipped.
std::vector<Mutant> single_edit_mutants(const Registry& registry, const cnl::Document& doc);

}  // namespace regspec::testing
