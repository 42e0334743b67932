#pragma once

// Random registries, values and CNL documents for property tests.

#include <string>
#include <vector>

#include "regspec/cnl.hpp"
#include "regspec/random.hpp"
#include "regspec/registry.hpp"
#include "regspec/value.hpp"

namespace regspec::testing {

struct RandomRegistry {
  Registry registry;
  std::vector<Keyword> names;  // in definition order; spec i only refers to specs < i
};

/// `count` specs mixing every combinator and several predicates. Keys
/// forms only list earlier names, so no cycles arise.
RandomRegistry random_registry(SplitMix64& rng, int count);

/// A value drawn from a small universe (ints, floats, strings, keywords,
/// vectors and maps keyed by `keys`) so that predicates both pass and fail.
Value random_value(SplitMix64& rng, const std::vector<Keyword>& keys, int depth = 2);

/// A valid CNL document (acyclic, unique names, at most one root).
cnl::Document random_document(SplitMix64& rng);

}  // namespace regspec::testing
