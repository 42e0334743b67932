#pragma once

#include <filesystem>

#include "regspec/registry.hpp"
#include "regspec/ruleset.hpp"

namespace regspec::testing {

inline std::filesystem::path data_dir() { return REGSPEC_DATA_DIR; }

inline const Ruleset& mmsr_bundle() {
  static const Ruleset rs = load_ruleset(data_dir() / "mmsr.json");
  return rs;
}

inline Keyword k(const char* name) { return Keyword("", name); }

/// ::fruit, ::veg and ::fruit-or-veg as registered in the classic
/// fruit/vegetable walkthrough.
inline Registry produce_registry() {
  Registry r;
  r = r.define(k("fruit"), spec::one_of({"apple", "pear", "cherry"}));
  r = r.define(k("veg"), spec::one_of({"carrot", "cucumber"}));
  r = r.define(k("fruit-or-veg"), spec::or_({{k("fruit"), spec::ref(k("fruit"))}, {k("veg"), spec::ref(k("veg"))}}));
  return r;
}

}  // namespace regspec::testing
