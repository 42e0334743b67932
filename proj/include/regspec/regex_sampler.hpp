#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "regspec/random.hpp"

namespace regspec {

/// Produces a random string that fully matches `pattern`.
///
/// Supports the ECMAScript subset used by reporting rulesets: literals,
/// escapes (\d \w \s and escaped punctuation), `.`, bracket classes with
/// ranges and negation, groups (capturing and `(?:`), alternation, and the
/// quantifiers ? * + {n} {n,} {n,m}. Unbounded repetition adds at most
/// min(size, 8) extra repeats. Leading `^` / trailing `$` are ignored.
/// Throws Error(NoGenerator) for anything else (lookaround, backreferences).
std::string sample_regex(std::string_view pattern, SplitMix64& rng, std::size_t size);

}  // namespace regspec
