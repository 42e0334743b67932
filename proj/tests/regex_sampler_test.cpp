#include <doctest.h>

#include <regex>
#include <set>

#include "regspec/error.hpp"
#include "regspec/regex_sampler.hpp"

using namespace regspec;

TEST_CASE("samples match their pattern under std::regex") {
  const char* patterns[] = {
      "[A-Z]{2}[A-Z0-9]{9}[0-9]",
      "[0-9]{4}-[0-9]{2}",
      "a|bc|def",
      "(ab)+c?",
      "x*y{2,}z{1,3}",
      "[^a-z]{3}",
      "\\d\\w\\s\\.",
      "(?:foo|ba[rz])-[\\-_.]",
      "^abc$",
      ".{5}",
      "",
  };
  SplitMix64 rng(5);
  for (const char* p : patterns) {
    std::regex re(p);
    std::set<std::string> seen;
    for (int i = 0; i < 300; ++i) {
      std::string s = sample_regex(p, rng, 10);
      INFO(p, " -> ", s);
      CHECK(std::regex_match(s, re));
      seen.insert(s);
    }
    if (std::string(p).size() > 5) CHECK(seen.size() > 1);
  }
}

TEST_CASE("unbounded repetition is capped by size") {
  SplitMix64 rng(1);
  for (int i = 0; i < 200; ++i) CHECK(sample_regex("a*", rng, 3).size() <= 3);
}

TEST_CASE("unsupported constructs raise NoGenerator") {
  SplitMix64 rng(1);
  for (const char* p : {"(?=a)b", "(a)\\1", "[a-", "(ab", "a{2,1}"}) {
    INFO(p);
    try {
      (void)sample_regex(p, rng, 5);
      FAIL("expected NoGenerator");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoGenerator);
    }
  }
}
