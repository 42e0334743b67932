#include <doctest.h>

#include <cmath>
#include <limits>

#include "regspec/error.hpp"
#include "regspec/json_io.hpp"
#include "regspec/keyword.hpp"
#include "regspec/random.hpp"
#include "regspec/value.hpp"
#include "support/random_specs.hpp"

using namespace regspec;

TEST_CASE("keyword parsing and canonical text") {
  auto a = Keyword::parse("::mmsr/trade-date");
  CHECK(a.ns() == "mmsr");
  CHECK(a.name() == "trade-date");
  CHECK(a.str() == "::mmsr/trade-date");
  CHECK(a.qualified() == "mmsr/trade-date");

  auto b = Keyword::parse("::trade-date", "mmsr");
  CHECK(a == b);
  CHECK(b.str_relative("mmsr") == "::trade-date");
  CHECK(b.str_relative("other") == "::mmsr/trade-date");

  CHECK(Keyword::parse("::eu.ecb/x_1").ns() == "eu.ecb");
  CHECK(Keyword::parse("::veg").ns().empty());

  for (const char* bad : {"trade-date", ":x", "::", "::1abc", "::a/b.c", "::/x", "::a/", "::a b", "::.a/b"})
    CHECK_FALSE(Keyword::try_parse(bad).has_value());
  CHECK_THROWS_AS(Keyword::parse("nope"), Error);
  CHECK_THROWS_AS(Keyword("ns", ""), Error);
}

TEST_CASE("value equality is structural with distinct int and float") {
  CHECK(Value(1) == Value(1));
  CHECK_FALSE(Value(1) == Value(1.0));
  CHECK(Value(0.5) == Value(0.5));
  CHECK_FALSE(Value(0.0) == Value(-0.0));  // bitwise
  double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(Value(nan) == Value(nan));
  CHECK(Value::vec({1, "a"}) == Value::vec({1, "a"}));
  CHECK_FALSE(Value::vec({1, "a"}) == Value::vec({"a", 1}));

  Map m1, m2;
  m1[Keyword("", "a")] = 1;
  m1[Keyword("", "b")] = 2;
  m2[Keyword("", "b")] = 2;
  m2[Keyword("", "a")] = 1;
  CHECK(Value(m1) == Value(m2));
  CHECK(Value(m1).find(Keyword("", "a"))->as_int() == 1);
  CHECK(Value(m1).find(Keyword("", "z")) == nullptr);
}

TEST_CASE("display notation") {
  CHECK(to_display(Value::vec({Value(Keyword("", "veg")), "carrot"})) == "[:veg \"carrot\"]");
  CHECK(to_display(Value()) == "nil");
}

TEST_CASE("JSON interchange keeps keywords, ints and floats apart") {
  Value v = parse_value(R"({"mmsr/trade-date": "2017-04-10", "n": 3, "f": 3.0, "tag": ":veg", "xs": [null, true]})");
  CHECK(v.find(Keyword("mmsr", "trade-date"))->as_string() == "2017-04-10");
  CHECK(v.find(Keyword("", "n"))->is_int());
  CHECK(v.find(Keyword("", "f"))->is_float());
  CHECK(v.find(Keyword("", "tag"))->as_keyword() == Keyword("", "veg"));
  CHECK(dump_value(Value(Keyword("mmsr", "x"))) == "\":mmsr/x\"");

  CHECK_THROWS_AS(parse_value("{\"not a key\": 1}"), Error);
  CHECK_THROWS_AS(parse_value("\":1bad\""), Error);
  CHECK_THROWS_AS(parse_value("{"), Error);
}

TEST_CASE("property: JSON round trip preserves values") {
  SplitMix64 rng(7);
  std::vector<Keyword> keys = {Keyword("mmsr", "a"), Keyword("", "b"), Keyword("x.y", "c")};
  for (int i = 0; i < 500; ++i) {
    Value v = testing::random_value(rng, keys, 3);
    INFO(to_display(v));
    CHECK(parse_value(dump_value(v)) == v);
  }
}
