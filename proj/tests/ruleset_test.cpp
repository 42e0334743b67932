#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "regspec/engine.hpp"
#include "regspec/error.hpp"
#include "regspec/json_io.hpp"
#include "regspec/report.hpp"
#include "regspec/ruleset.hpp"
#include "support/fixtures.hpp"

using namespace regspec;
namespace fs = std::filesystem;

namespace {

ErrorCode load_error(const std::string& text) {
  try {
    (void)parse_ruleset(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << text);
  return ErrorCode::ParseError;
}

Value message_with(const char* key, Value v) {
  Map m = mmsr::canonical_example().as_map();
  m[mmsr::kw(key)] = std::move(v);
  return Value(m);
}

}  // namespace

TEST_CASE("the mmsr bundle loads") {
  const auto& rs = testing::mmsr_bundle();
  CHECK(rs.ns == "mmsr");
  CHECK(rs.root == mmsr::kw("report-file"));
  CHECK(rs.registry.size() == 13);
  CHECK(rs.registry.unresolved().empty());
  CHECK(rs.registry.entry(mmsr::kw("trade-date")).meta.source_text.has_value());
  auto used = predicates_used(rs.registry);
  CHECK(std::find(used.begin(), used.end(), "string-regex") != used.end());

  // Serialising and re-reading gives the same registry.
  auto again = parse_ruleset(ruleset_to_json(rs).dump());
  CHECK(again.root == rs.root);
  for (const auto& [name, entry] : rs.registry.entries()) {
    CHECK(equal(again.registry.resolve(name), entry.form));
    CHECK(again.registry.entry(name).meta == entry.meta);
  }
}

TEST_CASE("the canonical example is valid") {
  const auto& rs = testing::mmsr_bundle();
  Value msg = mmsr::canonical_example();
  CHECK(validate(rs.registry, mmsr::kw("secured-report"), msg));
  CHECK(validate(rs.registry, rs.root, Value::vec({msg, msg})));
  CHECK_FALSE(validate(rs.registry, rs.root, Value::vec({})));  // min-count 1
  CHECK(parse_value(read_file(testing::data_dir() / "example-message.json")) == msg);
}

TEST_CASE("trade dates conform to the form they match") {
  const auto& rs = testing::mmsr_bundle();
  auto tag_of = [&](const char* s) {
    auto c = conform(rs.registry, mmsr::kw("trade-date"), s);
    REQUIRE(c.ok());
    return c.value().as_vector()[0].as_keyword();
  };
  CHECK(tag_of("2017-04-10") == mmsr::kw("valid-date"));
  CHECK(tag_of("2017-04-10T09:30:00+01:00") == mmsr::kw("valid-date-time-no-ms"));
  CHECK(tag_of("2017-04-10T09:30:00.000+01:00") == mmsr::kw("valid-date-time-ms"));
}

TEST_CASE("message-level rules") {
  const auto& rs = testing::mmsr_bundle();
  auto ok = [&](const Value& v) { return validate(rs.registry, mmsr::kw("secured-report"), v); };
  CHECK(ok(message_with("transaction-type", "LEND")));
  CHECK_FALSE(ok(message_with("transaction-type", "lend")));
  CHECK_FALSE(ok(message_with("transaction-nominal-amount", 0.0)));
  CHECK(ok(message_with("transaction-nominal-amount", 1)));
  CHECK(ok(message_with("deal-rate", 2)));
  CHECK_FALSE(ok(message_with("deal-rate", "2")));
  CHECK_FALSE(ok(message_with("counterparty-lei", "5493000IBP32UQZ0KL2X")));
  CHECK_FALSE(ok(message_with("collateral-isin", "de0001102341")));
  CHECK_FALSE(ok(message_with("maturity-date", "2017-04-11T00:00:00+01:00")));
}

TEST_CASE("bundled invalid messages explain exactly as recorded") {
  const auto& rs = testing::mmsr_bundle();
  int n = 0;
  for (const auto& entry : fs::directory_iterator(testing::data_dir() / "invalid-messages")) {
    auto p = entry.path();
    if (p.extension() != ".json" || p.stem().extension() == ".expected") continue;
    ++n;
    INFO(p.filename().string());
    Value msg = parse_value(read_file(p));
    auto expected = Json::parse(read_file(p.parent_path() / (p.stem().string() + ".expected.json")));
    auto problems = explain(rs.registry, mmsr::kw("secured-report"), msg);
    CHECK_FALSE(problems.empty());
    CHECK(problems_to_json(problems) == expected);
  }
  CHECK(n == 6);
}

TEST_CASE("ruleset loading errors") {
  CHECK(load_error("{") == ErrorCode::ParseError);
  CHECK(load_error(R"({"namespace": "x", "root": "::a", "specs": {"::a": {"op": "pred", "name": "nope"}}})") ==
        ErrorCode::UnknownPredicate);
  CHECK(load_error(R"({"namespace": "x", "root": "::a", "specs": {"::a": "::b"}})") == ErrorCode::UnknownSpec);
  CHECK(load_error(R"({"namespace": "x", "root": "::z", "specs": {"::a": {"op": "pred", "name": "even"}}})") ==
        ErrorCode::UnknownSpec);
  CHECK(load_error(R"({"namespace": "x", "root": "::a", "specs": {"::a": "::b", "::b": "::a"}})") ==
        ErrorCode::CyclicDefinition);
  CHECK(load_error(R"({"namespace": "x", "root": "::a", "specs": {"::a": {"op": "or", "branches": []}}})") ==
        ErrorCode::MalformedSpec);
  CHECK(load_error(R"({"namespace": "x", "root": "::a", "specs": {"::a": {"op": "zip"}}})") == ErrorCode::ParseError);
}
