#include <doctest.h>

#include <algorithm>

#include "regspec/cnl.hpp"
#include "regspec/engine.hpp"
#include "regspec/error.hpp"
#include "regspec/ruleset.hpp"
#include "support/fixtures.hpp"
#include "support/random_specs.hpp"

using namespace regspec;
using regspec::testing::k;

namespace {

const char* kTradeDateListing =
    "The contract ::mmsr/valid-date-time-ms must hold.\n"
    "The contract ::mmsr/valid-date-time-no-ms must hold.\n"
    "The contract ::mmsr/valid-date must hold.\n"
    "The contract ::mmsr/trade-date holds, if at least one of the contracts ::mmsr/valid-date-time-ms, "
    "::mmsr/valid-date-time-no-ms, ::mmsr/valid-date holds.\n";

cnl::ParseError parse_error(const std::string& text) {
  try {
    (void)cnl::parse(text);
  } catch (const cnl::ParseError& e) {
    return e;
  }
  FAIL("no parse error for: " << text);
  return cnl::ParseError(ErrorCode::SyntaxError, 0, "", "");
}

cnl::Document mmsr_doc() { return cnl::parse(read_file(testing::data_dir() / "mmsr.cnl")); }

}  // namespace

TEST_CASE("parses the trade date listing") {
  auto doc = cnl::parse(kTradeDateListing);
  REQUIRE(doc.elements.size() == 4);
  for (int i = 0; i < 3; ++i) CHECK(doc.elements[i].atomic());
  const auto& td = doc.elements[3];
  CHECK(td.name == mmsr::kw("trade-date"));
  CHECK(td.combinator == cnl::Combinator::Or);
  CHECK(td.children ==
        std::vector<Keyword>{mmsr::kw("valid-date-time-ms"), mmsr::kw("valid-date-time-no-ms"), mmsr::kw("valid-date")});
  CHECK(td.line == 4);
  CHECK_FALSE(doc.root.has_value());
}

TEST_CASE("every sentence template parses and renders back") {
  const char* text =
      "namespace: x\n"
      "\n"
      "The contract ::a must hold.\n"
      "source: \"says \\\"hi\\\"\\nthen \\\\ end\"\n"
      "The contract ::b holds, if all of the contracts ::a hold.\n"
      "The contract ::c holds, if for the keys and values of this map the contracts ::a, ::b, ::y/z hold.\n"
      "The contract ::d holds, if for the members of this collection the contract ::c holds.\n"
      "The root contract is ::d.\n";
  auto doc = cnl::parse(text);
  CHECK(doc.ns == std::optional<std::string>("x"));
  CHECK(doc.elements[0].source == std::optional<std::string>("says \"hi\"\nthen \\ end"));
  CHECK(doc.elements[2].children.back() == Keyword("y", "z"));
  CHECK(doc.elements[3].is_root);
  CHECK(doc.root == Keyword("x", "d"));
  CHECK(cnl::render(doc) == text);
}

TEST_CASE("comments, blank lines and surrounding whitespace are ignored") {
  auto doc = cnl::parse("# heading\n\n  The contract ::a must hold.  \r\n# more\n");
  REQUIRE(doc.elements.size() == 1);
  CHECK(doc.elements[0].line == 3);
}

TEST_CASE("syntax errors name the line and the template held against") {
  auto e = parse_error("namespace: mmsr\nThe contract ::a holds, if all of the contracts ::b holds.\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.line() == 2);
  CHECK(e.expected() == cnl::templates::kAnd);

  auto atomic = parse_error("The contract ::a must holds.");
  CHECK(atomic.expected() == cnl::templates::kAtomic);
  CHECK(parse_error("The contract ::a holds, if at least one of the contracts ::b hold.").expected() ==
        cnl::templates::kOr);
  CHECK(parse_error("The contract ::a holds, if for the members of this collection the contract ::b, ::c holds.")
            .expected() == cnl::templates::kCollOf);
  CHECK(parse_error("The contract a must hold.").code() == ErrorCode::SyntaxError);
  CHECK(parse_error("Contract ::a must hold.").code() == ErrorCode::SyntaxError);
  CHECK(parse_error("The contract ::a must hold.\nnamespace: x").code() == ErrorCode::SyntaxError);
  CHECK(parse_error("The contract ::a must hold.\nsource: \"unterminated").code() == ErrorCode::SyntaxError);

  CHECK(parse_error(read_file(testing::data_dir() / "malformed" / "bad-verb.cnl")).line() == 2);
}

TEST_CASE("document-level errors") {
  auto dup = parse_error("The contract ::a must hold.\nThe contract ::a must hold.");
  CHECK(dup.code() == ErrorCode::DuplicateName);
  CHECK(dup.line() == 2);

  auto dangling = parse_error("source: \"floating\"\nThe contract ::a must hold.");
  CHECK(dangling.code() == ErrorCode::DanglingSource);
  CHECK(dangling.line() == 1);

  CHECK(parse_error("The contract ::a must hold.\nThe root contract is ::a.\nThe root contract is ::a.").code() ==
        ErrorCode::MultipleRoots);
  CHECK(parse_error("The contract ::a must hold.\nThe root contract is ::b.").code() == ErrorCode::UnknownRoot);

  auto cyc = parse_error(
      "The contract ::a holds, if all of the contracts ::b hold.\n"
      "The contract ::b holds, if for the keys and values of this map the contracts ::a hold.");
  CHECK(cyc.code() == ErrorCode::CyclicReference);
  CHECK(cyc.names().size() >= 2);
}

TEST_CASE("render writes names relative to the namespace") {
  cnl::Element e;
  e.name = mmsr::kw("trade-date");
  e.combinator = cnl::Combinator::Or;
  e.children = {mmsr::kw("valid-date"), Keyword("other", "x")};
  CHECK(cnl::render_sentence(e, "mmsr") ==
        "The contract ::trade-date holds, if at least one of the contracts ::valid-date, ::other/x holds.");
  CHECK(cnl::render_sentence(e) ==
        "The contract ::mmsr/trade-date holds, if at least one of the contracts ::mmsr/valid-date, ::other/x holds.");
}

TEST_CASE("property: parse inverts render") {
  SplitMix64 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto doc = testing::random_document(rng);
    std::string text = cnl::render(doc);
    INFO(text);
    auto back = cnl::parse(text);
    CHECK(cnl::equivalent(back, doc));
    CHECK(cnl::render(back) == text);
  }
}

TEST_CASE("abstracting the mmsr ruleset") {
  const auto& rs = testing::mmsr_bundle();
  auto td = cnl::abstract(rs.registry, mmsr::kw("trade-date"));
  auto listing = cnl::parse(kTradeDateListing);
  REQUIRE(td.document.elements.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(td.document.elements[i].name == listing.elements[i].name);
    CHECK(td.document.elements[i].combinator == listing.elements[i].combinator);
    CHECK(td.document.elements[i].children == listing.elements[i].children);
  }

  auto full = cnl::abstract(rs.registry, rs.root);
  CHECK(full.document.elements.size() == 13);
  CHECK(full.document.elements.back().name == rs.root);
  CHECK(full.document.root == rs.root);
  CHECK(std::count(full.shared.begin(), full.shared.end(), mmsr::kw("valid-date")) == 1);
  CHECK(cnl::soundness_check(full.document, rs.registry, rs.root).empty());
  CHECK(cnl::equivalent(full.document, mmsr_doc()));
}

TEST_CASE("soundness findings") {
  const auto& rs = testing::mmsr_bundle();
  auto doc = mmsr_doc();
  CHECK(cnl::soundness_check(doc, rs.registry, rs.root).empty());

  SUBCASE("or swapped for and") {
    const auto& td = std::get<OrNode>(rs.registry.resolve(mmsr::kw("trade-date"))->node());
    std::vector<SpecPtr> kids;
    for (const auto& b : td.branches) kids.push_back(b.child);
    auto mutated = rs.registry.define(mmsr::kw("trade-date"), spec::and_(kids));
    auto fs = cnl::soundness_check(doc, mutated, rs.root);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].kind == cnl::FindingKind::CombinatorMismatch);
    CHECK(fs[0].name == mmsr::kw("trade-date"));
    CHECK(fs[0].cnl_kind == "Or");
    CHECK(fs[0].registry_kind == "And");
    CHECK(fs[0].line == doc.find(mmsr::kw("trade-date"))->line);
  }
  SUBCASE("spec deleted") {
    auto fs = cnl::soundness_check(doc, rs.registry.without(mmsr::kw("valid-date")), rs.root);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].kind == cnl::FindingKind::MissingSpec);
    CHECK(fs[0].name == mmsr::kw("valid-date"));
  }
  SUBCASE("or branches reordered") {
    auto mutated = rs.registry.define(
        mmsr::kw("trade-date"),
        spec::or_refs({mmsr::kw("valid-date"), mmsr::kw("valid-date-time-ms"), mmsr::kw("valid-date-time-no-ms")}));
    auto fs = cnl::soundness_check(doc, mutated, rs.root);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].kind == cnl::FindingKind::ChildrenMismatch);
  }
  SUBCASE("keys compare as sets") {
    for (auto& e : doc.elements)
      if (e.name == mmsr::kw("secured-report")) std::reverse(e.children.begin(), e.children.end());
    CHECK(cnl::soundness_check(doc, rs.registry, rs.root).empty());
  }
  SUBCASE("root and reachability") {
    auto fs = cnl::soundness_check(doc, rs.registry, mmsr::kw("secured-report"));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].kind == cnl::FindingKind::RootMismatch);

    auto extra = cnl::parse(std::string(kTradeDateListing) + "The contract ::mmsr/x must hold.\n" +
                            "The root contract is ::mmsr/trade-date.\n");
    auto reg = rs.registry.define(mmsr::kw("x"), spec::pred("even"));
    auto ws = cnl::soundness_check(extra, reg);
    REQUIRE(ws.size() == 1);
    CHECK(ws[0].kind == cnl::FindingKind::UnreachableElement);
    CHECK(ws[0].severity == cnl::Severity::Warning);
    CHECK_FALSE(cnl::has_errors(ws));
  }
  SUBCASE("atomic elements only claim existence") {
    auto atomic = cnl::parse("The contract ::mmsr/trade-date must hold.");
    CHECK(cnl::soundness_check(atomic, rs.registry).empty());
  }
}

TEST_CASE("traceback maps problems to sentences") {
  const auto& rs = testing::mmsr_bundle();
  auto doc = mmsr_doc();
  Value msg = mmsr::canonical_example();
  Map m = msg.as_map();
  m[mmsr::kw("trade-date")] = "10/04/2017";
  auto ps = explain(rs.registry, mmsr::kw("secured-report"), Value(m));
  REQUIRE(ps.size() == 3);
  auto ts = cnl::traceback(doc, ps);
  REQUIRE(ts.size() == 3);
  CHECK(ts[0].element == mmsr::kw("valid-date-time-ms"));
  CHECK(ts[0].sentence == "The contract ::valid-date-time-ms must hold.");
  CHECK(ts[0].source == std::optional<std::string>("YYYY-MM-DDThh:mm:ss.sss+/-hh:mm"));
  CHECK(ts[2].element == mmsr::kw("valid-date"));
  CHECK_FALSE(ts[0].below_granularity);

  auto coarse = cnl::parse("The contract ::mmsr/report-file must hold.\nThe root contract is ::mmsr/report-file.");
  auto cs = cnl::traceback(coarse, ps);
  CHECK(cs[0].below_granularity);
  CHECK(cs[0].element == mmsr::kw("report-file"));

  auto rootless = cnl::traceback(cnl::parse("The contract ::mmsr/a must hold."), ps);
  CHECK(rootless[0].below_granularity);
  CHECK_FALSE(rootless[0].element.has_value());
}
