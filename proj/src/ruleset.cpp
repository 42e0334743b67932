#include "regspec/ruleset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "regspec/error.hpp"

namespace regspec {
namespace {

void collect_preds(const SpecForm& form, std::set<std::string>& out) {
  switch (form.kind()) {
    case FormKind::Pred: out.insert(form.as<PredNode>().predicate); break;
    case FormKind::Or:
      for (const auto& b : form.as<OrNode>().branches) collect_preds(*b.child, out);
      break;
    case FormKind::And:
      for (const auto& c : form.as<AndNode>().children) collect_preds(*c, out);
      break;
    case FormKind::CollOf: collect_preds(*form.as<CollOfNode>().child, out); break;
    case FormKind::WithGen: collect_preds(*form.as<WithGenNode>().child, out); break;
    default: break;
  }
}

}  // namespace

std::vector<std::string> predicates_used(const Registry& registry) {
  std::set<std::string> names;
  for (const auto& [_, e] : registry.entries()) collect_preds(*e.form, names);
  return {names.begin(), names.end()};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Ruleset parse_ruleset(std::string_view json_text, const PredicateLib& lib) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("ruleset is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "ruleset must be a JSON object");

  Ruleset rs;
  if (doc.contains("namespace")) {
    if (!doc["namespace"].is_string() || !Keyword::valid_namespace(doc["namespace"].get<std::string>()))
      throw Error(ErrorCode::ParseError, "ruleset \"namespace\" must be a namespace string");
    rs.ns = doc["namespace"].get<std::string>();
  }
  if (!doc.contains("specs") || !doc["specs"].is_object())
    throw Error(ErrorCode::ParseError, "ruleset needs a \"specs\" object");

  for (const auto& [name, node] : doc["specs"].items()) {
    auto key = Keyword::try_parse(name, rs.ns);
    if (!key) throw Error(ErrorCode::ParseError, "spec name '" + name + "' is not a keyword");
    SpecMeta meta;
    if (node.is_object()) {
      if (node.contains("source")) {
        if (!node["source"].is_string()) throw Error(ErrorCode::ParseError, "\"source\" must be a string");
        meta.source_text = node["source"].get<std::string>();
      }
      if (node.contains("opaque")) meta.opaque = node["opaque"].is_boolean() && node["opaque"].get<bool>();
    }
    rs.registry = rs.registry.define(*key, form_from_json(node, rs.ns), std::move(meta));
  }

  for (const auto& p : predicates_used(rs.registry))
    if (!lib.contains(p)) throw Error(ErrorCode::UnknownPredicate, "ruleset uses unknown predicate '" + p + "'");
  if (auto missing = rs.registry.unresolved(); !missing.empty())
    throw Error(ErrorCode::UnknownSpec, "ruleset refers to unregistered spec " + missing.front().str());

  if (!doc.contains("root") || !doc["root"].is_string())
    throw Error(ErrorCode::ParseError, "ruleset needs a \"root\" keyword");
  auto root = Keyword::try_parse(doc["root"].get<std::string>(), rs.ns);
  if (!root) throw Error(ErrorCode::ParseError, "root is not a keyword");
  if (!rs.registry.contains(*root)) throw Error(ErrorCode::UnknownSpec, "root " + root->str() + " is not registered");
  rs.root = *root;
  return rs;
}

Ruleset load_ruleset(const std::filesystem::path& path, const PredicateLib& lib) {
  return parse_ruleset(read_file(path), lib);
}

Json ruleset_to_json(const Ruleset& rs) {
  Json specs = Json::object();
  for (const auto& [name, entry] : rs.registry.entries()) {
    Json node = to_json(*entry.form);
    if (entry.meta.source_text || entry.meta.opaque) {
      if (!node.is_object()) node = Json{{"op", "ref"}, {"target", node}};
      if (entry.meta.source_text) node["source"] = *entry.meta.source_text;
      if (entry.meta.opaque) node["opaque"] = true;
    }
    specs[name.str()] = node;
  }
  return Json{{"namespace", rs.ns}, {"root", rs.root.str()}, {"specs", specs}};
}

namespace mmsr {

Value canonical_example() {
  Map m;
  m[kw("trade-date")] = "2017-04-10T09:30:00.000+01:00";
  m[kw("settlement-date")] = "2017-04-10";
  m[kw("maturity-date")] = "2017-04-11";
  m[kw("transaction-type")] = "BORR";
  m[kw("transaction-nominal-amount")] = 15000000.0;
  m[kw("deal-rate")] = -0.35;
  m[kw("counterparty-lei")] = "5493000IBP32UQZ0KL24";
  m[kw("collateral-isin")] = "DE0001102341";
  return Value(std::move(m));
}

}  // namespace mmsr
}  // namespace regspec
