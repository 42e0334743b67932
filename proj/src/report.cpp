#include "regspec/report.hpp"

namespace regspec {
namespace {

Json names(const std::vector<Keyword>& ks) {
  Json arr = Json::array();
  for (const auto& k : ks) arr.push_back(k.str());
  return arr;
}

}  // namespace

Json to_json(const cnl::Element& e, std::string_view ns) {
  Json j{{"name", e.name.str()},
         {"kind", std::string(e.kind_name())},
         {"children", names(e.children)},
         {"is-root", e.is_root},
         {"line", e.line},
         {"sentence", cnl::render_sentence(e, ns)}};
  j["source"] = e.source ? Json(*e.source) : Json(nullptr);
  return j;
}

Json to_json(const cnl::Document& doc) {
  Json elements = Json::array();
  const std::string ns = doc.ns.value_or("");
  for (const auto& e : doc.elements) elements.push_back(to_json(e, ns));
  return Json{{"namespace", doc.ns ? Json(*doc.ns) : Json(nullptr)},
              {"root", doc.root ? Json(doc.root->str()) : Json(nullptr)},
              {"elements", elements}};
}

Json to_json(const cnl::Finding& f) {
  Json j{{"kind", std::string(cnl::to_string(f.kind))},
         {"severity", std::string(cnl::to_string(f.severity))},
         {"name", f.name.str()},
         {"line", f.line},
         {"message", f.message}};
  if (f.kind == cnl::FindingKind::CombinatorMismatch) {
    j["cnl-kind"] = f.cnl_kind;
    j["registry-kind"] = f.registry_kind;
  }
  if (f.kind == cnl::FindingKind::ChildrenMismatch || f.kind == cnl::FindingKind::RootMismatch) {
    j["expected"] = names(f.expected);
    j["actual"] = names(f.actual);
  }
  return j;
}

Json to_json(const cnl::Trace& t) {
  return Json{{"problem", to_json(t.problem)},
              {"element", t.element ? Json(t.element->str()) : Json(nullptr)},
              {"sentence", t.sentence},
              {"source", t.source ? Json(*t.source) : Json(nullptr)},
              {"below-granularity", t.below_granularity}};
}

Json to_json(const cnl::ParseError& e) {
  return Json{{"kind", std::string(to_string(e.code()))},
              {"line", e.line()},
              {"expected", e.expected()},
              {"message", e.what()}};
}

Json problems_to_json(const std::vector<Problem>& problems) {
  Json arr = Json::array();
  for (const auto& p : problems) arr.push_back(to_json(p));
  return arr;
}

Json findings_to_json(const std::vector<cnl::Finding>& findings) {
  Json arr = Json::array();
  for (const auto& f : findings) arr.push_back(to_json(f));
  return arr;
}

Json traces_to_json(const std::vector<cnl::Trace>& traces) {
  Json arr = Json::array();
  for (const auto& t : traces) arr.push_back(to_json(t));
  return arr;
}

}  // namespace regspec
