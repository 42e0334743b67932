#include "regspec/json_io.hpp"

#include <limits>

#include "regspec/error.hpp"

namespace regspec {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Keyword key_from_json(const std::string& key) {
  auto k = Keyword::try_parse("::" + key);
  if (!k) bad("map key '" + key + "' is not a keyword");
  return *k;
}

Keyword keyword_field(const Json& j, std::string_view ns, std::string_view what) {
  if (!j.is_string()) bad(std::string(what) + " must be a keyword string");
  auto k = Keyword::try_parse(j.get<std::string>(), ns);
  if (!k) bad(std::string(what) + " '" + j.get<std::string>() + "' is not a keyword");
  return *k;
}

std::vector<Keyword> keyword_list(const Json& node, const char* field, std::string_view ns) {
  std::vector<Keyword> out;
  if (!node.contains(field)) return out;
  const Json& list = node.at(field);
  if (!list.is_array()) bad(std::string(field) + " must be an array");
  for (const auto& item : list) out.push_back(keyword_field(item, ns, field));
  return out;
}

std::optional<std::uint64_t> count_field(const Json& node, const char* field) {
  if (!node.contains(field) || node.at(field).is_null()) return std::nullopt;
  const Json& v = node.at(field);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) bad(std::string(field) + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

const Json& required(const Json& node, const char* field) {
  if (!node.contains(field)) bad("spec node is missing \"" + std::string(field) + "\": " + node.dump());
  return node.at(field);
}

}  // namespace

Json to_json(const Value& value) {
  switch (value.kind()) {
    case Kind::Null: return nullptr;
    case Kind::Bool: return value.as_bool();
    case Kind::Int: return value.as_int();
    case Kind::Float: return value.as_float();
    case Kind::String: return value.as_string();
    case Kind::Keyword: return ":" + value.as_keyword().qualified();
    case Kind::Vector: {
      Json arr = Json::array();
      for (const auto& item : value.as_vector()) arr.push_back(to_json(item));
      return arr;
    }
    case Kind::Map: {
      Json obj = Json::object();
      for (const auto& [k, item] : value.as_map()) obj[k.qualified()] = to_json(item);
      return obj;
    }
  }
  return nullptr;
}

Value value_from_json(const Json& json) {
  switch (json.type()) {
    case Json::value_t::null: return Value();
    case Json::value_t::boolean: return Value(json.get<bool>());
    case Json::value_t::number_integer: return Value(json.get<std::int64_t>());
    case Json::value_t::number_unsigned: {
      auto u = json.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        return Value(static_cast<double>(u));
      return Value(static_cast<std::int64_t>(u));
    }
    case Json::value_t::number_float: return Value(json.get<double>());
    case Json::value_t::string: {
      const auto& s = json.get_ref<const std::string&>();
      if (!s.empty() && s.front() == ':') {
        auto k = Keyword::try_parse(":" + s, {});
        if (!k) bad("'" + s + "' is not a keyword");
        return Value(*k);
      }
      return Value(s);
    }
    case Json::value_t::array: {
      Vector out;
      out.reserve(json.size());
      for (const auto& item : json) out.push_back(value_from_json(item));
      return Value(std::move(out));
    }
    case Json::value_t::object: {
      Map out;
      for (const auto& [k, item] : json.items()) out.emplace(key_from_json(k), value_from_json(item));
      return Value(std::move(out));
    }
    default: bad("unsupported JSON value");
  }
}

Value parse_value(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  return value_from_json(j);
}

std::string dump_value(const Value& value) { return to_json(value).dump(); }

Json to_json(const PathStep& step) {
  if (const auto* k = std::get_if<Keyword>(&step)) return k->qualified();
  return std::get<std::size_t>(step);
}

Json to_json(const Path& path) {
  Json arr = Json::array();
  for (const auto& s : path) arr.push_back(to_json(s));
  return arr;
}

Json to_json(const Problem& p) {
  Json via = Json::array();
  for (const auto& k : p.via) via.push_back(k.str());
  return Json{{"in", to_json(p.in)}, {"via", via}, {"pred", p.pred}, {"val", to_json(p.val)}};
}

SpecPtr form_from_json(const Json& node, std::string_view ns) {
  if (node.is_string()) return spec::ref(keyword_field(node, ns, "spec reference"));
  if (!node.is_object()) bad("spec node must be an object or a \"::name\" reference: " + node.dump());
  const Json& opj = required(node, "op");
  if (!opj.is_string()) bad("\"op\" must be a string");
  const std::string op = opj.get<std::string>();

  auto params = [&]() { return node.contains("params") ? value_from_json(node.at("params")) : Value(); };

  if (op == "pred") {
    const Json& name = required(node, "name");
    if (!name.is_string()) bad("pred \"name\" must be a string");
    return spec::pred(name.get<std::string>(), params());
  }
  if (op == "one-of") {
    const Json& values = required(node, "values");
    if (!values.is_array()) bad("one-of \"values\" must be an array");
    return spec::one_of(value_from_json(values).as_vector());
  }
  if (op == "ref") return spec::ref(keyword_field(required(node, "target"), ns, "ref target"));
  if (op == "or") {
    const Json& branches = required(node, "branches");
    if (!branches.is_array()) bad("or \"branches\" must be an array");
    std::vector<OrBranch> out;
    for (const auto& b : branches) {
      if (!b.is_array() || b.size() != 2) bad("or branch must be [\"::tag\", spec]");
      out.push_back({keyword_field(b[0], ns, "or tag"), form_from_json(b[1], ns)});
    }
    return spec::or_(std::move(out));
  }
  if (op == "and") {
    const Json& children = required(node, "children");
    if (!children.is_array()) bad("and \"children\" must be an array");
    std::vector<SpecPtr> out;
    for (const auto& c : children) out.push_back(form_from_json(c, ns));
    return spec::and_(std::move(out));
  }
  if (op == "keys") return spec::keys(keyword_list(node, "required", ns), keyword_list(node, "optional", ns));
  if (op == "coll-of")
    return spec::coll_of(form_from_json(required(node, "child"), ns), count_field(node, "min-count"),
                         count_field(node, "max-count"));
  if (op == "with-gen") {
    const Json& gen = required(node, "generator");
    if (!gen.is_string()) bad("with-gen \"generator\" must be a string");
    return spec::with_gen(form_from_json(required(node, "child"), ns), gen.get<std::string>(), params());
  }
  bad("unknown spec op '" + op + "'");
}

Json to_json(const SpecForm& form) {
  switch (form.kind()) {
    case FormKind::Pred: {
      const auto& p = form.as<PredNode>();
      if (p.predicate == "one-of" && p.params.is_vector())
        return Json{{"op", "one-of"}, {"values", to_json(p.params)}};
      Json j{{"op", "pred"}, {"name", p.predicate}};
      if (!p.params.is_null()) j["params"] = to_json(p.params);
      return j;
    }
    case FormKind::Ref: return form.as<RefNode>().target.str();
    case FormKind::Or: {
      Json branches = Json::array();
      for (const auto& b : form.as<OrNode>().branches) branches.push_back(Json::array({b.tag.str(), to_json(*b.child)}));
      return Json{{"op", "or"}, {"branches", branches}};
    }
    case FormKind::And: {
      Json children = Json::array();
      for (const auto& c : form.as<AndNode>().children) children.push_back(to_json(*c));
      return Json{{"op", "and"}, {"children", children}};
    }
    case FormKind::Keys: {
      const auto& k = form.as<KeysNode>();
      Json req = Json::array(), opt = Json::array();
      for (const auto& key : k.required) req.push_back(key.str());
      for (const auto& key : k.optional) opt.push_back(key.str());
      Json j{{"op", "keys"}, {"required", req}};
      if (!opt.empty()) j["optional"] = opt;
      return j;
    }
    case FormKind::CollOf: {
      const auto& c = form.as<CollOfNode>();
      Json j{{"op", "coll-of"}, {"child", to_json(*c.child)}};
      if (c.min_count) j["min-count"] = *c.min_count;
      if (c.max_count) j["max-count"] = *c.max_count;
      return j;
    }
    case FormKind::WithGen: {
      const auto& w = form.as<WithGenNode>();
      Json j{{"op", "with-gen"}, {"child", to_json(*w.child)}, {"generator", w.generator}};
      if (!w.params.is_null()) j["params"] = to_json(w.params);
      return j;
    }
  }
  return nullptr;
}

}  // namespace regspec
