#include "regspec/engine.hpp"

#include <optional>
#include <sstream>

#include "regspec/error.hpp"

namespace regspec {

std::string path_to_string(const Path& path) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) os << ' ';
    if (const auto* k = std::get_if<Keyword>(&path[i])) os << ':' << k->qualified();
    else os << std::get<std::size_t>(path[i]);
  }
  os << ']';
  return os.str();
}

const Value* value_at(const Value& root, const Path& path) {
  const Value* cur = &root;
  for (const auto& step : path) {
    if (const auto* k = std::get_if<Keyword>(&step)) {
      cur = cur->find(*k);
    } else {
      std::size_t i = std::get<std::size_t>(step);
      if (!cur->is_vector() || i >= cur->as_vector().size()) return nullptr;
      cur = &cur->as_vector()[i];
    }
    if (!cur) return nullptr;
  }
  return cur;
}

namespace {

std::string count_text(const CollOfNode& c) {
  if (c.min_count && c.max_count)
    return std::to_string(*c.min_count) + " <= count <= " + std::to_string(*c.max_count);
  if (c.min_count) return "count >= " + std::to_string(*c.min_count);
  return "count <= " + std::to_string(*c.max_count);
}

bool count_ok(const CollOfNode& c, std::size_t n) {
  return !(c.min_count && n < *c.min_count) && !(c.max_count && n > *c.max_count);
}

class Walker {
 public:
  Walker(const Registry& r, const PredicateLib& l) : reg_(r), lib_(l) {}

  bool valid(const SpecForm& form, const Value& v) const {
    switch (form.kind()) {
      case FormKind::Pred: {
        const auto& p = form.as<PredNode>();
        return lib_.eval(p.predicate, p.params, v);
      }
      case FormKind::Ref: return valid(*reg_.resolve(form.as<RefNode>().target), v);
      case FormKind::Or:
        for (const auto& b : form.as<OrNode>().branches)
          if (valid(*b.child, v)) return true;
        return false;
      case FormKind::And:
        for (const auto& c : form.as<AndNode>().children)
          if (!valid(*c, v)) return false;
        return true;
      case FormKind::Keys: {
        if (!v.is_map()) return false;
        const auto& k = form.as<KeysNode>();
        for (const auto& key : k.required) {
          const Value* item = v.find(key);
          if (!item || !valid(*reg_.resolve(key), *item)) return false;
        }
        for (const auto& key : k.optional) {
          const Value* item = v.find(key);
          if (item && !valid(*reg_.resolve(key), *item)) return false;
        }
        return true;
      }
      case FormKind::CollOf: {
        if (!v.is_vector()) return false;
        const auto& c = form.as<CollOfNode>();
        const auto& items = v.as_vector();
        if (!count_ok(c, items.size())) return false;
        for (const auto& item : items)
          if (!valid(*c.child, item)) return false;
        return true;
      }
      case FormKind::WithGen: return valid(*form.as<WithGenNode>().child, v);
    }
    return false;
  }

  std::optional<Value> conform(const SpecForm& form, const Value& v) const {
    switch (form.kind()) {
      case FormKind::Pred:
      case FormKind::And:
        if (valid(form, v)) return v;
        return std::nullopt;
      case FormKind::Ref: return conform(*reg_.resolve(form.as<RefNode>().target), v);
      case FormKind::Or:
        for (const auto& b : form.as<OrNode>().branches)
          if (auto c = conform(*b.child, v)) return Value::vec({Value(b.tag), std::move(*c)});
        return std::nullopt;
      case FormKind::Keys: {
        if (!v.is_map()) return std::nullopt;
        const auto& k = form.as<KeysNode>();
        Map out = v.as_map();
        for (const auto& key : k.required) {
          auto it = out.find(key);
          if (it == out.end()) return std::nullopt;
          auto c = conform(*reg_.resolve(key), it->second);
          if (!c) return std::nullopt;
          it->second = std::move(*c);
        }
        for (const auto& key : k.optional) {
          auto it = out.find(key);
          if (it == out.end()) continue;
          auto c = conform(*reg_.resolve(key), it->second);
          if (!c) return std::nullopt;
          it->second = std::move(*c);
        }
        return Value(std::move(out));
      }
      case FormKind::CollOf: {
        if (!v.is_vector()) return std::nullopt;
        const auto& c = form.as<CollOfNode>();
        const auto& items = v.as_vector();
        if (!count_ok(c, items.size())) return std::nullopt;
        Vector out;
        out.reserve(items.size());
        for (const auto& item : items) {
          auto ci = conform(*c.child, item);
          if (!ci) return std::nullopt;
          out.push_back(std::move(*ci));
        }
        return Value(std::move(out));
      }
      case FormKind::WithGen: return conform(*form.as<WithGenNode>().child, v);
    }
    return std::nullopt;
  }

  void explain(const SpecForm& form, const Value& v, Path& in, std::vector<Keyword>& via,
               std::vector<Problem>& out) const {
    switch (form.kind()) {
      case FormKind::Pred: {
        const auto& p = form.as<PredNode>();
        if (!lib_.eval(p.predicate, p.params, v))
          out.push_back({in, via, lib_.describe(p.predicate, p.params), v});
        return;
      }
      case FormKind::Ref: {
        const Keyword& target = form.as<RefNode>().target;
        const SpecForm& resolved = *reg_.resolve(target);
        via.push_back(target);
        explain(resolved, v, in, via, out);
        via.pop_back();
        return;
      }
      case FormKind::Or: {
        const auto& branches = form.as<OrNode>().branches;
        for (const auto& b : branches)
          if (valid(*b.child, v)) return;
        for (const auto& b : branches) explain(*b.child, v, in, via, out);
        return;
      }
      case FormKind::And:
        for (const auto& c : form.as<AndNode>().children) {
          if (!valid(*c, v)) {
            explain(*c, v, in, via, out);
            return;
          }
        }
        return;
      case FormKind::Keys: {
        if (!v.is_map()) {
          out.push_back({in, via, "map?", v});
          return;
        }
        const auto& k = form.as<KeysNode>();
        for (const auto& key : k.required)
          if (!v.find(key)) out.push_back({in, via, "contains key " + key.str(), v});
        auto check = [&](const Keyword& key) {
          const Value* item = v.find(key);
          if (!item) return;
          const SpecForm& resolved = *reg_.resolve(key);
          in.emplace_back(key);
          via.push_back(key);
          explain(resolved, *item, in, via, out);
          via.pop_back();
          in.pop_back();
        };
        for (const auto& key : k.required) check(key);
        for (const auto& key : k.optional) check(key);
        return;
      }
      case FormKind::CollOf: {
        if (!v.is_vector()) {
          out.push_back({in, via, "vector?", v});
          return;
        }
        const auto& c = form.as<CollOfNode>();
        const auto& items = v.as_vector();
        if (!count_ok(c, items.size())) out.push_back({in, via, count_text(c), v});
        for (std::size_t i = 0; i < items.size(); ++i) {
          in.emplace_back(i);
          explain(*c.child, items[i], in, via, out);
          in.pop_back();
        }
        return;
      }
      case FormKind::WithGen: explain(*form.as<WithGenNode>().child, v, in, via, out); return;
    }
  }

  Value unform(const SpecForm& form, const Value& v) const {
    switch (form.kind()) {
      case FormKind::Pred:
      case FormKind::And: return v;
      case FormKind::Ref: return unform(*reg_.resolve(form.as<RefNode>().target), v);
      case FormKind::Or: {
        if (!v.is_vector() || v.as_vector().size() != 2 || !v.as_vector()[0].is_keyword())
          throw Error(ErrorCode::ParseError, "not a conformed or value: " + to_display(v));
        const Keyword& tag = v.as_vector()[0].as_keyword();
        for (const auto& b : form.as<OrNode>().branches)
          if (b.tag == tag) return unform(*b.child, v.as_vector()[1]);
        throw Error(ErrorCode::ParseError, "unknown or tag " + tag.str());
      }
      case FormKind::Keys: {
        if (!v.is_map()) return v;
        const auto& k = form.as<KeysNode>();
        Map out = v.as_map();
        for (const auto* list : {&k.required, &k.optional})
          for (const auto& key : *list)
            if (auto it = out.find(key); it != out.end())
              it->second = unform(*reg_.resolve(key), it->second);
        return Value(std::move(out));
      }
      case FormKind::CollOf: {
        if (!v.is_vector()) return v;
        Vector out;
        for (const auto& item : v.as_vector()) out.push_back(unform(*form.as<CollOfNode>().child, item));
        return Value(std::move(out));
      }
      case FormKind::WithGen: return unform(*form.as<WithGenNode>().child, v);
    }
    return v;
  }

 private:
  const Registry& reg_;
  const PredicateLib& lib_;
};

}  // namespace

bool validate(const Registry& registry, const Keyword& name, const Value& value,
              const PredicateLib& lib) {
  return Walker(registry, lib).valid(*registry.resolve(name), value);
}

bool validate_form(const Registry& registry, const SpecForm& form, const Value& value,
                   const PredicateLib& lib) {
  return Walker(registry, lib).valid(form, value);
}

ConformResult conform(const Registry& registry, const Keyword& name, const Value& value,
                      const PredicateLib& lib) {
  Walker w(registry, lib);
  const SpecForm& form = *registry.resolve(name);
  if (auto c = w.conform(form, value)) return ConformResult::conformed(std::move(*c));
  return ConformResult::invalid(explain(registry, name, value, lib));
}

std::vector<Problem> explain(const Registry& registry, const Keyword& name, const Value& value,
                             const PredicateLib& lib) {
  const SpecForm& form = *registry.resolve(name);
  Path in;
  std::vector<Keyword> via{name};
  std::vector<Problem> out;
  Walker(registry, lib).explain(form, value, in, via, out);
  return out;
}

std::vector<Problem> explain_form(const Registry& registry, const SpecForm& form, const Value& value,
                                  const PredicateLib& lib) {
  Path in;
  std::vector<Keyword> via;
  std::vector<Problem> out;
  Walker(registry, lib).explain(form, value, in, via, out);
  return out;
}

Value unform(const Registry& registry, const Keyword& name, const Value& conformed) {
  return Walker(registry, PredicateLib::builtin()).unform(*registry.resolve(name), conformed);
}

}  // namespace regspec
