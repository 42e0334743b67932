#include "random_specs.hpp"

namespace regspec::testing {
namespace {

const std::vector<Value>& universe() {
  static const std::vector<Value> u = {
      Value(0), Value(1), Value(2), Value(3), Value(4), Value(-1), Value(2.5), Value(-0.5),
      Value("a"), Value("b"), Value("abc"), Value(""), Value(true), Value(Null{}),
      Value(Keyword("", "k")), Value(Keyword("x", "k"))};
  return u;
}

SpecPtr random_leaf(SplitMix64& rng) {
  switch (rng.below(6)) {
    case 0: {
      Vector vals;
      for (const auto& v : universe())
        if (rng.below(3) == 0) vals.push_back(v);
      if (vals.empty()) vals.push_back(universe()[rng.below(universe().size())]);
      return spec::one_of(std::move(vals));
    }
    case 1: {
      Map p;
      p[Keyword("", "min")] = Value(rng.between(-1, 2));
      p[Keyword("", "max")] = Value(rng.between(2, 4));
      return spec::pred("int-range", Value(std::move(p)));
    }
    case 2: {
      static const char* kinds[] = {"number", "int", "string", "keyword", "boolean", "map", "vector"};
      Map p;
      p[Keyword("", "kind")] = Value(kinds[rng.below(7)]);
      return spec::pred("type-is", Value(std::move(p)));
    }
    case 3: return spec::pred("even");
    case 4: {
      Map p;
      p[Keyword("", "max")] = Value(rng.between(0, 3));
      return spec::pred("string-length", Value(std::move(p)));
    }
    default: return spec::pred("positive-number");
  }
}

// A child form: a ref to an earlier spec or an inline leaf.
SpecPtr random_child(SplitMix64& rng, const std::vector<Keyword>& earlier) {
  if (!earlier.empty() && rng.below(3) != 0) return spec::ref(earlier[rng.below(earlier.size())]);
  return random_leaf(rng);
}

}  // namespace

RandomRegistry random_registry(SplitMix64& rng, int count) {
  RandomRegistry out;
  for (int i = 0; i < count; ++i) {
    Keyword name("t", "s" + std::to_string(i));
    const auto& earlier = out.names;
    SpecPtr form;
    switch (earlier.empty() ? 0 : rng.below(7)) {
      case 0:
      case 1: form = random_leaf(rng); break;
      case 2: {
        std::vector<OrBranch> branches;
        std::size_t n = 1 + rng.below(3);
        for (std::size_t b = 0; b < n; ++b)
          branches.push_back({Keyword("", "b" + std::to_string(b)), random_child(rng, earlier)});
        form = spec::or_(std::move(branches));
        break;
      }
      case 3: {
        std::vector<SpecPtr> children;
        std::size_t n = 1 + rng.below(3);
        for (std::size_t c = 0; c < n; ++c) children.push_back(random_child(rng, earlier));
        form = spec::and_(std::move(children));
        break;
      }
      case 4: {
        std::vector<Keyword> req, opt;
        for (const auto& k : earlier) {
          auto r = rng.below(4);
          if (r == 0) req.push_back(k);
          else if (r == 1) opt.push_back(k);
        }
        form = spec::keys(std::move(req), std::move(opt));
        break;
      }
      case 5: {
        std::optional<std::uint64_t> lo, hi;
        if (rng.coin()) lo = rng.below(2);
        if (rng.coin()) hi = 2 + rng.below(2);
        form = spec::coll_of(random_child(rng, earlier), lo, hi);
        break;
      }
      default: form = spec::ref(earlier[rng.below(earlier.size())]); break;
    }
    out.registry = out.registry.define(name, form);
    out.names.push_back(name);
  }
  return out;
}

Value random_value(SplitMix64& rng, const std::vector<Keyword>& keys, int depth) {
  auto r = rng.below(10);
  if (depth > 0 && r == 0) {
    Vector v;
    std::size_t n = rng.below(4);
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_value(rng, keys, depth - 1));
    return Value(std::move(v));
  }
  if (depth > 0 && r == 1 && !keys.empty()) {
    Map m;
    for (const auto& k : keys)
      if (rng.below(3) != 0) m[k] = random_value(rng, keys, depth - 1);
    return Value(std::move(m));
  }
  return universe()[rng.below(universe().size())];
}

cnl::Document random_document(SplitMix64& rng) {
  cnl::Document doc;
  static const char* namespaces[] = {"mmsr", "reg.eu", "x"};
  if (rng.coin()) doc.ns = namespaces[rng.below(3)];
  std::size_t n = 1 + rng.below(8);
  for (std::size_t i = 0; i < n; ++i) {
    cnl::Element e;
    std::string ns;
    if (doc.ns) ns = rng.below(4) == 0 ? std::string("other") : *doc.ns;
    else ns = rng.coin() ? std::string() : std::string(namespaces[rng.below(3)]);
    e.name = Keyword(ns, "c" + std::to_string(i) + (rng.coin() ? "-x_y" : ""));
    if (i > 0 && rng.below(3) != 0) {
      static const cnl::Combinator kinds[] = {cnl::Combinator::Or, cnl::Combinator::And, cnl::Combinator::Keys,
                                              cnl::Combinator::CollOf};
      e.combinator = kinds[rng.below(4)];
      std::size_t count = *e.combinator == cnl::Combinator::CollOf ? 1 : 1 + rng.below(4);
      for (std::size_t c = 0; c < count; ++c) {
        // Mostly earlier elements; occasionally an external name.
        if (rng.below(5) == 0) e.children.push_back(Keyword(doc.ns.value_or("ext"), "external" + std::to_string(c)));
        else e.children.push_back(doc.elements[rng.below(doc.elements.size())].name);
      }
    }
    if (rng.below(3) == 0) {
      static const char* quotes[] = {"Date time is always ISO 8601.", "says \"must\" here",
                                     "back\\slash and, commas.", "  padded  ", "line\nbreak"};
      e.source = quotes[rng.below(5)];
    }
    doc.elements.push_back(std::move(e));
  }
  if (rng.coin()) {
    auto& root = doc.elements[rng.below(doc.elements.size())];
    root.is_root = true;
    doc.root = root.name;
  }
  return doc;
}

}  // namespace regspec::testing
