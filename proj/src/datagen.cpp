#include "regspec/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "regspec/engine.hpp"
#include "regspec/error.hpp"
#include "regspec/regex_sampler.hpp"

namespace regspec {
namespace {

constexpr std::string_view kAlnum = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

const Value* param(const Value& params, std::string_view key, bool scalar_ok = false) {
  if (params.is_map()) return params.find(Keyword("", std::string(key)));
  if (scalar_ok && !params.is_null()) return &params;
  return nullptr;
}

std::optional<double> num_param(const Value& params, std::string_view key) {
  const Value* v = param(params, key);
  if (v && v->is_number()) return v->as_number();
  return std::nullopt;
}

std::string random_string(SplitMix64& rng, std::size_t len, std::string_view alphabet = kAlnum) {
  std::string s;
  s.reserve(len);
  for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
  return s;
}

std::string two(int v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d", v);
  return buf;
}

std::string random_date(SplitMix64& rng) {
  int y = static_cast<int>(rng.between(1970, 2099));
  int m = static_cast<int>(rng.between(1, 12));
  int d = static_cast<int>(rng.between(1, iso8601::days_in_month(y, m)));
  return std::to_string(y) + "-" + two(m) + "-" + two(d);
}

std::string random_clock(SplitMix64& rng) {
  return two(static_cast<int>(rng.between(0, 23))) + ":" + two(static_cast<int>(rng.between(0, 59))) + ":" +
         two(static_cast<int>(rng.between(0, 59)));
}

std::string random_offset(SplitMix64& rng) {
  static constexpr int kMinutes[] = {0, 0, 0, 30, 45};
  int h = static_cast<int>(rng.between(-12, 14));
  int m = kMinutes[rng.below(5)];
  return std::string(h < 0 ? "-" : "+") + two(std::abs(h)) + ":" + two(m);
}

std::int64_t int_in(SplitMix64& rng, const Value& params) {
  auto lo = num_param(params, "min");
  auto hi = num_param(params, "max");
  double l = lo ? std::ceil(*lo) : (hi ? std::floor(*hi) - 1000 : -1000);
  double h = hi ? std::floor(*hi) : l + 2000;
  if (h < l) return static_cast<std::int64_t>(l);  // empty range; predicate check rejects it
  return rng.between(static_cast<std::int64_t>(l), static_cast<std::int64_t>(h));
}

double float_in(SplitMix64& rng, const Value& params) {
  auto lo = num_param(params, "min");
  auto hi = num_param(params, "max");
  double l = lo ? *lo : (hi ? *hi - 1000.0 : -1000.0);
  double h = hi ? *hi : l + 2000.0;
  return l + (h - l) * rng.unit();
}

Value random_of_kind(std::string_view kind, GenState& st) {
  auto& rng = st.rng();
  if (kind == "number") {
    if (rng.coin()) return Value(rng.between(-1000, 1000));
    return Value(-1000.0 + 2000.0 * rng.unit());
  }
  if (kind == "int" || kind == "integer") return Value(rng.between(-1000, 1000));
  if (kind == "float") return Value(-1000.0 + 2000.0 * rng.unit());
  if (kind == "string") return Value(random_string(rng, rng.below(st.ctx().size + 1)));
  if (kind == "boolean") return Value(rng.coin());
  if (kind == "keyword") return Value(Keyword("", "k" + random_string(rng, 1 + rng.below(8))));
  if (kind == "vector") return Value(Vector{});
  if (kind == "map") return Value(Map{});
  return Value();
}

std::vector<GeneratorDef> standard_generators() {
  std::vector<GeneratorDef> defs;
  defs.push_back({"one-of", [](const Value& p, GenState& st) {
                    if (!p.is_vector() || p.as_vector().empty()) return Value();
                    const auto& items = p.as_vector();
                    return items[st.rng().below(items.size())];
                  }});
  defs.push_back({"regex-sampler", [](const Value& p, GenState& st) {
                    const Value* pat = param(p, "pattern", true);
                    if (!pat || !pat->is_string())
                      throw Error(ErrorCode::NoGenerator, "regex-sampler needs a string pattern");
                    return Value(sample_regex(pat->as_string(), st.rng(), st.ctx().size));
                  }});
  defs.push_back({"int-range", [](const Value& p, GenState& st) { return Value(int_in(st.rng(), p)); }});
  defs.push_back({"number-range", [](const Value& p, GenState& st) {
                    if (st.rng().coin()) return Value(int_in(st.rng(), p));
                    return Value(float_in(st.rng(), p));
                  }});
  defs.push_back({"string-length", [](const Value& p, GenState& st) {
                    auto lo = num_param(p, "min");
                    auto hi = num_param(p, "max");
                    auto l = static_cast<std::int64_t>(lo ? std::ceil(std::max(0.0, *lo)) : 0);
                    auto h = hi ? static_cast<std::int64_t>(std::floor(*hi))
                                : std::max<std::int64_t>(l, st.ctx().size);
                    if (h < l) h = l;
                    return Value(random_string(st.rng(), static_cast<std::size_t>(st.rng().between(l, h))));
                  }});
  defs.push_back({"type-is", [](const Value& p, GenState& st) {
                    const Value* k = param(p, "kind", true);
                    return random_of_kind(k && k->is_string() ? k->as_string() : "", st);
                  }});
  defs.push_back({"iso-date", [](const Value&, GenState& st) { return Value(random_date(st.rng())); }});
  defs.push_back({"iso-datetime-no-ms", [](const Value&, GenState& st) {
                    auto& rng = st.rng();
                    std::string date = random_date(rng);
                    std::string clock = random_clock(rng);
                    return Value(date + "T" + clock + random_offset(rng));
                  }});
  defs.push_back({"iso-datetime-ms", [](const Value&, GenState& st) {
                    auto& rng = st.rng();
                    char ms[8];
                    std::string date = random_date(rng);
                    std::string clock = random_clock(rng);
                    std::snprintf(ms, sizeof ms, ".%03d", static_cast<int>(rng.between(0, 999)));
                    return Value(date + "T" + clock + ms + random_offset(rng));
                  }});
  defs.push_back({"even", [](const Value&, GenState& st) { return Value(2 * st.rng().between(-500, 500)); }});
  defs.push_back({"positive-number", [](const Value&, GenState& st) {
                    auto& rng = st.rng();
                    if (rng.coin()) return Value(rng.between(1, 1'000'000));
                    return Value(0.01 + 1'000'000.0 * rng.unit());
                  }});
  defs.push_back({"non-blank-string", [](const Value&, GenState& st) {
                    auto& rng = st.rng();
                    return Value(random_string(rng, 1 + rng.below(std::max<std::uint32_t>(st.ctx().size, 1))));
                  }});
  defs.push_back({"lei", [](const Value&, GenState& st) {
                    auto& rng = st.rng();
                    std::string base = random_string(rng, 4, "0123456789") +
                                       random_string(rng, 14, "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789");
                    int check = 98 - mod97(base + "00");
                    return Value(base + two(check));
                  }});
  return defs;
}

class Generator {
 public:
  Generator(const Registry& r, const PredicateLib& p, const GeneratorLib& g, const GenContext& ctx,
            SplitMix64 rng)
      : reg_(r), preds_(p), gens_(g), state_(rng, ctx) {}

  Value gen(const SpecForm& form, std::uint32_t depth) {
    const GenContext& ctx = state_.ctx();
    auto& rng = state_.rng();
    switch (form.kind()) {
      case FormKind::Pred: {
        const auto& p = form.as<PredNode>();
        const PredicateDef* def = preds_.find(p.predicate);
        if (!def) throw Error(ErrorCode::UnknownPredicate, "unknown predicate '" + p.predicate + "'");
        const GeneratorDef* g = def->default_generator ? gens_.find(*def->default_generator) : nullptr;
        if (!g)
          throw Error(ErrorCode::NoGenerator,
                      "no generator for predicate '" + p.predicate + "'; wrap it in with-gen");
        for (std::uint32_t i = 0; i < ctx.max_retries; ++i) {
          Value v = g->produce(p.params, state_);
          if (def->eval(p.params, v)) return v;
        }
        throw Error(ErrorCode::RetryExhausted,
                    "generator '" + g->name + "' produced no value satisfying " +
                        preds_.describe(p.predicate, p.params) + " in " + std::to_string(ctx.max_retries) +
                        " tries");
      }
      case FormKind::Ref: return gen_named(form.as<RefNode>().target, depth);
      case FormKind::Or: {
        const auto& branches = form.as<OrNode>().branches;
        return gen(*branches[rng.below(branches.size())].child, depth);
      }
      case FormKind::And: {
        const auto& children = form.as<AndNode>().children;
        for (std::uint32_t i = 0; i < ctx.max_retries; ++i) {
          Value v = gen(*children.front(), depth);
          bool ok = true;
          for (std::size_t c = 1; c < children.size() && ok; ++c)
            ok = validate_form(reg_, *children[c], v, preds_);
          if (ok) return v;
        }
        throw Error(ErrorCode::RetryExhausted,
                    "and: no candidate satisfied every conjunct in " + std::to_string(ctx.max_retries) + " tries");
      }
      case FormKind::Keys: {
        const auto& k = form.as<KeysNode>();
        Map out;
        for (const auto& key : k.required) out.emplace(key, gen_named(key, depth));
        for (const auto& key : k.optional)
          if (rng.unit() < ctx.optional_key_probability) out.emplace(key, gen_named(key, depth));
        return Value(std::move(out));
      }
      case FormKind::CollOf: {
        const auto& c = form.as<CollOfNode>();
        std::uint64_t lo = c.min_count.value_or(0);
        std::uint64_t hi = c.max_count.value_or(std::max<std::uint64_t>(lo, ctx.size));
        auto n = static_cast<std::size_t>(lo + rng.below(hi - lo + 1));
        Vector out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(gen(*c.child, depth));
        return Value(std::move(out));
      }
      case FormKind::WithGen: {
        const auto& w = form.as<WithGenNode>();
        const GeneratorDef* g = gens_.find(w.generator);
        if (!g) throw Error(ErrorCode::NoGenerator, "no generator named '" + w.generator + "'");
        for (std::uint32_t i = 0; i < ctx.max_retries; ++i) {
          Value v = g->produce(w.params, state_);
          if (validate_form(reg_, *w.child, v, preds_)) return v;
        }
        throw Error(ErrorCode::RetryExhausted,
                    "generator '" + w.generator + "' produced no valid value in " +
                        std::to_string(ctx.max_retries) + " tries");
      }
    }
    return Value();
  }

  Value gen_named(const Keyword& name, std::uint32_t depth) {
    if (depth + 1 > state_.ctx().max_depth)
      throw Error(ErrorCode::DepthExceeded, "generation depth exceeded at " + name.str());
    return gen(*reg_.resolve(name), depth + 1);
  }

 private:
  const Registry& reg_;
  const PredicateLib& preds_;
  const GeneratorLib& gens_;
  GenState state_;
};

bool can_generate(const Registry& reg, const SpecForm& form, const PredicateLib& preds,
                  const GeneratorLib& gens, std::set<Keyword>& seen) {
  auto named = [&](const Keyword& k) {
    if (!seen.insert(k).second) return true;
    const auto* e = reg.find(k);
    return e && can_generate(reg, *e->form, preds, gens, seen);
  };
  switch (form.kind()) {
    case FormKind::Pred: {
      const PredicateDef* def = preds.find(form.as<PredNode>().predicate);
      return def && def->default_generator && gens.find(*def->default_generator);
    }
    case FormKind::Ref: return named(form.as<RefNode>().target);
    case FormKind::Or:
      for (const auto& b : form.as<OrNode>().branches)
        if (!can_generate(reg, *b.child, preds, gens, seen)) return false;
      return true;
    case FormKind::And:
      return can_generate(reg, *form.as<AndNode>().children.front(), preds, gens, seen);
    case FormKind::Keys: {
      const auto& k = form.as<KeysNode>();
      for (const auto* list : {&k.required, &k.optional})
        for (const auto& key : *list)
          if (!named(key)) return false;
      return true;
    }
    case FormKind::CollOf: return can_generate(reg, *form.as<CollOfNode>().child, preds, gens, seen);
    case FormKind::WithGen: return gens.find(form.as<WithGenNode>().generator) != nullptr;
  }
  return false;
}

}  // namespace

GeneratorLib::GeneratorLib() : defs_(std::make_shared<const Defs>()) {}

const GeneratorLib& GeneratorLib::standard() {
  static const GeneratorLib lib = [] {
    GeneratorLib l;
    for (auto& d : standard_generators()) l = l.with(std::move(d));
    return l;
  }();
  return lib;
}

GeneratorLib GeneratorLib::with(GeneratorDef def) const {
  if (def.name.empty() || !def.produce)
    throw Error(ErrorCode::MalformedSpec, "generator needs a name and a produce function");
  if (defs_->count(def.name) != 0)
    throw Error(ErrorCode::DuplicateGenerator, "generator '" + def.name + "' already registered");
  auto next = std::make_shared<Defs>(*defs_);
  std::string name = def.name;
  next->emplace(std::move(name), std::move(def));
  return GeneratorLib(std::move(next));
}

const GeneratorDef* GeneratorLib::find(std::string_view name) const {
  auto it = defs_->find(name);
  return it == defs_->end() ? nullptr : &it->second;
}

std::vector<std::string> GeneratorLib::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : *defs_) out.push_back(k);
  return out;
}

Value generate(const Registry& registry, const Keyword& name, const GenContext& ctx,
               const PredicateLib& preds, const GeneratorLib& gens) {
  Generator g(registry, preds, gens, ctx, SplitMix64(ctx.seed));
  return g.gen(*registry.resolve(name), 0);
}

std::vector<Value> sample(const Registry& registry, const Keyword& name, std::size_t count,
                          const GenContext& ctx, const PredicateLib& preds, const GeneratorLib& gens) {
  std::vector<Value> out;
  out.reserve(count);
  SplitMix64 seeds(ctx.seed);
  for (std::size_t i = 0; i < count; ++i) {
    GenContext sub = ctx;
    sub.seed = seeds.next();
    out.push_back(generate(registry, name, sub, preds, gens));
  }
  return out;
}

bool generatable(const Registry& registry, const Keyword& name, const PredicateLib& preds,
                 const GeneratorLib& gens) {
  std::set<Keyword> seen{name};
  const auto* e = registry.find(name);
  return e && can_generate(registry, *e->form, preds, gens, seen);
}

}  // namespace regspec
