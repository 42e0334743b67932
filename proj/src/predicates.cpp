#include "regspec/predicates.hpp"

#include <cmath>
#include <regex>
#include <unordered_map>

#include "regspec/error.hpp"

namespace regspec {

namespace iso8601 {
namespace {

bool digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

// Validates the `YYYY-MM-DD` prefix of `s`.
bool date_prefix(std::string_view s) {
  int y, m, d;
  if (s.size() < 10) return false;
  if (!digits(s, 0, 4, y) || s[4] != '-' || !digits(s, 5, 2, m) || s[7] != '-' ||
      !digits(s, 8, 2, d))
    return false;
  if (m < 1 || m > 12) return false;
  return d >= 1 && d <= days_in_month(y, m);
}

// `hh:mm:ss` at `pos`.
bool clock(std::string_view s, std::size_t pos) {
  int h, mi, se;
  if (!digits(s, pos, 2, h) || pos + 2 >= s.size() || s[pos + 2] != ':' ||
      !digits(s, pos + 3, 2, mi) || s[pos + 5] != ':' || !digits(s, pos + 6, 2, se))
    return false;
  return h <= 23 && mi <= 59 && se <= 59;
}

// `+hh:mm` / `-hh:mm` occupying exactly the rest of `s` from `pos`.
bool offset(std::string_view s, std::size_t pos) {
  if (s.size() != pos + 6) return false;
  if (s[pos] != '+' && s[pos] != '-') return false;
  int h, m;
  if (!digits(s, pos + 1, 2, h) || s[pos + 3] != ':' || !digits(s, pos + 4, 2, m)) return false;
  return h <= 23 && m <= 59;
}

}  // namespace

bool is_leap_year(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  return month == 2 && is_leap_year(year) ? 29 : kDays[month - 1];
}

bool is_date(std::string_view s) { return s.size() == 10 && date_prefix(s); }

bool is_datetime_no_ms(std::string_view s) {
  return s.size() == 25 && date_prefix(s) && s[10] == 'T' && clock(s, 11) && offset(s, 19);
}

bool is_datetime_ms(std::string_view s) {
  int frac;
  return s.size() == 29 && date_prefix(s) && s[10] == 'T' && clock(s, 11) && s[19] == '.' &&
         digits(s, 20, 3, frac) && offset(s, 23);
}

}  // namespace iso8601

int mod97(std::string_view s) {
  int rem = 0;
  for (char c : s) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'A' && c <= 'Z') v = c - 'A' + 10;
    else return -1;
    rem = v >= 10 ? (rem * 100 + v) % 97 : (rem * 10 + v) % 97;
  }
  return rem;
}

namespace {

// Looks up `key` in a params map, or returns `params` itself when it is a
// scalar and `key` is the only parameter.
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

bool within(double x, const Value& params) {
  if (std::isnan(x)) return false;
  if (auto lo = num_param(params, "min"); lo && x < *lo) return false;
  if (auto hi = num_param(params, "max"); hi && x > *hi) return false;
  return true;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

const std::regex* compiled(const std::string& pattern) {
  // Per-thread memo; compiled patterns are never shared between threads.
  thread_local std::unordered_map<std::string, std::optional<std::regex>> cache;
  auto it = cache.find(pattern);
  if (it == cache.end()) {
    std::optional<std::regex> re;
    try {
      re.emplace(pattern, std::regex::ECMAScript);
    } catch (const std::regex_error&) {
    }
    it = cache.emplace(pattern, std::move(re)).first;
  }
  return it->second ? &*it->second : nullptr;
}

bool kind_matches(std::string_view kind, const Value& v) {
  if (kind == "number") return v.is_number();
  if (kind == "int" || kind == "integer") return v.is_int();
  if (kind == "float") return v.is_float();
  if (kind == "string") return v.is_string();
  if (kind == "boolean") return v.is_bool();
  if (kind == "keyword") return v.is_keyword();
  if (kind == "vector") return v.is_vector();
  if (kind == "map") return v.is_map();
  if (kind == "null") return v.is_null();
  return false;
}

std::string range_text(const Value& params) {
  auto lo = num_param(params, "min");
  auto hi = num_param(params, "max");
  auto fmt = [](double d) {
    std::string s = to_display(Value(d));
    if (s.size() > 2 && s.substr(s.size() - 2) == ".0") s.resize(s.size() - 2);
    return s;
  };
  std::string out;
  if (lo) out += fmt(*lo) + " <= ";
  out += "x";
  if (hi) out += " <= " + fmt(*hi);
  return out;
}

std::vector<PredicateDef> builtin_defs() {
  std::vector<PredicateDef> defs;

  defs.push_back({"one-of", "[value, ...]", "value equals one of the listed values",
                  [](const Value& p, const Value& v) {
                    if (!p.is_vector()) return false;
                    for (const auto& item : p.as_vector())
                      if (item == v) return true;
                    return false;
                  },
                  [](const Value& p) { return "one-of " + to_display(p); }, "one-of"});

  defs.push_back({"string-regex", "{\"pattern\": string}",
                  "string fully matches the regular expression (ECMAScript syntax)",
                  [](const Value& p, const Value& v) {
                    const Value* pat = param(p, "pattern", true);
                    if (!pat || !pat->is_string() || !v.is_string()) return false;
                    const std::regex* re = compiled(pat->as_string());
                    return re && std::regex_match(v.as_string(), *re);
                  },
                  [](const Value& p) {
                    const Value* pat = param(p, "pattern", true);
                    return "matches #\"" + (pat && pat->is_string() ? pat->as_string() : "?") + "\"";
                  },
                  "regex-sampler"});

  defs.push_back({"int-range", "{\"min\": number?, \"max\": number?}",
                  "integer within the inclusive bounds",
                  [](const Value& p, const Value& v) {
                    return v.is_int() && within(static_cast<double>(v.as_int()), p);
                  },
                  [](const Value& p) { return "int-range " + range_text(p); }, "int-range"});

  defs.push_back({"number-range", "{\"min\": number?, \"max\": number?}",
                  "number (int or float) within the inclusive bounds",
                  [](const Value& p, const Value& v) { return v.is_number() && within(v.as_number(), p); },
                  [](const Value& p) { return "number-range " + range_text(p); }, "number-range"});

  defs.push_back({"string-length", "{\"min\": int?, \"max\": int?}",
                  "string whose length in code points is within the inclusive bounds",
                  [](const Value& p, const Value& v) {
                    return v.is_string() && within(static_cast<double>(utf8_length(v.as_string())), p);
                  },
                  [](const Value& p) { return "string-length " + range_text(p); }, "string-length"});

  defs.push_back({"type-is", "{\"kind\": \"null|boolean|int|float|number|string|keyword|vector|map\"}",
                  "value has the given kind",
                  [](const Value& p, const Value& v) {
                    const Value* k = param(p, "kind", true);
                    return k && k->is_string() && kind_matches(k->as_string(), v);
                  },
                  [](const Value& p) {
                    const Value* k = param(p, "kind", true);
                    return std::string(k && k->is_string() ? k->as_string() : "?") + "?";
                  },
                  "type-is"});

  defs.push_back({"iso-date", "none", "ISO 8601 date YYYY-MM-DD",
                  [](const Value&, const Value& v) { return v.is_string() && iso8601::is_date(v.as_string()); },
                  [](const Value&) { return std::string("iso-date YYYY-MM-DD"); }, "iso-date"});

  defs.push_back({"iso-datetime-no-ms", "none", "ISO 8601 date time YYYY-MM-DDThh:mm:ss+/-hh:mm",
                  [](const Value&, const Value& v) {
                    return v.is_string() && iso8601::is_datetime_no_ms(v.as_string());
                  },
                  [](const Value&) { return std::string("iso-datetime-no-ms YYYY-MM-DDThh:mm:ss+/-hh:mm"); },
                  "iso-datetime-no-ms"});

  defs.push_back({"iso-datetime-ms", "none", "ISO 8601 date time YYYY-MM-DDThh:mm:ss.sss+/-hh:mm",
                  [](const Value&, const Value& v) {
                    return v.is_string() && iso8601::is_datetime_ms(v.as_string());
                  },
                  [](const Value&) { return std::string("iso-datetime-ms YYYY-MM-DDThh:mm:ss.sss+/-hh:mm"); },
                  "iso-datetime-ms"});

  defs.push_back({"even", "none", "even integer",
                  [](const Value&, const Value& v) { return v.is_int() && v.as_int() % 2 == 0; },
                  [](const Value&) { return std::string("even?"); }, "even"});

  defs.push_back({"positive-number", "none", "number strictly greater than zero",
                  [](const Value&, const Value& v) { return v.is_number() && v.as_number() > 0; },
                  [](const Value&) { return std::string("pos?"); }, "positive-number"});

  defs.push_back({"non-blank-string", "none", "string with at least one non-whitespace character",
                  [](const Value&, const Value& v) {
                    if (!v.is_string()) return false;
                    for (unsigned char c : v.as_string())
                      if (!std::isspace(c)) return true;
                    return false;
                  },
                  [](const Value&) { return std::string("non-blank-string"); }, "non-blank-string"});

  return defs;
}

}  // namespace

PredicateDef lei_checksum_predicate() {
  return {"lei-checksum", "none", "ISO 17442 LEI with valid ISO 7064 MOD 97-10 check digits",
          [](const Value&, const Value& v) {
            if (!v.is_string()) return false;
            const std::string& s = v.as_string();
            if (s.size() != 20) return false;
            for (std::size_t i = 0; i < 20; ++i) {
              char c = s[i];
              bool digit = c >= '0' && c <= '9';
              if (i >= 18 ? !digit : !(digit || (c >= 'A' && c <= 'Z'))) return false;
            }
            return mod97(s) == 1;
          },
          [](const Value&) { return std::string("lei-checksum"); }, "lei"};
}

PredicateLib::PredicateLib() : defs_(std::make_shared<const Defs>()) {}

const PredicateLib& PredicateLib::builtin() {
  static const PredicateLib lib = [] {
    PredicateLib l;
    for (auto& d : builtin_defs()) l = l.with(std::move(d));
    return l;
  }();
  return lib;
}

const PredicateLib& PredicateLib::standard() {
  static const PredicateLib lib = builtin().with(lei_checksum_predicate());
  return lib;
}

PredicateLib PredicateLib::with(PredicateDef def) const {
  if (def.name.empty() || !def.eval)
    throw Error(ErrorCode::MalformedSpec, "predicate needs a name and an eval function");
  if (defs_->count(def.name) != 0)
    throw Error(ErrorCode::DuplicatePredicate, "predicate '" + def.name + "' already registered");
  auto next = std::make_shared<Defs>(*defs_);
  std::string name = def.name;
  next->emplace(std::move(name), std::move(def));
  return PredicateLib(std::move(next));
}

const PredicateDef* PredicateLib::find(std::string_view name) const {
  auto it = defs_->find(name);
  return it == defs_->end() ? nullptr : &it->second;
}

bool PredicateLib::eval(std::string_view name, const Value& params, const Value& value) const {
  const PredicateDef* def = find(name);
  if (!def) throw Error(ErrorCode::UnknownPredicate, "unknown predicate '" + std::string(name) + "'");
  return def->eval(params, value);
}

std::string PredicateLib::describe(std::string_view name, const Value& params) const {
  const PredicateDef* def = find(name);
  if (!def) throw Error(ErrorCode::UnknownPredicate, "unknown predicate '" + std::string(name) + "'");
  if (def->describe) return def->describe(params);
  return params.is_null() ? def->name : def->name + " " + to_display(params);
}

std::vector<const PredicateDef*> PredicateLib::all() const {
  std::vector<const PredicateDef*> out;
  for (const auto& [_, d] : *defs_) out.push_back(&d);
  return out;
}

}  // namespace regspec
