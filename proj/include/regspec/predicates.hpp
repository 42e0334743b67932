#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regspec/value.hpp"

namespace regspec {

/// A named, parameterised boolean test over a Value. `eval` must be total:
/// a type mismatch or unusable params yields false, never an exception.
struct PredicateDef {
  std::string name;
  /// Human-readable shape of `params`, e.g. `{"min": number, "max": number}`.
  std::string params_schema;
  std::string description;
  std::function<bool(const Value& params, const Value& value)> eval;
  /// Produces the `pred` text of a Problem. Defaults to name + params.
  std::function<std::string(const Value& params)> describe;
  std::optional<std::string> default_generator;
};

class PredicateLib {
 public:
  /// An empty library. Most callers want builtin() or standard().
  PredicateLib();

  /// The built-in catalogue: one-of, string-regex, int-range, number-range,
  /// string-length, type-is, iso-date, iso-datetime-no-ms, iso-datetime-ms,
  /// even, positive-number, non-blank-string.
  static const PredicateLib& builtin();
  /// builtin() plus the custom `lei-checksum` predicate.
  static const PredicateLib& standard();

  /// Returns a library with `def` added. Throws DuplicatePredicate when the
  /// name is already taken (built-in names are reserved).
  [[nodiscard]] PredicateLib with(PredicateDef def) const;

  const PredicateDef* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  /// Throws UnknownPredicate for an unregistered name.
  bool eval(std::string_view name, const Value& params, const Value& value) const;
  std::string describe(std::string_view name, const Value& params) const;

  std::vector<const PredicateDef*> all() const;

 private:
  using Defs = std::map<std::string, PredicateDef, std::less<>>;
  explicit PredicateLib(std::shared_ptr<const Defs> defs) : defs_(std::move(defs)) {}
  std::shared_ptr<const Defs> defs_;
};

/// ISO 17442 LEI: 18 alphanumerics + 2 check digits, valid under ISO 7064
/// MOD 97-10. Not a built-in; registered by PredicateLib::standard().
PredicateDef lei_checksum_predicate();

namespace iso8601 {

bool is_leap_year(int year);
int days_in_month(int year, int month);

/// `YYYY-MM-DD`, a real Gregorian date.
bool is_date(std::string_view s);
/// `YYYY-MM-DDThh:mm:ss+/-hh:mm`.
bool is_datetime_no_ms(std::string_view s);
/// `YYYY-MM-DDThh:mm:ss.sss+/-hh:mm`.
bool is_datetime_ms(std::string_view s);

}  // namespace iso8601

/// ISO 7064 MOD 97-10 remainder of an alphanumeric string (letters map to
/// 10..35). Returns -1 for characters outside [0-9A-Z].
int mod97(std::string_view s);

}  // namespace regspec
