#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "regspec/keyword.hpp"

namespace regspec {

class Value;

using Vector = std::vector<Value>;
using Map = std::map<Keyword, Value>;

struct Null {
  friend bool operator==(Null, Null) { return true; }
};

enum class Kind { Null, Bool, Int, Float, String, Keyword, Vector, Map };

std::string_view to_string(Kind kind);

/// The data model messages are made of: scalars, keywords, vectors and
/// keyword-keyed maps. Sets are not part of the model.
class Value {
 public:
  using Storage = std::variant<Null, bool, std::int64_t, double, std::string,
                               Keyword, Vector, Map>;

  Value() = default;
  Value(Null) {}
  Value(bool b) : data_(b) {}
  Value(int i) : data_(static_cast<std::int64_t>(i)) {}
  Value(std::int64_t i) : data_(i) {}
  Value(double d) : data_(d) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(Keyword k) : data_(std::move(k)) {}
  Value(Vector v) : data_(std::move(v)) {}
  Value(Map m) : data_(std::move(m)) {}

  static Value vec(std::initializer_list<Value> items) { return Value(Vector(items)); }

  Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }

  bool is_null() const noexcept { return kind() == Kind::Null; }
  bool is_bool() const noexcept { return kind() == Kind::Bool; }
  bool is_int() const noexcept { return kind() == Kind::Int; }
  bool is_float() const noexcept { return kind() == Kind::Float; }
  bool is_number() const noexcept { return is_int() || is_float(); }
  bool is_string() const noexcept { return kind() == Kind::String; }
  bool is_keyword() const noexcept { return kind() == Kind::Keyword; }
  bool is_vector() const noexcept { return kind() == Kind::Vector; }
  bool is_map() const noexcept { return kind() == Kind::Map; }

  bool as_bool() const { return std::get<bool>(data_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  double as_float() const { return std::get<double>(data_); }
  /// Int or Float widened to double.
  double as_number() const { return is_int() ? static_cast<double>(as_int()) : as_float(); }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  const Keyword& as_keyword() const { return std::get<Keyword>(data_); }
  const Vector& as_vector() const { return std::get<Vector>(data_); }
  const Map& as_map() const { return std::get<Map>(data_); }

  const Storage& storage() const noexcept { return data_; }

  /// Map lookup; nullptr when this is not a map or the key is absent.
  const Value* find(const Keyword& key) const;

  /// Structural equality. Floats compare bitwise, except NaN never equals NaN.
  friend bool operator==(const Value& a, const Value& b);

 private:
  Storage data_;
};

/// Debug/diagnostic rendering in an EDN-like notation (`[:veg "carrot"]`).
std::string to_display(const Value& v);

}  // namespace regspec
