#include "regspec/value.hpp"

#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>

namespace regspec {

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::Null: return "null";
    case Kind::Bool: return "boolean";
    case Kind::Int: return "int";
    case Kind::Float: return "float";
    case Kind::String: return "string";
    case Kind::Keyword: return "keyword";
    case Kind::Vector: return "vector";
    case Kind::Map: return "map";
  }
  return "unknown";
}

const Value* Value::find(const Keyword& key) const {
  if (!is_map()) return nullptr;
  const auto& m = as_map();
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  if (a.is_float()) {
    double x = a.as_float(), y = b.as_float();
    if (std::isnan(x) || std::isnan(y)) return false;
    return std::memcmp(&x, &y, sizeof x) == 0;
  }
  return a.storage() == b.storage();
}

namespace {

void display(std::ostream& os, const Value& v) {
  switch (v.kind()) {
    case Kind::Null: os << "nil"; break;
    case Kind::Bool: os << (v.as_bool() ? "true" : "false"); break;
    case Kind::Int: os << v.as_int(); break;
    case Kind::Float: os << std::setprecision(17) << v.as_float(); break;
    case Kind::String: os << std::quoted(v.as_string()); break;
    case Kind::Keyword: os << ':' << v.as_keyword().qualified(); break;
    case Kind::Vector: {
      os << '[';
      bool first = true;
      for (const auto& item : v.as_vector()) {
        if (!first) os << ' ';
        first = false;
        display(os, item);
      }
      os << ']';
      break;
    }
    case Kind::Map: {
      os << '{';
      bool first = true;
      for (const auto& [k, item] : v.as_map()) {
        if (!first) os << ", ";
        first = false;
        os << ':' << k.qualified() << ' ';
        display(os, item);
      }
      os << '}';
      break;
    }
  }
}

}  // namespace

std::string to_display(const Value& v) {
  std::ostringstream os;
  display(os, v);
  return os.str();
}

}  // namespace regspec
