#include "regspec/keyword.hpp"

#include <cctype>

#include "regspec/error.hpp"

namespace regspec {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

}  // namespace

bool Keyword::valid_name(std::string_view s) {
  if (s.empty() || !ident_start(s.front())) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

bool Keyword::valid_namespace(std::string_view s) {
  if (s.empty()) return true;
  if (!ident_start(s.front())) return false;
  for (char c : s)
    if (!ident_char(c) && c != '.') return false;
  return true;
}

Keyword::Keyword(std::string ns, std::string name) : ns_(std::move(ns)), name_(std::move(name)) {
  if (!valid_namespace(ns_) || !valid_name(name_))
    throw Error(ErrorCode::ParseError, "invalid keyword parts: '" + ns_ + "' / '" + name_ + "'");
}

std::optional<Keyword> Keyword::try_parse(std::string_view text, std::string_view default_ns) {
  if (text.size() < 3 || text.substr(0, 2) != "::") return std::nullopt;
  text.remove_prefix(2);
  std::string_view ns = default_ns;
  std::string_view name = text;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    ns = text.substr(0, slash);
    name = text.substr(slash + 1);
    if (ns.empty()) return std::nullopt;
  }
  if (!valid_namespace(ns) || !valid_name(name)) return std::nullopt;
  Keyword k;
  k.ns_ = std::string(ns);
  k.name_ = std::string(name);
  return k;
}

Keyword Keyword::parse(std::string_view text, std::string_view default_ns) {
  if (auto k = try_parse(text, default_ns)) return *std::move(k);
  throw Error(ErrorCode::ParseError, "malformed keyword '" + std::string(text) + "'");
}

std::string Keyword::str() const { return ns_.empty() ? "::" + name_ : "::" + ns_ + "/" + name_; }

std::string Keyword::str_relative(std::string_view doc_ns) const {
  if (ns_ == doc_ns) return "::" + name_;
  return str();
}

std::string Keyword::qualified() const { return ns_.empty() ? name_ : ns_ + "/" + name_; }

}  // namespace regspec
