#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace regspec {

/// A namespaced name such as `::mmsr/trade-date`.
///
/// Both parts match `[A-Za-z][A-Za-z0-9_-]*`; the namespace may also contain
/// `.` and may be empty.
class Keyword {
 public:
  Keyword() = default;
  Keyword(std::string ns, std::string name);

  /// Parses `::ns/name` or `::name`. A bare `::name` is resolved against
  /// `default_ns`. Throws Error(ParseError) on malformed input.
  static Keyword parse(std::string_view text, std::string_view default_ns = {});
  static std::optional<Keyword> try_parse(std::string_view text,
                                          std::string_view default_ns = {});

  const std::string& ns() const noexcept { return ns_; }
  const std::string& name() const noexcept { return name_; }

  /// `::ns/name`, or `::name` when the namespace is empty.
  std::string str() const;
  /// `::name` when `ns() == doc_ns`, else the full form.
  std::string str_relative(std::string_view doc_ns) const;
  /// `ns/name` (no colons), as used for JSON map keys.
  std::string qualified() const;

  friend auto operator<=>(const Keyword&, const Keyword&) = default;
  friend bool operator==(const Keyword&, const Keyword&) = default;

  static bool valid_name(std::string_view s);
  static bool valid_namespace(std::string_view s);

 private:
  std::string ns_;
  std::string name_;
};

}  // namespace regspec

template <>
struct std::hash<regspec::Keyword> {
  std::size_t operator()(const regspec::Keyword& k) const noexcept {
    std::size_t h = std::hash<std::string>{}(k.ns());
    return h ^ (std::hash<std::string>{}(k.name()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};
