#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regspec/keyword.hpp"
#include "regspec/spec_form.hpp"

namespace regspec {

struct SpecMeta {
  /// Regulation text the contract encodes.
  std::optional<std::string> source_text;
  /// Abstracted as an atomic element regardless of its form.
  bool opaque = false;

  friend bool operator==(const SpecMeta&, const SpecMeta&) = default;
};

struct RegistryEntry {
  SpecPtr form;
  SpecMeta meta;
};

/// Immutable name -> contract store. `define` returns a new registry and
/// leaves the receiver untouched, so a registry can be shared freely across
/// threads.
class Registry {
 public:
  using Entries = std::map<Keyword, RegistryEntry>;

  Registry();

  /// Registers (or replaces) `name`. Throws MalformedSpec when the form is
  /// ill-formed and CyclicDefinition when the new entry closes a cycle that
  /// never descends into the data (through ref/or/and/with-gen edges only).
  /// Refs to names not yet registered are allowed.
  [[nodiscard]] Registry define(const Keyword& name, SpecPtr form, SpecMeta meta = {}) const;

  /// Removes `name` if present. Dangling references are left as-is.
  [[nodiscard]] Registry without(const Keyword& name) const;

  bool contains(const Keyword& name) const { return entries_->count(name) != 0; }
  const RegistryEntry* find(const Keyword& name) const;
  const RegistryEntry& entry(const Keyword& name) const;

  /// The stored form for `name`, one level only. Throws UnknownSpec.
  const SpecPtr& resolve(const Keyword& name) const { return entry(name).form; }

  std::size_t size() const { return entries_->size(); }
  const Entries& entries() const { return *entries_; }
  std::vector<Keyword> names() const;

  /// Names referenced (ref targets and map keys) but not registered.
  std::vector<Keyword> unresolved() const;

 private:
  explicit Registry(std::shared_ptr<const Entries> entries) : entries_(std::move(entries)) {}
  std::shared_ptr<const Entries> entries_;
};

/// Every registered name `form` mentions directly: ref targets and map keys,
/// in declaration order, without descending through refs.
std::vector<Keyword> referenced_names(const SpecForm& form);

}  // namespace regspec
