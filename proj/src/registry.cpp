#include "regspec/registry.hpp"

#include <set>

#include "regspec/error.hpp"

namespace regspec {
namespace {

void collect_names(const SpecForm& form, std::vector<Keyword>& out) {
  switch (form.kind()) {
    case FormKind::Pred: break;
    case FormKind::Ref: out.push_back(form.as<RefNode>().target); break;
    case FormKind::Or:
      for (const auto& b : form.as<OrNode>().branches) collect_names(*b.child, out);
      break;
    case FormKind::And:
      for (const auto& c : form.as<AndNode>().children) collect_names(*c, out);
      break;
    case FormKind::Keys: {
      const auto& k = form.as<KeysNode>();
      out.insert(out.end(), k.required.begin(), k.required.end());
      out.insert(out.end(), k.optional.begin(), k.optional.end());
      break;
    }
    case FormKind::CollOf: collect_names(*form.as<CollOfNode>().child, out); break;
    case FormKind::WithGen: collect_names(*form.as<WithGenNode>().child, out); break;
  }
}

// Ref targets reachable without descending into the validated value: through
// ref/or/and/with-gen, but not through keys or coll-of.
void same_level_refs(const SpecForm& form, std::vector<Keyword>& out) {
  switch (form.kind()) {
    case FormKind::Ref: out.push_back(form.as<RefNode>().target); break;
    case FormKind::Or:
      for (const auto& b : form.as<OrNode>().branches) same_level_refs(*b.child, out);
      break;
    case FormKind::And:
      for (const auto& c : form.as<AndNode>().children) same_level_refs(*c, out);
      break;
    case FormKind::WithGen: same_level_refs(*form.as<WithGenNode>().child, out); break;
    default: break;
  }
}

}  // namespace

std::vector<Keyword> referenced_names(const SpecForm& form) {
  std::vector<Keyword> out;
  collect_names(form, out);
  return out;
}

Registry::Registry() : entries_(std::make_shared<const Entries>()) {}

Registry Registry::define(const Keyword& name, SpecPtr form, SpecMeta meta) const {
  if (!form) throw Error(ErrorCode::MalformedSpec, "malformed spec: null form for " + name.str());
  check_well_formed(*form);

  auto next = std::make_shared<Entries>(*entries_);
  (*next)[name] = RegistryEntry{form, std::move(meta)};

  // Any new cycle must pass through `name`, so walk from its form only.
  std::set<Keyword> visited;
  std::vector<Keyword> stack;
  same_level_refs(*form, stack);
  while (!stack.empty()) {
    Keyword k = std::move(stack.back());
    stack.pop_back();
    if (k == name)
      throw Error(ErrorCode::CyclicDefinition,
                  "cyclic definition: " + name.str() + " refers back to itself without descending into the data");
    if (!visited.insert(k).second) continue;
    auto it = next->find(k);
    if (it != next->end()) same_level_refs(*it->second.form, stack);
  }
  return Registry(std::move(next));
}

Registry Registry::without(const Keyword& name) const {
  auto next = std::make_shared<Entries>(*entries_);
  next->erase(name);
  return Registry(std::move(next));
}

const RegistryEntry* Registry::find(const Keyword& name) const {
  auto it = entries_->find(name);
  return it == entries_->end() ? nullptr : &it->second;
}

const RegistryEntry& Registry::entry(const Keyword& name) const {
  if (const auto* e = find(name)) return *e;
  throw Error(ErrorCode::UnknownSpec, "unknown spec " + name.str());
}

std::vector<Keyword> Registry::names() const {
  std::vector<Keyword> out;
  out.reserve(entries_->size());
  for (const auto& [k, _] : *entries_) out.push_back(k);
  return out;
}

std::vector<Keyword> Registry::unresolved() const {
  std::set<Keyword> missing;
  for (const auto& [_, e] : *entries_)
    for (auto& k : referenced_names(*e.form))
      if (!contains(k)) missing.insert(k);
  return {missing.begin(), missing.end()};
}

}  // namespace regspec
