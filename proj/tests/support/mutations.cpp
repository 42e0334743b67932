#include "mutations.hpp"

#include <algorithm>
#include <numeric>

namespace regspec::testing {
namespace {

bool same_shape(const cnl::Shape& a, const cnl::Shape& b) {
  return a.combinator == b.combinator && a.children == b.children;
}

SpecPtr build(std::string_view target, const std::vector<Keyword>& children) {
  std::vector<SpecPtr> refs;
  for (const auto& c : children) refs.push_back(spec::ref(c));
  if (target == "or") return spec::or_refs(children);
  if (target == "and") return spec::and_(refs);
  if (target == "keys") return spec::keys(children);
  if (target == "coll-of") return spec::coll_of(spec::ref(children.front()));
  if (target == "ref") return spec::ref(children.front());
  return spec::pred("non-blank-string");
}

}  // namespace

std::vector<Mutant> single_edit_mutants(const Registry& registry, const cnl::Document& doc) {
  std::vector<Mutant> out;
  auto add = [&](std::string what, const Keyword& name, SpecPtr form, const RegistryEntry& original) {
    RegistryEntry candidate{form, original.meta};
    // Only keep edits that change what the abstraction of this entry says.
    if (same_shape(cnl::shape_of(candidate), cnl::shape_of(original))) return;
    out.push_back({name.str() + ": " + what, registry.define(name, std::move(form), original.meta)});
  };

  for (const auto& e : doc.elements) {
    if (e.atomic()) continue;
    const RegistryEntry* entry = registry.find(e.name);
    if (!entry) continue;
    const cnl::Shape shape = cnl::shape_of(*entry);
    if (!shape.combinator || shape.children.empty()) continue;

    for (std::string_view target : {"or", "and", "keys", "coll-of", "ref", "leaf"})
      add("swap to " + std::string(target), e.name, build(target, shape.children), *entry);

    const SpecForm& form = *entry->form;
    switch (form.kind()) {
      case FormKind::Or: {
        const auto& branches = form.as<OrNode>().branches;
        if (branches.size() > 1)
          for (std::size_t i = 0; i < branches.size(); ++i) {
            auto kept = branches;
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
            add("drop child " + std::to_string(i), e.name, spec::or_(std::move(kept)), *entry);
          }
        std::vector<std::size_t> perm(branches.size());
        std::iota(perm.begin(), perm.end(), 0);
        while (std::next_permutation(perm.begin(), perm.end())) {
          std::vector<OrBranch> reordered;
          std::string label;
          for (auto p : perm) {
            reordered.push_back(branches[p]);
            label += std::to_string(p);
          }
          add("reorder " + label, e.name, spec::or_(std::move(reordered)), *entry);
        }
        break;
      }
      case FormKind::And: {
        const auto& children = form.as<AndNode>().children;
        if (children.size() > 1)
          for (std::size_t i = 0; i < children.size(); ++i) {
            auto kept = children;
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
            add("drop child " + std::to_string(i), e.name, spec::and_(std::move(kept)), *entry);
          }
        std::vector<std::size_t> perm(children.size());
        std::iota(perm.begin(), perm.end(), 0);
        while (std::next_permutation(perm.begin(), perm.end())) {
          std::vector<SpecPtr> reordered;
          std::string label;
          for (auto p : perm) {
            reordered.push_back(children[p]);
            label += std::to_string(p);
          }
          add("reorder " + label, e.name, spec::and_(std::move(reordered)), *entry);
        }
        break;
      }
      case FormKind::Keys: {
        const auto& k = form.as<KeysNode>();
        for (std::size_t i = 0; i < k.required.size(); ++i) {
          auto req = k.required;
          req.erase(req.begin() + static_cast<std::ptrdiff_t>(i));
          add("drop required key " + k.required[i].str(), e.name, spec::keys(std::move(req), k.optional), *entry);
        }
        for (std::size_t i = 0; i < k.optional.size(); ++i) {
          auto opt = k.optional;
          opt.erase(opt.begin() + static_cast<std::ptrdiff_t>(i));
          add("drop optional key " + k.optional[i].str(), e.name, spec::keys(k.required, std::move(opt)), *entry);
        }
        break;
      }
      default: break;
    }
  }

  for (const auto& name : registry.names()) out.push_back({"delete " + name.str(), registry.without(name)});
  return out;
}

}  // namespace regspec::testing
