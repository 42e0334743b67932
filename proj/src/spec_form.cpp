#include "regspec/spec_form.hpp"

#include <algorithm>
#include <set>

#include "regspec/error.hpp"

namespace regspec {

std::string_view to_string(FormKind kind) {
  switch (kind) {
    case FormKind::Pred: return "pred";
    case FormKind::Ref: return "ref";
    case FormKind::Or: return "or";
    case FormKind::And: return "and";
    case FormKind::Keys: return "keys";
    case FormKind::CollOf: return "coll-of";
    case FormKind::WithGen: return "with-gen";
  }
  return "unknown";
}

bool equal(const SpecPtr& a, const SpecPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const SpecForm& a, const SpecForm& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormKind::Pred: {
      const auto &x = a.as<PredNode>(), &y = b.as<PredNode>();
      return x.predicate == y.predicate && x.params == y.params;
    }
    case FormKind::Ref: return a.as<RefNode>().target == b.as<RefNode>().target;
    case FormKind::Or: {
      const auto &x = a.as<OrNode>().branches, &y = b.as<OrNode>().branches;
      return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                        [](const OrBranch& p, const OrBranch& q) {
                          return p.tag == q.tag && equal(p.child, q.child);
                        });
    }
    case FormKind::And: {
      const auto &x = a.as<AndNode>().children, &y = b.as<AndNode>().children;
      return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                        [](const SpecPtr& p, const SpecPtr& q) { return equal(p, q); });
    }
    case FormKind::Keys: {
      const auto &x = a.as<KeysNode>(), &y = b.as<KeysNode>();
      return x.required == y.required && x.optional == y.optional;
    }
    case FormKind::CollOf: {
      const auto &x = a.as<CollOfNode>(), &y = b.as<CollOfNode>();
      return x.min_count == y.min_count && x.max_count == y.max_count && equal(x.child, y.child);
    }
    case FormKind::WithGen: {
      const auto &x = a.as<WithGenNode>(), &y = b.as<WithGenNode>();
      return x.generator == y.generator && x.params == y.params && equal(x.child, y.child);
    }
  }
  return false;
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedSpec, "malformed spec: " + what);
}

void require_child(const SpecPtr& child, std::string_view where) {
  if (!child) malformed(std::string(where) + " has a null child");
  check_well_formed(*child);
}

}  // namespace

void check_well_formed(const SpecForm& form) {
  switch (form.kind()) {
    case FormKind::Pred:
      if (form.as<PredNode>().predicate.empty()) malformed("predicate name is empty");
      break;
    case FormKind::Ref: break;
    case FormKind::Or: {
      const auto& branches = form.as<OrNode>().branches;
      if (branches.empty()) malformed("or needs at least one branch");
      std::set<Keyword> tags;
      for (const auto& b : branches) {
        if (!tags.insert(b.tag).second) malformed("duplicate or tag " + b.tag.str());
        require_child(b.child, "or");
      }
      break;
    }
    case FormKind::And: {
      const auto& children = form.as<AndNode>().children;
      if (children.empty()) malformed("and needs at least one child");
      for (const auto& c : children) require_child(c, "and");
      break;
    }
    case FormKind::Keys: {
      const auto& k = form.as<KeysNode>();
      std::set<Keyword> seen;
      for (const auto& key : k.required)
        if (!seen.insert(key).second) malformed("key " + key.str() + " listed twice");
      for (const auto& key : k.optional)
        if (!seen.insert(key).second)
          malformed("key " + key.str() + " is both required and optional, or listed twice");
      break;
    }
    case FormKind::CollOf: {
      const auto& c = form.as<CollOfNode>();
      if (c.min_count && c.max_count && *c.min_count > *c.max_count)
        malformed("coll-of min-count exceeds max-count");
      require_child(c.child, "coll-of");
      break;
    }
    case FormKind::WithGen: {
      const auto& w = form.as<WithGenNode>();
      if (w.generator.empty()) malformed("with-gen generator name is empty");
      require_child(w.child, "with-gen");
      break;
    }
  }
}

namespace spec {

SpecPtr pred(std::string name, Value params) {
  return std::make_shared<const SpecForm>(PredNode{std::move(name), std::move(params)});
}

SpecPtr one_of(Vector values) { return pred("one-of", Value(std::move(values))); }

SpecPtr ref(Keyword target) { return std::make_shared<const SpecForm>(RefNode{std::move(target)}); }

SpecPtr or_(std::vector<OrBranch> branches) {
  return std::make_shared<const SpecForm>(OrNode{std::move(branches)});
}

SpecPtr or_refs(const std::vector<Keyword>& targets) {
  std::vector<OrBranch> branches;
  branches.reserve(targets.size());
  for (const auto& t : targets) branches.push_back({t, ref(t)});
  return or_(std::move(branches));
}

SpecPtr and_(std::vector<SpecPtr> children) {
  return std::make_shared<const SpecForm>(AndNode{std::move(children)});
}

SpecPtr keys(std::vector<Keyword> required, std::vector<Keyword> optional) {
  return std::make_shared<const SpecForm>(KeysNode{std::move(required), std::move(optional)});
}

SpecPtr coll_of(SpecPtr child, std::optional<std::uint64_t> min_count,
                std::optional<std::uint64_t> max_count) {
  return std::make_shared<const SpecForm>(CollOfNode{std::move(child), min_count, max_count});
}

SpecPtr with_gen(SpecPtr child, std::string generator, Value params) {
  return std::make_shared<const SpecForm>(
      WithGenNode{std::move(child), std::move(generator), std::move(params)});
}

}  // namespace spec
}  // namespace regspec
