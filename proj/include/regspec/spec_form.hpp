#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "regspec/keyword.hpp"
#include "regspec/value.hpp"

namespace regspec {

class SpecForm;
using SpecPtr = std::shared_ptr<const SpecForm>;

struct PredNode {
  std::string predicate;
  Value params;
};

struct RefNode {
  Keyword target;
};

struct OrBranch {
  Keyword tag;
  SpecPtr child;
};

struct OrNode {
  std::vector<OrBranch> branches;
};

struct AndNode {
  std::vector<SpecPtr> children;
};

struct KeysNode {
  std::vector<Keyword> required;
  std::vector<Keyword> optional;
};

struct CollOfNode {
  SpecPtr child;
  std::optional<std::uint64_t> min_count;
  std::optional<std::uint64_t> max_count;
};

struct WithGenNode {
  SpecPtr child;
  std::string generator;
  Value params;
};

enum class FormKind { Pred, Ref, Or, And, Keys, CollOf, WithGen };

std::string_view to_string(FormKind kind);

/// A node of the contract AST. Immutable once built; children are shared.
class SpecForm {
 public:
  using Node = std::variant<PredNode, RefNode, OrNode, AndNode, KeysNode, CollOfNode, WithGenNode>;

  explicit SpecForm(Node node) : node_(std::move(node)) {}

  FormKind kind() const noexcept { return static_cast<FormKind>(node_.index()); }
  const Node& node() const noexcept { return node_; }

  template <typename T>
  const T& as() const {
    return std::get<T>(node_);
  }
  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&node_);
  }

  friend bool operator==(const SpecForm& a, const SpecForm& b);

 private:
  Node node_;
};

/// Throws Error(MalformedSpec) when a node, or any descendant, breaks the
/// AST invariants (empty or/and, duplicate or-tags, overlapping keys,
/// min-count > max-count, null child).
void check_well_formed(const SpecForm& form);

bool equal(const SpecPtr& a, const SpecPtr& b);

namespace spec {

SpecPtr pred(std::string name, Value params = Value());
SpecPtr one_of(Vector values);
SpecPtr ref(Keyword target);
SpecPtr or_(std::vector<OrBranch> branches);
/// Or whose branch tags equal the referenced spec names.
SpecPtr or_refs(const std::vector<Keyword>& targets);
SpecPtr and_(std::vector<SpecPtr> children);
SpecPtr keys(std::vector<Keyword> required, std::vector<Keyword> optional = {});
SpecPtr coll_of(SpecPtr child, std::optional<std::uint64_t> min_count = std::nullopt,
                std::optional<std::uint64_t> max_count = std::nullopt);
SpecPtr with_gen(SpecPtr child, std::string generator, Value params = Value());

}  // namespace spec

}  // namespace regspec
