#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regspec/engine.hpp"
#include "regspec/error.hpp"
#include "regspec/keyword.hpp"
#include "regspec/registry.hpp"

namespace regspec::cnl {

enum class Combinator { Or, And, Keys, CollOf };

std::string_view to_string(Combinator c);

/// One sentence of a CNL document. Atomic when `combinator` is empty.
struct Element {
  Keyword name;
  std::optional<Combinator> combinator;
  std::vector<Keyword> children;
  bool is_root = false;
  std::optional<std::string> source;
  /// 1-based source line of the sentence; 0 when not parsed from text.
  int line = 0;

  bool atomic() const { return !combinator.has_value(); }
  /// "Atomic" or the combinator name.
  std::string_view kind_name() const;
};

struct Document {
  std::optional<std::string> ns;
  std::vector<Element> elements;
  std::optional<Keyword> root;

  const Element* find(const Keyword& name) const;
};

/// Same names, kinds, child order, root flags, sources and namespace; line
/// numbers are ignored.
bool equivalent(const Document& a, const Document& b);

/// A parse failure. `line` is 1-based; `expected` names the sentence
/// template the line was held against, when one applies.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, std::string expected, const std::string& message,
             std::vector<Keyword> names = {})
      : Error(code, message), line_(line), expected_(std::move(expected)), names_(std::move(names)) {}

  int line() const noexcept { return line_; }
  const std::string& expected() const noexcept { return expected_; }
  /// For CyclicReference: the names on the cycle.
  const std::vector<Keyword>& names() const noexcept { return names_; }

 private:
  int line_;
  std::string expected_;
  std::vector<Keyword> names_;
};

namespace templates {
inline constexpr std::string_view kAtomic = "The contract <k> must hold.";
inline constexpr std::string_view kOr =
    "The contract <k> holds, if at least one of the contracts <k1>, ..., <kn> holds.";
inline constexpr std::string_view kAnd = "The contract <k> holds, if all of the contracts <k1>, ..., <kn> hold.";
inline constexpr std::string_view kKeys =
    "The contract <k> holds, if for the keys and values of this map the contracts <k1>, ..., <kn> hold.";
inline constexpr std::string_view kCollOf =
    "The contract <k> holds, if for the members of this collection the contract <k1> holds.";
inline constexpr std::string_view kRoot = "The root contract is <k>.";
inline constexpr std::string_view kSource = "source: \"<quote>\"";
inline constexpr std::string_view kNamespace = "namespace: <ident>";
}  // namespace templates

/// Parses CNL text, one sentence per line. Throws cnl::ParseError with code
/// SyntaxError, DuplicateName, DanglingSource, MultipleRoots, UnknownRoot or
/// CyclicReference.
Document parse(std::string_view text);

/// Canonical text: namespace directive, one sentence per element (each
/// followed by its source line), then the root sentence. Throws
/// Error(MalformedDocument) when a name cannot be written under the
/// document namespace.
std::string render(const Document& doc);

/// The sentence for a single element, names written relative to `ns`.
std::string render_sentence(const Element& element, std::string_view ns = {});

struct Abstraction {
  Document document;
  /// Names reached through more than one parent (emitted once).
  std::vector<Keyword> shared;
};

/// Walks the registry from `root` and produces the CNL abstraction,
/// children before parents. Throws UnknownSpec.
Abstraction abstract(const Registry& registry, const Keyword& root);

/// How a registry entry is abstracted: atomic (nullopt) or a combinator
/// over named children. A bare ref is an and over its single target.
struct Shape {
  std::optional<Combinator> combinator;
  std::vector<Keyword> children;
};
Shape shape_of(const RegistryEntry& entry);

enum class FindingKind { MissingSpec, CombinatorMismatch, ChildrenMismatch, RootMismatch, UnreachableElement };
enum class Severity { Error, Warning };

std::string_view to_string(FindingKind kind);
std::string_view to_string(Severity severity);

struct Finding {
  FindingKind kind = FindingKind::MissingSpec;
  Severity severity = Severity::Error;
  Keyword name;
  int line = 0;
  std::string cnl_kind;       // CombinatorMismatch
  std::string registry_kind;  // CombinatorMismatch
  std::vector<Keyword> expected;  // ChildrenMismatch: per the CNL; RootMismatch: [cnl root]
  std::vector<Keyword> actual;    // ChildrenMismatch: per the registry; RootMismatch: [registry root]
  std::string message;
};

/// Every structural claim of `doc` checked against `registry`. Atomic
/// elements only claim existence. Or/And/CollOf children compare in order,
/// keys children as sets. Empty result means sound.
std::vector<Finding> soundness_check(const Document& doc, const Registry& registry,
                                     const std::optional<Keyword>& registry_root = std::nullopt);

bool has_errors(const std::vector<Finding>& findings);

struct Trace {
  Problem problem;
  /// The innermost element of the problem's via chain present in the
  /// document; the root when none is (and `below_granularity` is set).
  std::optional<Keyword> element;
  std::string sentence;
  std::optional<std::string> source;
  bool below_granularity = false;
};

std::vector<Trace> traceback(const Document& doc, const std::vector<Problem>& problems);

}  // namespace regspec::cnl
