#include "regspec/cnl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace regspec::cnl {

std::string_view to_string(Combinator c) {
  switch (c) {
    case Combinator::Or: return "Or";
    case Combinator::And: return "And";
    case Combinator::Keys: return "Keys";
    case Combinator::CollOf: return "CollOf";
  }
  return "?";
}

std::string_view Element::kind_name() const { return combinator ? to_string(*combinator) : "Atomic"; }

const Element* Document::find(const Keyword& name) const {
  for (const auto& e : elements)
    if (e.name == name) return &e;
  return nullptr;
}

bool equivalent(const Document& a, const Document& b) {
  if (a.ns != b.ns || a.root != b.root || a.elements.size() != b.elements.size()) return false;
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    const auto &x = a.elements[i], &y = b.elements[i];
    if (x.name != y.name || x.combinator != y.combinator || x.children != y.children ||
        x.is_root != y.is_root || x.source != y.source)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// parse

namespace {

struct Token {
  enum class Type { Word, Name, Comma, Period } type;
  std::string text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (start == i) break;
    std::string_view chunk = line.substr(start, i - start);
    std::optional<Token> punct;
    if (chunk.size() > 1 && (chunk.back() == ',' || chunk.back() == '.')) {
      punct = Token{chunk.back() == ',' ? Token::Type::Comma : Token::Type::Period, std::string(1, chunk.back())};
      chunk.remove_suffix(1);
    }
    if (chunk == ",") out.push_back({Token::Type::Comma, ","});
    else if (chunk == ".") out.push_back({Token::Type::Period, "."});
    else out.push_back({chunk.substr(0, 2) == "::" ? Token::Type::Name : Token::Type::Word, std::string(chunk)});
    if (punct) out.push_back(*punct);
  }
  return out;
}

class SentenceParser {
 public:
  SentenceParser(std::vector<Token> tokens, int line, const std::string& ns)
      : toks_(std::move(tokens)), line_(line), ns_(ns) {}

  void set_expected(std::string_view t) { expected_ = std::string(t); }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ErrorCode::SyntaxError, line_, expected_,
                     "line " + std::to_string(line_) + ": " + what + "; expected `" + expected_ + "`");
  }

  std::string describe_next() const {
    if (pos_ >= toks_.size()) return "end of line";
    return "'" + toks_[pos_].text + "'";
  }

  bool peek_word(std::string_view w, std::size_t ahead = 0) const {
    std::size_t p = pos_ + ahead;
    return p < toks_.size() && toks_[p].type == Token::Type::Word && toks_[p].text == w;
  }

  void words(std::string_view phrase) {
    std::size_t i = 0;
    while (i < phrase.size()) {
      std::size_t j = phrase.find(' ', i);
      if (j == std::string_view::npos) j = phrase.size();
      std::string_view w = phrase.substr(i, j - i);
      if (!peek_word(w)) fail("found " + describe_next() + " where '" + std::string(w) + "' belongs");
      ++pos_;
      i = j + 1;
    }
  }

  void punct(Token::Type t) {
    if (pos_ >= toks_.size() || toks_[pos_].type != t)
      fail("found " + describe_next() + " where '" + (t == Token::Type::Comma ? "," : ".") + "' belongs");
    ++pos_;
  }

  Keyword name() {
    if (pos_ >= toks_.size() || toks_[pos_].type != Token::Type::Name)
      fail("found " + describe_next() + " where a contract name (::name or ::ns/name) belongs");
    auto k = Keyword::try_parse(toks_[pos_].text, ns_);
    if (!k) fail("'" + toks_[pos_].text + "' is not a valid contract name");
    ++pos_;
    return *k;
  }

  std::vector<Keyword> name_list() {
    std::vector<Keyword> out{name()};
    while (pos_ < toks_.size() && toks_[pos_].type == Token::Type::Comma) {
      ++pos_;
      out.push_back(name());
    }
    return out;
  }

  void end() {
    if (pos_ != toks_.size()) fail("unexpected " + describe_next() + " after the end of the sentence");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
  const std::string& ns_;
  std::string expected_ = "a contract sentence";
};

const std::string kAnySentence =
    "The contract <k> must hold. | The contract <k> holds, if ... | The root contract is <k>.";

// Parses a contract sentence (everything after "The").
Element contract_sentence(SentenceParser& p, int line) {
  p.set_expected(kAnySentence);
  p.words("contract");
  Element e;
  e.line = line;
  e.name = p.name();
  if (p.peek_word("must")) {
    p.set_expected(templates::kAtomic);
    p.words("must hold");
    p.punct(Token::Type::Period);
    p.end();
    return e;
  }
  p.set_expected("The contract <k> must hold. | The contract <k> holds, if ...");
  p.words("holds");
  p.punct(Token::Type::Comma);
  p.words("if");
  if (p.peek_word("at")) {
    p.set_expected(templates::kOr);
    p.words("at least one of the contracts");
    e.combinator = Combinator::Or;
    e.children = p.name_list();
    p.words("holds");
  } else if (p.peek_word("all")) {
    p.set_expected(templates::kAnd);
    p.words("all of the contracts");
    e.combinator = Combinator::And;
    e.children = p.name_list();
    p.words("hold");
  } else if (p.peek_word("for") && p.peek_word("keys", 2)) {
    p.set_expected(templates::kKeys);
    p.words("for the keys and values of this map the contracts");
    e.combinator = Combinator::Keys;
    e.children = p.name_list();
    p.words("hold");
  } else if (p.peek_word("for") && p.peek_word("members", 2)) {
    p.set_expected(templates::kCollOf);
    p.words("for the members of this collection the contract");
    e.combinator = Combinator::CollOf;
    e.children.push_back(p.name());
    p.words("holds");
  } else {
    p.set_expected(std::string(templates::kOr) + " | " + std::string(templates::kAnd) + " | " +
                   std::string(templates::kKeys) + " | " + std::string(templates::kCollOf));
    p.fail("unrecognised condition after 'holds, if'");
  }
  p.punct(Token::Type::Period);
  p.end();
  return e;
}

std::optional<std::string> parse_quoted(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::nullopt;
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '\\') {
      if (i + 2 >= s.size()) return std::nullopt;
      char n = s[++i];
      if (n == 'n') out.push_back('\n');
      else if (n == '"' || n == '\\') out.push_back(n);
      else return std::nullopt;
    } else if (c == '"') {
      return std::nullopt;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool starts_with_directive(std::string_view line, std::string_view directive) {
  return line.substr(0, directive.size()) == directive;
}

void check_acyclic(const Document& doc) {
  std::map<Keyword, const Element*> by_name;
  for (const auto& e : doc.elements) by_name[e.name] = &e;
  enum class Mark { None, Active, Done };
  std::map<Keyword, Mark> mark;
  std::vector<Keyword> stack;
  std::function<void(const Element&)> visit = [&](const Element& e) {
    mark[e.name] = Mark::Active;
    stack.push_back(e.name);
    for (const auto& c : e.children) {
      auto it = by_name.find(c);
      if (it == by_name.end()) continue;
      if (mark[c] == Mark::Active) {
        std::vector<Keyword> cycle(std::find(stack.begin(), stack.end(), c), stack.end());
        std::string names;
        for (const auto& k : cycle) names += (names.empty() ? "" : " -> ") + k.str();
        throw ParseError(ErrorCode::CyclicReference, it->second->line, "",
                         "line " + std::to_string(it->second->line) + ": cyclic reference " + names + " -> " +
                             c.str(),
                         cycle);
      }
      if (mark[c] == Mark::None) visit(*it->second);
    }
    stack.pop_back();
    mark[e.name] = Mark::Done;
  };
  for (const auto& e : doc.elements)
    if (mark[e.name] == Mark::None) visit(e);
}

}  // namespace

Document parse(std::string_view text) {
  Document doc;
  std::string ns;
  std::set<Keyword> names;
  int root_line = 0;
  bool seen_content = false;
  // Index of the element a `source:` line may attach to.
  std::optional<std::size_t> attach;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') {
      if (nl == text.size()) break;
      continue;
    }

    if (starts_with_directive(line, "namespace:")) {
      if (seen_content)
        throw ParseError(ErrorCode::SyntaxError, line_no, std::string(templates::kNamespace),
                         "line " + std::to_string(line_no) + ": the namespace directive must be the first line");
      std::string_view ident = trim(line.substr(10));
      if (ident.empty() || !Keyword::valid_namespace(ident))
        throw ParseError(ErrorCode::SyntaxError, line_no, std::string(templates::kNamespace),
                         "line " + std::to_string(line_no) + ": '" + std::string(ident) + "' is not a namespace");
      ns = std::string(ident);
      doc.ns = ns;
      seen_content = true;
      attach.reset();
    } else if (starts_with_directive(line, "source:")) {
      seen_content = true;
      if (!attach)
        throw ParseError(ErrorCode::DanglingSource, line_no, std::string(templates::kSource),
                         "line " + std::to_string(line_no) + ": source line does not follow a contract sentence");
      auto q = parse_quoted(trim(line.substr(7)));
      if (!q)
        throw ParseError(ErrorCode::SyntaxError, line_no, std::string(templates::kSource),
                         "line " + std::to_string(line_no) + ": source text must be one double-quoted string");
      doc.elements[*attach].source = std::move(*q);
      attach.reset();
    } else {
      seen_content = true;
      attach.reset();
      SentenceParser p(tokenize(line), line_no, ns);
      p.set_expected(kAnySentence);
      p.words("The");
      if (p.peek_word("root")) {
        p.set_expected(templates::kRoot);
        p.words("root contract is");
        Keyword root = p.name();
        p.punct(Token::Type::Period);
        p.end();
        if (doc.root)
          throw ParseError(ErrorCode::MultipleRoots, line_no, std::string(templates::kRoot),
                           "line " + std::to_string(line_no) + ": root already declared on line " +
                               std::to_string(root_line));
        doc.root = root;
        root_line = line_no;
      } else {
        Element e = contract_sentence(p, line_no);
        if (!names.insert(e.name).second)
          throw ParseError(ErrorCode::DuplicateName, line_no, "",
                           "line " + std::to_string(line_no) + ": contract " + e.name.str() + " is already defined");
        doc.elements.push_back(std::move(e));
        attach = doc.elements.size() - 1;
      }
    }
    if (nl == text.size()) break;
  }

  if (doc.root) {
    bool found = false;
    for (auto& e : doc.elements)
      if (e.name == *doc.root) e.is_root = found = true;
    if (!found)
      throw ParseError(ErrorCode::UnknownRoot, root_line, std::string(templates::kRoot),
                       "line " + std::to_string(root_line) + ": root " + doc.root->str() +
                           " is not defined in this document");
  }
  check_acyclic(doc);
  return doc;
}

// ---------------------------------------------------------------------------
// render

namespace {

std::string name_text(const Keyword& k, std::string_view ns) {
  if (!ns.empty() && k.ns().empty())
    throw Error(ErrorCode::MalformedDocument,
                "contract " + k.str() + " has no namespace and cannot be written under namespace " + std::string(ns));
  return k.str_relative(ns);
}

std::string name_list(const std::vector<Keyword>& names, std::string_view ns) {
  std::string out;
  for (const auto& k : names) {
    if (!out.empty()) out += ", ";
    out += name_text(k, ns);
  }
  return out;
}

}  // namespace

std::string render_sentence(const Element& e, std::string_view ns) {
  const std::string head = "The contract " + name_text(e.name, ns);
  if (!e.combinator) return head + " must hold.";
  switch (*e.combinator) {
    case Combinator::Or:
      return head + " holds, if at least one of the contracts " + name_list(e.children, ns) + " holds.";
    case Combinator::And: return head + " holds, if all of the contracts " + name_list(e.children, ns) + " hold.";
    case Combinator::Keys:
      return head + " holds, if for the keys and values of this map the contracts " + name_list(e.children, ns) +
             " hold.";
    case Combinator::CollOf:
      return head + " holds, if for the members of this collection the contract " + name_list(e.children, ns) +
             " holds.";
  }
  return head;
}

std::string render(const Document& doc) {
  std::string ns = doc.ns.value_or("");
  std::string out;
  if (doc.ns) out += "namespace: " + *doc.ns + "\n\n";
  for (const auto& e : doc.elements) {
    if (e.combinator) {
      std::size_t n = e.children.size();
      if (n == 0 || (*e.combinator == Combinator::CollOf && n != 1))
        throw Error(ErrorCode::MalformedDocument, "element " + e.name.str() + " has the wrong number of children");
    }
    out += render_sentence(e, ns) + "\n";
    if (e.source) out += "source: " + quote(*e.source) + "\n";
  }
  if (doc.root) out += "The root contract is " + name_text(*doc.root, ns) + ".\n";
  return out;
}

// ---------------------------------------------------------------------------
// abstract

Shape shape_of(const RegistryEntry& entry) {
  Shape s;
  if (entry.meta.opaque) return s;
  const SpecForm& f = *entry.form;
  auto ref_target = [](const SpecPtr& p) -> const Keyword* {
    const auto* r = p->get_if<RefNode>();
    return r ? &r->target : nullptr;
  };
  switch (f.kind()) {
    case FormKind::Pred:
    case FormKind::WithGen: return s;
    case FormKind::Ref:
      s.combinator = Combinator::And;
      s.children.push_back(f.as<RefNode>().target);
      return s;
    case FormKind::Or: {
      for (const auto& b : f.as<OrNode>().branches) {
        const Keyword* t = ref_target(b.child);
        if (!t) return {};
        s.children.push_back(*t);
      }
      s.combinator = Combinator::Or;
      return s;
    }
    case FormKind::And: {
      for (const auto& c : f.as<AndNode>().children) {
        const Keyword* t = ref_target(c);
        if (!t) return {};
        s.children.push_back(*t);
      }
      s.combinator = Combinator::And;
      return s;
    }
    case FormKind::Keys: {
      const auto& k = f.as<KeysNode>();
      s.combinator = Combinator::Keys;
      s.children = k.required;
      s.children.insert(s.children.end(), k.optional.begin(), k.optional.end());
      return s;
    }
    case FormKind::CollOf: {
      const Keyword* t = ref_target(f.as<CollOfNode>().child);
      if (!t) return {};
      s.combinator = Combinator::CollOf;
      s.children.push_back(*t);
      return s;
    }
  }
  return s;
}

Abstraction abstract(const Registry& registry, const Keyword& root) {
  Abstraction out;
  out.document.ns = root.ns().empty() ? std::nullopt : std::optional<std::string>(root.ns());
  out.document.root = root;
  std::set<Keyword> emitted;
  std::set<Keyword> in_progress;
  std::map<Keyword, int> parents;

  std::function<void(const Keyword&)> visit = [&](const Keyword& name) {
    if (emitted.count(name) || in_progress.count(name)) return;
    const RegistryEntry& entry = registry.entry(name);
    in_progress.insert(name);
    Shape shape = shape_of(entry);
    for (const auto& c : shape.children) {
      ++parents[c];
      visit(c);
    }
    in_progress.erase(name);
    Element e;
    e.name = name;
    e.combinator = shape.combinator;
    e.children = std::move(shape.children);
    e.is_root = name == root;
    e.source = entry.meta.source_text;
    out.document.elements.push_back(std::move(e));
    emitted.insert(name);
  };
  visit(root);

  for (const auto& [k, n] : parents)
    if (n > 1) out.shared.push_back(k);
  return out;
}

// ---------------------------------------------------------------------------
// soundness

std::string_view to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::MissingSpec: return "MissingSpec";
    case FindingKind::CombinatorMismatch: return "CombinatorMismatch";
    case FindingKind::ChildrenMismatch: return "ChildrenMismatch";
    case FindingKind::RootMismatch: return "RootMismatch";
    case FindingKind::UnreachableElement: return "UnreachableElement";
  }
  return "?";
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

bool has_errors(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::Error; });
}

namespace {

Finding make_finding(FindingKind kind, Severity severity, Keyword name, int line) {
  Finding f;
  f.kind = kind;
  f.severity = severity;
  f.name = std::move(name);
  f.line = line;
  return f;
}

std::string names_text(const std::vector<Keyword>& ks) {
  std::string out = "[";
  for (std::size_t i = 0; i < ks.size(); ++i) out += (i ? ", " : "") + ks[i].str();
  return out + "]";
}

}  // namespace

std::vector<Finding> soundness_check(const Document& doc, const Registry& registry,
                                     const std::optional<Keyword>& registry_root) {
  std::vector<Finding> out;
  std::set<Keyword> reported_missing;

  auto missing = [&](const Keyword& k, int line, const std::string& context) {
    if (!reported_missing.insert(k).second) return;
    Finding f = make_finding(FindingKind::MissingSpec, Severity::Error, k, line);
    f.message = context + k.str() + " names no registered contract";
    out.push_back(std::move(f));
  };

  for (const auto& e : doc.elements) {
    const RegistryEntry* entry = registry.find(e.name);
    if (!entry) {
      missing(e.name, e.line, "");
      continue;
    }
    if (e.atomic()) continue;
    Shape shape = shape_of(*entry);
    if (shape.combinator != e.combinator) {
      Finding f = make_finding(FindingKind::CombinatorMismatch, Severity::Error, e.name, e.line);
      f.cnl_kind = std::string(e.kind_name());
      f.registry_kind = shape.combinator ? std::string(to_string(*shape.combinator)) : "Atomic";
      f.message = e.name.str() + " is " + f.cnl_kind + " in the CNL but " + f.registry_kind + " in the registry";
      out.push_back(std::move(f));
    } else {
      bool same;
      if (*e.combinator == Combinator::Keys) {
        std::set<Keyword> a(e.children.begin(), e.children.end()), b(shape.children.begin(), shape.children.end());
        same = a == b && a.size() == e.children.size();
      } else {
        same = e.children == shape.children;
      }
      if (!same) {
        Finding f = make_finding(FindingKind::ChildrenMismatch, Severity::Error, e.name, e.line);
        f.expected = e.children;
        f.actual = shape.children;
        f.message = e.name.str() + " lists " + names_text(e.children) + " in the CNL but the registry has " +
                    names_text(shape.children);
        out.push_back(std::move(f));
      }
    }
    for (const auto& c : e.children)
      if (!doc.find(c) && !registry.contains(c)) missing(c, e.line, "child ");
  }

  if (registry_root && doc.root != registry_root) {
    Finding f = make_finding(FindingKind::RootMismatch, Severity::Error, registry_root.value(), 0);
    if (doc.root) {
      f.expected.push_back(*doc.root);
      if (const Element* e = doc.find(*doc.root)) f.line = e->line;
    }
    f.actual.push_back(*registry_root);
    f.message = "the CNL root is " + (doc.root ? doc.root->str() : std::string("undeclared")) +
                " but the ruleset root is " + registry_root->str();
    out.push_back(std::move(f));
  }

  if (doc.root) {
    std::set<Keyword> reached;
    std::vector<Keyword> stack{*doc.root};
    while (!stack.empty()) {
      Keyword k = stack.back();
      stack.pop_back();
      if (!reached.insert(k).second) continue;
      if (const Element* e = doc.find(k))
        for (const auto& c : e->children) stack.push_back(c);
    }
    for (const auto& e : doc.elements) {
      if (reached.count(e.name)) continue;
      Finding f = make_finding(FindingKind::UnreachableElement, Severity::Warning, e.name, e.line);
      f.message = e.name.str() + " is not reachable from the root " + doc.root->str();
      out.push_back(std::move(f));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// traceback

std::vector<Trace> traceback(const Document& doc, const std::vector<Problem>& problems) {
  std::vector<Trace> out;
  const std::string ns = doc.ns.value_or("");
  for (const auto& p : problems) {
    Trace t;
    t.problem = p;
    const Element* hit = nullptr;
    for (auto it = p.via.rbegin(); it != p.via.rend() && !hit; ++it) hit = doc.find(*it);
    if (!hit) {
      t.below_granularity = true;
      if (doc.root) hit = doc.find(*doc.root);
    }
    if (hit) {
      t.element = hit->name;
      t.sentence = render_sentence(*hit, ns);
      t.source = hit->source;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace regspec::cnl
