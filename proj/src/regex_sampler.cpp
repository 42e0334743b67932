#include "regspec/regex_sampler.hpp"

#include <algorithm>
#include <bitset>
#include <cctype>
#include <memory>
#include <vector>

#include "regspec/error.hpp"

namespace regspec {
namespace {

using CharSet = std::bitset<128>;

struct Node;
using Sequence = std::vector<std::unique_ptr<Node>>;

struct Node {
  enum class Type { Chars, Group } type = Type::Chars;
  CharSet chars;                      // Chars
  std::vector<Sequence> alternatives;  // Group
  std::size_t min = 1;
  std::size_t max = 1;
  bool unbounded = false;
};

CharSet printable() {
  CharSet s;
  for (int c = 0x20; c < 0x7f; ++c) s.set(c);
  return s;
}

CharSet range(char lo, char hi) {
  CharSet s;
  for (int c = lo; c <= hi; ++c) s.set(c);
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view p) : p_(p) {}

  Node parse() {
    if (!p_.empty() && p_.front() == '^') p_.remove_prefix(1);
    if (!p_.empty() && p_.back() == '$' && (p_.size() < 2 || p_[p_.size() - 2] != '\\'))
      p_.remove_suffix(1);
    Node root;
    root.type = Node::Type::Group;
    root.alternatives = alternatives();
    if (pos_ != p_.size()) fail("unbalanced ')'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::NoGenerator,
                "regex-sampler cannot sample /" + std::string(p_) + "/: " + why);
  }

  bool at_end() const { return pos_ >= p_.size(); }
  char peek() const { return p_[pos_]; }

  std::vector<Sequence> alternatives() {
    std::vector<Sequence> alts;
    alts.push_back(sequence());
    while (!at_end() && peek() == '|') {
      ++pos_;
      alts.push_back(sequence());
    }
    return alts;
  }

  Sequence sequence() {
    Sequence seq;
    while (!at_end() && peek() != '|' && peek() != ')') {
      auto atom = std::make_unique<Node>(this->atom());
      quantifier(*atom);
      seq.push_back(std::move(atom));
    }
    return seq;
  }

  Node atom() {
    Node n;
    char c = p_[pos_++];
    switch (c) {
      case '(': {
        if (!at_end() && peek() == '?') {
          if (pos_ + 1 < p_.size() && p_[pos_ + 1] == ':') pos_ += 2;
          else fail("lookaround is not supported");
        }
        n.type = Node::Type::Group;
        n.alternatives = alternatives();
        if (at_end() || peek() != ')') fail("missing ')'");
        ++pos_;
        return n;
      }
      case '[': n.chars = bracket(); return n;
      case '.':
        n.chars = printable();
        return n;
      case '\\': n.chars = escape(); return n;
      case '*': case '+': case '?': case '{': fail("quantifier without operand");
      case '^': case '$': fail("anchors inside the pattern are not supported");
      default:
        if (static_cast<unsigned char>(c) >= 128) fail("non-ASCII literal");
        n.chars.set(static_cast<unsigned char>(c));
        return n;
    }
  }

  CharSet escape() {
    if (at_end()) fail("dangling backslash");
    char c = p_[pos_++];
    CharSet s;
    switch (c) {
      case 'd': return range('0', '9');
      case 'D': return printable() & ~range('0', '9');
      case 'w': return range('a', 'z') | range('A', 'Z') | range('0', '9') | CharSet().set('_');
      case 's': s.set(' '); s.set('\t'); return s;
      case 't': s.set('\t'); return s;
      case 'n': s.set('\n'); return s;
      default:
        if (std::isalnum(static_cast<unsigned char>(c))) fail(std::string("unsupported escape \\") + c);
        s.set(static_cast<unsigned char>(c));
        return s;
    }
  }

  CharSet bracket() {
    CharSet s;
    bool negate = false;
    if (!at_end() && peek() == '^') {
      negate = true;
      ++pos_;
    }
    bool first = true;
    while (!at_end() && (peek() != ']' || first)) {
      first = false;
      char lo = p_[pos_++];
      if (lo == '\\') {
        s |= escape();
        continue;
      }
      if (pos_ + 1 < p_.size() && peek() == '-' && p_[pos_ + 1] != ']') {
        char hi = p_[pos_ + 1];
        pos_ += 2;
        if (hi < lo) fail("reversed range");
        s |= range(lo, hi);
      } else {
        s.set(static_cast<unsigned char>(lo));
      }
    }
    if (at_end()) fail("missing ']'");
    ++pos_;
    return negate ? printable() & ~s : s;
  }

  std::size_t number() {
    std::size_t n = 0;
    bool any = false;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      n = n * 10 + static_cast<std::size_t>(peek() - '0');
      ++pos_;
      any = true;
    }
    if (!any) fail("expected a number in {}");
    return n;
  }

  void quantifier(Node& n) {
    if (at_end()) return;
    switch (peek()) {
      case '?': n.min = 0; n.max = 1; ++pos_; break;
      case '*': n.min = 0; n.max = 0; n.unbounded = true; ++pos_; break;
      case '+': n.min = 1; n.max = 1; n.unbounded = true; ++pos_; break;
      case '{': {
        ++pos_;
        n.min = number();
        n.max = n.min;
        if (!at_end() && peek() == ',') {
          ++pos_;
          if (!at_end() && peek() == '}') n.unbounded = true;
          else n.max = number();
        }
        if (at_end() || peek() != '}') fail("missing '}'");
        ++pos_;
        if (!n.unbounded && n.max < n.min) fail("{n,m} with m < n");
        break;
      }
      default: return;
    }
    if (!at_end() && (peek() == '?' || peek() == '+')) fail("lazy/possessive quantifiers are not supported");
  }

  std::string_view p_;
  std::size_t pos_ = 0;
};

void emit(const Node& n, SplitMix64& rng, std::size_t size, std::string& out);

void emit_seq(const Sequence& seq, SplitMix64& rng, std::size_t size, std::string& out) {
  for (const auto& n : seq) emit(*n, rng, size, out);
}

void emit(const Node& n, SplitMix64& rng, std::size_t size, std::string& out) {
  std::size_t lo = n.min;
  std::size_t hi = n.unbounded ? std::max(n.min, n.max) + std::min<std::size_t>(size, 8) : n.max;
  auto reps = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  for (std::size_t r = 0; r < reps; ++r) {
    if (n.type == Node::Type::Group) {
      const auto& alt = n.alternatives[rng.below(n.alternatives.size())];
      emit_seq(alt, rng, size, out);
    } else {
      std::size_t count = n.chars.count();
      if (count == 0) throw Error(ErrorCode::NoGenerator, "regex-sampler: empty character class");
      std::size_t pick = rng.below(count);
      for (std::size_t c = 0; c < 128; ++c) {
        if (n.chars.test(c) && pick-- == 0) {
          out.push_back(static_cast<char>(c));
          break;
        }
      }
    }
  }
}

}  // namespace

std::string sample_regex(std::string_view pattern, SplitMix64& rng, std::size_t size) {
  Node root = Parser(pattern).parse();
  std::string out;
  emit(root, rng, size, out);
  return out;
}

}  // namespace regspec
