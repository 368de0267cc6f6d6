#ifndef FINMOD_FORMULA_HPP
#define FINMOD_FORMULA_HPP

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace finmod {

enum class Connective {
  variable,
  falsum,
  verum,
  negation,
  conjunction,
  disjunction,
  implication,
  biconditional,
  diamond,
  box
};

/**
 * Immutable modal formula. Nodes are shared, so copies are cheap and
 * substitution reuses untouched subtrees.
 */
class Formula {
 public:
  static Formula var(std::string name) {
    return Formula(std::make_shared<Node>(Connective::variable, std::move(name)));
  }
  static Formula falsum() { return Formula(std::make_shared<Node>(Connective::falsum)); }
  static Formula verum() { return Formula(std::make_shared<Node>(Connective::verum)); }
  static Formula neg(Formula f) { return unary(Connective::negation, std::move(f)); }
  static Formula dia(Formula f) { return unary(Connective::diamond, std::move(f)); }
  static Formula box(Formula f) { return unary(Connective::box, std::move(f)); }
  static Formula conj(Formula a, Formula b) {
    return binary(Connective::conjunction, std::move(a), std::move(b));
  }
  static Formula disj(Formula a, Formula b) {
    return binary(Connective::disjunction, std::move(a), std::move(b));
  }
  static Formula impl(Formula a, Formula b) {
    return binary(Connective::implication, std::move(a), std::move(b));
  }
  static Formula iff(Formula a, Formula b) {
    return binary(Connective::biconditional, std::move(a), std::move(b));
  }

  Connective op() const noexcept { return node_->op; }
  const std::string& name() const noexcept { return node_->name; }
  /// Operand of a unary connective, left operand of a binary one.
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }

  bool is_unary() const noexcept {
    return op() == Connective::negation || op() == Connective::diamond ||
           op() == Connective::box;
  }
  bool is_binary() const noexcept {
    return op() == Connective::conjunction || op() == Connective::disjunction ||
           op() == Connective::implication || op() == Connective::biconditional;
  }

  /// Variables in sorted order.
  std::vector<std::string> variables() const {
    std::set<std::string> out;
    collect(out);
    return {out.begin(), out.end()};
  }

  std::size_t modal_depth() const {
    if (is_unary()) {
      std::size_t d = lhs().modal_depth();
      return op() == Connective::negation ? d : d + 1;
    }
    if (is_binary()) return std::max(lhs().modal_depth(), rhs().modal_depth());
    return 0;
  }

  /// Replaces each variable named in `subst` by its image.
  Formula substitute(
      const std::vector<std::pair<std::string, Formula>>& subst) const {
    if (op() == Connective::variable) {
      for (const auto& [v, f] : subst)
        if (v == name()) return f;
      return *this;
    }
    if (is_unary()) return unary(op(), lhs().substitute(subst));
    if (is_binary())
      return binary(op(), lhs().substitute(subst), rhs().substitute(subst));
    return *this;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    if (a.op() == Connective::variable) return a.name() == b.name();
    if (a.is_unary()) return a.lhs() == b.lhs();
    if (a.is_binary()) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    return true;
  }

 private:
  struct Node {
    explicit Node(Connective c, std::string n = {}) : op(c), name(std::move(n)) {}
    Connective op;
    std::string name;
    std::shared_ptr<const Formula> lhs;
    std::shared_ptr<const Formula> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula unary(Connective c, Formula f) {
    auto n = std::make_shared<Node>(c);
    n->lhs = std::make_shared<const Formula>(std::move(f));
    return Formula(std::move(n));
  }
  static Formula binary(Connective c, Formula a, Formula b) {
    auto n = std::make_shared<Node>(c);
    n->lhs = std::make_shared<const Formula>(std::move(a));
    n->rhs = std::make_shared<const Formula>(std::move(b));
    return Formula(std::move(n));
  }

  void collect(std::set<std::string>& out) const {
    if (op() == Connective::variable) out.insert(name());
    if (is_unary() || is_binary()) lhs().collect(out);
    if (is_binary()) rhs().collect(out);
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

enum class Tok {
  ident,
  kw_true,
  kw_false,
  neg,
  dia,
  box,
  conj,
  disj,
  impl,
  iff,
  lparen,
  rparen,
  end
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s) {
  // UTF-8 spellings of the accepted Unicode aliases.
  static const std::pair<std::string_view, Tok> kSymbols[] = {
      {"<->", Tok::iff},          {"->", Tok::impl},       {"<>", Tok::dia},
      {"[]", Tok::box},           {"~", Tok::neg},         {"!", Tok::neg},
      {"&", Tok::conj},           {"|", Tok::disj},        {"(", Tok::lparen},
      {")", Tok::rparen},         {"\xC2\xAC", Tok::neg},  // ¬
      {"\xE2\x97\x87", Tok::dia},                          // ◇
      {"\xE2\x97\x8A", Tok::dia},                          // ◊
      {"\xE2\x96\xA1", Tok::box},                          // □
      {"\xE2\x88\xA7", Tok::conj},                         // ∧
      {"\xE2\x88\xA8", Tok::disj},                         // ∨
      {"\xE2\x86\x92", Tok::impl},                         // →
      {"\xE2\x86\x94", Tok::iff},                          // ↔
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string word(s.substr(i, j - i));
      Tok kind = word == "true"    ? Tok::kw_true
                 : word == "false" ? Tok::kw_false
                                   : Tok::ident;
      out.push_back({kind, std::move(word), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [text, kind] : kSymbols) {
      if (s.substr(i, text.size()) == text) {
        out.push_back({kind, std::string(text), i});
        i += text.size();
        matched = true;
        break;
      }
    }
    if (!matched)
      throw ParseError("unexpected character at offset " + std::to_string(i),
                       i, out.size());
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

/// Recursive descent, one function per precedence level.
class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[at_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("syntax error at token " + std::to_string(at_) +
                         " (offset " + std::to_string(peek().pos) + "): " + msg,
                     peek().pos, at_);
  }

  Formula parse_iff() {
    Formula f = parse_impl();
    while (peek().kind == Tok::iff) {
      ++at_;
      f = Formula::iff(std::move(f), parse_impl());
    }
    return f;
  }

  Formula parse_impl() {
    Formula f = parse_disj();
    if (peek().kind == Tok::impl) {
      ++at_;
      return Formula::impl(std::move(f), parse_impl());
    }
    return f;
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (peek().kind == Tok::disj) {
      ++at_;
      f = Formula::disj(std::move(f), parse_conj());
    }
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_unary();
    while (peek().kind == Tok::conj) {
      ++at_;
      f = Formula::conj(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::neg:
        ++at_;
        return Formula::neg(parse_unary());
      case Tok::dia:
        ++at_;
        return Formula::dia(parse_unary());
      case Tok::box:
        ++at_;
        return Formula::box(parse_unary());
      case Tok::ident: {
        std::string name = peek().text;
        ++at_;
        return Formula::var(std::move(name));
      }
      case Tok::kw_true:
        ++at_;
        return Formula::verum();
      case Tok::kw_false:
        ++at_;
        return Formula::falsum();
      case Tok::lparen: {
        ++at_;
        Formula f = parse_iff();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        ++at_;
        return f;
      }
      case Tok::end:
        fail("unexpected end of formula");
      default:
        fail("unexpected '" + peek().text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

inline int precedence(Connective c) {
  switch (c) {
    case Connective::biconditional:
      return 1;
    case Connective::implication:
      return 2;
    case Connective::disjunction:
      return 3;
    case Connective::conjunction:
      return 4;
    case Connective::negation:
    case Connective::diamond:
    case Connective::box:
      return 5;
    default:
      return 6;
  }
}

inline void print(const Formula& f, std::string& out) {
  auto child = [&](const Formula& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  const int p = precedence(f.op());
  switch (f.op()) {
    case Connective::variable:
      out += f.name();
      return;
    case Connective::falsum:
      out += "false";
      return;
    case Connective::verum:
      out += "true";
      return;
    case Connective::negation:
      out += '~';
      child(f.lhs(), precedence(f.lhs().op()) < p);
      return;
    case Connective::diamond:
      out += "<>";
      child(f.lhs(), precedence(f.lhs().op()) < p);
      return;
    case Connective::box:
      out += "[]";
      child(f.lhs(), precedence(f.lhs().op()) < p);
      return;
    case Connective::implication:
      // Right-associative.
      child(f.lhs(), precedence(f.lhs().op()) <= p);
      out += " -> ";
      child(f.rhs(), precedence(f.rhs().op()) < p);
      return;
    default: {
      const char* sym = f.op() == Connective::conjunction   ? " & "
                        : f.op() == Connective::disjunction ? " | "
                                                            : " <-> ";
      child(f.lhs(), precedence(f.lhs().op()) < p);
      out += sym;
      child(f.rhs(), precedence(f.rhs().op()) <= p);
      return;
    }
  }
}

}  // namespace detail

/**
 * Parses the ASCII grammar: unary ~ <> [] bind tightest, then &, then |,
 * then right-associative ->, then <->. & | <-> associate to the left.
 * Unicode aliases are accepted.
 */
inline Formula parse_formula(std::string_view text) {
  return detail::Parser(text).parse();
}

/// ASCII rendering with the fewest parentheses that parse back to f.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, out);
  return out;
}

}  // namespace finmod

#endif  // FINMOD_FORMULA_HPP
