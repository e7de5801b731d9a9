#include "finlin/parser.hpp"

#include <cctype>
#include <optional>
#include <set>

#include "finlin/error.hpp"

namespace finlin {
namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Less,
  Equal,
  Tilde,
  Amp,
  Bar,
  Arrow,
  DoubleArrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (s.compare(i, 3, "<->") == 0) {
      out.push_back({Tok::DoubleArrow, "<->", start});
      i += 3;
      continue;
    }
    if (s.compare(i, 2, "->") == 0) {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '<': k = Tok::Less; break;
      case '=': k = Tok::Equal; break;
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature* sig)
      : toks_(lex(text)), sig_(sig) {}

  Formula run() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

  std::set<std::string> unary_seen, binary_seen;

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().pos);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }

  bool at_quantifier() const {
    const Token& t = peek();
    return t.kind == Tok::Ident && (t.text == "A" || t.text == "E") &&
           peek(1).kind == Tok::Ident;
  }

  std::string variable() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || !is_variable_name(t.text)) fail("expected variable");
    return take().text;
  }

  Formula formula() {
    if (at_quantifier()) return quantified();
    return iff_level();
  }

  Formula quantified() {
    const bool universal = take().text == "A";
    std::string v = variable();
    expect(Tok::Dot, "'.'");
    Formula body = formula();
    return universal ? forall(std::move(v), std::move(body))
                     : exists(std::move(v), std::move(body));
  }

  Formula iff_level() {
    Formula lhs = impl_level();
    while (accept(Tok::DoubleArrow)) lhs = iff(lhs, impl_level());
    return lhs;
  }

  Formula impl_level() {
    Formula lhs = disj_level();
    if (accept(Tok::Arrow)) return implies(lhs, impl_level());
    return lhs;
  }

  Formula disj_level() {
    std::vector<Formula> kids{conj_level()};
    while (accept(Tok::Bar)) kids.push_back(conj_level());
    return kids.size() == 1 ? kids.front() : lor(std::move(kids));
  }

  Formula conj_level() {
    std::vector<Formula> kids{neg_level()};
    while (accept(Tok::Amp)) kids.push_back(neg_level());
    return kids.size() == 1 ? kids.front() : land(std::move(kids));
  }

  Formula neg_level() {
    if (accept(Tok::Tilde)) return neg(neg_level());
    if (at_quantifier()) return quantified();
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) fail("expected atom");
    if (t.text == "true") {
      take();
      return top();
    }
    if (t.text == "false") {
      take();
      return bottom();
    }
    if (is_predicate_name(t.text)) {
      const Token name = take();
      expect(Tok::LParen, "'('");
      std::vector<std::string> args{variable()};
      while (accept(Tok::Comma)) args.push_back(variable());
      expect(Tok::RParen, "')'");
      if (args.size() > 2) {
        throw SyntaxError("predicate '" + name.text + "' has arity > 2", name.pos);
      }
      check_symbol(name, args.size());
      if (args.size() == 1) return pred(name.text, args[0]);
      return rel(name.text, args[0], args[1]);
    }
    std::string x = variable();
    if (accept(Tok::Less)) return less(std::move(x), variable());
    if (accept(Tok::Equal)) return eq(std::move(x), variable());
    fail("expected '<' or '='");
  }

  void check_symbol(const Token& name, std::size_t arity) {
    if (!sig_) {
      auto& mine = arity == 1 ? unary_seen : binary_seen;
      auto& other = arity == 1 ? binary_seen : unary_seen;
      if (other.contains(name.text)) {
        throw SyntaxError("predicate '" + name.text + "' used with two arities", name.pos);
      }
      mine.insert(name.text);
      return;
    }
    const bool known = arity == 1 ? sig_->unary_index(name.text).has_value()
                                  : sig_->has_binary(name.text);
    if (!known) {
      throw UnknownSymbol("unknown predicate '" + name.text + "'/" +
                          std::to_string(arity) + " at offset " +
                          std::to_string(name.pos));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature* sig_;
};

}  // namespace

Formula parse(std::string_view text, const Signature& sig) {
  return Parser(text, &sig).run();
}

std::pair<Formula, Signature> parse_infer(std::string_view text) {
  Parser p(text, nullptr);
  Formula f = p.run();
  Signature sig({p.unary_seen.begin(), p.unary_seen.end()},
                {p.binary_seen.begin(), p.binary_seen.end()});
  return {f, sig};
}

}  // namespace finlin
