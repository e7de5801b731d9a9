#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace finlin {

// The non-logical vocabulary: an ordered list of unary predicates (the order
// fixes the bit layout of letters) and optional binary relation symbols used
// by the set-theoretic structures. `<` and `=` are always available.
class Signature {
 public:
  Signature();
  explicit Signature(std::vector<std::string> unary_preds,
                     std::vector<std::string> binary_rels = {});

  const std::vector<std::string>& unary_preds() const;
  const std::vector<std::string>& binary_rels() const;
  std::size_t size() const { return unary_preds().size(); }

  std::optional<std::size_t> unary_index(std::string_view name) const;
  bool has_binary(std::string_view name) const;

  friend bool operator==(const Signature& a, const Signature& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

bool is_predicate_name(std::string_view s);
bool is_variable_name(std::string_view s);

enum class Kind : std::uint8_t {
  True,
  False,
  Less,
  Eq,
  Pred,
  Rel,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,
  Forall,
};

// Immutable, structurally shared first-order formula. Copies are cheap.
class Formula {
 public:
  Formula();  // true

  Kind kind() const;
  // Predicate or relation name for Pred/Rel atoms; empty otherwise.
  const std::string& symbol() const;
  // Atom arguments, or the single bound variable of a quantifier.
  const std::vector<std::string>& vars() const;
  const std::string& bound_var() const { return vars().front(); }
  std::span<const Formula> children() const;
  const Formula& child(std::size_t i) const { return children()[i]; }
  const Formula& body() const { return children().front(); }

  bool is_atom() const;
  bool is_quantifier() const {
    return kind() == Kind::Exists || kind() == Kind::Forall;
  }
  bool is_constant() const {
    return kind() == Kind::True || kind() == Kind::False;
  }
  std::size_t hash() const;

  static Formula make(Kind kind, std::string symbol,
                      std::vector<std::string> vars,
                      std::vector<Formula> children);

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Plain constructors: build exactly the node asked for.
Formula top();
Formula bottom();
Formula less(std::string x, std::string y);
Formula eq(std::string x, std::string y);
Formula pred(std::string p, std::string x);
Formula rel(std::string r, std::string x, std::string y);
Formula neg(Formula f);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula land(std::vector<Formula> kids);  // requires >= 2 children
Formula lor(std::vector<Formula> kids);   // requires >= 2 children
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula exists(std::string v, Formula body);
Formula forall(std::string v, Formula body);
Formula leq(const std::string& x, const std::string& y);  // x<y | x=y

// Folding constructors: flatten nested same-kind nodes, drop neutral
// constants, absorb on the dominant constant. Empty input gives the unit.
Formula conj(std::vector<Formula> kids);
Formula disj(std::vector<Formula> kids);
// Negation with constant folding and double-negation removal.
Formula negate(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
bool occurs_free(const Formula& f, const std::string& v);
// Every variable name occurring anywhere, free or bound.
std::set<std::string> all_vars(const Formula& f);
bool is_sentence(const Formula& f);
std::size_t quantifier_depth(const Formula& f);
std::size_t node_count(const Formula& f);

// First name of the form base+k (trailing digits of base stripped) not in
// `avoid`. Deterministic.
std::string fresh_name(std::string_view base,
                       const std::set<std::string>& avoid);

// Capture-avoiding simultaneous renaming of free variables.
Formula substitute(const Formula& f,
                   const std::map<std::string, std::string>& renaming);
Formula substitute(const Formula& f, const std::string& from,
                   const std::string& to);

// Negation normal form: implications and biconditionals eliminated,
// negations only directly above atoms.
Formula nnf(const Formula& f);

// An equivalent negation normal form with trivial atoms (x = x, x < x)
// folded, vacuous quantifiers made explicit (E u. f -> f & E u. true),
// quantifiers pushed through the connectives they distribute over, and
// one-point elimination of E u. (u = y & f) and A u. (~u = y | f).
Formula simplify(const Formula& f);

// Renames bound variables by binding depth so that alpha-equivalent
// formulas become structurally equal.
Formula canonical(const Formula& f);

// A relativization domain: the set of v with guard(v). `var` is the
// designated variable of `guard`; other free variables of `guard` are
// parameters and are never captured.
struct Domain {
  std::string var;
  Formula guard;

  static Domain of(std::string var, Formula guard) {
    return Domain{std::move(var), std::move(guard)};
  }
  // The open interval (x, oo): every v with x < v.
  static Domain interval_above(const std::string& x);
};

Formula relativize(const Formula& f, const Domain& domain);

// UB(P): P is nonempty and lacks a minimum or lacks a maximum.
Formula ub(const Signature& sig, const std::string& p);
Formula ub(const Formula& p_of_v, const std::string& v);

// gamma if delta, else theta: (gamma & delta) | (theta & ~delta).
Formula ite(const Formula& gamma, const Formula& delta, const Formula& theta);

std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace finlin
