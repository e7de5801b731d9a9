#include "finlin/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "finlin/error.hpp"

namespace finlin {

// ---------------------------------------------------------------- Signature

struct Signature::Data {
  std::vector<std::string> unary;
  std::vector<std::string> binary;
};

bool is_predicate_name(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  if (s == "A" || s == "E") return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_variable_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  if (s == "true" || s == "false") return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Signature::Signature() : data_(std::make_shared<Data>()) {}

Signature::Signature(std::vector<std::string> unary_preds,
                     std::vector<std::string> binary_rels) {
  std::set<std::string> seen;
  for (const auto* list : {&unary_preds, &binary_rels}) {
    for (const auto& name : *list) {
      if (!is_predicate_name(name)) {
        throw PreconditionError("invalid predicate name '" + name + "'");
      }
      if (!seen.insert(name).second) {
        throw PreconditionError("duplicate predicate name '" + name + "'");
      }
    }
  }
  data_ = std::make_shared<Data>(
      Data{std::move(unary_preds), std::move(binary_rels)});
}

const std::vector<std::string>& Signature::unary_preds() const {
  return data_->unary;
}
const std::vector<std::string>& Signature::binary_rels() const {
  return data_->binary;
}

std::optional<std::size_t> Signature::unary_index(std::string_view name) const {
  const auto& u = data_->unary;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == name) return i;
  }
  return std::nullopt;
}

bool Signature::has_binary(std::string_view name) const {
  const auto& b = data_->binary;
  return std::find(b.begin(), b.end(), name) != b.end();
}

bool operator==(const Signature& a, const Signature& b) {
  return a.data_ == b.data_ || (a.data_->unary == b.data_->unary &&
                                a.data_->binary == b.data_->binary);
}

// ------------------------------------------------------------------ Formula

struct Formula::Node {
  Kind kind;
  std::string symbol;
  std::vector<std::string> vars;
  std::vector<Formula> children;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::make(Kind kind, std::string symbol,
                      std::vector<std::string> vars,
                      std::vector<Formula> children) {
  std::size_t h = std::hash<int>{}(static_cast<int>(kind));
  h = mix(h, std::hash<std::string>{}(symbol));
  for (const auto& v : vars) h = mix(h, std::hash<std::string>{}(v));
  for (const auto& c : children) h = mix(h, c.hash());
  return Formula(std::make_shared<const Node>(
      Node{kind, std::move(symbol), std::move(vars), std::move(children), h}));
}

Formula::Formula() : Formula(top()) {}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->symbol; }
const std::vector<std::string>& Formula::vars() const { return node_->vars; }
std::span<const Formula> Formula::children() const { return node_->children; }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::is_atom() const {
  switch (kind()) {
    case Kind::Less:
    case Kind::Eq:
    case Kind::Pred:
    case Kind::Rel:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  if (a.symbol() != b.symbol() || a.vars() != b.vars()) return false;
  auto ca = a.children();
  auto cb = b.children();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

namespace {

const Formula& shared_top() {
  static const Formula f = Formula::make(Kind::True, "", {}, {});
  return f;
}
const Formula& shared_bottom() {
  static const Formula f = Formula::make(Kind::False, "", {}, {});
  return f;
}

}  // namespace

Formula top() { return shared_top(); }
Formula bottom() { return shared_bottom(); }
Formula less(std::string x, std::string y) {
  return Formula::make(Kind::Less, "", {std::move(x), std::move(y)}, {});
}
Formula eq(std::string x, std::string y) {
  return Formula::make(Kind::Eq, "", {std::move(x), std::move(y)}, {});
}
Formula pred(std::string p, std::string x) {
  return Formula::make(Kind::Pred, std::move(p), {std::move(x)}, {});
}
Formula rel(std::string r, std::string x, std::string y) {
  return Formula::make(Kind::Rel, std::move(r), {std::move(x), std::move(y)},
                       {});
}
Formula neg(Formula f) {
  return Formula::make(Kind::Not, "", {}, {std::move(f)});
}
Formula land(Formula a, Formula b) {
  return Formula::make(Kind::And, "", {}, {std::move(a), std::move(b)});
}
Formula lor(Formula a, Formula b) {
  return Formula::make(Kind::Or, "", {}, {std::move(a), std::move(b)});
}
Formula land(std::vector<Formula> kids) {
  if (kids.size() < 2) throw PreconditionError("land needs two operands");
  return Formula::make(Kind::And, "", {}, std::move(kids));
}
Formula lor(std::vector<Formula> kids) {
  if (kids.size() < 2) throw PreconditionError("lor needs two operands");
  return Formula::make(Kind::Or, "", {}, std::move(kids));
}
Formula implies(Formula a, Formula b) {
  return Formula::make(Kind::Implies, "", {}, {std::move(a), std::move(b)});
}
Formula iff(Formula a, Formula b) {
  return Formula::make(Kind::Iff, "", {}, {std::move(a), std::move(b)});
}
Formula exists(std::string v, Formula body) {
  return Formula::make(Kind::Exists, "", {std::move(v)}, {std::move(body)});
}
Formula forall(std::string v, Formula body) {
  return Formula::make(Kind::Forall, "", {std::move(v)}, {std::move(body)});
}
Formula leq(const std::string& x, const std::string& y) {
  return lor(less(x, y), eq(x, y));
}

namespace {

Formula fold(Kind op, std::vector<Formula> kids) {
  const Kind unit = op == Kind::And ? Kind::True : Kind::False;
  const Kind zero = op == Kind::And ? Kind::False : Kind::True;
  std::vector<Formula> flat;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> push = [&](const Formula& f) {
    if (f.kind() == op) {
      for (const auto& c : f.children()) push(c);
    } else if (f.kind() != unit) {
      if (seen.insert(f).second) flat.push_back(f);
    }
  };
  for (const auto& k : kids) push(k);
  for (const auto& f : flat) {
    if (f.kind() == zero) return f;
  }
  if (flat.empty()) return op == Kind::And ? top() : bottom();
  if (flat.size() == 1) return flat.front();
  return Formula::make(op, "", {}, std::move(flat));
}

}  // namespace

Formula conj(std::vector<Formula> kids) { return fold(Kind::And, std::move(kids)); }
Formula disj(std::vector<Formula> kids) { return fold(Kind::Or, std::move(kids)); }

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
      return bottom();
    case Kind::False:
      return top();
    case Kind::Not:
      return f.body();
    default:
      return neg(f);
  }
}

// ---------------------------------------------------------------- variables

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  if (f.is_atom()) {
    for (const auto& v : f.vars()) {
      if (!bound.contains(v)) out.insert(v);
    }
    return;
  }
  if (f.is_quantifier()) {
    const bool fresh = bound.insert(f.bound_var()).second;
    collect_free(f.body(), bound, out);
    if (fresh) bound.erase(f.bound_var());
    return;
  }
  for (const auto& c : f.children()) collect_free(c, bound, out);
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  for (const auto& v : f.vars()) out.insert(v);
  for (const auto& c : f.children()) collect_all(c, out);
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool occurs_free(const Formula& f, const std::string& v) {
  if (f.is_quantifier()) return f.bound_var() != v && occurs_free(f.body(), v);
  for (const auto& u : f.vars()) {
    if (u == v) return true;
  }
  for (const auto& c : f.children()) {
    if (occurs_free(c, v)) return true;
  }
  return false;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

std::size_t quantifier_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& c : f.children()) d = std::max(d, quantifier_depth(c));
  return f.is_quantifier() ? d + 1 : d;
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const auto& c : f.children()) n += node_count(c);
  return n;
}

std::string fresh_name(std::string_view base,
                       const std::set<std::string>& avoid) {
  std::string stem(base);
  while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) {
    stem.pop_back();
  }
  if (stem.empty() || !is_variable_name(stem)) stem = "v";
  for (std::size_t k = 1;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!avoid.contains(candidate)) return candidate;
  }
}

Formula substitute(const Formula& f,
                   const std::map<std::string, std::string>& renaming) {
  if (renaming.empty()) return f;
  if (f.is_atom()) {
    std::vector<std::string> vs = f.vars();
    bool changed = false;
    for (auto& v : vs) {
      if (auto it = renaming.find(v); it != renaming.end()) {
        v = it->second;
        changed = true;
      }
    }
    return changed ? Formula::make(f.kind(), f.symbol(), std::move(vs), {}) : f;
  }
  if (f.is_quantifier()) {
    const std::string& v = f.bound_var();
    std::map<std::string, std::string> inner = renaming;
    inner.erase(v);
    if (inner.empty()) return f;
    bool captures = false;
    for (const auto& [from, to] : inner) {
      if (to == v && occurs_free(f.body(), from)) captures = true;
    }
    std::string bv = v;
    Formula body = f.body();
    if (captures) {
      std::set<std::string> avoid = all_vars(body);
      for (const auto& [from, to] : inner) {
        avoid.insert(from);
        avoid.insert(to);
      }
      bv = fresh_name(v, avoid);
      inner.emplace(v, bv);
    }
    Formula renamed = substitute(body, inner);
    if (bv == v && renamed == body) return f;
    return Formula::make(f.kind(), "", {bv}, {std::move(renamed)});
  }
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  bool changed = false;
  for (const auto& c : f.children()) {
    kids.push_back(substitute(c, renaming));
    changed = changed || !(kids.back() == c);
  }
  return changed ? Formula::make(f.kind(), "", {}, std::move(kids)) : f;
}

Formula substitute(const Formula& f, const std::string& from,
                   const std::string& to) {
  return substitute(f, std::map<std::string, std::string>{{from, to}});
}

// ---------------------------------------------------------------------- nnf

namespace {

Formula nnf_signed(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Kind::True:
      return positive ? top() : bottom();
    case Kind::False:
      return positive ? bottom() : top();
    case Kind::Less:
    case Kind::Eq:
    case Kind::Pred:
    case Kind::Rel:
      return positive ? f : neg(f);
    case Kind::Not:
      return nnf_signed(f.body(), !positive);
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(nnf_signed(c, positive));
      const bool is_and = (f.kind() == Kind::And) == positive;
      return Formula::make(is_and ? Kind::And : Kind::Or, "", {}, std::move(kids));
    }
    case Kind::Implies: {
      // a -> b  ==  ~a | b
      if (positive) return lor(nnf_signed(f.child(0), false), nnf_signed(f.child(1), true));
      return land(nnf_signed(f.child(0), true), nnf_signed(f.child(1), false));
    }
    case Kind::Iff: {
      const Formula& a = f.child(0);
      const Formula& b = f.child(1);
      if (positive) {
        return lor(land(nnf_signed(a, true), nnf_signed(b, true)),
                   land(nnf_signed(a, false), nnf_signed(b, false)));
      }
      return lor(land(nnf_signed(a, true), nnf_signed(b, false)),
                 land(nnf_signed(a, false), nnf_signed(b, true)));
    }
    case Kind::Exists:
    case Kind::Forall: {
      const bool is_exists = (f.kind() == Kind::Exists) == positive;
      return Formula::make(is_exists ? Kind::Exists : Kind::Forall, "",
                           {f.bound_var()}, {nnf_signed(f.body(), positive)});
    }
  }
  return f;
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_signed(f, true); }

// ---------------------------------------------------------------- canonical

namespace {

Formula canonical_rec(const Formula& f, const std::string& prefix,
                      std::size_t depth,
                      std::map<std::string, std::string>& scope) {
  if (f.is_atom()) {
    std::vector<std::string> vs = f.vars();
    for (auto& v : vs) {
      if (auto it = scope.find(v); it != scope.end()) v = it->second;
    }
    return Formula::make(f.kind(), f.symbol(), std::move(vs), {});
  }
  if (f.is_quantifier()) {
    const std::string& v = f.bound_var();
    std::string name = prefix + std::to_string(depth);
    std::optional<std::string> saved;
    if (auto it = scope.find(v); it != scope.end()) saved = it->second;
    scope[v] = name;
    Formula body = canonical_rec(f.body(), prefix, depth + 1, scope);
    if (saved) {
      scope[v] = *saved;
    } else {
      scope.erase(v);
    }
    return Formula::make(f.kind(), "", {name}, {std::move(body)});
  }
  std::vector<Formula> kids;
  for (const auto& c : f.children()) {
    kids.push_back(canonical_rec(c, prefix, depth, scope));
  }
  return Formula::make(f.kind(), f.symbol(), {}, std::move(kids));
}

}  // namespace

Formula canonical(const Formula& f) {
  const auto fv = free_vars(f);
  std::string prefix = "c";
  auto clashes = [&](const std::string& p) {
    for (const auto& v : fv) {
      if (v.size() > p.size() && v.compare(0, p.size(), p) == 0 &&
          std::all_of(v.begin() + static_cast<std::ptrdiff_t>(p.size()), v.end(),
                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        return true;
      }
    }
    return false;
  };
  while (clashes(prefix)) prefix += "c";
  std::map<std::string, std::string> scope;
  return canonical_rec(f, prefix, 0, scope);
}

// ----------------------------------------------------------- relativization

Domain Domain::interval_above(const std::string& x) {
  const std::string v = x == "v" ? "u" : "v";
  return Domain{v, less(x, v)};
}

namespace {

Formula relativize_rec(const Formula& f, const Domain& d,
                       const std::set<std::string>& params) {
  if (f.is_atom() || f.is_constant()) return f;
  if (f.is_quantifier()) {
    std::string v = f.bound_var();
    Formula body = f.body();
    if (params.contains(v)) {
      std::set<std::string> avoid = all_vars(body);
      avoid.insert(params.begin(), params.end());
      avoid.insert(d.var);
      std::string nv = fresh_name(v, avoid);
      body = substitute(body, v, nv);
      v = nv;
    }
    Formula inner = relativize_rec(body, d, params);
    Formula guard = substitute(d.guard, d.var, v);
    if (f.kind() == Kind::Exists) return exists(v, land(guard, inner));
    return forall(v, implies(guard, inner));
  }
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(relativize_rec(c, d, params));
  return Formula::make(f.kind(), f.symbol(), {}, std::move(kids));
}

}  // namespace

Formula relativize(const Formula& f, const Domain& domain) {
  auto params = free_vars(domain.guard);
  params.erase(domain.var);
  return relativize_rec(f, domain, params);
}

// ------------------------------------------------------------- constructions

Formula ub(const Signature& sig, const std::string& p) {
  if (!sig.unary_index(p)) throw UnknownSymbol("unknown predicate '" + p + "'");
  return ub(pred(p, "v"), "v");
}

Formula ub(const Formula& p_of_v, const std::string& v) {
  std::set<std::string> avoid = free_vars(p_of_v);
  avoid.erase(v);
  auto pick = [&](const std::string& want) {
    std::string name = avoid.contains(want) ? fresh_name(want, avoid) : want;
    avoid.insert(name);
    return name;
  };
  const std::string x = pick("x");
  const std::string y = pick("y");
  const std::string z = pick("z");
  auto at = [&](const std::string& t) { return substitute(p_of_v, v, t); };
  Formula nonempty = exists(x, at(x));
  Formula no_max = forall(y, implies(at(y), exists(z, land(at(z), less(y, z)))));
  Formula no_min = forall(y, implies(at(y), exists(z, land(at(z), less(z, y)))));
  return land(nonempty, lor(no_max, no_min));
}

Formula ite(const Formula& gamma, const Formula& delta, const Formula& theta) {
  return lor(land(gamma, delta), land(theta, neg(delta)));
}

// ------------------------------------------------------------------ printing

namespace {

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Kind::Exists:
    case Kind::Forall:
      return 0;
    case Kind::Iff:
      return 1;
    case Kind::Implies:
      return 2;
    case Kind::Or:
      return 3;
    case Kind::And:
      return 4;
    case Kind::Not:
      return 5;
    default:
      return 6;
  }
}

void print(std::ostream& os, const Formula& f);

// Children of a binary operator are parenthesized unless they bind strictly
// tighter; quantifiers are always parenthesized there.
void print_operand(std::ostream& os, const Formula& child, int parent_prec) {
  if (precedence(child) <= parent_prec) {
    os << '(';
    print(os, child);
    os << ')';
  } else {
    print(os, child);
  }
}

void print(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
      os << "true";
      return;
    case Kind::False:
      os << "false";
      return;
    case Kind::Less:
      os << f.vars()[0] << " < " << f.vars()[1];
      return;
    case Kind::Eq:
      os << f.vars()[0] << " = " << f.vars()[1];
      return;
    case Kind::Pred:
    case Kind::Rel: {
      os << f.symbol() << '(';
      for (std::size_t i = 0; i < f.vars().size(); ++i) {
        if (i) os << ',';
        os << f.vars()[i];
      }
      os << ')';
      return;
    }
    case Kind::Not:
      os << '~';
      print_operand(os, f.body(), 4);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      const char* op = f.kind() == Kind::And       ? " & "
                       : f.kind() == Kind::Or      ? " | "
                       : f.kind() == Kind::Implies ? " -> "
                                                   : " <-> ";
      const int p = precedence(f);
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) os << op;
        print_operand(os, f.child(i), p);
      }
      return;
    }
    case Kind::Exists:
    case Kind::Forall:
      os << (f.kind() == Kind::Exists ? "E " : "A ") << f.bound_var() << ". ";
      print(os, f.body());
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(os, f);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  print(os, f);
  return os;
}

}  // namespace finlin

// ---------------------------------------------------------------- simplify

namespace finlin {

namespace {

Formula simp(const Formula& f);

// The equality u = y with y != u, if f is one.
std::optional<std::string> binding(const Formula& f, const std::string& u, bool positive) {
  const Formula* a = &f;
  if (!positive) {
    if (f.kind() != Kind::Not) return std::nullopt;
    a = &f.body();
  }
  if (a->kind() != Kind::Eq) return std::nullopt;
  const auto& vs = a->vars();
  if (vs[0] == u && vs[1] != u) return vs[1];
  if (vs[1] == u && vs[0] != u) return vs[0];
  return std::nullopt;
}

// Q u. b for an already simplified b; `is_exists` selects the quantifier.
Formula quantify(bool is_exists, const std::string& u, const Formula& b) {
  const Kind spread = is_exists ? Kind::Or : Kind::And;  // distributes
  const Kind split = is_exists ? Kind::And : Kind::Or;   // pulls out u-free parts
  if (b.kind() == (is_exists ? Kind::False : Kind::True)) return b;
  if (!free_vars(b).contains(u)) {
    Formula vac = is_exists ? exists(u, top()) : forall(u, bottom());
    if (b.is_constant()) return vac;
    return is_exists ? conj({b, vac}) : disj({b, vac});
  }
  if (b.kind() == spread) {
    std::vector<Formula> parts;
    for (const auto& c : b.children()) parts.push_back(quantify(is_exists, u, c));
    return is_exists ? disj(std::move(parts)) : conj(std::move(parts));
  }
  if (b.kind() == split) {
    std::vector<Formula> with_u, without_u;
    for (const auto& c : b.children()) {
      (free_vars(c).contains(u) ? with_u : without_u).push_back(c);
    }
    if (!without_u.empty()) {
      Formula inner = is_exists ? conj(with_u) : disj(with_u);
      without_u.push_back(quantify(is_exists, u, inner));
      return is_exists ? conj(std::move(without_u)) : disj(std::move(without_u));
    }
    for (std::size_t i = 0; i < b.children().size(); ++i) {
      if (auto y = binding(b.child(i), u, is_exists)) {
        std::vector<Formula> rest;
        for (std::size_t j = 0; j < b.children().size(); ++j) {
          if (j != i) rest.push_back(b.child(j));
        }
        Formula r = is_exists ? conj(std::move(rest)) : disj(std::move(rest));
        return simp(substitute(r, u, *y));
      }
    }
  }
  if (binding(b, u, true) && is_exists) return top();
  if (binding(b, u, false) && !is_exists) return bottom();
  return Formula::make(is_exists ? Kind::Exists : Kind::Forall, "", {u}, {b});
}

Formula simp(const Formula& f) {
  switch (f.kind()) {
    case Kind::Less:
      return f.vars()[0] == f.vars()[1] ? bottom() : f;
    case Kind::Eq:
      return f.vars()[0] == f.vars()[1] ? top() : f;
    case Kind::Not: {
      Formula b = simp(f.body());
      return negate(b);
    }
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(simp(c));
      const bool is_and = f.kind() == Kind::And;
      Formula r = is_and ? conj(std::move(kids)) : disj(std::move(kids));
      if (r.kind() != f.kind()) return r;
      // A literal next to its complement decides the whole connective.
      std::unordered_set<Formula, FormulaHash> lits(r.children().begin(), r.children().end());
      for (const auto& c : r.children()) {
        if (c.kind() == Kind::Not && lits.contains(c.body())) return is_and ? bottom() : top();
      }
      return r;
    }
    case Kind::Exists:
    case Kind::Forall:
      return quantify(f.kind() == Kind::Exists, f.bound_var(), simp(f.body()));
    default:
      return f;
  }
}

}  // namespace

Formula simplify(const Formula& f) { return simp(nnf(f)); }

}  // namespace finlin
