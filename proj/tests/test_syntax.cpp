#include <algorithm>

#include <gtest/gtest.h>

#include "finlin/error.hpp"
#include "finlin/generate.hpp"
#include "finlin/parser.hpp"
#include "oracles.hpp"

using namespace finlin;

namespace {

const Signature kP({"P"});
const Signature kPQ({"P", "Q"});

bool equivalent_on_words(const Formula& a, const Formula& b, const Signature& sig,
                         const std::vector<std::string>& vars, std::size_t max_len) {
  for (const auto& w : oracle::words(sig, max_len)) {
    for (const auto& env : oracle::assignments(vars, 0, w.size())) {
      if (oracle::holds(w, a, env) != oracle::holds(w, b, env)) return false;
    }
  }
  return true;
}

// Free variables by a direct walk with a bound-variable stack.
void walk_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (f.is_quantifier()) {
    bound.push_back(f.bound_var());
    walk_free(f.body(), bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& v : f.vars()) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  }
  for (const auto& c : f.children()) walk_free(c, bound, out);
}

}  // namespace

TEST(Parse, ExistsPredicate) {
  EXPECT_EQ(parse("E x. P(x)", kP), exists("x", pred("P", "x")));
}

TEST(Parse, TotalityShape) {
  Formula f = parse("A x. A y. (x < y | y < x | x = y)", kP);
  EXPECT_EQ(f, forall("x", forall("y", lor({less("x", "y"), less("y", "x"), eq("x", "y")}))));
}

TEST(Parse, UnknownPredicateIsRejected) {
  EXPECT_THROW(parse("~(E x. Q(x))", kP), UnknownSymbol);
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  try {
    parse("E x P(x)", kP);
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4U);
  }
  EXPECT_THROW(parse("P(x", kP), SyntaxError);
  EXPECT_THROW(parse("x <", kP), SyntaxError);
  EXPECT_THROW(parse("", kP), SyntaxError);
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse("P(x) & Q(x) | P(y)", kPQ),
            lor(land(pred("P", "x"), pred("Q", "x")), pred("P", "y")));
  EXPECT_EQ(parse("P(x) -> P(y) -> P(z)", kP),
            implies(pred("P", "x"), implies(pred("P", "y"), pred("P", "z"))));
  EXPECT_EQ(parse("~P(x) & P(y)", kP), land(neg(pred("P", "x")), pred("P", "y")));
  EXPECT_EQ(parse("E x. P(x) & P(y)", kP), exists("x", land(pred("P", "x"), pred("P", "y"))));
}

TEST(Parse, InferSignature) {
  auto [f, sig] = parse_infer("E x. (Q(x) & P(x))");
  EXPECT_EQ(sig.unary_preds(), (std::vector<std::string>{"P", "Q"}));
  EXPECT_TRUE(is_sentence(f));
}

TEST(Print, RoundTripOnRandomFormulas) {
  FormulaGenerator gen(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.formula({"x", "y"});
    EXPECT_EQ(parse(to_string(f), kPQ), f) << to_string(f);
  }
}

TEST(Print, Constants) {
  EXPECT_EQ(to_string(top()), "true");
  EXPECT_EQ(to_string(bottom()), "false");
  EXPECT_EQ(parse("true & false", kP), land(top(), bottom()));
}

TEST(FreeVars, BoundOccurrencesExcluded) {
  EXPECT_EQ(free_vars(parse("E y. x < y", kP)), (std::set<std::string>{"x"}));
  EXPECT_TRUE(is_sentence(parse("A x. E y. x < y", kP)));
}

TEST(FreeVars, MatchesDirectWalk) {
  FormulaGenerator gen(11);
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.formula({"x", "y", "z"});
    if (i % 2) f = substitute(f, {{"x", "y"}, {"y", "w"}});
    std::vector<std::string> bound;
    std::set<std::string> expect;
    walk_free(f, bound, expect);
    EXPECT_EQ(free_vars(f), expect) << to_string(f);
  }
}

TEST(Substitute, BoundOccurrenceUntouched) {
  Formula f = exists("x", pred("P", "x"));
  EXPECT_EQ(substitute(f, "x", "u"), f);
}

TEST(Substitute, AvoidsCapture) {
  // E y. x < y with x := y must not become E y. y < y.
  Formula f = substitute(parse("E y. x < y", kP), "x", "y");
  EXPECT_EQ(free_vars(f), (std::set<std::string>{"y"}));
  EXPECT_TRUE(equivalent_on_words(f, parse("E z. y < z", kP), kP, {"y"}, 4));
}

TEST(FreshName, AppendsNumericSuffix) {
  EXPECT_EQ(fresh_name("x", {"x"}), "x1");
  EXPECT_EQ(fresh_name("x1", {"x", "x1", "x2"}), "x3");
  EXPECT_EQ(fresh_name("y", {"x"}), "y1");
}

TEST(Nnf, DeMorgan) {
  Formula a = pred("P", "x"), b = pred("Q", "x");
  EXPECT_EQ(nnf(neg(land(a, b))), lor(neg(a), neg(b)));
}

TEST(Nnf, PreservesTruthOnRandomFormulas) {
  FormulaGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula({"x"});
    ASSERT_TRUE(equivalent_on_words(f, nnf(f), kPQ, {"x"}, 3)) << to_string(f);
  }
}

TEST(Simplify, PreservesTruthOnRandomFormulas) {
  FormulaGenerator gen(12);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula({"x", "y"});
    ASSERT_TRUE(equivalent_on_words(f, simplify(f), kPQ, {"x", "y"}, 3)) << to_string(f);
  }
}

TEST(Simplify, OnePointAndVacuousQuantifiers) {
  EXPECT_EQ(simplify(parse("E u. (u = x & P(u))", kP)), pred("P", "x"));
  EXPECT_EQ(simplify(parse("A u. (~u = x | P(u))", kP)), pred("P", "x"));
  EXPECT_EQ(simplify(parse("E u. P(x)", kP)), land(pred("P", "x"), exists("u", top())));
  EXPECT_EQ(simplify(parse("x = x & ~x < x", kP)), top());
}

TEST(Relativize, IntervalAbove) {
  Formula f = relativize(parse("E y. P(y)", kP), Domain::interval_above("x"));
  EXPECT_EQ(f, exists("y", land(less("x", "y"), pred("P", "y"))));
}

TEST(Relativize, UniversalGetsImplication) {
  Formula guard = pred("P", "v");
  Formula f = relativize(forall("y", top()), Domain::of("v", guard));
  EXPECT_EQ(f, forall("y", implies(pred("P", "y"), top())));
}

TEST(Relativize, AtomsUnchanged) {
  EXPECT_EQ(relativize(pred("P", "z"), Domain::of("v", pred("Q", "v"))), pred("P", "z"));
}

TEST(Relativize, RenamesBoundVariableClashingWithGuard) {
  // Relativizing E x. P(x) above x must not capture the guard parameter.
  Formula f = relativize(parse("E x. P(x)", kP), Domain::interval_above("x"));
  EXPECT_EQ(free_vars(f), (std::set<std::string>{"x"}));
  EXPECT_TRUE(equivalent_on_words(f, parse("E y. (x < y & P(y))", kP), kP, {"x"}, 4));
}

TEST(Relativize, MatchesSuffixEvaluation) {
  FormulaGenerator gen(13);
  for (int i = 0; i < 120; ++i) {
    Formula phi = gen.sentence();
    Formula rel = relativize(phi, Domain::interval_above("x"));
    for (const auto& w : oracle::words(kPQ, 4)) {
      for (std::size_t p = 0; p < w.size(); ++p) {
        ASSERT_EQ(oracle::holds(w, rel, {{"x", p}}), oracle::holds(w.suffix(p + 1), phi, {}))
            << to_string(phi) << " on " << to_string(w);
      }
    }
  }
}

TEST(Relativize, NestedGuardsEqualConjoinedGuard) {
  FormulaGenerator gen(14);
  const Domain p = Domain::of("v", pred("P", "v"));
  const Domain q = Domain::of("v", pred("Q", "v"));
  const Domain pq = Domain::of("v", land(pred("P", "v"), pred("Q", "v")));
  for (int i = 0; i < 120; ++i) {
    Formula phi = gen.sentence();
    ASSERT_TRUE(equivalent_on_words(relativize(relativize(phi, p), q), relativize(phi, pq), kPQ,
                                    {}, 4))
        << to_string(phi);
  }
}

TEST(Ub, DisplayedShape) {
  Formula expected = parse(
      "(E x. P(x)) & ((A y. (P(y) -> E z. (P(z) & y < z))) | (A y. (P(y) -> E z. (P(z) & z < y))))",
      kP);
  EXPECT_EQ(ub(kP, "P"), expected);
  EXPECT_THROW(ub(kP, "Q"), UnknownSymbol);
}

TEST(Ub, FalseOnEveryFiniteWord) {
  const Formula f = ub(kP, "P");
  for (const auto& w : oracle::words(kP, 8)) EXPECT_FALSE(oracle::holds(w, f, {}));
}

TEST(Ite, SelectsBranch) {
  FormulaGenerator gen(15);
  for (int i = 0; i < 100; ++i) {
    Formula g = gen.sentence(), d = gen.sentence(), t = gen.sentence();
    Formula f = ite(g, d, t);
    for (const auto& w : oracle::words(kPQ, 3)) {
      const bool expect =
          oracle::holds(w, d, {}) ? oracle::holds(w, g, {}) : oracle::holds(w, t, {});
      ASSERT_EQ(oracle::holds(w, f, {}), expect);
    }
    EXPECT_TRUE(equivalent_on_words(ite(g, top(), t), g, kPQ, {}, 3));
    EXPECT_TRUE(equivalent_on_words(ite(g, bottom(), t), t, kPQ, {}, 3));
  }
}

TEST(Canonical, IdentifiesAlphaVariants) {
  EXPECT_EQ(canonical(parse("E x. P(x)", kP)), canonical(parse("E y. P(y)", kP)));
  EXPECT_NE(canonical(parse("E x. P(x)", kP)), canonical(parse("A y. P(y)", kP)));
}

TEST(SignatureTest, RejectsBadNames) {
  EXPECT_THROW(Signature({"P", "P"}), Error);
  EXPECT_THROW(Signature({"p"}), Error);
  EXPECT_THROW(Signature({"A"}), Error);
}
