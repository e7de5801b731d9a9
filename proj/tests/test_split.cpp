#include <gtest/gtest.h>

#include "finlin/error.hpp"
#include "finlin/eval.hpp"
#include "finlin/generate.hpp"
#include "finlin/parser.hpp"
#include "finlin/split.hpp"
#include "oracles.hpp"
#include "split_check.hpp"

using namespace finlin;

namespace {
const Signature kP({"P"});
const Signature kPQ({"P", "Q"});

VarPartition part(std::set<std::string> l, std::set<std::string> r) {
  return VarPartition(std::move(l), std::move(r));
}

bool single(const SplitForm& f, const Formula& pre, const Formula& suf) {
  return f.pairs.size() == 1 && f.pairs[0].prefix == pre && f.pairs[0].suffix == suf;
}

void expect_cut_equivalent(const Formula& phi, const VarPartition& vp, const Signature& sig,
                           std::size_t max_len) {
  const CutCheck r = check_cut_equivalence(phi, vp, sig, max_len);
  EXPECT_FALSE(r.mismatch) << *r.mismatch;
  EXPECT_GT(r.checked, 0U);
}

}  // namespace

TEST(SplitAtoms, LessAcrossTheCut) {
  EXPECT_TRUE(single(split_decompose(less("x", "y"), part({"x"}, {"y"})), top(), top()));
  EXPECT_TRUE(split_decompose(less("y", "x"), part({"x"}, {"y"})).is_false());
}

TEST(SplitAtoms, EqualityAcrossTheCut) {
  EXPECT_TRUE(split_decompose(eq("x", "y"), part({"x"}, {"y"})).is_false());
  EXPECT_TRUE(split_decompose(eq("y", "x"), part({"x"}, {"y"})).is_false());
}

TEST(SplitAtoms, SameSideUnchanged) {
  EXPECT_TRUE(single(split_decompose(pred("P", "x"), part({"x"}, {})), pred("P", "x"), top()));
  EXPECT_TRUE(single(split_decompose(pred("P", "y"), part({}, {"y"})), top(), pred("P", "y")));
  EXPECT_TRUE(single(split_decompose(less("x", "z"), part({"x", "z"}, {})), less("x", "z"), top()));
  EXPECT_TRUE(single(split_decompose(eq("y", "z"), part({}, {"y", "z"})), top(), eq("y", "z")));
}

TEST(SplitErrors, VariableOutsidePartition) {
  EXPECT_THROW(split_decompose(pred("P", "x"), part({}, {})), PreconditionError);
  EXPECT_THROW(part({"x"}, {"x"}), PreconditionError);
}

TEST(SplitErrors, BudgetIsReported) {
  SplitOptions tight;
  tight.max_pairs = 2;
  const Formula f = parse("A x. ((P(x) & E y. (x < y & Q(y))) | (Q(x) & E y. (y < x & P(y))))",
                          kPQ);
  EXPECT_THROW(split_decompose(f, {}, tight), BudgetExceeded);
}

TEST(SplitSentences, ExistsP) {
  const auto c = sentence_components(parse("E x. P(x)", kP));
  ASSERT_EQ(c.thetas.size(), 1U);
  for (const auto& w : oracle::words(kP, 4)) {
    for (std::size_t cut = 0; cut <= w.size(); ++cut) {
      EXPECT_EQ(eval_split(c.form, w, cut), oracle::holds(w, parse("E x. P(x)", kP), {}));
    }
    EXPECT_EQ(eval(w, c.thetas[0]), oracle::holds(w, parse("E y. P(y)", kP), {}));
  }
}

TEST(SplitSentences, TrueHasNoThetas) {
  const auto c = sentence_components(top());
  EXPECT_TRUE(c.thetas.empty());
  EXPECT_TRUE(c.form.is_true());
}

TEST(SplitSentences, TautologyIsTrueAtEveryCut) {
  const auto c = sentence_components(parse("A x. A y. (x = y -> x = y)", kP));
  for (const auto& w : oracle::words(kP, 4)) {
    for (std::size_t cut = 0; cut <= w.size(); ++cut) EXPECT_TRUE(eval_split(c.form, w, cut));
  }
}

TEST(SplitSentences, RejectsFreeVariables) {
  EXPECT_THROW(sentence_components(pred("P", "x")), PreconditionError);
}

TEST(SplitSentences, SyntacticThetasAreAvailable) {
  SplitOptions syntactic;
  syntactic.semantic_components = false;
  const Formula f = parse("E x. P(x) & E y. P(y)", kP);
  const auto a = sentence_components(f, syntactic);
  const auto b = sentence_components(f);
  EXPECT_GE(a.thetas.size(), b.thetas.size());
  EXPECT_EQ(b.thetas.size(), 1U);
}

TEST(SplitProperty, CutEquivalenceForCorpusSentences) {
  for (const auto& e : standard_corpus(60)) {
    expect_cut_equivalent(e.formula, {}, e.sig, 5);
  }
}

TEST(SplitProperty, CutEquivalenceWithVariables) {
  FormulaGenerator gen(31);
  const std::vector<VarPartition> parts = {part({"x"}, {}), part({}, {"x"}),
                                           part({"x"}, {"y"}), part({"y"}, {"x"}),
                                           part({"x", "y"}, {}), part({}, {"x", "y"})};
  int over_budget = 0;
  for (int i = 0; i < 120; ++i) {
    const VarPartition& vp = parts[i % parts.size()];
    std::vector<std::string> scope(vp.left.begin(), vp.left.end());
    scope.insert(scope.end(), vp.right.begin(), vp.right.end());
    const Formula f = gen.formula(scope);
    try {
      split_decompose(f, vp);
    } catch (const BudgetExceeded&) {
      ++over_budget;
      continue;
    }
    expect_cut_equivalent(f, vp, kPQ, 4);
  }
  EXPECT_LE(over_budget, 6);
}

TEST(SplitProperty, ComponentsRespectTheirSides) {
  FormulaGenerator gen(32);
  for (int i = 0; i < 100; ++i) {
    const Formula f = gen.formula({"x", "y"});
    const SplitForm form = split_decompose(f, part({"x"}, {"y"}));
    for (const auto& p : form.pairs) {
      for (const auto& v : free_vars(p.prefix)) EXPECT_EQ(v, "x");
      for (const auto& v : free_vars(p.suffix)) EXPECT_EQ(v, "y");
    }
  }
}
