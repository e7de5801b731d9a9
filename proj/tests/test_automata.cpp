#include <gtest/gtest.h>

#include <sstream>

#include "finlin/automata.hpp"
#include "finlin/error.hpp"
#include "finlin/eval.hpp"
#include "finlin/generate.hpp"
#include "finlin/parser.hpp"
#include "finlin/witness.hpp"
#include "oracles.hpp"

using namespace finlin;

namespace {
const Signature kP({"P"});
const Signature kPQ({"P", "Q"});

std::vector<Symbol> plain(const WordModel& w) { return {w.letters.begin(), w.letters.end()}; }

// Every marked word of length <= n over the given letter bits and tracks.
std::vector<std::vector<Symbol>> marked_words(std::size_t bits, std::size_t n) {
  std::vector<std::vector<Symbol>> out{{}};
  std::vector<std::vector<Symbol>> layer{{}};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::vector<Symbol>> next;
    for (const auto& w : layer) {
      for (Symbol a = 0; a < (Symbol{1} << bits); ++a) {
        auto v = w;
        v.push_back(a);
        next.push_back(v);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}
}  // namespace

TEST(Compile, ExistsPMatchesEval) {
  const Formula f = parse("E x. P(x)", kP);
  const Acceptor a = compile(f, kP, {});
  for (const auto& w : oracle::words(kP, 5)) {
    EXPECT_EQ(a.accepts(plain(w)), oracle::holds(w, f, {}));
  }
}

TEST(Compile, FalseIsEmpty) {
  EXPECT_TRUE(is_empty(compile(bottom(), kP, {})));
  EXPECT_FALSE(shortest_accepted(compile(bottom(), kP, {})));
  EXPECT_FALSE(is_empty(compile(top(), kP, {})));
}

TEST(Compile, LessOnMarkedWords) {
  const Acceptor a = compile(less("x", "y"), kP, {"x", "y"});
  for (const auto& w : oracle::words(kP, 4)) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) {
        EXPECT_EQ(a.accepts(encode(w, {"x", "y"}, {{"x", i}, {"y", j}})), i < j);
      }
    }
  }
}

TEST(Compile, MarkerDiscipline) {
  FormulaGenerator gen(41, GeneratorOptions{2, 10, {"P"}, {"x", "y", "z"}});
  for (int i = 0; i < 40; ++i) {
    const Formula f = gen.formula({"x", "y"});
    const Acceptor a = compile(f, kP, {"x", "y"});
    for (const auto& w : marked_words(3, 3)) {
      std::size_t xs = 0, ys = 0;
      for (Symbol s : w) {
        xs += (s >> 1) & 1U;
        ys += (s >> 2) & 1U;
      }
      if (xs != 1 || ys != 1) ASSERT_FALSE(a.accepts(w)) << to_string(f);
    }
  }
}

TEST(Compile, UnboundVariableRejected) {
  EXPECT_THROW(compile(pred("P", "x"), kP, {}), UnboundVariable);
  EXPECT_THROW(compile(top(), kP, {"x", "x"}), PreconditionError);
}

TEST(Compile, BudgetExceeded) {
  AutomataOptions tiny;
  tiny.max_states = 2;
  EXPECT_THROW(compile(parse("E x. E y. (x < y & P(x) & ~P(y))", kP), kP, {}, tiny),
               BudgetExceeded);
}

TEST(Compile, AgreesWithEvalWithFreeVariable) {
  FormulaGenerator gen(42);
  for (int i = 0; i < 60; ++i) {
    const Formula f = gen.formula({"x"});
    const Acceptor a = compile(f, kPQ, {"x"});
    for (const auto& w : oracle::words(kPQ, 4)) {
      for (std::size_t p = 0; p < w.size(); ++p) {
        ASSERT_EQ(a.accepts(encode(w, {"x"}, {{"x", p}})), oracle::holds(w, f, {{"x", p}}))
            << to_string(f) << " on " << to_string(w);
      }
    }
  }
}

TEST(Shortest, Examples) {
  auto w = shortest_accepted(compile(parse("E x. P(x)", kP), kP, {}));
  ASSERT_TRUE(w);
  EXPECT_EQ(to_string(to_word(*w, kP)), "{P}");
  auto two = shortest_accepted(compile(parse("E x. E y. x < y", kP), kP, {}));
  ASSERT_TRUE(two);
  EXPECT_EQ(two->size(), 2U);
}

TEST(Shortest, LengthLexLeast) {
  FormulaGenerator gen(43);
  const auto words = oracle::words(kPQ, 4);
  for (int i = 0; i < 80; ++i) {
    const Formula f = gen.sentence();
    const auto got = shortest_accepted(compile(f, kPQ, {}));
    std::optional<WordModel> first;
    for (const auto& w : words) {
      if (oracle::holds(w, f, {})) {
        first = w;
        break;
      }
    }
    if (first) {
      ASSERT_TRUE(got) << to_string(f);
      EXPECT_EQ(to_word(*got, kPQ), *first) << to_string(f);
    } else if (got) {
      EXPECT_GT(got->size(), 4U);
    }
  }
}

TEST(Minimize, PreservesLanguageAndIsIdempotent) {
  FormulaGenerator gen(44);
  for (int i = 0; i < 40; ++i) {
    const Formula f = gen.sentence();
    const Acceptor a = compile(f, kPQ, {});
    const Acceptor m = minimize(a);
    EXPECT_LE(m.num_states(), a.num_states());
    EXPECT_EQ(minimize(m).num_states(), m.num_states());
    EXPECT_EQ(language_key(a), language_key(m));
    for (const auto& w : oracle::words(kPQ, 4)) EXPECT_EQ(a.accepts(plain(w)), m.accepts(plain(w)));
  }
}

TEST(LanguageKey, SeparatesDifferentLanguages) {
  EXPECT_EQ(language_key(compile(parse("E x. P(x)", kP), kP, {})),
            language_key(compile(parse("~A y. ~P(y)", kP), kP, {})));
  EXPECT_NE(language_key(compile(parse("E x. P(x)", kP), kP, {})),
            language_key(compile(parse("A x. P(x)", kP), kP, {})));
}

TEST(Closure, ProductUnionComplement) {
  FormulaGenerator gen(45, GeneratorOptions{2, 10, {"P", "Q"}, {"x", "y", "z"}});
  for (int i = 0; i < 50; ++i) {
    const Formula f = gen.sentence();
    const Formula g = gen.sentence();
    const Acceptor a = compile(f, kPQ, {});
    const Acceptor b = compile(g, kPQ, {});
    const Acceptor both = intersect(a, b);
    const Acceptor either = unite(a, b);
    const Acceptor nota = complement(a);
    const Acceptor conj = compile(land(f, g), kPQ, {});
    for (const auto& w : oracle::words(kPQ, 4)) {
      const bool x = oracle::holds(w, f, {}), y = oracle::holds(w, g, {});
      ASSERT_EQ(both.accepts(plain(w)), x && y);
      ASSERT_EQ(conj.accepts(plain(w)), x && y);
      ASSERT_EQ(either.accepts(plain(w)), x || y);
      ASSERT_EQ(nota.accepts(plain(w)), !x);
    }
  }
}

TEST(Decide, Examples) {
  EXPECT_EQ(decide_fmp(ub(kP, "P"), kP).verdict, Verdict::NoFiniteModel);
  const DecisionResult r = decide_fmp(parse("E x. P(x)", kP), kP);
  ASSERT_EQ(r.verdict, Verdict::HasFiniteModel);
  EXPECT_EQ(to_string(*r.minimal), "{P}");
  const Formula a = parse("E x. E y. (x < y & P(y))", kP);
  EXPECT_EQ(decide_fmp(land(a, neg(a)), kP).verdict, Verdict::NoFiniteModel);
}

TEST(Decide, EmptyModelReportedSeparately) {
  const DecisionResult r = decide_fmp(parse("~(E x. true)", kP), kP);
  EXPECT_EQ(r.verdict, Verdict::HasFiniteModel);
  EXPECT_TRUE(r.only_empty_model());
  EXPECT_FALSE(decide_fmp(parse("A x. P(x)", kP), kP).only_empty_model());
}

TEST(Decide, RequiresSentence) {
  EXPECT_THROW(decide_fmp(pred("P", "x"), kP), PreconditionError);
}

TEST(Decide, OracleEquivalenceOnCorpus) {
  for (const auto& e : standard_corpus(60)) {
    const DecisionResult r = decide_fmp(e.formula, e.sig);
    for (std::size_t n = 0; n <= 6; ++n) {
      const bool short_enough = r.minimal && r.minimal->size() <= n;
      ASSERT_EQ(short_enough, find_finite_model(e.formula, e.sig, n).has_value()) << e.name;
    }
    if (r.minimal) EXPECT_TRUE(oracle::holds(*r.minimal, e.formula, {})) << e.name;
  }
}

TEST(Decide, WitnessSatisfiesTheTheory) {
  for (const auto& e : standard_corpus(40)) {
    const DecisionResult r = decide_fmp(e.formula, e.sig);
    if (!r.minimal_nonempty) continue;
    const AlphaTheory t = build_theory(e.formula);
    if (t.thetas.size() > 8) continue;
    for (const auto& ax : t.axioms()) {
      EXPECT_TRUE(eval(*r.minimal_nonempty, ax)) << e.name << ": " << to_string(ax);
    }
  }
}

TEST(Decide, StatsAreRecorded) {
  const DecisionResult r = decide_fmp(ub(kP, "P"), kP);
  EXPECT_FALSE(r.stats.stages.empty());
  EXPECT_GT(r.stats.peak_states, 0U);
}

TEST(Dot, WritesGraph) {
  std::ostringstream os;
  write_dot(os, compile(parse("E x. P(x)", kP), kP, {}), kP);
  EXPECT_NE(os.str().find("digraph"), std::string::npos);
}
