#include <gtest/gtest.h>

#include "finlin/automata.hpp"
#include "finlin/error.hpp"
#include "finlin/eval.hpp"
#include "finlin/generate.hpp"
#include "finlin/parser.hpp"
#include "finlin/shrink.hpp"
#include "oracles.hpp"

using namespace finlin;

namespace {
const Signature kP({"P"});

WordModel cut_out(const WordModel& w, std::size_t a, std::size_t b) {
  WordModel out{w.sig, {}};
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i <= a || i > b) out.letters.push_back(w.letters[i]);
  }
  return out;
}
}  // namespace

TEST(ShrinkOnce, ExistsPExample) {
  const Formula f = parse("E x. P(x)", kP);
  const WordModel w = parse_word("{P};{};{};{P}", kP);
  const auto r = shrink_once(w, f);
  ASSERT_TRUE(r);
  EXPECT_LT(r->first.size(), w.size());
  EXPECT_TRUE(oracle::holds(r->first, f, {}));
  EXPECT_LT(r->second.a, r->second.b);
  EXPECT_EQ(r->second.after_len, r->second.before_len - (r->second.b - r->second.a));
}

TEST(ShrinkOnce, RejectsNonModel) {
  EXPECT_THROW(shrink_once(parse_word("{};{}", kP), parse("E x. P(x)", kP)),
               PreconditionError);
}

TEST(ShrinkOnce, EmptyThetaListAlwaysShrinks) {
  const Shrinker s(top());
  ASSERT_TRUE(s.thetas().empty());
  for (const auto& w : oracle::words(kP, 5)) {
    if (w.size() < 2) continue;
    const auto r = s.shrink_once(w);
    ASSERT_TRUE(r) << to_string(w);
  }
}

TEST(ShrinkOnce, DistinctTypesMeansNoStep) {
  const Formula f = parse("E x. P(x)", kP);
  const Shrinker s(f);
  for (const auto& w : oracle::words(kP, 5)) {
    if (!oracle::holds(w, f, {})) continue;
    const auto types = witness_types(w, s.thetas());
    bool repeated = false;
    for (std::size_t i = 0; i < types.size(); ++i) {
      for (std::size_t j = i + 1; j < types.size(); ++j) repeated = repeated || types[i] == types[j];
    }
    EXPECT_EQ(s.shrink_once(w).has_value(), repeated) << to_string(w);
  }
}

TEST(ShrinkToCore, Examples) {
  const Formula f = parse("E x. P(x)", kP);
  const auto [core, trace] = shrink_to_core(parse_word("{P};{P};{P}", kP), f);
  EXPECT_LE(core.size(), 2U);
  EXPECT_TRUE(oracle::holds(core, f, {}));
  EXPECT_FALSE(trace.steps.empty());

  const auto [one, t2] = shrink_to_core(parse_word("{};{P};{};{}", kP), top());
  EXPECT_LE(one.size(), 1U);
}

TEST(Bound, Values) {
  EXPECT_EQ(minimal_model_bound(top()), 1U);
  EXPECT_EQ(minimal_model_bound(parse("E x. P(x)", kP)), 2U);
}

// Preservation, progress, the length bound and type stability on every
// satisfying word of length <= 6 over the corpus.
TEST(ShrinkToCore, CorpusProperties) {
  std::size_t steps = 0;
  for (const auto& e : standard_corpus(60)) {
    const Shrinker s(e.formula);
    const std::size_t l = s.thetas().size();
    if (l > 10) continue;
    const std::size_t max_len = e.sig.size() == 1 ? 6 : 4;
    for (const auto& w : oracle::words(e.sig, max_len)) {
      if (!oracle::holds(w, e.formula, {})) continue;
      const auto once = s.shrink_once(w);
      if (once) {
        const auto& [v, st] = *once;
        ASSERT_TRUE(oracle::holds(v, e.formula, {})) << e.name << " " << to_string(w);
        ASSERT_EQ(v, cut_out(w, st.a, st.b));
        ASSERT_EQ(v.size(), w.size() - (st.b - st.a));
        const auto before = witness_types(w, s.thetas());
        const auto after = witness_types(v, s.thetas());
        ASSERT_EQ(before[st.a], before[st.b]);
        for (std::size_t p = 0; p <= st.a; ++p) {
          ASSERT_EQ(after[p], before[p]) << e.name << " " << to_string(w) << " at " << p;
        }
      }
      const auto [core, trace] = s.shrink_to_core(w);
      steps += trace.steps.size();
      ASSERT_LE(trace.steps.size(), w.size());
      ASSERT_TRUE(oracle::holds(core, e.formula, {}));
      ASSERT_LE(core.size(), std::size_t{1} << l) << e.name;
      const auto types = witness_types(core, s.thetas());
      for (std::size_t i = 0; i < types.size(); ++i) {
        for (std::size_t j = i + 1; j < types.size(); ++j) ASSERT_NE(types[i], types[j]);
      }
    }
  }
  EXPECT_GT(steps, 0U);
}

TEST(Bound, AgreesWithDecision) {
  for (const auto& e : standard_corpus(60)) {
    const std::uint64_t bound = minimal_model_bound(e.formula);
    if (bound > 64) continue;
    const std::size_t len = std::min<std::uint64_t>(bound, e.sig.size() == 1 ? 8 : 5);
    if (len < bound) continue;
    const DecisionResult r = decide_fmp(e.formula, e.sig);
    EXPECT_EQ(r.verdict == Verdict::HasFiniteModel,
              find_finite_model(e.formula, e.sig, len).has_value())
        << e.name;
  }
}
