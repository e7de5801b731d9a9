#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "finlin/automata.hpp"
#include "finlin/interp.hpp"
#include "finlin/parser.hpp"
#include "finlin/shrink.hpp"
#include "finlin/split.hpp"
#include "finlin/tis.hpp"

using namespace finlin;

namespace {

const Signature kPQ({"P", "Q"});

// E x1 < x2 < .. < xk with P and Q alternating along the chain.
Formula chain(int k) {
  std::string s = std::string(k % 2 ? "P" : "Q") + "(x" + std::to_string(k) + ")";
  for (int d = k - 1; d >= 1; --d) {
    const std::string x = "x" + std::to_string(d), y = "x" + std::to_string(d + 1);
    s = std::string(d % 2 ? "P" : "Q") + "(" + x + ") & E " + y + ". " + x + " < " + y + " & " + s;
  }
  return parse("E x1. " + s, kPQ);
}

}  // namespace

static void BM_SplitSentence(benchmark::State& state) {
  const Formula f = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sentence_components(f).thetas.size());
}
BENCHMARK(BM_SplitSentence)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_SplitOpen(benchmark::State& state) {
  const Formula f = parse("E z. x < z & z < y & P(z) & A u. (z < u -> Q(u))", kPQ);
  const VarPartition part({"x"}, {"y"});
  for (auto _ : state) benchmark::DoNotOptimize(split_decompose(f, part).pairs.size());
}
BENCHMARK(BM_SplitOpen)->Unit(benchmark::kMillisecond);

static void BM_Decide(benchmark::State& state) {
  const Formula f = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decide_fmp(f, kPQ).verdict);
}
BENCHMARK(BM_Decide)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_DecideNoModel(benchmark::State& state) {
  const Formula f = parse("E x. P(x) & A x. (P(x) -> E y. x < y & P(y))", kPQ);
  for (auto _ : state) benchmark::DoNotOptimize(decide_fmp(f, kPQ).verdict);
}
BENCHMARK(BM_DecideNoModel)->Unit(benchmark::kMillisecond);

static void BM_ShrinkToCore(benchmark::State& state) {
  const Formula f = parse("E x. P(x) & E y. Q(y)", kPQ);
  WordModel w{kPQ, std::vector<Letter>(static_cast<std::size_t>(state.range(0)), 3U)};
  for (auto _ : state) benchmark::DoNotOptimize(shrink_to_core(w, f).first.size());
}
BENCHMARK(BM_ShrinkToCore)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

static void BM_TransitiveSets(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transitive_sets(n).size());
}
BENCHMARK(BM_TransitiveSets)->DenseRange(2, 5);

static void BM_CheckTisAllSize3(benchmark::State& state) {
  for (auto _ : state) {
    int models = 0;
    for (std::uint64_t c = 0; c < 512; ++c) models += check_tis(FinStructure::from_code(3, c)).ok();
    benchmark::DoNotOptimize(models);
  }
}
BENCHMARK(BM_CheckTisAllSize3)->Unit(benchmark::kMillisecond);

static void BM_ClassifyPowerset(benchmark::State& state) {
  const auto sets = transitive_sets(4);
  const FinStructure m = powerset_model(sets.back());
  for (auto _ : state) benchmark::DoNotOptimize(classify_tis(m).image.size());
}
BENCHMARK(BM_ClassifyPowerset);

static void BM_LiftDiagram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FinStructure m = FinStructure::from_code(n, 0x5a5aULL & ((1ULL << (n * n)) - 1));
  const Translation d = build_diagram_interpretation(m);
  const Formula phi = diagram_sentence(m);
  for (auto _ : state) benchmark::DoNotOptimize(lift(d, phi).hash());
}
BENCHMARK(BM_LiftDiagram)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
