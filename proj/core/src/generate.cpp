#include "finlin/generate.hpp"

#include <algorithm>

#include "finlin/error.hpp"
#include "finlin/parser.hpp"
#include "finlin/split.hpp"

namespace finlin {

FormulaGenerator::FormulaGenerator(std::uint64_t seed, GeneratorOptions opt)
    : rng_(seed), opt_(std::move(opt)) {}

std::size_t FormulaGenerator::pick(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

Formula FormulaGenerator::atom(const std::vector<std::string>& scope) {
  if (scope.empty()) return pick(2) ? top() : bottom();
  const std::string& x = scope[pick(scope.size())];
  const std::string& y = scope[pick(scope.size())];
  switch (pick(5)) {
    case 0:
      return less(x, y);
    case 1:
      return eq(x, y);
    default:
      return pred(opt_.preds[pick(opt_.preds.size())], x);
  }
}

Formula FormulaGenerator::gen(std::vector<std::string>& scope, std::size_t depth,
                              std::size_t& budget) {
  if (budget <= 1) {
    budget = 0;
    return atom(scope);
  }
  --budget;
  const std::size_t r = pick(10);
  if ((r < 4 || scope.empty()) && depth < opt_.max_depth) {
    // Mostly fresh names, occasionally shadowing one in scope.
    std::string v;
    std::vector<std::string> unused;
    for (const auto& p : opt_.var_pool) {
      if (std::find(scope.begin(), scope.end(), p) == scope.end()) unused.push_back(p);
    }
    if (unused.empty() || pick(8) == 0) {
      v = opt_.var_pool[pick(opt_.var_pool.size())];
    } else {
      v = unused[pick(unused.size())];
    }
    scope.push_back(v);
    Formula body = gen(scope, depth + 1, budget);
    scope.pop_back();
    return pick(2) ? exists(v, body) : forall(v, body);
  }
  if (scope.empty()) return atom(scope);
  switch (r) {
    case 4:
      return neg(gen(scope, depth, budget));
    case 5:
    case 6: {
      Formula a = gen(scope, depth, budget);
      return land(a, gen(scope, depth, budget));
    }
    case 7: {
      Formula a = gen(scope, depth, budget);
      return lor(a, gen(scope, depth, budget));
    }
    case 8: {
      Formula a = gen(scope, depth, budget);
      return pick(3) ? implies(a, gen(scope, depth, budget)) : iff(a, gen(scope, depth, budget));
    }
    default:
      return atom(scope);
  }
}

Formula FormulaGenerator::formula(const std::vector<std::string>& scope) {
  std::vector<std::string> s = scope;
  std::size_t budget = 2 + pick(opt_.max_nodes - 1);
  return gen(s, 0, budget);
}

Formula FormulaGenerator::sentence() { return formula({}); }

std::vector<CorpusEntry> standard_corpus(std::size_t random_count, std::uint64_t seed,
                                         std::size_t* rejected) {
  const Signature p({"P"});
  const Signature pq({"P", "Q"});
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, const std::string& text, const Signature& sig) {
    out.push_back({std::move(name), parse(text, sig), sig});
  };
  out.push_back({"ub_p", ub(p, "P"), p});
  add("exists_p", "E x. P(x)", p);
  add("forall_p", "A x. P(x)", p);
  add("nonempty", "E x. true", p);
  add("empty", "~(E x. true)", p);
  add("p_then_q", "E x. E y. (x < y & P(x) & Q(y))", pq);
  add("every_p_has_later_q", "A x. (P(x) -> E y. (x < y & Q(y)))", pq);
  add("no_max", "E x. true & A x. E y. x < y", p);
  add("p_no_least", "E x. P(x) & A x. (P(x) -> E y. (y < x & P(y)))", p);
  add("p_and_not_p", "E x. (P(x) & ~P(x))", p);
  add("three_points", "E x. E y. E z. (x < y & y < z)", p);
  add("last_is_p", "E x. (P(x) & A y. ~(x < y))", p);
  add("alternation", "A x. (P(x) <-> ~Q(x)) & E x. P(x) & E x. Q(x)", pq);

  FormulaGenerator one(seed, GeneratorOptions{3, 14, {"P"}, {"x", "y", "z", "u"}});
  FormulaGenerator two(seed + 1, GeneratorOptions{3, 14, {"P", "Q"}, {"x", "y", "z", "u"}});
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < random_count;) {
    const bool use_two = i % 2 == 1;
    Formula f = use_two ? two.sentence() : one.sentence();
    try {
      split_decompose(f, VarPartition{});
    } catch (const BudgetExceeded&) {
      ++skipped;
      continue;
    }
    out.push_back({"random_" + std::to_string(i), f, use_two ? pq : p});
    ++i;
  }
  if (rejected) *rejected = skipped;
  return out;
}

}  // namespace finlin
