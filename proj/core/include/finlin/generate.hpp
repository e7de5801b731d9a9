#pragma once

// Seeded random formulas for property tests, benchmarks and corpus runs.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "finlin/formula.hpp"

namespace finlin {

struct GeneratorOptions {
  std::size_t max_depth = 3;   // quantifier depth
  std::size_t max_nodes = 14;  // soft size bound
  std::vector<std::string> preds{"P", "Q"};
  std::vector<std::string> var_pool{"x", "y", "z", "u"};
};

class FormulaGenerator {
 public:
  explicit FormulaGenerator(std::uint64_t seed, GeneratorOptions opt = {});

  // A formula whose free variables lie within `scope`.
  Formula formula(const std::vector<std::string>& scope);
  Formula sentence();
  // Uniform in [0, n).
  std::size_t pick(std::size_t n);

 private:
  Formula gen(std::vector<std::string>& scope, std::size_t depth, std::size_t& budget);
  Formula atom(const std::vector<std::string>& scope);

  std::mt19937_64 rng_;
  GeneratorOptions opt_;
};

struct CorpusEntry {
  std::string name;
  Formula formula;
  Signature sig;
};

// Hand-picked sentences with known answers followed by `random_count`
// generated sentences over one or two predicates. Generated sentences whose
// split decomposition exceeds the default budget are skipped; their number
// goes to `rejected`.
std::vector<CorpusEntry> standard_corpus(std::size_t random_count = 200,
                                         std::uint64_t seed = 20240601,
                                         std::size_t* rejected = nullptr);

}  // namespace finlin
