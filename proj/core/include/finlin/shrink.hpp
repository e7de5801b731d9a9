#pragma once

// Pumping finite models down. If positions a < b carry the same witness
// type, removing the half-open interval (a, b] leaves the prefix [0, a]
// untouched and replaces the suffix above a by the suffix above b, which
// satisfies exactly the same theta-sentences. The split decomposition then
// forces the shorter word to satisfy alpha as well.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "finlin/formula.hpp"
#include "finlin/split.hpp"
#include "finlin/witness.hpp"
#include "finlin/word.hpp"

namespace finlin {

struct ShrinkStep {
  std::size_t a;
  std::size_t b;
  WitnessType type;
  std::size_t before_len;
  std::size_t after_len;
};

struct ShrinkTrace {
  std::vector<ShrinkStep> steps;
};

// Carries the theta-list of alpha so repeated shrinking does not redo the
// decomposition.
class Shrinker {
 public:
  explicit Shrinker(Formula alpha, const SplitOptions& options = {});
  Shrinker(Formula alpha, std::vector<Formula> thetas);

  const Formula& alpha() const { return alpha_; }
  const std::vector<Formula>& thetas() const { return thetas_; }

  // Picks the least a that shares its type with a later position and the
  // greatest such b, and removes (a, b].
  std::optional<std::pair<WordModel, ShrinkStep>> shrink_once(const WordModel& w) const;
  std::pair<WordModel, ShrinkTrace> shrink_to_core(const WordModel& w) const;

 private:
  void require_model(const WordModel& w) const;

  Formula alpha_;
  std::vector<Formula> thetas_;
};

std::optional<std::pair<WordModel, ShrinkStep>> shrink_once(const WordModel& w,
                                                            const Formula& alpha);
std::pair<WordModel, ShrinkTrace> shrink_to_core(const WordModel& w, const Formula& alpha);

// 2^l for the theta-list of alpha: alpha has a finite model iff it has one
// of at most this length (the empty word aside).
std::uint64_t minimal_model_bound(const Formula& alpha, const SplitOptions& options = {});

}  // namespace finlin
