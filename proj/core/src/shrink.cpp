#include "finlin/shrink.hpp"

#include "finlin/error.hpp"
#include "finlin/eval.hpp"

namespace finlin {

Shrinker::Shrinker(Formula alpha, const SplitOptions& options)
    : alpha_(std::move(alpha)), thetas_(sentence_components(alpha_, options).thetas) {}

Shrinker::Shrinker(Formula alpha, std::vector<Formula> thetas)
    : alpha_(std::move(alpha)), thetas_(std::move(thetas)) {}

void Shrinker::require_model(const WordModel& w) const {
  if (!eval(w, alpha_)) {
    throw PreconditionError("word " + to_string(w) + " does not satisfy the sentence");
  }
}

std::optional<std::pair<WordModel, ShrinkStep>> Shrinker::shrink_once(
    const WordModel& w) const {
  require_model(w);
  const auto types = witness_types(w, thetas_);
  for (std::size_t a = 0; a < types.size(); ++a) {
    for (std::size_t b = types.size(); b-- > a + 1;) {
      if (types[b] != types[a]) continue;
      WordModel out{w.sig, {}};
      out.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(a + 1));
      out.letters.insert(out.letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(b + 1),
                         w.letters.end());
      ShrinkStep step{a, b, types[a], w.size(), out.size()};
      return std::make_pair(std::move(out), std::move(step));
    }
  }
  return std::nullopt;
}

std::pair<WordModel, ShrinkTrace> Shrinker::shrink_to_core(const WordModel& w) const {
  ShrinkTrace trace;
  WordModel cur = w;
  while (auto r = shrink_once(cur)) {
    cur = std::move(r->first);
    trace.steps.push_back(std::move(r->second));
  }
  return {std::move(cur), std::move(trace)};
}

std::optional<std::pair<WordModel, ShrinkStep>> shrink_once(const WordModel& w,
                                                            const Formula& alpha) {
  return Shrinker(alpha).shrink_once(w);
}

std::pair<WordModel, ShrinkTrace> shrink_to_core(const WordModel& w, const Formula& alpha) {
  return Shrinker(alpha).shrink_to_core(w);
}

std::uint64_t minimal_model_bound(const Formula& alpha, const SplitOptions& options) {
  const std::size_t l = sentence_components(alpha, options).thetas.size();
  if (l >= 64) throw BudgetExceeded("theta-list too long for a 64-bit bound");
  return std::uint64_t{1} << l;
}

}  // namespace finlin
