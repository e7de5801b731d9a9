#pragma once

// Splitting decomposition. Cut a word w = u.v into a prefix u and a suffix v;
// variables in `left` range over u, variables in `right` over v. Every
// formula is then equivalent to a finite disjunction of pairs
// (prefix formula evaluated in u) & (suffix formula evaluated in v).
//
// The prefix and suffix relativizations are never written out: a prefix
// formula is simply evaluated on the prefix word, a suffix formula on the
// suffix word.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "finlin/eval.hpp"
#include "finlin/formula.hpp"
#include "finlin/word.hpp"

namespace finlin {

struct VarPartition {
  std::set<std::string> left;   // range over the prefix
  std::set<std::string> right;  // range over the suffix

  VarPartition() = default;
  VarPartition(std::set<std::string> l, std::set<std::string> r);
  bool contains(const std::string& v) const {
    return left.contains(v) || right.contains(v);
  }
};

struct SplitPair {
  Formula prefix;  // free variables within partition.left
  Formula suffix;  // free variables within partition.right
};

struct SplitForm {
  VarPartition partition;
  std::vector<SplitPair> pairs;  // empty disjunction = false

  bool is_false() const { return pairs.empty(); }
  bool is_true() const;
};

struct SplitOptions {
  // Largest number of pairs any intermediate result may have.
  std::size_t max_pairs = std::size_t{1} << 14;
  // Largest total size of the pair formulas, counting shared subformulas
  // once per occurrence.
  std::size_t max_output_nodes = std::size_t{1} << 20;
  // Merge theta sentences that define the same language and drop those
  // true or false on every word. Falls back to syntactic identity when an
  // automaton exceeds `max_states`.
  bool semantic_components = true;
  std::size_t max_states = 200'000;
};

SplitForm split_decompose(const Formula& phi, const VarPartition& partition,
                          const SplitOptions& options = {});

// Evaluates the decomposition at cut `cut` of `w`: prefix formulas on
// w[0, cut), suffix formulas on w[cut, |w|) with positions shifted down.
// Left variables must be assigned below the cut, right ones at or above it.
bool eval_split(const SplitForm& form, const WordModel& w, std::size_t cut,
                const Assignment& a = {});

// eval_split with the pair formulas compiled once for words over `sig`.
class SplitEvaluator {
 public:
  SplitEvaluator(const SplitForm& form, const Signature& sig);
  bool eval(const WordModel& w, std::size_t cut, const Assignment& a = {}) const;

  // Truth of each pair's prefix (suffix) formula on u (v) alone; the form
  // holds iff some index is true in both. Lets callers reuse side values
  // across the many cuts that share a prefix or suffix.
  std::vector<bool> prefix_truth(const WordModel& u, const Assignment& lower = {}) const;
  std::vector<bool> suffix_truth(const WordModel& v, const Assignment& upper = {}) const;
  static bool combine(const std::vector<bool>& prefix, const std::vector<bool>& suffix);

 private:
  std::vector<bool> truth(const WordModel& m, const Assignment& a, bool prefix) const;

  VarPartition partition_;
  // Distinct side formulas, and for each pair the indices into them.
  std::vector<CompiledFormula> prefixes_, suffixes_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

// The sentence-level components: the distinct non-constant prefix and
// suffix sentences from which the decomposition of a sentence is built as a
// boolean combination. The suffix list is the theta-list whose length is l.
// Leaves are kept in order of first occurrence.
struct SentenceComponents {
  SplitForm form;
  std::vector<Formula> etas;
  std::vector<Formula> thetas;
};

SentenceComponents sentence_components(const Formula& alpha,
                                       const SplitOptions& options = {});

}  // namespace finlin
