#pragma once

// Formula-to-automaton compilation over finite words. A formula with free
// variables v_0..v_{k-1} is read over the extended alphabet
// letter x {0,1}^k: bit |sig|+i of a symbol marks the position of v_i.
// Every acceptor built here is a complete DFA whose language contains only
// well-formed words, i.e. words with exactly one mark on every track.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "finlin/eval.hpp"
#include "finlin/formula.hpp"
#include "finlin/word.hpp"

namespace finlin {

using Symbol = std::uint32_t;
using State = std::uint32_t;

class Acceptor {
 public:
  Acceptor(std::size_t letter_bits, std::vector<std::string> tracks,
           std::uint32_t num_states);

  std::size_t letter_bits() const { return letter_bits_; }
  const std::vector<std::string>& tracks() const { return tracks_; }
  std::size_t symbol_bits() const { return letter_bits_ + tracks_.size(); }
  std::size_t alphabet_size() const { return std::size_t{1} << symbol_bits(); }
  std::uint32_t num_states() const { return num_states_; }
  // Construction keeps automata complete and deterministic.
  bool deterministic() const { return true; }
  State initial() const { return 0; }

  State next(State s, Symbol a) const { return delta_[s * alphabet_size() + a]; }
  void set_next(State s, Symbol a, State t) { delta_[s * alphabet_size() + a] = t; }
  bool accepting(State s) const { return accepting_[s]; }
  void set_accepting(State s, bool v) { accepting_[s] = v; }

  bool accepts(const std::vector<Symbol>& word) const;

 private:
  std::size_t letter_bits_;
  std::vector<std::string> tracks_;
  std::uint32_t num_states_;
  std::vector<State> delta_;
  std::vector<bool> accepting_;
};

struct AutomataOptions {
  std::size_t max_states = 1'000'000;
  // Largest letter_bits + tracks accepted.
  std::size_t max_symbol_bits = 16;
};

struct StageStat {
  std::string stage;
  std::size_t states_before_min;
  std::size_t states;
};

struct CompileStats {
  std::vector<StageStat> stages;
  std::size_t peak_states = 0;
};

// Well-formedness acceptor: exactly one mark per track.
Acceptor well_formed(std::size_t letter_bits, const std::vector<std::string>& tracks);
Acceptor complement(const Acceptor& a);  // relative to all words, not well-formed ones
Acceptor intersect(const Acceptor& a, const Acceptor& b, const AutomataOptions& opt = {});
Acceptor unite(const Acceptor& a, const Acceptor& b, const AutomataOptions& opt = {});
// Removes the last track by projection followed by subset construction.
Acceptor project_last(const Acceptor& a, const AutomataOptions& opt = {});
Acceptor minimize(const Acceptor& a);
// Equal for two acceptors with the same tracks iff their languages agree.
std::string language_key(const Acceptor& a);

// Compiles phi over the ordered free-variable context `ctx` (which must
// contain every free variable of phi).
Acceptor compile(const Formula& phi, const Signature& sig,
                 const std::vector<std::string>& ctx,
                 const AutomataOptions& opt = {}, CompileStats* stats = nullptr);

// Encodes a word and an assignment of the context variables as symbols.
std::vector<Symbol> encode(const WordModel& w, const std::vector<std::string>& ctx,
                           const Assignment& a);

bool is_empty(const Acceptor& a);
// Minimum-length accepted word; among those the lexicographically least
// with symbols ordered numerically.
std::optional<std::vector<Symbol>> shortest_accepted(const Acceptor& a);
std::optional<std::vector<Symbol>> shortest_nonempty_accepted(const Acceptor& a);

// Strips the marker tracks.
WordModel to_word(const std::vector<Symbol>& symbols, const Signature& sig);

void write_dot(std::ostream& os, const Acceptor& a, const Signature& sig);

enum class Verdict { HasFiniteModel, NoFiniteModel };

struct DecisionResult {
  Verdict verdict = Verdict::NoFiniteModel;
  std::optional<WordModel> minimal;           // length-lex least model
  std::optional<WordModel> minimal_nonempty;  // least model of length >= 1
  CompileStats stats;
  std::optional<Acceptor> acceptor;

  // The empty word is a model and nothing else is.
  bool only_empty_model() const {
    return minimal && minimal->empty() && !minimal_nonempty;
  }
};

// Decides whether the sentence has a finite model. Throws BudgetExceeded
// when the state budget runs out; that is not a verdict.
DecisionResult decide_fmp(const Formula& alpha, const Signature& sig,
                          const AutomataOptions& opt = {});

}  // namespace finlin
