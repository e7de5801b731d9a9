#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "finlin/formula.hpp"
#include "finlin/split.hpp"
#include "finlin/word.hpp"

namespace finlin {

// One bit per suffix sentence theta_j: bit j says whether theta_j holds
// strictly above the position.
class WitnessType {
 public:
  WitnessType() = default;
  explicit WitnessType(std::vector<bool> bits) : bits_(std::move(bits)) {}
  // Bit j of `code` becomes bit j of the type.
  static WitnessType from_index(std::uint64_t code, std::size_t length);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t j) const { return bits_[j]; }
  const std::vector<bool>& bits() const { return bits_; }
  std::uint64_t index() const;

  friend bool operator==(const WitnessType&, const WitnessType&) = default;
  friend auto operator<=>(const WitnessType& a, const WitnessType& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<bool> bits_;
};

std::string to_string(const WitnessType& s);

// beta^s(x): the conjunction of theta_j relativized to (x, oo) for s_j = 1
// and its negation for s_j = 0.
Formula beta(const WitnessType& s, const std::vector<Formula>& thetas,
             const std::string& x);

WitnessType witness_type(const WordModel& w, std::size_t position,
                         const std::vector<Formula>& thetas);

// Types of every position, computed once per suffix.
std::vector<WitnessType> witness_types(const WordModel& w,
                                       const std::vector<Formula>& thetas);

// The finite theory [[alpha]]: alpha, Zero, Restricted Successor and one
// largest-witness axiom per witness type, 3 + 2^l sentences in total.
struct AlphaTheory {
  Formula alpha;
  Formula zero_axiom;
  Formula successor_axiom;
  std::vector<Formula> largest_witness_axioms;  // indexed by WitnessType::index
  std::vector<Formula> thetas;

  std::vector<Formula> axioms() const;
};

// Refuses l above this: 2^l axioms would not be printable.
inline constexpr std::size_t kMaxThetas = 20;

AlphaTheory build_theory(const Formula& alpha, const SplitOptions& options = {});
AlphaTheory build_theory(const Formula& alpha, std::vector<Formula> thetas);

}  // namespace finlin
