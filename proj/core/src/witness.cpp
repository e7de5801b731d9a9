#include "finlin/witness.hpp"

#include "finlin/error.hpp"
#include "finlin/eval.hpp"

namespace finlin {

WitnessType WitnessType::from_index(std::uint64_t code, std::size_t length) {
  std::vector<bool> bits(length);
  for (std::size_t j = 0; j < length; ++j) bits[j] = (code >> j) & 1U;
  return WitnessType(std::move(bits));
}

std::uint64_t WitnessType::index() const {
  if (bits_.size() > 63) throw PreconditionError("witness type too long to index");
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j]) code |= std::uint64_t{1} << j;
  }
  return code;
}

std::string to_string(const WitnessType& s) {
  std::string out = "(";
  for (bool b : s.bits()) out += b ? '1' : '0';
  return out + ")";
}

Formula beta(const WitnessType& s, const std::vector<Formula>& thetas,
             const std::string& x) {
  if (s.size() != thetas.size()) {
    throw PreconditionError("witness type length " + std::to_string(s.size()) +
                            " does not match " + std::to_string(thetas.size()) + " thetas");
  }
  if (s.size() == 0) return top();
  const Domain above = Domain::interval_above(x);
  std::vector<Formula> parts;
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    Formula r = relativize(thetas[j], above);
    parts.push_back(s[j] ? r : neg(r));
  }
  return parts.size() == 1 ? parts.front() : land(std::move(parts));
}

namespace {

std::vector<CompiledFormula> compile_all(const std::vector<Formula>& thetas,
                                         const Signature& sig) {
  const SymbolTable table = model_symbols(WordModel{sig, {}});
  std::vector<CompiledFormula> out;
  for (const auto& t : thetas) {
    if (!is_sentence(t)) throw PreconditionError("theta components must be sentences");
    out.emplace_back(t, table);
  }
  return out;
}

WitnessType type_of_suffix(const WordModel& suffix,
                           const std::vector<CompiledFormula>& compiled) {
  std::vector<bool> bits;
  bits.reserve(compiled.size());
  for (const auto& c : compiled) bits.push_back(c.eval(suffix, Assignment{}));
  return WitnessType(std::move(bits));
}

}  // namespace

WitnessType witness_type(const WordModel& w, std::size_t position,
                         const std::vector<Formula>& thetas) {
  if (position >= w.size()) throw PreconditionError("position out of range");
  return type_of_suffix(w.suffix(position + 1), compile_all(thetas, w.sig));
}

std::vector<WitnessType> witness_types(const WordModel& w,
                                       const std::vector<Formula>& thetas) {
  const auto compiled = compile_all(thetas, w.sig);
  std::vector<WitnessType> out;
  for (std::size_t p = 0; p < w.size(); ++p) {
    out.push_back(type_of_suffix(w.suffix(p + 1), compiled));
  }
  return out;
}

std::vector<Formula> AlphaTheory::axioms() const {
  std::vector<Formula> out{alpha, zero_axiom, successor_axiom};
  out.insert(out.end(), largest_witness_axioms.begin(), largest_witness_axioms.end());
  return out;
}

AlphaTheory build_theory(const Formula& alpha, const SplitOptions& options) {
  return build_theory(alpha, sentence_components(alpha, options).thetas);
}

AlphaTheory build_theory(const Formula& alpha, std::vector<Formula> thetas) {
  if (!is_sentence(alpha)) throw PreconditionError("build_theory needs a sentence");
  if (thetas.size() > kMaxThetas) {
    throw BudgetExceeded("theta-list of length " + std::to_string(thetas.size()) +
                         " gives too many largest-witness axioms");
  }
  AlphaTheory t;
  t.alpha = alpha;
  t.thetas = std::move(thetas);
  // E x. A y. x <= y
  t.zero_axiom = exists("x", forall("y", leq("x", "y")));
  // A x. A y. (x < y -> E z. (x < z & A u. (x < u -> z <= u)))
  t.successor_axiom = forall(
      "x", forall("y", implies(less("x", "y"),
                               exists("z", land(less("x", "z"),
                                                forall("u", implies(less("x", "u"),
                                                                    leq("z", "u"))))))));
  const std::size_t l = t.thetas.size();
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << l); ++code) {
    const WitnessType s = WitnessType::from_index(code, l);
    Formula bx = beta(s, t.thetas, "x");
    Formula by = beta(s, t.thetas, "y");
    // E x. b(x) -> E x. (b(x) & A y. (x < y -> ~b(y)))
    t.largest_witness_axioms.push_back(implies(
        exists("x", bx),
        exists("x", land(bx, forall("y", implies(less("x", "y"), neg(by)))))));
  }
  return t;
}

}  // namespace finlin
