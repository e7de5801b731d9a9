#pragma once

// Brute-force Tarski evaluation over finite models. This is the reference
// oracle every other engine is tested against, so it stays deliberately
// naive: quantifiers loop over the whole domain.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "finlin/error.hpp"
#include "finlin/formula.hpp"
#include "finlin/word.hpp"

namespace finlin {

using Assignment = std::map<std::string, std::size_t>;

// How a model resolves the symbols a formula mentions.
struct SymbolTable {
  std::function<std::optional<std::uint32_t>(const std::string&)> unary;
  std::function<std::optional<std::uint32_t>(const std::string&)> binary;
  bool has_order = false;
};

// Model interface (found by ADL): model_size, model_symbols, model_less,
// model_unary, model_binary.
inline std::size_t model_size(const WordModel& w) { return w.size(); }
SymbolTable model_symbols(const WordModel& w);
inline bool model_less(const WordModel&, std::size_t i, std::size_t j) {
  return i < j;
}
inline bool model_unary(const WordModel& w, std::uint32_t k, std::size_t i) {
  return (w.letters[i] >> k) & 1U;
}
inline bool model_binary(const WordModel&, std::uint32_t, std::size_t,
                         std::size_t) {
  return false;  // never resolved: words carry no binary relations
}

// A formula with variables resolved to slots and symbols resolved against a
// model's SymbolTable. Reusable across every model sharing that table.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const SymbolTable& symbols);

  // Free variables in sorted order; eval takes their values in this order.
  const std::vector<std::string>& free_vars() const { return free_; }

  template <class M>
  bool eval(const M& m, std::span<const std::size_t> free_values) const {
    if (free_values.size() != free_.size()) {
      throw PreconditionError("wrong number of free-variable values");
    }
    const std::size_t n = model_size(m);
    std::vector<std::size_t> env(num_slots_, 0);
    for (std::size_t i = 0; i < free_values.size(); ++i) {
      if (free_values[i] >= n) {
        throw PreconditionError("variable '" + free_[i] + "' assigned outside the domain");
      }
      env[i] = free_values[i];
    }
    return run(m, root_, env.data(), n);
  }

  template <class M>
  bool eval(const M& m, const Assignment& a) const {
    std::vector<std::size_t> values;
    values.reserve(free_.size());
    for (const auto& v : free_) {
      auto it = a.find(v);
      if (it == a.end()) throw UnboundVariable("free variable '" + v + "' is unassigned");
      values.push_back(it->second);
    }
    return eval(m, std::span<const std::size_t>(values));
  }

 private:
  struct Op {
    Kind kind;
    std::uint32_t x = 0;  // first argument slot, or binder slot
    std::uint32_t y = 0;  // second argument slot
    std::uint32_t sym = 0;
    std::uint32_t begin = 0;  // children in kids_[begin, end)
    std::uint32_t end = 0;
  };

  std::uint32_t build(const Formula& f, const SymbolTable& symbols,
                      std::unordered_map<std::string, std::vector<std::uint32_t>>& scope);

  template <class M>
  bool run(const M& m, std::uint32_t i, std::size_t* env, std::size_t n) const {
    const Op& op = ops_[i];
    switch (op.kind) {
      case Kind::True:
        return true;
      case Kind::False:
        return false;
      case Kind::Less:
        return model_less(m, env[op.x], env[op.y]);
      case Kind::Eq:
        return env[op.x] == env[op.y];
      case Kind::Pred:
        return model_unary(m, op.sym, env[op.x]);
      case Kind::Rel:
        return model_binary(m, op.sym, env[op.x], env[op.y]);
      case Kind::Not:
        return !run(m, kids_[op.begin], env, n);
      case Kind::And:
        for (std::uint32_t k = op.begin; k < op.end; ++k) {
          if (!run(m, kids_[k], env, n)) return false;
        }
        return true;
      case Kind::Or:
        for (std::uint32_t k = op.begin; k < op.end; ++k) {
          if (run(m, kids_[k], env, n)) return true;
        }
        return false;
      case Kind::Implies:
        return !run(m, kids_[op.begin], env, n) || run(m, kids_[op.begin + 1], env, n);
      case Kind::Iff:
        return run(m, kids_[op.begin], env, n) == run(m, kids_[op.begin + 1], env, n);
      case Kind::Exists:
        for (std::size_t p = 0; p < n; ++p) {
          env[op.x] = p;
          if (run(m, kids_[op.begin], env, n)) return true;
        }
        return false;
      case Kind::Forall:
        for (std::size_t p = 0; p < n; ++p) {
          env[op.x] = p;
          if (!run(m, kids_[op.begin], env, n)) return false;
        }
        return true;
    }
    return false;
  }

  std::vector<Op> ops_;
  std::vector<std::uint32_t> kids_;
  std::vector<std::string> free_;
  std::uint32_t root_ = 0;
  std::uint32_t num_slots_ = 0;
};

template <class M>
bool eval(const M& m, const Formula& f, const Assignment& a = {}) {
  return CompiledFormula(f, model_symbols(m)).eval(m, a);
}

// Length-lex first word of length <= max_len satisfying the sentence.
std::optional<WordModel> find_finite_model(const Formula& alpha,
                                           const Signature& sig,
                                           std::size_t max_len);

}  // namespace finlin
