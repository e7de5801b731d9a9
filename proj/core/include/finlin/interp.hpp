#pragma once

// Translations between relational languages and their semantic checking on
// finite structures. A translation with p parameters sends each source
// symbol P of arity n to a formula over designated argument variables
// v0..v{n-1} and parameter variables w0..w{p-1}; lifting substitutes these
// definitions for the atoms and leaves the connectives alone.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "finlin/eval.hpp"
#include "finlin/formula.hpp"
#include "finlin/structure.hpp"

namespace finlin {

struct SymbolDefinition {
  std::vector<std::string> args;  // v0, v1, ...
  Formula body;
};

class Translation {
 public:
  Translation() = default;
  explicit Translation(std::size_t params);

  std::size_t params() const { return params_; }
  const std::vector<std::string>& param_vars() const { return param_vars_; }
  const Formula& domain() const { return domain_; }
  void set_domain(Formula d);
  const std::map<std::string, SymbolDefinition>& definitions() const { return defs_; }
  void define(const std::string& symbol, std::vector<std::string> args, Formula body);

 private:
  std::size_t params_ = 0;
  std::vector<std::string> param_vars_;
  Formula domain_;
  std::map<std::string, SymbolDefinition> defs_;
};

// P -> P(v0) for every unary, R -> R(v0,v1) for every binary symbol.
Translation identity_translation(const Signature& sig);

// phi^tau. Parameters must not occur free in phi; bound variables that would
// capture a parameter or an argument are renamed.
Formula lift(const Translation& tau, const Formula& phi);

// Text form, one item per line:
//   params: 2
//   domain: ~(w0 = w1)
//   In(v0,v1) := v0 = w0 & v1 = w1
Translation parse_translation(std::string_view text, const Signature& target);
std::string to_string(const Translation& tau);

// Interprets the finite structure m (n elements, binary relation `symbol`)
// in any structure with at least n elements, using n distinct parameters:
// element i becomes the parameter w_i and everything else one extra class.
Translation build_diagram_interpretation(const FinStructure& m,
                                         const std::string& symbol = "In");

// x ~ y for the diagram interpretation with n parameters.
Formula diagram_equivalence(const std::string& x, const std::string& y, std::size_t n);

// E x0..x{n-1}. distinct & every edge & every non-edge of m.
Formula diagram_sentence(const FinStructure& m, const std::string& symbol = "In");

// A translation together with a target model and parameter values.
struct InterpretationWitness {
  Translation translation;
  FinStructure target;
  std::vector<std::size_t> parameters;
};

// Evaluates beta^tau in the target under the parameters. Throws if the
// parameter count is wrong or the parameters miss the parameter domain.
bool verify_interpretation(const InterpretationWitness& witness, const Formula& beta);

// The binary relation the translated symbol defines on the target.
FinStructure lifted_relation(const InterpretationWitness& witness, const std::string& symbol);

}  // namespace finlin
