#include "finlin/interp.hpp"

#include <sstream>

#include "finlin/error.hpp"
#include "finlin/parser.hpp"

namespace finlin {

Translation::Translation(std::size_t params) : params_(params) {
  for (std::size_t i = 0; i < params; ++i) param_vars_.push_back("w" + std::to_string(i));
}

void Translation::set_domain(Formula d) {
  for (const auto& v : free_vars(d)) {
    if (std::find(param_vars_.begin(), param_vars_.end(), v) == param_vars_.end()) {
      throw PreconditionError("parameter domain mentions non-parameter '" + v + "'");
    }
  }
  domain_ = std::move(d);
}

void Translation::define(const std::string& symbol, std::vector<std::string> args,
                         Formula body) {
  std::set<std::string> seen(param_vars_.begin(), param_vars_.end());
  for (const auto& a : args) {
    if (!seen.insert(a).second) {
      throw PreconditionError("argument '" + a + "' of " + symbol +
                              " clashes with another argument or parameter");
    }
  }
  for (const auto& v : free_vars(body)) {
    if (!seen.contains(v)) {
      throw PreconditionError("definition of " + symbol + " has stray free variable '" + v + "'");
    }
  }
  defs_[symbol] = SymbolDefinition{std::move(args), std::move(body)};
}

Translation identity_translation(const Signature& sig) {
  Translation t(0);
  for (const auto& p : sig.unary_preds()) t.define(p, {"v0"}, pred(p, "v0"));
  for (const auto& r : sig.binary_rels()) t.define(r, {"v0", "v1"}, rel(r, "v0", "v1"));
  return t;
}

namespace {

Formula lift_rec(const Translation& tau, const Formula& f,
                 const std::set<std::string>& params) {
  if (f.kind() == Kind::Pred || f.kind() == Kind::Rel) {
    auto it = tau.definitions().find(f.symbol());
    if (it == tau.definitions().end()) return f;
    const SymbolDefinition& def = it->second;
    if (def.args.size() != f.vars().size()) {
      throw PreconditionError("symbol " + f.symbol() + " used with arity " +
                              std::to_string(f.vars().size()) + " but translated with arity " +
                              std::to_string(def.args.size()));
    }
    std::map<std::string, std::string> sub;
    for (std::size_t i = 0; i < def.args.size(); ++i) sub[def.args[i]] = f.vars()[i];
    return substitute(def.body, sub);
  }
  if (f.is_atom() || f.is_constant()) return f;
  if (f.is_quantifier()) {
    std::string v = f.bound_var();
    Formula body = f.body();
    if (params.contains(v)) {
      std::set<std::string> avoid = all_vars(body);
      avoid.insert(params.begin(), params.end());
      const std::string nv = fresh_name(v, avoid);
      body = substitute(body, v, nv);
      v = nv;
    }
    return Formula::make(f.kind(), "", {v}, {lift_rec(tau, body, params)});
  }
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(lift_rec(tau, c, params));
  return Formula::make(f.kind(), "", {}, std::move(kids));
}

}  // namespace

Formula lift(const Translation& tau, const Formula& phi) {
  const std::set<std::string> params(tau.param_vars().begin(), tau.param_vars().end());
  for (const auto& v : free_vars(phi)) {
    if (params.contains(v)) {
      throw PreconditionError("parameter '" + v + "' occurs free in the formula");
    }
  }
  return lift_rec(tau, phi, params);
}

Translation parse_translation(std::string_view text, const Signature& target) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Translation> tau;
  std::optional<Formula> domain;
  std::vector<std::pair<std::string, std::string>> defs;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("params:", 0) == 0) {
      tau = Translation(std::stoul(trim(line.substr(7))));
    } else if (line.rfind("domain:", 0) == 0) {
      domain = parse(trim(line.substr(7)), target);
    } else if (auto pos = line.find(":="); pos != std::string::npos) {
      defs.emplace_back(trim(line.substr(0, pos)), trim(line.substr(pos + 2)));
    } else {
      throw SyntaxError("unrecognized translation line " + std::to_string(lineno), 0);
    }
  }
  if (!tau) tau = Translation(0);
  if (domain) tau->set_domain(*domain);
  for (const auto& [head, body] : defs) {
    const auto open = head.find('(');
    const auto close = head.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw SyntaxError("malformed definition head '" + head + "'", 0);
    }
    const std::string symbol = trim(head.substr(0, open));
    if (!is_predicate_name(symbol)) throw SyntaxError("bad symbol name '" + symbol + "'", 0);
    std::vector<std::string> args;
    std::istringstream as(head.substr(open + 1, close - open - 1));
    std::string a;
    while (std::getline(as, a, ',')) {
      a = trim(a);
      if (!is_variable_name(a)) throw SyntaxError("bad argument '" + a + "'", 0);
      args.push_back(a);
    }
    tau->define(symbol, std::move(args), parse(body, target));
  }
  return *tau;
}

std::string to_string(const Translation& tau) {
  std::ostringstream os;
  os << "params: " << tau.params() << '\n';
  os << "domain: " << tau.domain() << '\n';
  for (const auto& [sym, def] : tau.definitions()) {
    os << sym << '(';
    for (std::size_t i = 0; i < def.args.size(); ++i) os << (i ? "," : "") << def.args[i];
    os << ") := " << def.body << '\n';
  }
  return os.str();
}

Formula diagram_equivalence(const std::string& x, const std::string& y, std::size_t n) {
  std::vector<Formula> outside, same;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string w = "w" + std::to_string(i);
    outside.push_back(land(neg(eq(x, w)), neg(eq(y, w))));
    same.push_back(land(eq(x, w), eq(y, w)));
  }
  return disj({conj(outside), disj(same)});
}

Translation build_diagram_interpretation(const FinStructure& m, const std::string& symbol) {
  const std::size_t n = m.size();
  Translation t(n);
  std::vector<Formula> distinct;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      distinct.push_back(neg(eq("w" + std::to_string(i), "w" + std::to_string(j))));
    }
  }
  t.set_domain(conj(distinct));
  std::vector<Formula> cases;
  for (const auto& [i, j] : m.edge_list()) {
    cases.push_back(land(diagram_equivalence("v0", "w" + std::to_string(i), n),
                         diagram_equivalence("v1", "w" + std::to_string(j), n)));
  }
  t.define(symbol, {"v0", "v1"}, disj(cases));
  return t;
}

Formula diagram_sentence(const FinStructure& m, const std::string& symbol) {
  const std::size_t n = m.size();
  auto x = [](std::size_t i) { return "x" + std::to_string(i); };
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) parts.push_back(neg(eq(x(i), x(j))));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Formula a = rel(symbol, x(i), x(j));
      parts.push_back(m.edge(i, j) ? a : neg(a));
    }
  }
  Formula f = conj(parts);
  for (std::size_t i = n; i-- > 0;) f = exists(x(i), f);
  return f;
}

namespace {

Assignment parameter_assignment(const InterpretationWitness& w) {
  const Translation& tau = w.translation;
  if (w.parameters.size() != tau.params()) {
    throw PreconditionError("expected " + std::to_string(tau.params()) + " parameters, got " +
                            std::to_string(w.parameters.size()));
  }
  Assignment a;
  for (std::size_t i = 0; i < tau.params(); ++i) {
    if (w.parameters[i] >= w.target.size()) throw PreconditionError("parameter out of range");
    a[tau.param_vars()[i]] = w.parameters[i];
  }
  if (!eval(w.target, tau.domain(), a)) {
    throw PreconditionError("parameters do not satisfy the parameter domain");
  }
  return a;
}

}  // namespace

bool verify_interpretation(const InterpretationWitness& witness, const Formula& beta) {
  if (!is_sentence(beta)) throw PreconditionError("verify_interpretation needs a sentence");
  const Assignment a = parameter_assignment(witness);
  return eval(witness.target, lift(witness.translation, beta), a);
}

FinStructure lifted_relation(const InterpretationWitness& witness, const std::string& symbol) {
  Assignment a = parameter_assignment(witness);
  auto it = witness.translation.definitions().find(symbol);
  if (it == witness.translation.definitions().end() || it->second.args.size() != 2) {
    throw PreconditionError("no binary definition for " + symbol);
  }
  const CompiledFormula body(it->second.body, model_symbols(witness.target));
  const std::size_t n = witness.target.size();
  FinStructure out(n, symbol);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      a[it->second.args[0]] = x;
      a[it->second.args[1]] = y;
      out.set_edge(x, y, body.eval(witness.target, a));
    }
  }
  return out;
}

}  // namespace finlin
