#pragma once

// Brute-force reference implementations used as test oracles. They share
// no code with the engines beyond the AST and model types.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "finlin/formula.hpp"
#include "finlin/structure.hpp"
#include "finlin/word.hpp"

namespace oracle {

using Env = std::map<std::string, std::size_t>;

// Direct recursive Tarski semantics over a word.
inline bool holds(const finlin::WordModel& w, const finlin::Formula& f, Env& env);

inline bool holds(const finlin::WordModel& w, const finlin::Formula& f, const Env& env0) {
  Env env = env0;
  return holds(w, f, env);
}

inline bool holds(const finlin::WordModel& w, const finlin::Formula& f, Env& env) {
  using finlin::Kind;
  auto at = [&](const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) throw std::logic_error("oracle: unbound " + v);
    return it->second;
  };
  switch (f.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Less:
      return at(f.vars()[0]) < at(f.vars()[1]);
    case Kind::Eq:
      return at(f.vars()[0]) == at(f.vars()[1]);
    case Kind::Pred: {
      const auto& names = w.sig.unary_preds();
      std::size_t k = 0;
      while (k < names.size() && names[k] != f.symbol()) ++k;
      if (k == names.size()) throw std::logic_error("oracle: unknown " + f.symbol());
      return (w.letters[at(f.vars()[0])] >> k) & 1U;
    }
    case Kind::Rel:
      throw std::logic_error("oracle: words have no binary relations");
    case Kind::Not:
      return !holds(w, f.body(), env);
    case Kind::And:
      for (const auto& c : f.children()) {
        if (!holds(w, c, env)) return false;
      }
      return true;
    case Kind::Or:
      for (const auto& c : f.children()) {
        if (holds(w, c, env)) return true;
      }
      return false;
    case Kind::Implies:
      return !holds(w, f.child(0), env) || holds(w, f.child(1), env);
    case Kind::Iff:
      return holds(w, f.child(0), env) == holds(w, f.child(1), env);
    case Kind::Exists:
    case Kind::Forall: {
      const bool ex = f.kind() == Kind::Exists;
      const std::string& v = f.bound_var();
      auto saved = env.find(v) == env.end() ? std::optional<std::size_t>() : env[v];
      bool result = !ex;
      for (std::size_t p = 0; p < w.size(); ++p) {
        env[v] = p;
        if (holds(w, f.body(), env) == ex) {
          result = ex;
          break;
        }
      }
      if (saved) {
        env[v] = *saved;
      } else {
        env.erase(v);
      }
      return result;
    }
  }
  return false;
}

// The same over a structure with one binary relation and no order.
inline bool holds(const finlin::FinStructure& m, const finlin::Formula& f, Env& env);

inline bool holds(const finlin::FinStructure& m, const finlin::Formula& f, const Env& env0) {
  Env env = env0;
  return holds(m, f, env);
}

inline bool holds(const finlin::FinStructure& m, const finlin::Formula& f, Env& env) {
  using finlin::Kind;
  auto at = [&](const std::string& v) { return env.at(v); };
  switch (f.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Eq:
      return at(f.vars()[0]) == at(f.vars()[1]);
    case Kind::Rel:
      if (f.symbol() != m.relation()) throw std::logic_error("oracle: unknown relation");
      return m.edge(at(f.vars()[0]), at(f.vars()[1]));
    case Kind::Less:
    case Kind::Pred:
      throw std::logic_error("oracle: symbol not in structure");
    case Kind::Not:
      return !holds(m, f.body(), env);
    case Kind::And:
      for (const auto& c : f.children()) {
        if (!holds(m, c, env)) return false;
      }
      return true;
    case Kind::Or:
      for (const auto& c : f.children()) {
        if (holds(m, c, env)) return true;
      }
      return false;
    case Kind::Implies:
      return !holds(m, f.child(0), env) || holds(m, f.child(1), env);
    case Kind::Iff:
      return holds(m, f.child(0), env) == holds(m, f.child(1), env);
    case Kind::Exists:
    case Kind::Forall: {
      const bool ex = f.kind() == Kind::Exists;
      const std::string& v = f.bound_var();
      auto saved = env.find(v) == env.end() ? std::optional<std::size_t>() : env[v];
      bool result = !ex;
      for (std::size_t p = 0; p < m.size(); ++p) {
        env[v] = p;
        if (holds(m, f.body(), env) == ex) {
          result = ex;
          break;
        }
      }
      if (saved) {
        env[v] = *saved;
      } else {
        env.erase(v);
      }
      return result;
    }
  }
  return false;
}

// All words of length <= n, shortest first, letters counted up lexicographically.
inline std::vector<finlin::WordModel> words(const finlin::Signature& sig, std::size_t n) {
  const std::size_t letters = std::size_t{1} << sig.size();
  std::vector<finlin::WordModel> out{finlin::WordModel{sig, {}}};
  std::vector<finlin::WordModel> layer = out;
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<finlin::WordModel> next;
    for (const auto& w : layer) {
      for (std::size_t a = 0; a < letters; ++a) {
        finlin::WordModel v = w;
        v.letters.push_back(static_cast<finlin::Letter>(a));
        next.push_back(v);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Every total assignment of `vars` into [lo, hi).
inline std::vector<Env> assignments(const std::vector<std::string>& vars, std::size_t lo,
                                    std::size_t hi) {
  std::vector<Env> out{Env{}};
  for (const auto& v : vars) {
    std::vector<Env> next;
    for (const auto& e : out) {
      for (std::size_t p = lo; p < hi; ++p) {
        Env f = e;
        f[v] = p;
        next.push_back(f);
      }
    }
    out = std::move(next);
  }
  return out;
}

// Tiny set theory checked with explicit loops.
struct SetAxioms {
  bool extensionality, adjunction, foundation;
  bool all() const { return extensionality && adjunction && foundation; }
};

inline bool same_members(const finlin::FinStructure& m, std::size_t a, std::size_t b) {
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (m.edge(t, a) != m.edge(t, b)) return false;
  }
  return true;
}

inline bool foundation(const finlin::FinStructure& m) {
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x) {
    bool nonempty = false, minimal = false;
    for (std::size_t z = 0; z < n; ++z) {
      if (!m.edge(z, x)) continue;
      nonempty = true;
      bool disjoint = true;
      for (std::size_t v = 0; v < n; ++v) disjoint = disjoint && !(m.edge(v, z) && m.edge(v, x));
      minimal = minimal || disjoint;
    }
    if (nonempty && !minimal) return false;
  }
  return true;
}

inline SetAxioms tis(const finlin::FinStructure& m) {
  const std::size_t n = m.size();
  SetAxioms r{true, true, foundation(m)};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && same_members(m, x, y)) r.extensionality = false;
    }
  }
  // x with y adjoined must exist whenever y is a member of something.
  for (std::size_t y = 0; y < n; ++y) {
    bool is_member = false;
    for (std::size_t z = 0; z < n; ++z) is_member = is_member || m.edge(y, z);
    if (!is_member) continue;
    for (std::size_t x = 0; x < n; ++x) {
      bool found = false;
      for (std::size_t u = 0; u < n && !found; ++u) {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) ok = m.edge(v, u) == (m.edge(v, x) || v == y);
        found = ok;
      }
      if (!found) r.adjunction = false;
    }
  }
  return r;
}

inline SetAxioms tis_star(const finlin::FinStructure& m) {
  const std::size_t n = m.size();
  SetAxioms r{true, true, foundation(m)};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t x1 = 0; x1 < n; ++x1) {
      if (!same_members(m, x, x1)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t y1 = 0; y1 < n; ++y1) {
          if (same_members(m, y, y1) && m.edge(x, y) != m.edge(x1, y1)) r.extensionality = false;
        }
      }
    }
  }
  for (std::size_t y = 0; y < n; ++y) {
    bool is_member = false;
    for (std::size_t z = 0; z < n; ++z) is_member = is_member || m.edge(y, z);
    if (!is_member) continue;
    for (std::size_t x = 0; x < n; ++x) {
      bool found = false;
      for (std::size_t u = 0; u < n && !found; ++u) {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
          ok = m.edge(v, u) == (m.edge(v, x) || same_members(m, v, y));
        }
        found = ok;
      }
      if (!found) r.adjunction = false;
    }
  }
  return r;
}

}  // namespace oracle
