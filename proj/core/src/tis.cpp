#include "finlin/tis.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "finlin/error.hpp"
#include "finlin/eval.hpp"
#include "finlin/parser.hpp"

namespace finlin {

HFSet::HFSet(std::vector<HFSet> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
  return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(),
                                                b.members_.begin(), b.members_.end());
}

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

bool HFSet::subset_of(const HFSet& x) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](const HFSet& m) { return x.contains(m); });
}

bool HFSet::is_transitive() const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](const HFSet& m) { return m.subset_of(*this); });
}

HFSet HFSet::with(const HFSet& x) const {
  std::vector<HFSet> ms = members_;
  ms.push_back(x);
  return HFSet(std::move(ms));
}

std::string to_string(const HFSet& x) {
  if (x.empty()) return "0";
  std::string out = "{";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += to_string(x.members()[i]);
  }
  return out + "}";
}

std::ostream& operator<<(std::ostream& os, const HFSet& x) { return os << to_string(x); }

namespace {

HFSet parse_hf(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i < s.size() && s[i] == '0') {
    ++i;
    return HFSet();
  }
  if (i >= s.size() || s[i] != '{') throw SyntaxError("expected '0' or '{'", i);
  ++i;
  std::vector<HFSet> ms;
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '}') {
      ++i;
      break;
    }
    ms.push_back(parse_hf(s, i));
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == ',') ++i;
  }
  return HFSet(std::move(ms));
}

}  // namespace

HFSet parse_hfset(std::string_view text) {
  std::size_t i = 0;
  HFSet x = parse_hf(text, i);
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) throw SyntaxError("trailing input after set", i);
  return x;
}

std::vector<HFSet> powerset(const HFSet& x) {
  if (x.size() > 20) throw PreconditionError("powerset too large");
  std::vector<HFSet> out;
  const std::size_t n = x.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<HFSet> ms;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) ms.push_back(x.members()[i]);
    }
    out.emplace_back(std::move(ms));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every finite transitive set arises from a smaller one by adjoining a new
// subset of it (remove a member that lies in no other member to go back).
std::vector<HFSet> transitive_sets(std::size_t max_size) {
  std::set<HFSet> all{HFSet()};
  std::vector<HFSet> layer{HFSet()};
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::set<HFSet> next;
    for (const auto& y : layer) {
      for (const auto& z : powerset(y)) {
        if (!y.contains(z)) next.insert(y.with(z));
      }
    }
    layer.assign(next.begin(), next.end());
    all.insert(next.begin(), next.end());
  }
  return {all.begin(), all.end()};
}

bool AxiomReport::ok() const {
  return nonempty && std::all_of(axioms.begin(), axioms.end(),
                                 [](const auto& a) { return a.second; });
}

namespace {

const Signature& set_signature() {
  static const Signature sig({}, {"In"});
  return sig;
}

// a ~ b written out with a fresh bound variable t.
std::string approx(const std::string& a, const std::string& b) {
  return "(A t. (In(t," + a + ") <-> In(t," + b + ")))";
}

AxiomReport check(const FinStructure& m,
                  const std::vector<std::pair<std::string, CompiledFormula>>& axioms) {
  AxiomReport r;
  r.nonempty = m.size() > 0;
  const FinStructure& view = m;
  FinStructure renamed;
  const FinStructure* target = &view;
  if (m.relation() != "In") {
    renamed = m.renamed("In");
    target = &renamed;
  }
  for (const auto& [name, c] : axioms) {
    r.axioms.emplace_back(name, c.eval(*target, Assignment{}));
  }
  return r;
}

std::vector<std::pair<std::string, CompiledFormula>> compile_axioms(
    const std::vector<std::pair<std::string, Formula>>& axioms) {
  const SymbolTable table = model_symbols(FinStructure(0, "In"));
  std::vector<std::pair<std::string, CompiledFormula>> out;
  for (const auto& [name, f] : axioms) out.emplace_back(name, CompiledFormula(f, table));
  return out;
}

}  // namespace

std::vector<std::pair<std::string, Formula>> tis_axioms() {
  const Signature& sig = set_signature();
  return {
      {"TiS1 extensionality",
       parse("A x. A y. (x = y <-> A z. (In(z,x) <-> In(z,y)))", sig)},
      {"TiS2 restricted adjunction",
       parse("A x. A y. A z. (In(y,z) -> E u. A v. (In(v,u) <-> (In(v,x) | v = y)))", sig)},
      {"TiS3 foundation",
       parse("A x. A y. (In(y,x) -> E z. (In(z,x) & A v. (In(v,z) -> ~In(v,x))))", sig)},
  };
}

std::vector<std::pair<std::string, Formula>> tis_star_axioms() {
  const Signature& sig = set_signature();
  return {
      {"TiS*1 congruence",
       parse("A x. A x1. A y. A y1. ((" + approx("x", "x1") + " & " + approx("y", "y1") +
                 ") -> (In(x,y) <-> In(x1,y1)))",
             sig)},
      {"TiS*2 restricted adjunction",
       parse("A x. A y. A z. (In(y,z) -> E u. A v. (In(v,u) <-> (In(v,x) | " +
                 approx("v", "y") + ")))",
             sig)},
      {"TiS*3 foundation",
       parse("A x. A y. (In(y,x) -> E z. (In(z,x) & A v. (In(v,z) -> ~In(v,x))))", sig)},
  };
}

AxiomReport check_tis(const FinStructure& m) {
  static const auto compiled = compile_axioms(tis_axioms());
  return check(m, compiled);
}

AxiomReport check_tis_star(const FinStructure& m) {
  static const auto compiled = compile_axioms(tis_star_axioms());
  return check(m, compiled);
}

namespace {

// Transitive collapse: h(a) = { h(j) : j in a }.
class Collapse {
 public:
  explicit Collapse(const FinStructure& m) : m_(m), memo_(m.size()), state_(m.size(), 0) {}

  const HFSet& of(std::size_t a) {
    if (state_[a] == 2) return *memo_[a];
    if (state_[a] == 1) throw PreconditionError("membership is not well-founded");
    state_[a] = 1;
    std::vector<HFSet> ms;
    for (std::size_t j = 0; j < m_.size(); ++j) {
      if (m_.edge(j, a)) ms.push_back(of(j));
    }
    memo_[a] = HFSet(std::move(ms));
    state_[a] = 2;
    return *memo_[a];
  }

 private:
  const FinStructure& m_;
  std::vector<std::optional<HFSet>> memo_;
  std::vector<int> state_;
};

}  // namespace

Classification classify_tis(const FinStructure& m) {
  if (!check_tis(m).ok()) throw PreconditionError("structure is not a TiS model");
  std::size_t top = 0, best = 0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < m.size(); ++j) count += m.edge(j, a) ? 1 : 0;
    if (count > best) {
      best = count;
      top = a;
    }
  }
  Collapse h(m);
  Classification c{h.of(top), {}};
  for (std::size_t a = 0; a < m.size(); ++a) c.image.push_back(h.of(a));

  // The collapse must be an isomorphism onto P(X).
  if (!c.x.is_transitive()) throw Error("collapsed set is not transitive");
  std::set<HFSet> distinct(c.image.begin(), c.image.end());
  if (distinct.size() != m.size() || m.size() != (std::size_t{1} << c.x.size())) {
    throw Error("collapse is not a bijection onto the powerset");
  }
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (!c.image[a].subset_of(c.x)) throw Error("collapse leaves the powerset");
    for (std::size_t b = 0; b < m.size(); ++b) {
      if (m.edge(a, b) != c.image[b].contains(c.image[a])) {
        throw Error("collapse does not preserve membership");
      }
    }
  }
  return c;
}

FinStructure powerset_model(const HFSet& x) {
  if (!x.is_transitive()) throw PreconditionError(to_string(x) + " is not transitive");
  const auto subsets = powerset(x);
  FinStructure m(subsets.size());
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    for (std::size_t b = 0; b < subsets.size(); ++b) {
      m.set_edge(a, b, subsets[b].contains(subsets[a]));
    }
  }
  return m;
}

bool extensionally_equal(const FinStructure& m, std::size_t a, std::size_t b) {
  for (std::size_t x = 0; x < m.size(); ++x) {
    if (m.edge(x, a) != m.edge(x, b)) return false;
  }
  return true;
}

FinStructure pad_model(const FinStructure& m, std::size_t k,
                       std::optional<std::size_t> target) {
  if (!check_tis_star(m).ok()) throw PreconditionError("structure is not a TiS* model");
  std::size_t t = 0;
  if (target) {
    if (*target >= m.size()) throw PreconditionError("padding target out of range");
    t = *target;
  } else {
    for (std::size_t a = 0; a < m.size(); ++a) {
      bool no_members = true;
      for (std::size_t x = 0; x < m.size() && no_members; ++x) no_members = !m.edge(x, a);
      if (no_members) {
        t = a;
        break;
      }
    }
  }
  const std::size_t n = m.size();
  auto rep = [&](std::size_t a) { return a < n ? a : t; };
  FinStructure out(n + k, m.relation());
  for (std::size_t a = 0; a < n + k; ++a) {
    for (std::size_t b = 0; b < n + k; ++b) out.set_edge(a, b, m.edge(rep(a), rep(b)));
  }
  return out;
}

}  // namespace finlin
