#include "finlin/structure.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "finlin/error.hpp"

namespace finlin {

FinStructure::FinStructure(std::size_t size, std::string relation)
    : size_(size), relation_(std::move(relation)), edges_(size * size, 0) {}

FinStructure FinStructure::renamed(std::string relation) const {
  FinStructure out = *this;
  out.relation_ = std::move(relation);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FinStructure::edge_list() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b = 0; b < size_; ++b) {
      if (edge(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::size_t FinStructure::edge_count() const {
  return static_cast<std::size_t>(std::count(edges_.begin(), edges_.end(), 1));
}

FinStructure FinStructure::from_code(std::size_t size, std::uint64_t code,
                                     std::string relation) {
  if (size * size > 64) throw PreconditionError("structure too large for a 64-bit code");
  FinStructure m(size, std::move(relation));
  for (std::size_t i = 0; i < size * size; ++i) m.edges_[i] = (code >> i) & 1U;
  return m;
}

std::string to_string(const FinStructure& m) {
  std::ostringstream os;
  os << "n=" << m.size() << "; edges=";
  bool first = true;
  for (const auto& [a, b] : m.edge_list()) {
    if (!first) os << ',';
    os << '(' << a << ',' << b << ')';
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FinStructure& m) {
  return os << to_string(m);
}

FinStructure parse_structure(std::string_view text, std::string relation) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](std::string_view lit) {
    skip();
    if (text.substr(i, lit.size()) != lit) {
      throw SyntaxError("expected '" + std::string(lit) + "'", i);
    }
    i += lit.size();
  };
  auto number = [&]() -> std::size_t {
    skip();
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw SyntaxError("expected number", start);
    return std::stoul(std::string(text.substr(start, i - start)));
  };
  expect("n");
  expect("=");
  const std::size_t n = number();
  FinStructure m(n, std::move(relation));
  skip();
  if (i == text.size()) return m;
  expect(";");
  expect("edges");
  expect("=");
  skip();
  while (i < text.size()) {
    expect("(");
    const std::size_t a = number();
    expect(",");
    const std::size_t b = number();
    expect(")");
    if (a >= n || b >= n) throw SyntaxError("edge endpoint out of range", i);
    m.set_edge(a, b);
    skip();
    if (i < text.size()) {
      expect(",");
      skip();
    }
  }
  return m;
}

SymbolTable model_symbols(const FinStructure& m) {
  SymbolTable t;
  t.unary = [](const std::string&) -> std::optional<std::uint32_t> { return std::nullopt; };
  std::string name = m.relation();
  t.binary = [name](const std::string& r) -> std::optional<std::uint32_t> {
    if (r == name) return 0;
    return std::nullopt;
  };
  t.has_order = false;
  return t;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const FinStructure& a,
                                                         const FinStructure& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return std::nullopt;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t x = 0; x < a.size() && ok; ++x) {
      for (std::size_t y = 0; y < a.size() && ok; ++y) {
        ok = a.edge(x, y) == b.edge(perm[x], perm[y]);
      }
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace finlin
