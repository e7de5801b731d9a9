#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finlin/eval.hpp"

namespace finlin {

// A finite structure with one binary relation. For set-theoretic use the
// relation is membership: edge (a, b) means a is an element of b.
class FinStructure {
 public:
  explicit FinStructure(std::size_t size = 0, std::string relation = "In");

  std::size_t size() const { return size_; }
  const std::string& relation() const { return relation_; }
  FinStructure renamed(std::string relation) const;

  bool edge(std::size_t a, std::size_t b) const { return edges_[a * size_ + b] != 0; }
  void set_edge(std::size_t a, std::size_t b, bool v = true) {
    edges_[a * size_ + b] = v ? 1 : 0;
  }
  std::vector<std::pair<std::size_t, std::size_t>> edge_list() const;
  std::size_t edge_count() const;

  // Structure number `code` of the given size: bit a*size+b is edge (a, b).
  static FinStructure from_code(std::size_t size, std::uint64_t code,
                                std::string relation = "In");

  friend bool operator==(const FinStructure& a, const FinStructure& b) {
    return a.size_ == b.size_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t size_;
  std::string relation_;
  std::vector<std::uint8_t> edges_;
};

// `n=4; edges=(0,1),(0,2)`
std::string to_string(const FinStructure& m);
std::ostream& operator<<(std::ostream& os, const FinStructure& m);
FinStructure parse_structure(std::string_view text, std::string relation = "In");

// Model interface for the evaluator. Only the structure's own relation
// symbol resolves; there is no order.
inline std::size_t model_size(const FinStructure& m) { return m.size(); }
SymbolTable model_symbols(const FinStructure& m);
inline bool model_less(const FinStructure&, std::size_t, std::size_t) { return false; }
inline bool model_unary(const FinStructure&, std::uint32_t, std::size_t) { return false; }
inline bool model_binary(const FinStructure& m, std::uint32_t, std::size_t a, std::size_t b) {
  return m.edge(a, b);
}

// True iff some bijection maps one relation onto the other.
std::optional<std::vector<std::size_t>> find_isomorphism(const FinStructure& a,
                                                         const FinStructure& b);

}  // namespace finlin
