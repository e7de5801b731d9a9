#pragma once

// Finite models of tiny set theory. TiS: extensionality, restricted
// adjunction, foundation. TiS*: the same with identity replaced by
// extensional equivalence a ~ b (same elements), plus congruence.
//
// Every finite TiS model is isomorphic to <P(X), in> for a pure finite
// transitive set X; TiS* models can be padded to any larger size by adding
// copies to an equivalence class.

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "finlin/formula.hpp"
#include "finlin/structure.hpp"

namespace finlin {

// A hereditarily finite pure set, stored with sorted, duplicate-free
// members so that equal sets have equal representations.
class HFSet {
 public:
  HFSet() = default;  // the empty set
  explicit HFSet(std::vector<HFSet> members);

  const std::vector<HFSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const HFSet& x) const;
  bool subset_of(const HFSet& x) const;
  bool is_transitive() const;
  HFSet with(const HFSet& x) const;

  friend bool operator==(const HFSet& a, const HFSet& b) { return a.members_ == b.members_; }
  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b);

 private:
  std::vector<HFSet> members_;
};

// The empty set prints as `0`, others as `{a,b}`.
std::string to_string(const HFSet& x);
std::ostream& operator<<(std::ostream& os, const HFSet& x);
HFSet parse_hfset(std::string_view text);

// All subsets of x in canonical order.
std::vector<HFSet> powerset(const HFSet& x);
// All pure transitive sets with at most max_size members.
std::vector<HFSet> transitive_sets(std::size_t max_size);

struct AxiomReport {
  std::vector<std::pair<std::string, bool>> axioms;  // name, holds
  bool nonempty = true;
  bool ok() const;
};

// The axioms as sentences over the binary relation `In`.
std::vector<std::pair<std::string, Formula>> tis_axioms();
std::vector<std::pair<std::string, Formula>> tis_star_axioms();

// Brute-force evaluation of the axioms. The empty structure is rejected.
AxiomReport check_tis(const FinStructure& m);
AxiomReport check_tis_star(const FinStructure& m);

struct Classification {
  HFSet x;                       // the transitive set X
  std::vector<HFSet> image;      // image[a] = h(a), a subset of X
};

// Recovers X from the element with the most members, following the
// collapse of membership below it. Throws if m is not a TiS model.
Classification classify_tis(const FinStructure& m);

// Structure on P(x) with true membership; elements in canonical order.
FinStructure powerset_model(const HFSet& x);

// Adds k copies of `target` (default: the first element with no members,
// else element 0). Copies have the same members and belong to the same sets.
FinStructure pad_model(const FinStructure& m, std::size_t k,
                       std::optional<std::size_t> target = std::nullopt);

// a ~ b: same members.
bool extensionally_equal(const FinStructure& m, std::size_t a, std::size_t b);

}  // namespace finlin
