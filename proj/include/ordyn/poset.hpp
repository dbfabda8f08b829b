#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ordyn/bits.hpp"

namespace ordyn {

using Pair = std::pair<std::size_t, std::size_t>;

// Reflexive, transitive relation on 0..n-1 stored as up-set rows.
class Preorder {
 public:
  Preorder() = default;
  // The discrete (identity) relation.
  explicit Preorder(std::size_t n);

  // Pairs (i,j) mean i <= j; reflexivity is implied. Throws InvalidRelation
  // when the relation is not transitive.
  static Preorder from_pairs(std::size_t n, const std::vector<Pair>& pairs);
  // Reflexive-transitive closure of the given pairs.
  static Preorder closure_of(std::size_t n, const std::vector<Pair>& pairs);
  // up[i] = {j : i <= j}; validated.
  static Preorder from_up_rows(std::vector<ElemSet> up);

  std::size_t size() const { return up_.size(); }
  bool leq(std::size_t i, std::size_t j) const { return up_[i][j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && up_[i][j]; }
  const ElemSet& up(std::size_t i) const { return up_[i]; }
  const ElemSet& down(std::size_t i) const { return down_[i]; }

  bool is_antisymmetric() const;
  // Non-reflexive pairs in row-major order.
  std::vector<Pair> strict_pairs() const;

  bool operator==(const Preorder& o) const { return up_ == o.up_; }

 protected:
  void rebuild_down();
  std::vector<ElemSet> up_;
  std::vector<ElemSet> down_;
};

class FinitePoset : public Preorder {
 public:
  FinitePoset() = default;
  // Throws InvalidRelation (witness i,j) when p is not antisymmetric.
  explicit FinitePoset(Preorder p);

  static FinitePoset chain(std::size_t n);
  static FinitePoset antichain(std::size_t n);

  // Covering pairs (i,j): i < j with nothing strictly between.
  std::vector<Pair> hasse() const;
  std::vector<std::size_t> lower_covers(std::size_t j) const;
  // Ranks by longest chain below; a linear extension sorted by rank then id.
  std::vector<std::size_t> levels() const;
  std::vector<std::size_t> linear_extension() const;
};

// Total function between element sets; order properties are checked against
// explicit domain and codomain relations.
using OrderMap = std::vector<std::size_t>;

struct Condensation {
  FinitePoset poset;
  OrderMap quotient;
  std::vector<ElemSet> classes;
};

// Quotient by mutual comparability; classes numbered by least member.
Condensation condense(const Preorder& p);

constexpr std::size_t kDownSetCap = std::size_t{1} << 20;

// All down-sets in increasing bitset value. Throws SpaceTooLarge once the
// count would exceed cap.
std::vector<ElemSet> down_sets(const FinitePoset& p, std::size_t cap = kDownSetCap);
std::size_t count_down_sets(const FinitePoset& p, std::size_t cap = kDownSetCap);

bool is_down_set(const Preorder& p, const ElemSet& s);
bool is_up_set(const Preorder& p, const ElemSet& s);

bool is_order_preserving(const Preorder& dom, const Preorder& cod, const OrderMap& f);
bool is_order_embedding(const Preorder& dom, const Preorder& cod, const OrderMap& f);

constexpr std::size_t kIsoGuard = 12;

// Exact backtracking with level and degree pruning. Throws SpaceTooLarge when
// the posets exceed the guard.
std::optional<OrderMap> are_isomorphic(const FinitePoset& p, const FinitePoset& q,
                                       std::size_t guard = kIsoGuard);

// Restriction of p to the listed elements, in the listed order.
FinitePoset induced_poset(const FinitePoset& p, const std::vector<std::size_t>& elems);

bool elemset_less(const ElemSet& a, const ElemSet& b);

}  // namespace ordyn
