#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ordyn/bits.hpp"
#include "ordyn/errors.hpp"
#include "ordyn/poset.hpp"

namespace ordyn {

struct Label {
  enum class Kind { None, Text, Set, Pair };
  Kind kind = Kind::None;
  std::string text;
  PointSet a = 0;
  PointSet r = 0;

  static Label of_text(std::string t) { return {Kind::Text, std::move(t), 0, 0}; }
  static Label of_set(PointSet s) { return {Kind::Set, {}, s, 0}; }
  static Label of_pair(PointSet a, PointSet r) { return {Kind::Pair, {}, a, r}; }

  std::string format(const std::vector<std::string>& names = {}) const;
  bool operator==(const Label& o) const = default;
};

using Elem = std::uint32_t;

constexpr std::size_t kLatticeCap = 4096;

class DistLattice {
 public:
  DistLattice() = default;

  std::size_t size() const { return labels_.size(); }
  const FinitePoset& order() const { return order_; }
  bool leq(Elem a, Elem b) const { return order_.leq(a, b); }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem bot() const { return bot_; }
  Elem top() const { return top_; }
  const Label& label(Elem a) const { return labels_[a]; }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<Elem> find(const Label& l) const;

  // Tables are row-major n*n with entries < n.
  static DistLattice from_tables(std::vector<Label> labels, std::vector<Elem> join,
                                 std::vector<Elem> meet);

 private:
  void validate();
  FinitePoset order_;
  std::vector<std::uint16_t> join_;
  std::vector<std::uint16_t> meet_;
  Elem bot_ = 0;
  Elem top_ = 0;
  std::vector<Label> labels_;
};

using Triple = std::array<std::size_t, 3>;

// Join/meet derived from an explicit partial order (pairs i <= j).
DistLattice build_lattice(std::vector<Label> labels, const std::vector<Pair>& leq);
// Join/meet given as (i,j,k) triples meaning i op j = k; order derived from join.
DistLattice build_lattice_from_tables(std::vector<Label> labels, const std::vector<Triple>& join,
                                      const std::vector<Triple>& meet);

// Closes `generators` under the two operations and tabulates them. Elements
// are sorted by Key. Used for lattices of sets whose meet is not intersection.
template <class Key, class Hash, class JoinOp, class MeetOp, class LabelOf>
DistLattice close_under(std::vector<Key> elems, JoinOp join, MeetOp meet, LabelOf label_of,
                        std::size_t cap = kLatticeCap) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::unordered_map<Key, Elem, Hash> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<Elem>(i));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (const Key& k : {join(elems[i], elems[j]), meet(elems[i], elems[j])}) {
        if (index.count(k) != 0) continue;
        if (elems.size() >= cap)
          throw SpaceTooLarge("lattice exceeds " + std::to_string(cap) + " elements");
        index.emplace(k, static_cast<Elem>(elems.size()));
        elems.push_back(k);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<Elem>(i);
  const std::size_t n = elems.size();
  std::vector<Elem> jt(n * n), mt(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      jt[i * n + j] = index.at(join(elems[i], elems[j]));
      mt[i * n + j] = index.at(meet(elems[i], elems[j]));
    }
  std::vector<Label> labels;
  labels.reserve(n);
  for (const Key& k : elems) labels.push_back(label_of(k));
  return DistLattice::from_tables(std::move(labels), std::move(jt), std::move(mt));
}

struct JoinIrreducible {
  Elem element;
  Elem predecessor;
};

// Elements other than bot with a unique lower cover, in element order.
std::vector<JoinIrreducible> join_irreducibles(const DistLattice& l);

struct SpectrumPoset {
  std::vector<ElemSet> ideals;  // over lattice elements, increasing bitset value
  FinitePoset order;            // inclusion
  std::vector<Elem> generator;  // least element outside each ideal
  bool definitional = false;    // produced by the axiom search
};

constexpr std::size_t kDefinitionalCap = 256;

bool is_ideal(const DistLattice& l, const ElemSet& s);
bool is_prime_ideal(const DistLattice& l, const ElemSet& s);

// All subsets satisfying the prime-ideal axioms, found by branching with unit
// propagation over the axioms. Throws SpaceTooLarge past the node budget.
std::vector<ElemSet> prime_ideals_definitional(const DistLattice& l,
                                               std::size_t node_budget = 1u << 22);
// I_j = {x : j not<= x} for every join-irreducible j.
SpectrumPoset prime_ideals_by_join_irreducibles(const DistLattice& l);
// Definitional search cross-checked against the join-irreducible formula for
// lattices up to kDefinitionalCap elements; the formula alone beyond that.
SpectrumPoset prime_ideals(const DistLattice& l);

std::optional<std::size_t> find_ideal(const SpectrumPoset& s, const ElemSet& ideal);

struct BirkhoffRepresentation {
  FinitePoset poset;            // J(L)
  std::vector<Elem> elements;   // J index -> lattice element
  std::vector<ElemSet> image;   // lattice element -> {j : j <= a}
  OrderMap spectrum_iso;        // J index -> spectrum ideal index (I_j)
};

// Verifies L is isomorphic to the down-sets of J(L) and that the spectrum is
// isomorphic to J(L); throws InternalInconsistency otherwise.
BirkhoffRepresentation birkhoff_representation(const DistLattice& l);
BirkhoffRepresentation birkhoff_representation(const DistLattice& l, const SpectrumPoset& s);

struct PriestleyBasis {
  std::vector<ElemSet> jmap;    // element -> {I : a not in I}
  std::vector<ElemSet> sets;    // distinct jmap(a) \ jmap(b), increasing value
  bool jmap_homomorphism = false;
  bool discrete = false;
};

PriestleyBasis priestley_basis(const DistLattice& l, const SpectrumPoset& s);

struct Sublattice {
  ElemSet members;              // over the ambient lattice
  std::vector<Elem> elements;   // sublattice element -> ambient element
  DistLattice lattice;
};

DistLattice induced_lattice(const DistLattice& l, const std::vector<Elem>& elems);
// Closure of bot, top and the generators under join and meet.
Sublattice generate_sublattice(const DistLattice& l, const std::vector<Elem>& generators);
Sublattice full_sublattice(const DistLattice& l);

bool is_lattice_hom(const DistLattice& a, const DistLattice& l, const OrderMap& h);
ElemSet restrict_ideal(const ElemSet& ideal, const OrderMap& h);
// For an injective homomorphism h : A -> L, maps each ideal index of sl to the
// index of its preimage in sa. Throws NotInjectiveHom.
OrderMap spectrum_map(const DistLattice& a, const SpectrumPoset& sa, const DistLattice& l,
                      const SpectrumPoset& sl, const OrderMap& h);

struct InverseLimit {
  std::vector<SpectrumPoset> spectra;
  std::vector<OrderMap> connecting;                 // connecting[k]: level k+1 -> level k
  std::vector<std::vector<std::size_t>> threads;    // per thread, ideal index at each level
  FinitePoset order;                                // componentwise inclusion
};

// Threads of compatible ideals along a nested chain of sublattices of one
// ambient lattice. Throws IncoherentChain.
InverseLimit inverse_limit(const std::vector<Sublattice>& chain);

// Finite family of subsets of a point set closed under union and intersection.
class SetRing {
 public:
  SetRing() = default;
  SetRing(int n, std::vector<PointSet> members);

  int points() const { return n_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<PointSet>& members() const { return members_; }
  PointSet member(std::size_t i) const { return members_[i]; }
  std::optional<std::size_t> index_of(PointSet u) const;
  PointSet bottom() const { return members_.front(); }
  PointSet top() const { return members_.back(); }

  // Smallest member containing x, if any.
  std::optional<PointSet> minimal_member(int x) const;
  // {i : member i does not contain x}
  ElemSet avoiding(int x) const;
  ElemSet avoiding_set(PointSet xi) const;
  // Distinct prime ideals {U : x not in U}, increasing value, with one
  // representative point each.
  std::vector<ElemSet> prime_ideals(std::vector<int>* representatives = nullptr) const;
  bool is_prime_ideal(const ElemSet& s) const;
  // Pairwise closure check; nullopt when closed, else a violating pair.
  std::optional<std::pair<PointSet, PointSet>> closure_violation() const;

 private:
  int n_ = 0;
  std::vector<PointSet> members_;
};

DistLattice ring_lattice(const SetRing& r);

}  // namespace ordyn
