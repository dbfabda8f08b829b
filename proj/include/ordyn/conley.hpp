#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordyn/dynsys.hpp"
#include "ordyn/lattice.hpp"
#include "ordyn/poset.hpp"
#include "ordyn/report.hpp"

namespace ordyn {

// Relations on X as rows: row x is {y : (x,y) in the relation}.
using Relation = std::vector<PointSet>;

Relation inverse(const Relation& r);
std::vector<std::pair<int, int>> pairs_of(const Relation& r);

constexpr std::size_t kDefaultSubsetCap = std::size_t{1} << 16;

// RS_SUBSET_CAP when set to a positive integer, else 2^16.
std::size_t subset_cap();
// Throws SpaceTooLarge when 2^n exceeds the cap.
void require_subset_sweep(const DynSystem& d);

// Cycle criteria:
//   attracting nbhd:  cycles reached from cl U lie in int U
//   repelling nbhd:   every x outside int U has its cycle disjoint from cl U
//   trapping region:  f(V) inside V and f^tau(cl V) inside int V for some tau >= 1;
//                     the images are periodic in tau from n on, so tau runs
//                     until the first repeat
//   repelling region: f^-1(V) inside V and f^-tau(cl V) inside int V likewise
bool is_attracting_nbhd(const DynSystem& d, PointSet u);
bool is_repelling_nbhd(const DynSystem& d, PointSet u);
bool is_trapping_region(const DynSystem& d, PointSet v);
bool is_repelling_region(const DynSystem& d, PointSet v);

enum class NbhdKind { Attracting, Repelling, Trapping, RepellingRegion };

// Every subset satisfying the predicate, in increasing value. The parallel
// kernel and the serial reference return identical vectors.
std::vector<PointSet> subset_sweep(const DynSystem& d, NbhdKind kind);
std::vector<PointSet> subset_sweep_serial(const DynSystem& d, NbhdKind kind);

SetRing anbhd(const DynSystem& d);
SetRing rnbhd(const DynSystem& d);
SetRing trapping_regions(const DynSystem& d);
// ANbhd as a DistLattice of sets; SpaceTooLarge beyond kLatticeCap elements.
DistLattice anbhd_lattice(const DynSystem& d);

struct DualityCheck {
  bool ok = true;
  std::optional<PointSet> witness;
};
// U -> U^c maps ANbhd bijectively onto RNbhd (order reversal is automatic).
DualityCheck duality_check(const SetRing& an, const SetRing& rn);

struct AttLattice {
  SetRing nbhds;
  std::vector<PointSet> sets;   // element -> attractor, increasing value
  std::vector<Elem> of_nbhd;    // neighborhood index -> element of Inv(U)
  DistLattice lattice;          // join = union, meet = Inv of intersection
  bool inv_homomorphism = true;
  bool inv_hom_exhaustive = true;
  std::optional<std::pair<PointSet, PointSet>> inv_hom_witness;

  std::optional<Elem> index_of(PointSet a) const;
  std::vector<PointSet> witnesses(Elem a) const;
  PointSet top_set() const { return sets.back(); }
};

constexpr std::size_t kHomPairBudget = std::size_t{1} << 22;

AttLattice att_lattice(const DynSystem& d);
AttLattice att_lattice(const DynSystem& d, SetRing nbhds);

struct ARPair {
  PointSet a = 0;
  PointSet r = 0;
  PointSet witness = 0;
  bool operator==(const ARPair& o) const { return a == o.a && r == o.r; }
};

struct ArpLattice {
  std::vector<ARPair> pairs;    // element -> pair, increasing (A, R)
  std::vector<Elem> of_nbhd;    // neighborhood index -> varpi(U)
  DistLattice lattice;          // join (A u A', R n R'), meet (A ^ A', R u R')
  bool varpi_homomorphism = true;

  std::optional<Elem> index_of(PointSet a, PointSet r) const;
};

ArpLattice arpair_lattice(const DynSystem& d, const AttLattice& att);

// alpha(U^c) over every witness U of A.
struct DualRepeller {
  std::vector<std::pair<PointSet, PointSet>> values;  // distinct (value, first witness U)
  bool hypotheses = false;                            // proper and continuous
  std::optional<PointSet> value;                      // hypotheses hold and value unique
};

DualRepeller dual_repeller(const DynSystem& d, const AttLattice& att, Elem a,
                           const MapPredicates& p);
std::vector<DualRepeller> dual_repellers(const DynSystem& d, const AttLattice& att,
                                         const MapPredicates& p);
// The unique dual or HypothesisViolated listing the distinct values.
PointSet require_dual(const DualRepeller& dr, const DynSystem& d);

struct Components {
  enum class Kind { Recurrent, Strong, Chain };
  Kind kind = Kind::Recurrent;
  std::vector<PointSet> classes;  // ordered by least point
  FinitePoset order;              // on class indices
  PointSet support = 0;           // union of classes
  std::vector<int> class_of;      // -1 outside the support

  std::optional<std::size_t> index_of(PointSet cls) const;
};

// Classes of the preorder x <= x' iff mem[x'] inside mem[x] on the points of
// `support`, numbered by least point.
Components components_from_membership(int n, PointSet support, const std::vector<ElemSet>& mem,
                                      Components::Kind kind);

// R(phi) = periodic points whose cycle lies in A u R for every pair; x <= x'
// iff every attractor containing x' contains x.
Components recurrent_components(const DynSystem& d, const AttLattice& att, const ArpLattice& arp);
// x <= x' iff every member of the family containing x' contains x.
Components strong_components(const DynSystem& d, const SetRing& nbhds);

// Intersection of A u A* over all attractors (proper systems).
PointSet recurrent_set_via_duals(const AttLattice& att, const std::vector<PointSet>& duals);

// Cospan form: off-diagonal pairs from the strong order, (x,x) iff the strong
// class of x is a recurrent class.
Relation cospan_relation(const DynSystem& d, const Components& strong, const Components& rc);
// Limit-set form: x periodic, cl(cycle x) in a class xi-, omega(x') in a
// class xi'+, xi- <= xi'+.
Relation limit_relation(const DynSystem& d, const Components& rc);

// E(x,y) iff some point c on the cycle of x shares a minimal neighborhood
// with y. Every open cover has a member containing the minimal neighborhood
// of any point, and the cover by minimal neighborhoods is the finest, so two
// points share a member of every cover iff some up-set of a point contains
// both. Long times put f^t(x) anywhere on its cycle. The chain relation is
// the transitive closure of E.
Relation chain_step(const DynSystem& d);
Relation chain_relation(const DynSystem& d);
Components chain_components(const DynSystem& d, const Relation& c);

// Everything the verifiers and reports share, computed once.
struct Analysis {
  DynSystem d;
  MapPredicates predicates;
  Separation separation;
  Hypotheses hypotheses;
  SetRing anbhd;
  SetRing rnbhd;
  SetRing trapping;
  DualityCheck duality;
  AttLattice att;
  AttLattice att_trapping;
  ArpLattice arp;
  std::vector<DualRepeller> duals;
  Components rc;
  Components sc;
  Components sc_trapping;
  Components chain;
  Relation rel_r;
  Relation rel_s;
  Relation rel_c;
  Relation rel_r_limit;

  // Unique duals, or nullopt when some attractor has none.
  std::optional<std::vector<PointSet>> unique_duals() const;
};

Analysis analyze(const DynSystem& d);

// Structural checks on the Conley layer (invariance, lattice laws, class
// characterizations, relation containments), hypothesis-gated.
Report conley_checks(const Analysis& a);

}  // namespace ordyn
