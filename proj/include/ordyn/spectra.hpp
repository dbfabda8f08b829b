#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ordyn/conley.hpp"
#include "ordyn/lattice.hpp"
#include "ordyn/report.hpp"

namespace ordyn {

// Phi(xi) = {A : xi n A = 0} over Att, Psi(I) = (n_{A not in I} A) n (n_{A in I} A*).
ElemSet phi_att(const AttLattice& att, PointSet xi);
PointSet psi_att(const AttLattice& att, const std::vector<PointSet>& duals, const ElemSet& ideal);

// Phi(xi) = {P : xi n A = 0} over ARpair, Psi(I) = (meet_{P not in I} A) n (n_{P in I} R).
ElemSet phi_arp(const ArpLattice& arp, PointSet xi);
PointSet psi_arp(const DynSystem& d, const ArpLattice& arp, const ElemSet& ideal);

// True when A -> (A, A*) is an isomorphism Att -> ARpair, so the Att forms
// may stand in for the ARpair forms.
bool att_forms_available(const Analysis& a);

struct IdealRef {
  bool over_att = false;
  ElemSet ideal;
};

// Att forms when available, ARpair forms otherwise.
IdealRef phi(const Analysis& a, PointSet xi);
PointSet psi(const Analysis& a, const IdealRef& i);

// Xi(xi) = {U : xi n U = 0}; Theta(I) = (n_{U not in I} U) n (n_{U in I} U^c).
ElemSet xi_map(const SetRing& nbhds, PointSet cls);
PointSet theta_map(const SetRing& nbhds, const ElemSet& ideal);

struct MorseRepresentation {
  Sublattice sublattice;               // of the Att lattice
  std::vector<Elem> join_irreducibles; // ambient elements A
  std::vector<Elem> predecessors;      // ambient elements A^<
  std::vector<PointSet> morse_sets;    // A n (A^<)*
  FinitePoset order;                   // A <= A' among join-irreducibles
};

// Throws HypothesisViolated unless the duals are unique (proper, continuous).
MorseRepresentation morse_representation(const Analysis& a, const Sublattice& s);

// Points of n_{A in S} (A u A*) grouped by membership in the attractors of S.
Components restricted_components(const Analysis& a, const Sublattice& s);

// pi_S(I) = (n_{A in S, A not in I} A) n (n_{A in S n I} A*) for a prime
// ideal I of the full Att lattice.
PointSet pi_A(const Analysis& a, const Sublattice& s, const ElemSet& ideal);

// Quotient of the subspace topology of R(phi) by the components, as the
// specialization preorder on classes: c <= c' iff c' meets the up-set of c.
Preorder quotient_specialization(const DynSystem& d, const Components& rc);

// zeta_M = {xi : xi inside M} for the Morse sets M = A n R' of all pairs.
std::vector<ElemSet> morse_basis_att(const Analysis& a, const std::vector<PointSet>& duals);
std::vector<ElemSet> morse_basis_arp(const Analysis& a);

// Specialization of the topology generated by a family of subsets of classes.
Preorder generated_specialization(std::size_t classes, const std::vector<ElemSet>& basis);

// Opens of an Alexandrov topology on at most kLiteralFamilyLimit classes,
// enumerated literally, in increasing value.
constexpr std::size_t kLiteralFamilyLimit = 16;
std::vector<std::uint32_t> open_family(const Preorder& spec);
// Literal quotient family: sets of classes whose union is open in R(phi).
std::vector<std::uint32_t> quotient_open_family(const DynSystem& d, const Components& rc);

// Sublattice chain from {bot, top} to the full lattice, adding at each step
// an element whose generated sublattice is smallest (ties broken by rng).
std::vector<Sublattice> random_filtration(const DistLattice& l, std::mt19937_64& rng);

constexpr std::uint64_t kFiltrationSeed = 0x5eed'0f'f17e;
constexpr int kFiltrationCount = 3;

Report verify_theorem_A(const Analysis& a);
Report verify_theorem_B(const Analysis& a, const std::vector<Sublattice>& filtration);
// kFiltrationCount random filtrations from kFiltrationSeed plus the 3_A lattices.
Report verify_theorem_B(const Analysis& a);
Report verify_theorem_C(const Analysis& a);
Report verify_theorem_D(const Analysis& a);
Report verify_cospan_diagram(const Analysis& a);
Report verify_appendix(const Analysis& a);
// Closed forms against the definitional evaluation on every subset.
Report verify_oracle(const Analysis& a);

struct Decomposition {
  int xi_plus = -1;                 // recurrent class index
  std::optional<int> xi_minus;      // present iff x is periodic
  ElemSet i_plus;                   // {A : omega(x) inside A*}
  std::optional<ElemSet> i_minus;   // {A : cl(cycle x) inside A*}
};

// Throws HypothesisViolated unless the Att forms are available.
Decomposition decomposition(const Analysis& a, int x);

struct Compactification {
  bool recurrent = false;          // x in R(phi): only i_x is meaningful
  ElemSet j_plus;                  // {P : x in R}
  std::optional<ElemSet> j_minus;  // {P : cycle(x) n A = 0}, x periodic
  ElemSet i_plus;                  // varpi^-1(j_plus) over ANbhd
  ElemSet i_x;                     // Xi([x])
  std::optional<ElemSet> i_minus;
  bool plus_strict = false;        // i_plus strictly inside i_x
  bool minus_strict = false;       // i_x strictly inside i_minus
};

Compactification compactify(const Analysis& a, int x);

// Lattice-input form: an AR lattice with pair labels over sample points, a
// sample of attracting neighborhoods with their varpi values, a point x and
// its orbit.
struct SampledNbhd {
  PointSet set = 0;
  Elem pair = 0;
};

struct LatticeCompactification {
  ElemSet j_plus;                  // {P : x in R}
  ElemSet j_minus;                 // {P : orbit n A = 0}
  ElemSet i_plus;
  ElemSet i_x;
  ElemSet i_minus;
  bool j_plus_prime = false;
  bool j_minus_prime = false;
  bool nbhds_closed = false;       // sample closed under union and intersection
  bool varpi_homomorphism = false;
  bool plus_strict = false;
  bool minus_strict = false;
};

LatticeCompactification compactify_lattice(const DistLattice& ar,
                                           const std::vector<SampledNbhd>& nbhds, int x,
                                           PointSet orbit);

bool strictly_inside(const ElemSet& a, const ElemSet& b);

}  // namespace ordyn
