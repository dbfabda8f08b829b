#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ordyn/corpus.hpp"
#include "ordyn/io.hpp"
#include "ordyn/spectra.hpp"
#include "systems.hpp"

using namespace ordyn;

namespace {

bool cont_proper(const Analysis& a) { return a.hypotheses.continuous && a.hypotheses.proper; }

// Dual repeller of the attractor inv(cl U) from the brute-force evaluator.
oracle::Set dual_of(const oracle::Sys& o, oracle::Set a) {
  for (oracle::Set u : o.anbhds())
    if (o.inv(o.closure(u)) == a) return o.alpha(o.all() & ~u);
  return 0;
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("Phi of each recurrent class is a prime ideal, and all primes arise, on proper systems") {
  int applicable = 0;
  for (int n = 1; n <= 3; ++n)
    testing_support::for_all_systems(n, true, [&](const DynSystem& d) {
      const Analysis a = analyze(d);
      if (!cont_proper(a)) return;
      ++applicable;
      const auto primes = oracle::prime_ideals(a.att.lattice);
      std::set<std::vector<bool>> want, got;
      auto key = [](const ElemSet& e) {
        std::vector<bool> k(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) k[i] = e.test(i);
        return k;
      };
      for (const auto& p : primes) want.insert(key(p));
      for (PointSet cls : a.rc.classes) got.insert(key(phi_att(a.att, cls)));
      CHECK(got == want);
      CHECK(got.size() == a.rc.classes.size());
    });
  CHECK(applicable > 0);
}

TEST_CASE("Psi inverts Phi with duals from the literal alpha-limit") {
  for (int n = 1; n <= 3; ++n)
    testing_support::for_all_systems(n, true, [&](const DynSystem& d) {
      const Analysis a = analyze(d);
      if (!cont_proper(a)) return;
      const oracle::Sys o(d);
      std::vector<PointSet> duals;
      for (PointSet s : a.att.sets) duals.push_back(dual_of(o, s));
      REQUIRE(a.unique_duals());
      CHECK(*a.unique_duals() == duals);
      for (PointSet cls : a.rc.classes) {
        // Intersection formula evaluated directly.
        PointSet want = o.all();
        for (PointSet s : a.att.sets) want &= (s & cls) == 0 ? dual_of(o, s) : s;
        CHECK(psi_att(a.att, duals, phi_att(a.att, cls)) == cls);
        CHECK(want == cls);
      }
    });
}

TEST_CASE("Morse sets of the full lattice are the recurrent classes") {
  for (int n = 1; n <= 3; ++n)
    testing_support::for_all_systems(n, true, [&](const DynSystem& d) {
      const Analysis a = analyze(d);
      if (!cont_proper(a)) return;
      const oracle::Sys o(d);
      // Join-irreducibles straight from the sets: A is not the union of the
      // attractors strictly below it.
      std::vector<PointSet> morse;
      for (PointSet s : a.att.sets) {
        PointSet below = 0;
        for (PointSet t : a.att.sets)
          if (t != s && (t & ~s) == 0) below |= t;
        if (below != s) morse.push_back(s & dual_of(o, below));
      }
      const MorseRepresentation m = morse_representation(a, full_sublattice(a.att.lattice));
      auto lib = m.morse_sets;
      std::sort(lib.begin(), lib.end());
      std::sort(morse.begin(), morse.end());
      CHECK(lib == morse);
      auto classes = a.rc.classes;
      std::sort(classes.begin(), classes.end());
      CHECK(morse == classes);
    });
}

TEST_CASE("Morse representation needs unique duals") {
  const SystemInput s = parse_system(find_example("ordertopnoninv")->payload);
  const Analysis a = analyze(s.system);
  CHECK_FALSE(a.hypotheses.proper);
  CHECK_THROWS_AS(morse_representation(a, full_sublattice(a.att.lattice)), HypothesisViolated);
}

TEST_CASE("random filtrations are nested chains from {bot, top} to the whole lattice") {
  std::mt19937_64 rng(3);
  const DynSystem d(Topology(Preorder(5)), {0, 1, 2, 3, 4});
  const Analysis a = analyze(d);
  for (int trial = 0; trial < 5; ++trial) {
    const auto chain = random_filtration(a.att.lattice, rng);
    REQUIRE(chain.size() >= 2);
    CHECK(chain.front().elements.size() == 2);
    CHECK(chain.back().elements.size() == a.att.lattice.size());
    for (std::size_t k = 1; k < chain.size(); ++k) {
      CHECK(chain[k].elements.size() > chain[k - 1].elements.size());
      CHECK(chain[k - 1].members.is_subset_of(chain[k].members));
    }
  }
}

TEST_CASE("every suite passes on every system up to 3 points") {
  for (int n = 1; n <= 3; ++n)
    testing_support::for_all_systems(n, true, [](const DynSystem& d) {
      const Analysis a = analyze(d);
      for (const auto& suite : suite_names()) {
        const Report r = run_suite(a, suite);
        for (const auto& c : r.checks) {
          INFO(suite << ": " << c.name << ": " << c.witness);
          CHECK((!c.applicable || c.passed));
        }
      }
    });
}

TEST_CASE("identity on three points: Boolean Att and discrete spectrum") {
  const DynSystem d(Topology(Preorder(3)), {0, 1, 2});
  const Analysis a = analyze(d);
  CHECK(a.att.sets.size() == 8);
  const SpectrumPoset s = prime_ideals(a.att.lattice);
  CHECK(s.ideals.size() == 3);
  CHECK(s.order.hasse().empty());
  for (int x = 0; x < 3; ++x) {
    const Decomposition dec = decomposition(a, x);
    REQUIRE(dec.xi_minus);
    CHECK(dec.xi_plus == *dec.xi_minus);
    const Compactification c = compactify(a, x);
    CHECK(c.recurrent);
  }
}

TEST_CASE("a transient point splits into two strict inclusions") {
  // a -> b with b, c fixed, discrete: a lies between two recurrent classes.
  const DynSystem d(Topology(Preorder(3)), {1, 1, 2});
  const Analysis a = analyze(d);
  const Compactification c = compactify(a, 0);
  CHECK_FALSE(c.recurrent);
  CHECK_FALSE(c.j_minus);
  const Decomposition dec = decomposition(a, 0);
  CHECK_FALSE(dec.xi_minus);
  CHECK(a.rc.classes[dec.xi_plus] == PointSet{0b010});
}

TEST_CASE("saddle pairs: five prime ideals in two levels below three") {
  const CorpusEntry* e = find_example("exofsaddle-AR");
  REQUIRE(e);
  const LatticeInput l = parse_lattice(e->payload);
  const SpectrumPoset s = prime_ideals(l.lattice);
  REQUIRE(s.ideals.size() == 5);
  std::vector<std::size_t> size;
  for (const auto& i : s.ideals) size.push_back(i.count());
  std::sort(size.begin(), size.end());
  CHECK(size == std::vector<std::size_t>{2, 2, 4, 6, 6});
  CHECK(s.order.hasse().size() == 4);
  CHECK(oracle::prime_ideals(l.lattice).size() == 5);
}

TEST_CASE("sampled compactification of the line flow") {
  const LatticeInput l = parse_lattice(find_example("examcomp-AR")->payload);
  REQUIRE(l.x);
  const LatticeCompactification c = compactify_lattice(l.lattice, l.nbhds, *l.x, l.orbit);
  CHECK(c.j_plus_prime);
  CHECK(c.j_minus_prime);
  CHECK(c.nbhds_closed);
  CHECK(c.varpi_homomorphism);
  CHECK(c.plus_strict);
  CHECK(c.minus_strict);
  CHECK(strictly_inside(c.i_plus, c.i_x));
  CHECK(strictly_inside(c.i_x, c.i_minus));
}

}
