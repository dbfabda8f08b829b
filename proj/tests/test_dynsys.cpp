#include "doctest.h"
#include "oracles.hpp"
#include "ordyn/dynsys.hpp"
#include "ordyn/oracle.hpp"
#include "ordyn/topology.hpp"
#include "systems.hpp"

using namespace ordyn;

TEST_SUITE("dynsys") {

TEST_CASE("topology from opens and its specialization") {
  const Topology t = Topology::from_opens(3, {0b000, 0b100, 0b110, 0b111});
  CHECK(t.leq(0, 1));
  CHECK(t.leq(1, 2));
  CHECK(t.closure(0b100) == 0b111);
  CHECK(t.interior(0b011) == 0);
  CHECK_THROWS_AS(Topology::from_opens(2, {0b00, 0b01, 0b10}), InvalidRelation);
}

TEST_CASE("separation flags agree on all small topologies") {
  for (const auto& p : all_preorders(3)) {
    const Separation s = separation(Topology(p));
    CHECK(s.discrete == s.hausdorff);
    CHECK(s.t1 == s.hausdorff);
  }
}

TEST_CASE("closed forms equal the literal limits on every system up to 3 points") {
  for (int n = 1; n <= 3; ++n)
    testing_support::for_all_systems(n, true, [&](const DynSystem& d) {
      const oracle::Sys o(d);
      for (PointSet u = 0; u < (PointSet{1} << n); ++u) {
        CHECK(omega(d, u) == o.omega(u));
        CHECK(alpha(d, u) == o.alpha(u));
        CHECK(inv(d, u) == o.inv(u));
        CHECK(inv_plus(d, u) == o.inv_plus(u));
      }
    });
}

TEST_CASE("map predicates against literal checks on 3 points") {
  testing_support::for_all_systems(3, true, [&](const DynSystem& d) {
    const oracle::Sys o(d);
    bool cont = true, closed = true;
    for (PointSet u : o.opens)
      if (!std::count(o.opens.begin(), o.opens.end(), o.preimage(u))) cont = false;
    for (PointSet u = 0; u <= o.all(); ++u)
      if (o.image(o.closure(u)) != o.closure(o.image(u))) closed = false;
    const MapPredicates p = map_predicates(d);
    CHECK(p.continuous == cont);
    CHECK(p.closed == closed);
    CHECK(p.proper == (cont && closed));
  });
}

TEST_CASE("parallel closed-map kernel equals its serial reference") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const DynSystem d = testing_support::random_system(4 + trial % 7, rng);
    CHECK(closed_violation(d) == closed_violation_serial(d));
  }
}

TEST_CASE("closed-map witnesses") {
  // right-ray order topology on five points, f = 0
  const DynSystem ord5(Topology(Preorder::closure_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})), {2, 2, 2, 2, 2});
  const MapPredicates p = map_predicates(ord5);
  CHECK(p.continuous);
  CHECK_FALSE(p.closed);
  REQUIRE(p.closed_witness.has_value());
  const oracle::Sys o(ord5);
  CHECK(o.image(o.closure(*p.closed_witness)) != o.closure(o.image(*p.closed_witness)));
  // U = X: f(cl X) = {0}, cl f(X) = {-2,-1,0}
  CHECK(o.image(o.closure(o.all())) == PointSet{0b00100});
  CHECK(o.closure(o.image(o.all())) == PointSet{0b00111});
  // s < m < r, f(s) = s, f(m) = s, f(r) = r: least witness is {r}
  const DynSystem smr(Topology(Preorder::closure_of(3, {{0, 1}, {1, 2}})), {0, 0, 2});
  CHECK(map_predicates(smr).continuous);
  CHECK(map_predicates(smr).closed_witness == PointSet{0b100});
}

TEST_CASE("map must be total") {
  CHECK_THROWS_AS(DynSystem(Topology::discrete(2), {0, 2}), SchemaError);
  CHECK_THROWS_AS(DynSystem(Topology::discrete(2), {0}), SchemaError);
}

TEST_CASE("cycle structure") {
  const DynSystem d(Topology::discrete(5), {1, 0, 3, 4, 2});
  CHECK(d.cycles().cycles.size() == 2);
  CHECK(d.cycles().lcm == 6);
  CHECK(d.cycles().is_periodic(4));
  CHECK(orbital_alpha(d, 0) == 0b00011);
}

}
