#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ordyn/conley.hpp"
#include "systems.hpp"

using namespace ordyn;

namespace {

void compare_with_oracle(const DynSystem& d) {
  const oracle::Sys o(d);
  const Analysis a = analyze(d);
  INFO("map " << d.map()[0] << "... on " << d.size() << " points");

  CHECK(a.anbhd.members() == o.anbhds());
  CHECK(a.att.sets == o.attractors());
  std::vector<std::pair<PointSet, PointSet>> pairs;
  for (const auto& p : a.arp.pairs) pairs.emplace_back(p.a, p.r);
  std::sort(pairs.begin(), pairs.end());
  CHECK(pairs == o.arpairs());

  const PointSet r = o.recurrent_set();
  CHECK(a.rc.support == r);
  const auto [rc, rc_order] = oracle::Sys::classes(o.n, r, o.attractors());
  CHECK(a.rc.classes == rc);
  for (std::size_t i = 0; i < rc.size(); ++i)
    for (std::size_t j = 0; j < rc.size(); ++j)
      if (i != j) CHECK(a.rc.order.leq(i, j) == (rc_order.count({int(i), int(j)}) == 1));

  const auto [sc, sc_order] = oracle::Sys::classes(o.n, o.all(), o.anbhds());
  CHECK(a.sc.classes == sc);

  const auto c = o.conley();
  for (int x = 0; x < o.n; ++x) CHECK(a.rel_c[x] == c[x]);
}

}  // namespace

TEST_SUITE("conley") {

TEST_CASE("neighborhoods, attractors, pairs, components and the chain relation against brute force") {
  for (int n = 1; n <= 3; ++n) testing_support::for_all_systems(n, true, compare_with_oracle);
  testing_support::for_all_systems(4, false, compare_with_oracle);
}

TEST_CASE("random five- and six-point systems against brute force") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) compare_with_oracle(testing_support::random_system(5 + trial % 2, rng));
}

TEST_CASE("repelling neighborhoods are the complements of attracting ones") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const DynSystem d = testing_support::random_system(2 + trial % 5, rng);
    const oracle::Sys o(d);
    for (PointSet u = 0; u <= o.all(); ++u) CHECK(is_repelling_nbhd(d, u) == o.repelling(u));
    CHECK(duality_check(anbhd(d), rnbhd(d)).ok);
  }
}

TEST_CASE("parallel subset sweep equals its serial reference") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 12; ++trial) {
    const DynSystem d = testing_support::random_system(6 + trial % 7, rng);
    for (auto kind : {NbhdKind::Attracting, NbhdKind::Repelling, NbhdKind::Trapping, NbhdKind::RepellingRegion})
      CHECK(subset_sweep(d, kind) == subset_sweep_serial(d, kind));
  }
}

TEST_CASE("subset cap") {
  std::mt19937_64 rng(1);
  const DynSystem d = testing_support::random_system(20, rng);
  CHECK_THROWS_AS(require_subset_sweep(d), SpaceTooLarge);
}

TEST_CASE("structural checks hold on every system up to 3 points") {
  for (int n = 1; n <= 3; ++n)
    testing_support::for_all_systems(n, true, [](const DynSystem& d) {
      const Report r = conley_checks(analyze(d));
      for (const auto& c : r.checks) {
        INFO(c.name << ": " << c.witness);
        CHECK((!c.applicable || c.passed));
      }
    });
}

}
