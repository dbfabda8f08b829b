#include <random>

#include "doctest.h"
#include "ordyn/errors.hpp"
#include "ordyn/poset.hpp"
#include "systems.hpp"

using namespace ordyn;

TEST_SUITE("poset") {

TEST_CASE("from_pairs rejects non-transitive input, closure_of repairs it") {
  CHECK_THROWS_AS(Preorder::from_pairs(3, {{0, 1}, {1, 2}}), InvalidRelation);
  const Preorder p = Preorder::closure_of(3, {{0, 1}, {1, 2}});
  CHECK(p.leq(0, 2));
  CHECK_FALSE(p.leq(2, 0));
}

TEST_CASE("FinitePoset rejects cycles with a witness") {
  try {
    FinitePoset(Preorder::closure_of(2, {{0, 1}, {1, 0}}));
    FAIL("expected InvalidRelation");
  } catch (const InvalidRelation& e) {
    CHECK(e.witness.size() == 2);
  }
}

TEST_CASE("hasse of a chain and an antichain") {
  CHECK(FinitePoset::chain(4).hasse().size() == 3);
  CHECK(FinitePoset::antichain(4).hasse().empty());
}

TEST_CASE("down-set count matches brute force on random posets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 8;
    const FinitePoset p = testing_support::random_poset(n, rng);
    std::size_t brute = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      bool down = true;
      for (int i = 0; i < n && down; ++i)
        for (int j = 0; j < n && down; ++j)
          if ((s >> j & 1) && p.leq(i, j) && !(s >> i & 1)) down = false;
      brute += down;
    }
    CHECK(count_down_sets(p) == brute);
    CHECK(down_sets(p).size() == brute);
  }
}

TEST_CASE("down-set cap throws") {
  CHECK_THROWS_AS(count_down_sets(FinitePoset::antichain(12), 100), SpaceTooLarge);
}

TEST_CASE("isomorphism finds relabelings and rejects non-isomorphic pairs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 6;
    const FinitePoset p = testing_support::random_poset(n, rng);
    std::vector<std::size_t> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const FinitePoset q = induced_poset(p, perm);
    const auto iso = are_isomorphic(q, p);
    REQUIRE(iso.has_value());
    CHECK(is_order_embedding(q, p, *iso));
  }
  CHECK_FALSE(are_isomorphic(FinitePoset::chain(3), FinitePoset::antichain(3)).has_value());
}

TEST_CASE("condensation of a preorder") {
  const Preorder p = Preorder::closure_of(4, {{0, 1}, {1, 0}, {1, 2}});
  const Condensation c = condense(p);
  CHECK(c.classes.size() == 3);
  CHECK(c.quotient[0] == c.quotient[1]);
  CHECK(c.poset.leq(c.quotient[0], c.quotient[2]));
}

}
