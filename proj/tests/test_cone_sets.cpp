#include <doctest.h>

#include "qps/region.hpp"
#include "test_util.hpp"

using namespace qps;

TEST_CASE("clopen sets: construction and canonical form") {
  CHECK(ClopenSet({2, 1, 0}).str() == "{0,1,2}");
  CHECK(ClopenSet({5, 6, 7}, 8) == ClopenSet::tail_from(5));  // consecutive points merge into the tail
  CHECK(ClopenSet({0, 1}, 2) == ClopenSet::full());
  CHECK(ClopenSet({3}, 3) == ClopenSet::tail_from(3));
  CHECK(ClopenSet().is_empty());
  CHECK_THROWS_AS(ClopenSet({-1}), std::domain_error);
}

TEST_CASE("clopen sets: intersect, subtract, shift examples") {
  ClopenSet a({0, 1, 2}, 5);
  CHECK(set_intersect(a, ClopenSet::tail_from(2)) == ClopenSet({2}, 5));
  CHECK(set_intersect(ClopenSet::full(), a) == a);
  CHECK(set_intersect(ClopenSet::tail_from(3), ClopenSet({0, 1})).is_empty());

  CHECK(set_subtract(ClopenSet::full(), ClopenSet({0})) == ClopenSet::tail_from(1));
  CHECK(set_subtract(ClopenSet::tail_from(2), ClopenSet::tail_from(5)) == ClopenSet({2, 3, 4}));
  CHECK(set_subtract(a, ClopenSet()) == a);

  CHECK(ClopenSet({3}, 7).shift_pre(2) == ClopenSet({1}, 5));
  CHECK(ClopenSet({0, 1}).shift_pre(-1) == ClopenSet({1, 2}));
  for (long long k = -6; k <= 6; ++k)
    CHECK(ClopenSet::full().shift_pre(k) == ClopenSet::tail_from(std::max(0ll, -k)));
}

TEST_CASE("clopen sets: cardinality") {
  CHECK(ClopenSet({0, 1, 2}).cardinality() == ExtNat(3));
  CHECK(ClopenSet::tail_from(4).cardinality() == ExtNat::inf());
  CHECK(ClopenSet().cardinality() == ExtNat(0));
}

TEST_CASE("regions: canonical equality is extensional equality") {
  std::mt19937 rng(7001);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int trial = 0; trial < 60; ++trial) {
      BoxRegion a = testutil::random_region(rng, dim, 6);
      BoxRegion b = testutil::random_region(rng, dim, 6);
      bool structural = (a == b);
      bool extensional = testutil::regions_agree_on_window(a, b, 8);
      CHECK(structural == extensional);
      // A rebuilt copy from the same boxes is structurally identical.
      CHECK(BoxRegion(dim, a.boxes()) == a);
    }
  }
}

TEST_CASE("regions: set algebra identities on random triples") {
  std::mt19937 rng(7002);
  for (int dim = 1; dim <= 2; ++dim) {
    for (int trial = 0; trial < 40; ++trial) {
      BoxRegion a = testutil::random_region(rng, dim, 5);
      BoxRegion b = testutil::random_region(rng, dim, 5);
      BoxRegion c = testutil::random_region(rng, dim, 5);
      CHECK(region_union(a, b) == region_union(b, a));
      CHECK(region_union(region_union(a, b), c) == region_union(a, region_union(b, c)));
      CHECK(region_intersect(region_union(a, b), c) ==
            region_union(region_intersect(a, c), region_intersect(b, c)));
      CHECK(region_subtract(a, region_union(b, c)) ==
            region_subtract(region_subtract(a, b), c));
      CHECK(region_subtract(a, a).is_empty());
      CHECK(region_intersect(BoxRegion::full(dim), a) == a);
    }
  }
}

TEST_CASE("regions: translation preimage identity") {
  std::mt19937 rng(7003);
  for (int trial = 0; trial < 80; ++trial) {
    ClopenSet s = testutil::random_clopen(rng, 8);
    for (long long m = -10; m <= 10; ++m) {
      // Pushing the preimage forward recovers exactly the reachable part.
      ClopenSet reach = ClopenSet::tail_from(std::max(0ll, m));
      CHECK(s.shift_pre(m).translate(m) == set_intersect(s, reach));
    }
  }
}

TEST_CASE("regions: cardinality sums over disjoint boxes") {
  BoxRegion r(2, {Box{ClopenSet({0, 1}), ClopenSet({0, 1, 2})},
                  Box{ClopenSet({5}), ClopenSet({0})}});
  CHECK(r.cardinality() == ExtNat(7));
  BoxRegion inf(2, {Box{ClopenSet::tail_from(3), ClopenSet({1})}});
  CHECK(inf.cardinality() == ExtNat::inf());
}
