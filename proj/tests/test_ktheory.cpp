#include <doctest.h>

#include <random>

#include "qps/ktheory.hpp"

using namespace qps;

TEST_CASE("cofinite corner classes") {
  CHECK(cofinite_corner_class(2, 3) == K0Class(2, {-3, 1}));
  CHECK(cofinite_corner_class(3, 1) == K0Class(3, {0, -1, 1}));
  CHECK(cofinite_corner_class(3, 2) == K0Class(3, {1, -2, 1}));
  CHECK(cofinite_corner_class(2, 0) == K0Class(2, {0, 1}));
  CHECK(cofinite_corner_class(1, 7) == K0Class(1, {1}));

  for (long long k = 1; k <= 10; ++k) CHECK(cofinite_corner_class(2, k) == K0Class(2, {-k, 1}));
  // last two coordinates are pinned at (-k, 1) in every ambient
  for (int n = 2; n <= 6; ++n)
    for (long long k = 1; k <= 10; ++k) {
      K0Class v = cofinite_corner_class(n, k);
      CHECK(v.coords[n - 1] == 1);
      CHECK(v.coords[n - 2] == -k);
    }
}

TEST_CASE("elementary projection classes") {
  CHECK(class_of_elementary(ElementaryProj(2, 2, 5)) == K0Class(2, {5, 0}));
  CHECK(class_of_elementary(ElementaryProj(3, 2, 1)) == K0Class(3, {1, 0, 0}));
  CHECK(class_of_elementary(ElementaryProj(3, 3, 2)) == K0Class(3, {-1, 2, 0}));
  CHECK(class_of_elementary(ElementaryProj(3, 3, 0)) == K0Class(3, {0, 0, 1}));
  CHECK(class_of_elementary(ElementaryProj(3, 3, -2)) == cofinite_corner_class(3, 2));
  // a finite block in a single-variable corner dies in the quotient
  CHECK(class_of_elementary(ElementaryProj(3, 1, 4)) == K0Class::zero(3));

  // the orthogonal slice decomposition is additive in the class
  for (int n = 2; n <= 4; ++n)
    for (long long k = 1; k <= 3; ++k) {
      K0Class sum = K0Class::zero(n);
      for (long long i = 0; i < k; ++i) sum = sum + cofinite_corner_class(n - 1, i).pad_to(n);
      CHECK(class_of_elementary(ElementaryProj(n, n, k)) == sum);
    }

  // corner embedding consistency: lower-slot classes are padded lower-ambient classes
  for (int n = 2; n <= 4; ++n)
    for (int slot = 1; slot < n; ++slot)
      for (long long k = -2; k <= 2; ++k)
        CHECK(class_of_elementary(ElementaryProj(n, slot, k)) ==
              class_of_elementary(ElementaryProj(slot, slot, k)).pad_to(n));
}

TEST_CASE("class of prefix standard sums") {
  StandardSum s(Ambient::CPn, 3);
  s.add(0b001, 2);
  s.add(0b111, 1);
  CHECK(class_of_standard_sum(s) == K0Class(3, {2, 0, 1}));
  StandardSum bad(Ambient::CPn, 3);
  bad.add(0b010, 1);  // {2} is not a prefix
  CHECK_THROWS_AS(class_of_standard_sum(bad), std::invalid_argument);
}

TEST_CASE("positive cone verdicts") {
  CHECK(cone_contains(K0Class(3, {-4, 2, 0})) == ConeVerdict::In);
  CHECK(cone_contains(K0Class(3, {1, 2, -3})) == ConeVerdict::NotIn);
  CHECK(cone_contains(K0Class(3, {0, -1, 0})) == ConeVerdict::Unknown);
  CHECK(cone_contains(K0Class(2, {-7, 1})) == ConeVerdict::In);
  CHECK(cone_contains(K0Class(3, {0, 0, 0})) == ConeVerdict::In);
  CHECK(cone_contains(K0Class(3, {5, 0, 0})) == ConeVerdict::In);
  CHECK(cone_contains(K0Class(1, {-1})) == ConeVerdict::NotIn);

  // adding generators keeps an In verdict
  for (int j = 1; j <= 3; ++j) {
    K0Class c(3, {-4, 2, 0});
    CHECK(cone_contains(c + K0Class::generator(3, j)) == ConeVerdict::In);
  }
  std::mt19937 rng(7501);
  std::uniform_int_distribution<long long> coord(-5, 5);
  std::uniform_int_distribution<int> gen(1, 4);
  int seen_in = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long long> v(4);
    for (auto& x : v) x = coord(rng);
    K0Class c(4, v);
    if (cone_contains(c) != ConeVerdict::In) continue;
    ++seen_in;
    CHECK(cone_contains(c + K0Class::generator(4, gen(rng))) == ConeVerdict::In);
  }
  CHECK(seen_in > 50);
}

TEST_CASE("rank of a class is its last coordinate") {
  CHECK(rank_of_class(K0Class(3, {5, -2, 7})) == 7);
  CHECK(rank_of_class(K0Class::generator(4, 4)) == 1);
  for (int n = 2; n <= 6; ++n)
    for (long long k = 1; k <= 10; ++k) CHECK(rank_of_class(cofinite_corner_class(n, k)) == 1);
}

TEST_CASE("stable rank, csr bound, connectedness threshold") {
  CHECK(stable_rank(1) == 2);
  CHECK(stable_rank(2) == 2);
  CHECK(stable_rank(3) == 2);
  CHECK(stable_rank(4) == 3);
  CHECK(stable_rank(5) == 3);
  CHECK(csr_upper(1) == 2);
  CHECK(csr_upper(4) == 3);
  CHECK(csr_upper(5) == 4);
  CHECK(gl0_threshold(1) == 1);
  CHECK(gl0_threshold(2) == 4);
  CHECK(gl0_threshold(5) == 5);
  CHECK_THROWS_AS(stable_rank(0), std::invalid_argument);
}

TEST_CASE("composition series layers") {
  auto t2 = composition_series(2, SeriesKind::Toeplitz);
  REQUIRE(t2.size() == 3);
  CHECK(t2[0] == SeriesLayer{1, 2, 0});
  CHECK(t2[1] == SeriesLayer{2, 1, 1});
  CHECK(t2[2] == SeriesLayer{1, 0, 2});

  auto t1 = composition_series(1, SeriesKind::Toeplitz);
  REQUIRE(t1.size() == 2);
  CHECK(t1[0] == SeriesLayer{1, 1, 0});
  CHECK(t1[1] == SeriesLayer{1, 0, 1});

  auto s2 = composition_series(2, SeriesKind::Sphere);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == SeriesLayer{2, 1, 1});
  CHECK(s2[1] == SeriesLayer{1, 0, 2});

  // binomial multiplicities sum to 2^n
  for (int n = 1; n <= 5; ++n) {
    long long sum = 0;
    for (const auto& l : composition_series(n, SeriesKind::Toeplitz)) sum += l.multiplicity;
    CHECK(sum == (1ll << n));
  }
}
