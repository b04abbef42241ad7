#include <doctest.h>

#include "qps/line_bundles.hpp"
#include "qps/verify.hpp"

using namespace qps;

TEST_CASE("nu values and identities") {
  NuTable t;
  for (long long m = 0; m <= 8; ++m) CHECK(t.value(m, 1) == BigUint(1));
  CHECK(t.value(2, 2) == BigUint(3));
  CHECK(t.value(2, 3) == BigUint(6));
  CHECK(t.value(0, 7) == BigUint(1));

  for (long long m = 0; m <= 12; ++m)
    for (long long l = 1; l <= 12; ++l) CHECK(t.recursive(m, l) == NuTable::closed_form(m, l));

  for (long long m = 1; m <= 12; ++m)
    for (long long l = 2; l <= 12; ++l)
      CHECK(t.recursive(m, l) == t.recursive(m - 1, l) + t.recursive(m, l - 1));

  CHECK_THROWS_AS(nu(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(nu(0, 0), std::invalid_argument);
}

TEST_CASE("big integers behave") {
  CHECK(binomial_big(49, 25).str() == "63205303218876");
  CHECK((BigUint(999999999) + BigUint(1)).str() == "1000000000");
  CHECK(divexact(BigUint(12) * 9, 27) == BigUint(4));
  CHECK(BigUint(7) < BigUint(19));
}

TEST_CASE("corner module expansion") {
  PrefixTokenCounts a21 = decompose_A(3, 2, 1);
  REQUIRE(a21.size() == 1);
  CHECK(a21.at(1) == BigUint(1));
  PrefixTokenCounts a91 = decompose_A(3, 9, 1);
  CHECK(a91 == a21);  // width-1 modules do not see r

  PrefixTokenCounts a22 = decompose_A(3, 2, 2);
  CHECK(a22.at(1) == BigUint(2));
  CHECK(a22.at(2) == BigUint(1));

  PrefixTokenCounts a13 = decompose_A(4, 1, 3);
  CHECK(a13.at(1) == BigUint(1));
  CHECK(a13.at(2) == BigUint(1));
  CHECK(a13.at(3) == BigUint(1));

  CHECK_THROWS_AS(decompose_A(3, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(decompose_A(1, 1, 1), std::invalid_argument);
}

TEST_CASE("line bundle decompositions") {
  LBDecomposition nonneg = decompose_L(3, 2);
  REQUIRE(nonneg.summands.size() == 1);
  CHECK(nonneg.summands.begin()->first == ElementaryProj(3, 3, -2));

  LBDecomposition unit = decompose_L(3, 0);
  CHECK(unit.summands.begin()->first == ElementaryProj(3, 3, 0));

  LBDecomposition d31 = decompose_L(3, -1);
  REQUIRE(d31.summands.size() == 3);
  CHECK(d31.summands.at(prefix_token(3, 1)) == BigUint(1));
  CHECK(d31.summands.at(prefix_token(3, 2)) == BigUint(1));
  CHECK(d31.summands.at(prefix_token(3, 3)) == BigUint(1));

  LBDecomposition d42 = decompose_L(4, -2);
  CHECK(d42.summands.at(prefix_token(4, 1)) == BigUint(4));
  CHECK(d42.summands.at(prefix_token(4, 2)) == BigUint(3));
  CHECK(d42.summands.at(prefix_token(4, 3)) == BigUint(2));
  CHECK(d42.summands.at(prefix_token(4, 4)) == BigUint(1));

  LBDecomposition d2 = decompose_L(2, -3);
  CHECK(d2.via_recursion_only);
  CHECK(d2.summands.at(prefix_token(2, 1)) == BigUint(3));
  CHECK(d2.summands.at(prefix_token(2, 2)) == BigUint(1));

  // identity token appears exactly once in every negative degree
  for (int n = 2; n <= 4; ++n)
    for (long long k = -4; k <= -1; ++k)
      CHECK(decompose_L(n, k).summands.at(prefix_token(n, n)) == BigUint(1));
}

TEST_CASE("closed form agrees with the pure recursion") {
  for (int n = 3; n <= 5; ++n)
    for (long long k = -6; k <= -1; ++k)
      CHECK(same_summands(decompose_L(n, k), decompose_L_recursive(n, k)));
}

TEST_CASE("bundle classes") {
  CHECK(class_of_L(2, 1) == K0Class(2, {-1, 1}));
  CHECK(class_of_L(3, -1) == K0Class(3, {1, 1, 1}));
  CHECK(class_of_L(3, 1) + class_of_L(3, -1) - K0Class::generator(3, 3).scaled(2) ==
        K0Class(3, {1, 0, 0}));
  for (int n = 2; n <= 4; ++n)
    for (long long k = -5; k <= 5; ++k) CHECK(rank_of_class(class_of_L(n, k)) == 1);
}

TEST_CASE("decompositions materialize as projections") {
  AlgMatrix m = realize_decomposition(decompose_L(3, -1));
  CHECK(m.rows() == 3);
  CHECK(is_projection(m));
  CHECK(realize_decomposition(decompose_L(3, 2)).rows() == 1);
  CHECK_THROWS_AS(realize_decomposition(decompose_L(5, -6), 8), std::domain_error);
}

TEST_CASE("module actions of the degree isometries") {
  for (int n = 2; n <= 3; ++n) {
    CheckReport rep = verify_line_bundle_isometries(n, 2, 2);
    for (const auto& c : rep.checks) {
      INFO(c.name, ": ", c.detail);
      CHECK(c.pass);
    }
  }
}
