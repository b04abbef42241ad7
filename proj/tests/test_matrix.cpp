#include <doctest.h>

#include "qps/gadgets.hpp"
#include "test_util.hpp"

using namespace qps;

namespace {

AlgMatrix random_diag_projection(std::mt19937& rng, int n, int size) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<long long> small(1, 3);
  std::vector<AlgebraElement> d;
  for (int i = 0; i < size; ++i) {
    switch (kind(rng)) {
      case 0: d.push_back(gadgets::proj_finite(n, 1, small(rng))); break;
      case 1: d.push_back(gadgets::proj_cofinite(n, 1, small(rng))); break;
      case 2: d.push_back(AlgebraElement::identity(n)); break;
      default: d.push_back(AlgebraElement::zero(n)); break;
    }
  }
  return AlgMatrix::diag(d);
}

}  // namespace

TEST_CASE("dsum: block structure, rank additivity, padding") {
  AlgMatrix p1 = AlgMatrix::scalar(gadgets::proj_finite(1, 1, 1));
  AlgMatrix d = dsum(p1, AlgMatrix::identity(1, 1));
  CHECK(d.rows() == 2);
  CHECK(is_projection(d));
  CHECK(d.at(0, 1).is_zero());

  std::mt19937 rng(7201);
  for (int trial = 0; trial < 20; ++trial) {
    AlgMatrix a = random_diag_projection(rng, 1, 2);
    AlgMatrix b = random_diag_projection(rng, 1, 2);
    ExtNat ra = rank_of_projection(a), rb = rank_of_projection(b);
    CHECK(rank_of_projection(dsum(a, b)) == ra + rb);
  }

  // dsum is associative on the nose for block layouts.
  AlgMatrix x = AlgMatrix::identity(1, 1), y = p1, z = AlgMatrix::zero(1, 1, 1);
  CHECK(dsum(dsum(x, y), z) == dsum(x, dsum(y, z)));
}

TEST_CASE("matrix adjoint is an anti-homomorphism") {
  std::mt19937 rng(7202);
  for (int trial = 0; trial < 20; ++trial) {
    AlgMatrix a(2, 2, 1), b(2, 2, 1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        a.at(i, j) = testutil::random_element(rng, 1, 2, 4, 2);
        b.at(i, j) = testutil::random_element(rng, 1, 2, 4, 2);
      }
    CHECK(mat_adjoint(mat_mul(a, b)) == mat_mul(mat_adjoint(b), mat_adjoint(a)));
    CHECK(mat_adjoint(mat_adjoint(a)) == a);
  }
}

TEST_CASE("predicates: projections, unitaries, partial isometries") {
  CHECK(is_projection(gadgets::standard_proj(2, 0b01, 2)));
  AlgMatrix shift = AlgMatrix::scalar(gadgets::shift_op(1, 1, 1));
  CHECK(is_partial_isometry(shift));
  CHECK(!is_unitary(shift));
  CHECK(is_unitary(gadgets::absorb_unitary(1, 1)));
}

TEST_CASE("exact predicates imply quotient predicates") {
  std::mt19937 rng(7203);
  for (int trial = 0; trial < 15; ++trial) {
    AlgMatrix p = random_diag_projection(rng, 1, 2);
    REQUIRE(is_projection(p, EqMode::Exact));
    CHECK(is_projection(p, EqMode::ModCompactIdeal));
  }
  AlgMatrix u = gadgets::absorb_unitary(1, 1);
  CHECK(is_unitary(u, EqMode::ModCompactIdeal));
}

TEST_CASE("conjugation preserves projections and rank") {
  std::mt19937 rng(7204);
  std::vector<AlgMatrix> unitaries{gadgets::absorb_unitary(1, 1),
                                   gadgets::gather_unitary(1, 1, 2, 2),
                                   gadgets::backfill_unitary(1, 1, 3, 1)};
  for (int trial = 0; trial < 12; ++trial) {
    for (const AlgMatrix& u : unitaries) {
      AlgMatrix p = random_diag_projection(rng, 1, u.rows());
      AlgMatrix q = conjugate_unitary(u, p);
      CHECK(is_projection(q));
      CHECK(rank_of_projection(q) == rank_of_projection(p));
    }
  }
}

TEST_CASE("conjugation: absorption identity and identity witness") {
  AlgMatrix u = gadgets::absorb_unitary(1, 1);
  AlgMatrix before = dsum(AlgMatrix::scalar(gadgets::proj_finite(1, 1, 1)),
                          AlgMatrix::identity(1, 1));
  AlgMatrix after = dsum(AlgMatrix::zero(1, 1, 1), AlgMatrix::identity(1, 1));
  CHECK(conjugate_unitary(u, before) == after);

  Invertible id = Invertible::identity(2, 1);
  CHECK(conjugate(id, before) == before);
}

TEST_CASE("verify_equivalence: positive and negative cases") {
  AlgMatrix p = AlgMatrix::scalar(gadgets::proj_finite(1, 1, 2));
  CHECK(verify_equivalence(p, p, Invertible::identity(1, 1)));

  AlgMatrix u = gadgets::absorb_unitary(1, 1);
  AlgMatrix before = dsum(AlgMatrix::scalar(gadgets::proj_finite(1, 1, 1)),
                          AlgMatrix::identity(1, 1));
  AlgMatrix after = dsum(AlgMatrix::zero(1, 1, 1), AlgMatrix::identity(1, 1));
  CHECK(verify_equivalence(before, after, Invertible::from_unitary(u)));
  // the wrong witness fails
  CHECK(!verify_equivalence(before, after, Invertible::identity(2, 1)));
  // a non-invertible "witness" is rejected
  AlgMatrix s = AlgMatrix::scalar(gadgets::shift_op(1, 1, 1));
  CHECK(!verify_equivalence(p, p, Invertible{s, mat_adjoint(s)}));
}

TEST_CASE("conjugation in the quotient: transport identity") {
  AlgMatrix u = gadgets::transport_unitary(3, 2);
  AlgebraElement slice = gadgets::matrix_unit(3, 3, 2, 2);
  AlgMatrix before = dsum(AlgMatrix::scalar(slice), AlgMatrix::zero(1, 1, 3));
  AlgebraElement target = convolve(gadgets::proj_cofinite(3, 2, 2), gadgets::proj_finite(3, 3, 1));
  AlgMatrix after = dsum(AlgMatrix::zero(1, 1, 3), AlgMatrix::scalar(target));
  CHECK(mat_equal(conjugate_unitary(u, before), after, EqMode::ModCompactIdeal));
}
