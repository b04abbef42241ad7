#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "qps/check.hpp"
#include "qps/matrix.hpp"

namespace qps {
namespace gadgets {

// ---- single-slot building blocks ------------------------------------------
//
// Gadgets acting on one tensor slot are the identity indicator on every other
// coordinate; constructors clamp supports to legal sources, which is exactly
// the Toeplitz relation bookkeeping.

inline void check_slot(int n, int slot) {
  if (n < 1 || slot < 1 || slot > n) throw std::invalid_argument("gadget: slot out of range");
}

inline AlgebraElement one_slot(int n, int slot, long long shift, const ClopenSet& support) {
  check_slot(n, slot);
  std::vector<long long> m(n, 0);
  m[slot - 1] = shift;
  Box b(n, ClopenSet::full());
  b[slot - 1] = support;
  return AlgebraElement::monomial(GaussianRational(1), std::move(m), std::move(b));
}

// Forward shift power S^k at one slot (k may be negative: adjoint power).
inline AlgebraElement shift_op(int n, int slot, long long k = 1) {
  return one_slot(n, slot, k, ClopenSet::full());
}

// Finite diagonal cut P_m = indicator of {0,...,m-1} at one slot (P_0 = 0).
inline AlgebraElement proj_finite(int n, int slot, long long m) {
  if (m < 0) throw std::invalid_argument("proj_finite: negative size");
  return one_slot(n, slot, 0, ClopenSet::range(0, m));
}

// Cofinite complement P_{-m} = I - P_m = indicator of [m, oo] at one slot.
inline AlgebraElement proj_cofinite(int n, int slot, long long m) {
  if (m < 0) throw std::invalid_argument("proj_cofinite: negative size");
  return one_slot(n, slot, 0, ClopenSet::tail_from(m));
}

// Matrix unit e_{ij} (0-indexed) at one slot: e_x -> e_i when x = j.
inline AlgebraElement matrix_unit(int n, int slot, long long i, long long j) {
  if (i < 0 || j < 0) throw std::invalid_argument("matrix_unit: negative index");
  return one_slot(n, slot, i - j, ClopenSet::points({j}));
}

// Indicator box of a subset A of coordinates: full where i is in A, the
// rank-one {0} elsewhere.  These are the one-block standard projections.
inline AlgebraElement subset_indicator(int n, uint32_t mask) {
  if (n < 0 || (n < 32 && (mask >> n) != 0))
    throw std::invalid_argument("subset_indicator: mask out of range");
  Box b(n);
  for (int i = 0; i < n; ++i)
    b[i] = (mask >> i) & 1 ? ClopenSet::full() : ClopenSet::points({0});
  return AlgebraElement::indicator(std::move(b));
}

// l-fold diagonal sum of the subset indicator.
inline AlgMatrix standard_proj(int n, uint32_t mask, long long copies) {
  if (copies < 1) throw std::invalid_argument("standard_proj: need at least one copy");
  return dsum_pow(AlgMatrix::scalar(subset_indicator(n, mask)), (int)copies);
}

// ---- certified unitaries ---------------------------------------------------

inline void certify_unitary(const AlgMatrix& u, const char* who) {
  if (!is_unitary(u, EqMode::Exact))
    throw std::runtime_error(std::string(who) + ": unitarity certification failed");
}

// 2x2 absorption unitary at one slot:
//   [ S*   0 ]
//   [ e00  S ]
// conjugates P1 (+) I to 0 (+) I; its adjoint absorbs a rank-one block the
// other way round, which drives every absorption chain.
inline AlgMatrix absorb_unitary(int n, int slot) {
  AlgMatrix u(2, 2, n);
  u.at(0, 0) = shift_op(n, slot, -1);
  u.at(1, 0) = matrix_unit(n, slot, 0, 0);
  u.at(1, 1) = shift_op(n, slot, 1);
  certify_unitary(u, "absorb_unitary");
  return u;
}

// k x k gathering unitary: shifts every diagonal slot down by N and sweeps the
// leading N x N compression of each slot into the last row, so a matrix of
// finite blocks collects into one compact corner.
//   rows j < k:  (j,j) = (S*)^N,  (k,j) = S^{(j-1)N} P_N;   (k,k) = S^{(k-1)N}
inline AlgMatrix gather_unitary(int n, int slot, int k, long long N) {
  if (k < 2 || N < 1) throw std::invalid_argument("gather_unitary: need k >= 2, N >= 1");
  check_slot(n, slot);
  AlgMatrix u(k, k, n);
  for (int j = 1; j <= k - 1; ++j) {
    u.at(j - 1, j - 1) = shift_op(n, slot, -N);
    u.at(k - 1, j - 1) = one_slot(n, slot, (j - 1) * N, ClopenSet::range(0, N));
  }
  u.at(k - 1, k - 1) = shift_op(n, slot, (long long)(k - 1) * N);
  certify_unitary(u, "gather_unitary");
  return u;
}

// k x k backfill unitary: merges a finite corner P_l sitting in the last slot
// into an identity block in the first slot.
//   (1,1) = S^l, (1,k) = P_l, (j,j) = I for 1 < j < k, (k,k) = (S*)^l
inline AlgMatrix backfill_unitary(int n, int slot, int k, long long l) {
  if (k < 2 || l < 0) throw std::invalid_argument("backfill_unitary: need k >= 2, l >= 0");
  check_slot(n, slot);
  AlgMatrix u(k, k, n);
  u.at(0, 0) = shift_op(n, slot, l);
  u.at(0, k - 1) = proj_finite(n, slot, l);
  for (int j = 2; j <= k - 1; ++j) u.at(j - 1, j - 1) = AlgebraElement::identity(n);
  u.at(k - 1, k - 1) = shift_op(n, slot, -l);
  certify_unitary(u, "backfill_unitary");
  return u;
}

// 2x2 transport unitary across the last two slots (needs n >= 2):
//   [ I (x) P_k        (S^k)* (x) S^k ]
//   [ S^k (x) (S^k)*   P_k (x) I     ]
// It carries the rank-one slice I (x) e_kk (+) 0 to 0 (+) I' (x) P_{-k} (x) P_1,
// trading a matrix-unit in the last slot for a cofinite block one slot over.
inline AlgMatrix transport_unitary(int n, long long k) {
  if (n < 2 || k < 1) throw std::invalid_argument("transport_unitary: need n >= 2, k >= 1");
  AlgMatrix u(2, 2, n);
  u.at(0, 0) = proj_finite(n, n, k);
  u.at(0, 1) = convolve(shift_op(n, n - 1, -k), shift_op(n, n, k));
  u.at(1, 0) = convolve(shift_op(n, n - 1, k), shift_op(n, n, -k));
  u.at(1, 1) = proj_finite(n, n - 1, k);
  certify_unitary(u, "transport_unitary");
  return u;
}

// ---- certified partial isometries ------------------------------------------

inline void certify_partial_isometry(const AlgebraElement& v, long long degree, const char* who) {
  AlgMatrix m = AlgMatrix::scalar(v);
  if (!is_partial_isometry(m, EqMode::Exact))
    throw std::runtime_error(std::string(who) + ": partial-isometry certification failed");
  if (!v.is_homogeneous(degree))
    throw std::runtime_error(std::string(who) + ": not homogeneous of the documented degree");
}

// Degree-k module isometry: the indicator of pairs (0,...,0,k; p, q) with
// q + k >= 0.  Its two products are the identity and I (x)...(x) I (x) P_{-|k|}
// on the nose, which trivializes the degree-k spectral subspace as a module.
inline AlgebraElement degree_shift_isometry(int n, long long k) {
  if (n < 1) throw std::invalid_argument("degree_shift_isometry: need n >= 1");
  std::vector<long long> m(n, 0);
  m[n - 1] = k;
  AlgebraElement v = AlgebraElement::monomial(GaussianRational(1), std::move(m),
                                              Box(n, ClopenSet::full()));
  certify_partial_isometry(v, k, "degree_shift_isometry");
  return v;
}

// Degree -r corner isometry (needs n >= 2): translation -r in slot n-1, the
// last coordinate pinned to 0.
inline AlgebraElement corner_shift_isometry(int n, long long r) {
  if (n < 2 || r < 1) throw std::invalid_argument("corner_shift_isometry: need n >= 2, r >= 1");
  std::vector<long long> m(n, 0);
  m[n - 2] = -r;
  Box b(n, ClopenSet::full());
  b[n - 1] = ClopenSet::points({0});
  AlgebraElement v = AlgebraElement::monomial(GaussianRational(1), std::move(m), std::move(b));
  certify_partial_isometry(v, -r, "corner_shift_isometry");
  return v;
}

// ---- named catalog ----------------------------------------------------------

enum class GadgetKind {
  Shift,
  ProjFinite,
  ProjCofinite,
  MatrixUnit,
  StandardProj,
  AbsorbUnitary,
  GatherUnitary,
  BackfillUnitary,
  TransportUnitary,
  DegreeShiftIsometry,
  CornerShiftIsometry,
};

struct GadgetSpec {
  GadgetKind kind;
  int n = 1;
  int slot = 1;
  long long k = 1;   // size / degree parameter (also the matrix-unit row)
  long long N = 1;   // gather block width
  long long l = 1;   // copies / backfill width (also the matrix-unit column)
  uint32_t subset = 0;
};

inline const char* kind_name(GadgetKind k) {
  switch (k) {
    case GadgetKind::Shift: return "shift";
    case GadgetKind::ProjFinite: return "proj-finite";
    case GadgetKind::ProjCofinite: return "proj-cofinite";
    case GadgetKind::MatrixUnit: return "matrix-unit";
    case GadgetKind::StandardProj: return "standard-proj";
    case GadgetKind::AbsorbUnitary: return "absorb-unitary";
    case GadgetKind::GatherUnitary: return "gather-unitary";
    case GadgetKind::BackfillUnitary: return "backfill-unitary";
    case GadgetKind::TransportUnitary: return "transport-unitary";
    case GadgetKind::DegreeShiftIsometry: return "degree-shift-isometry";
    case GadgetKind::CornerShiftIsometry: return "corner-shift-isometry";
  }
  return "?";
}

inline AlgMatrix build(const GadgetSpec& g) {
  switch (g.kind) {
    case GadgetKind::Shift: return AlgMatrix::scalar(shift_op(g.n, g.slot, g.k));
    case GadgetKind::ProjFinite: return AlgMatrix::scalar(proj_finite(g.n, g.slot, g.k));
    case GadgetKind::ProjCofinite: return AlgMatrix::scalar(proj_cofinite(g.n, g.slot, g.k));
    case GadgetKind::MatrixUnit: return AlgMatrix::scalar(matrix_unit(g.n, g.slot, g.k, g.l));
    case GadgetKind::StandardProj: return standard_proj(g.n, g.subset, g.l);
    case GadgetKind::AbsorbUnitary: return absorb_unitary(g.n, g.slot);
    case GadgetKind::GatherUnitary: return gather_unitary(g.n, g.slot, (int)g.k, g.N);
    case GadgetKind::BackfillUnitary: return backfill_unitary(g.n, g.slot, (int)g.k, g.l);
    case GadgetKind::TransportUnitary: return transport_unitary(g.n, g.k);
    case GadgetKind::DegreeShiftIsometry: return AlgMatrix::scalar(degree_shift_isometry(g.n, g.k));
    case GadgetKind::CornerShiftIsometry: return AlgMatrix::scalar(corner_shift_isometry(g.n, g.k));
  }
  throw std::invalid_argument("build: unknown gadget kind");
}

// ---- the identity suite ------------------------------------------------------

struct GadgetBounds {
  long long k_max = 3;       // degrees, corner depths, matrix sizes
  long long block_max = 2;   // gather block width N, backfill width l
};

// Runs every identity in the catalog at exact arithmetic; failures come back
// as data with the offending parameters in the name.
inline CheckReport verify_gadget_identities(int n, const GadgetBounds& bounds = {}) {
  CheckReport rep;
  if (n < 1) throw std::invalid_argument("verify_gadget_identities: need n >= 1");

  auto tag = [&](const std::string& s) { return "n=" + std::to_string(n) + " " + s; };

  for (int slot = 1; slot <= n; ++slot) {
    std::string where = "slot=" + std::to_string(slot);
    bool ok = true;
    std::string why;
    try {
      AlgMatrix u = absorb_unitary(n, slot);
      AlgMatrix before = dsum(AlgMatrix::scalar(proj_finite(n, slot, 1)),
                              AlgMatrix::identity(1, n));
      AlgMatrix after = dsum(AlgMatrix::zero(1, 1, n), AlgMatrix::identity(1, n));
      ok = mat_equal(conjugate_unitary(u, before), after, EqMode::Exact);
      if (!ok) why = "conjugation did not kill the rank-one corner";
    } catch (const std::exception& e) {
      ok = false;
      why = e.what();
    }
    rep.add(tag("absorb-unitary " + where), ok, why);
  }

  for (int slot = 1; slot <= n; ++slot)
    for (long long k = 2; k <= bounds.k_max; ++k)
      for (long long N = 1; N <= bounds.block_max; ++N) {
        std::string name = tag("gather-unitary slot=" + std::to_string(slot) +
                               " k=" + std::to_string(k) + " N=" + std::to_string(N));
        try {
          gather_unitary(n, slot, (int)k, N);  // certified inside
          rep.add(name, true);
        } catch (const std::exception& e) {
          rep.add(name, false, e.what());
        }
      }

  for (int slot = 1; slot <= n; ++slot)
    for (long long k = 2; k <= bounds.k_max; ++k)
      for (long long l = 1; l <= bounds.block_max; ++l) {
        std::string name = tag("backfill-unitary slot=" + std::to_string(slot) +
                               " k=" + std::to_string(k) + " l=" + std::to_string(l));
        try {
          AlgMatrix u = backfill_unitary(n, slot, (int)k, l);
          // Defining action: I^m (+) 0^(k-1-m) (+) P_l  ->  I^m (+) 0^(k-m).
          bool ok = true;
          for (long long m = 1; ok && m <= k - 1; ++m) {
            AlgMatrix before((int)k, (int)k, n);
            for (long long i = 0; i < m; ++i)
              before.at((int)i, (int)i) = AlgebraElement::identity(n);
            before.at((int)k - 1, (int)k - 1) = proj_finite(n, slot, l);
            AlgMatrix after((int)k, (int)k, n);
            for (long long i = 0; i < m; ++i)
              after.at((int)i, (int)i) = AlgebraElement::identity(n);
            ok = mat_equal(conjugate_unitary(u, before), after, EqMode::Exact);
          }
          rep.add(name, ok, ok ? "" : "backfill action failed");
        } catch (const std::exception& e) {
          rep.add(name, false, e.what());
        }
      }

  if (n >= 2) {
    for (long long k = 1; k <= bounds.k_max; ++k) {
      std::string name = tag("transport-unitary k=" + std::to_string(k));
      try {
        AlgMatrix u = transport_unitary(n, k);
        AlgebraElement slice = matrix_unit(n, n, k, k);  // I-hat (x) e_kk
        AlgMatrix before = dsum(AlgMatrix::scalar(slice), AlgMatrix::zero(1, 1, n));
        AlgebraElement target = convolve(proj_cofinite(n, n - 1, k), proj_finite(n, n, 1));
        AlgMatrix after = dsum(AlgMatrix::zero(1, 1, n), AlgMatrix::scalar(target));
        bool ok = mat_equal(conjugate_unitary(u, before), after, EqMode::ModCompactIdeal);
        rep.add(name, ok, ok ? "" : "transport conjugation failed mod the compact ideal");
      } catch (const std::exception& e) {
        rep.add(name, false, e.what());
      }
    }
  }

  for (long long k = -bounds.k_max; k <= bounds.k_max; ++k) {
    std::string name = tag("degree-shift-isometry k=" + std::to_string(k));
    try {
      AlgebraElement v = degree_shift_isometry(n, k);
      AlgebraElement vs = v.adjoint();
      AlgebraElement left = convolve(vs, v);
      AlgebraElement right = convolve(v, vs);
      AlgebraElement one = AlgebraElement::identity(n);
      AlgebraElement cof = proj_cofinite(n, n, k < 0 ? -k : k);
      bool ok = k >= 0 ? (left == one && right == cof) : (left == cof && right == one);
      rep.add(name, ok, ok ? "" : "product identities failed");
    } catch (const std::exception& e) {
      rep.add(name, false, e.what());
    }
  }

  if (n >= 2) {
    for (long long r = 1; r <= bounds.k_max; ++r) {
      std::string name = tag("corner-shift-isometry r=" + std::to_string(r));
      try {
        AlgebraElement v = corner_shift_isometry(n, r);
        AlgebraElement vs = v.adjoint();
        AlgebraElement left = convolve(vs, v);
        AlgebraElement right = convolve(v, vs);
        // Left product: cofinite block one slot in, last coordinate pinned;
        // right product: the full corner with last coordinate pinned.
        AlgebraElement left_target = convolve(proj_cofinite(n, n - 1, r), proj_finite(n, n, 1));
        AlgebraElement right_target = proj_finite(n, n, 1);
        bool ok = left == left_target && right == right_target;
        rep.add(name, ok, ok ? "" : "product identities failed");
      } catch (const std::exception& e) {
        rep.add(name, false, e.what());
      }
    }
  }

  return rep;
}

}  // namespace gadgets
}  // namespace qps
