// Acceptance suite: every exact guarantee the toolkit makes, one line each.
// Exit code 0 only when every criterion holds.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>

#include "qps/cli.hpp"

using namespace qps;

namespace {

int g_failures = 0;

void criterion(const std::string& name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
  std::printf("  (%.2fs)", secs);
  if (!ok && !detail.empty()) std::cout << "  " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

// ---- helpers for the classification criterion ---------------------------------

AlgMatrix random_gadget_projection(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<long long> small(1, 3);
  std::uniform_int_distribution<int> sz(2, 3);
  std::vector<AlgebraElement> d;
  int size = sz(rng);
  for (int i = 0; i < size; ++i) {
    switch (kind(rng)) {
      case 0: d.push_back(gadgets::proj_finite(1, 1, small(rng))); break;
      case 1: d.push_back(gadgets::proj_cofinite(1, 1, small(rng))); break;
      case 2: d.push_back(AlgebraElement::identity(1)); break;
      default: d.push_back(AlgebraElement::zero(1)); break;
    }
  }
  AlgMatrix p = AlgMatrix::diag(d);
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<int> rounds(1, 2);
  int conj = rounds(rng);
  for (int i = 0; i < conj; ++i) {
    AlgMatrix u = [&]() -> AlgMatrix {
      switch (pick(rng)) {
        case 0: return gadgets::absorb_unitary(1, 1);
        case 1: return gadgets::gather_unitary(1, 1, 2, (int)small(rng));
        case 2: return gadgets::gather_unitary(1, 1, 3, 1);
        case 3: return gadgets::backfill_unitary(1, 1, 2, small(rng));
        default: return gadgets::backfill_unitary(1, 1, 3, 1);
      }
    }();
    p = conjugate_unitary(u, p);
  }
  return p;
}

long long matrix_settle_bound(const AlgMatrix& p) {
  long long b = 1;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) b = std::max(b, p.at(i, j).settle_bound());
  return b;
}

// Truncated-model classification: the trace slope of two windows gives the
// symbol rank, the stabilized band sum gives the symbol matrix, and the
// window trace gives the finite rank.
bool brute_force_class(const AlgMatrix& p, ClassN1& out, std::string& why) {
  long long B = matrix_settle_bound(p);
  int N1 = (int)B + 4;
  int N2 = 2 * (int)B + 12;
  DenseMatrix d1 = truncate_matrix(p, N1);
  DenseMatrix d2 = truncate_matrix(p, N2);
  GaussianRational t1 = dense_trace(d1), t2 = dense_trace(d2);
  GaussianRational diff = t2 - t1;
  if (!diff.is_real() || !diff.re.is_integer()) {
    why = "trace slope not integral";
    return false;
  }
  long long gap = N2 - N1;
  if (diff.re.num() % gap != 0) {
    why = "trace slope not integral";
    return false;
  }
  long long slope = diff.re.num() / gap;

  // Symbol matrix from the stabilized band of the large window.
  int sz = p.rows();
  long long xs = B + 2;
  DenseMatrix sym = dense_zero(sz, sz);
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j)
      for (long long d = -(B + 1); d <= B + 1; ++d) {
        long long row = xs + d;
        if (row >= 0 && row < N2) sym[i][j] += d2[i * N2 + row][j * N2 + xs];
      }
  long long m_sym = dense_rank(sym);
  if (m_sym != slope) {
    why = "band symbol rank disagrees with trace slope";
    return false;
  }
  if (slope == 0) {
    if (t1 != t2 || !t1.is_real() || !t1.re.is_integer() || t1.re.num() < 0) {
      why = "finite trace did not stabilize";
      return false;
    }
    out = ClassN1{0, ExtNat((unsigned long long)t1.re.num())};
  } else {
    out = ClassN1{slope, ExtNat::inf()};
  }
  return true;
}

}  // namespace

int main() {
  criterion("1. convolution matches the truncated operator model "
            "(n=1, 200 random pairs, window 16, indices < 8, exact)",
            5.0, [](std::string& why) {
              CheckResult r = check_operator_model(200, 5, 8, 16, 8);
              why = r.detail;
              return r.pass;
            });

  criterion("2. absorption unitary is exactly unitary and kills the rank-one corner", 1.0,
            [](std::string&) {
              AlgMatrix u = gadgets::absorb_unitary(1, 1);
              AlgMatrix before = dsum(AlgMatrix::scalar(gadgets::proj_finite(1, 1, 1)),
                                      AlgMatrix::identity(1, 1));
              AlgMatrix after = dsum(AlgMatrix::zero(1, 1, 1), AlgMatrix::identity(1, 1));
              return is_unitary(u) && conjugate_unitary(u, before) == after;
            });

  criterion("3. absorption chains certify exactly (n <= 3, all nested pairs, weights <= 2)", 0,
            [](std::string& why) {
              for (int n = 1; n <= 3; ++n) {
                CheckReport rep = verify_absorption(n, 2);
                for (const auto& c : rep.checks)
                  if (!c.pass) {
                    why = c.name;
                    return false;
                  }
              }
              return true;
            });

  criterion("4. rank vectors separate all reduced sums (n <= 4, weights <= 3)", 60.0,
            [](std::string& why) {
              for (int n = 1; n <= 4; ++n) {
                std::vector<uint32_t> masks;
                for (uint32_t m = 0; m < (1u << n); ++m) masks.push_back(m);
                std::set<std::string> seen;
                size_t total = 0;
                for (uint64_t family = 0; family < (1ull << masks.size()); ++family) {
                  std::vector<uint32_t> chosen;
                  for (size_t i = 0; i < masks.size(); ++i)
                    if ((family >> i) & 1) chosen.push_back(masks[i]);
                  bool antichain = true;
                  for (uint32_t a : chosen)
                    for (uint32_t b : chosen)
                      if (subset_strictly_below(a, b)) antichain = false;
                  if (!antichain) continue;
                  std::vector<long long> w(chosen.size(), 1);
                  while (true) {
                    StandardSum s(Ambient::Toeplitz, n);
                    for (size_t i = 0; i < chosen.size(); ++i) s.add(chosen[i], w[i]);
                    ++total;
                    seen.insert(rho(s).str());
                    size_t i = 0;
                    for (; i < w.size(); ++i) {
                      if (w[i] < 3) {
                        ++w[i];
                        break;
                      }
                      w[i] = 1;
                    }
                    if (i == w.size()) break;
                  }
                }
                if (seen.size() != total) {
                  why = "collision at n=" + std::to_string(n) + " (" +
                        std::to_string(seen.size()) + " of " + std::to_string(total) + ")";
                  return false;
                }
              }
              return true;
            });

  criterion("5. nu recursion equals C(m+l-1, m) for m, l <= 25; nu(2,2)=3, nu(2,3)=6", 0,
            [](std::string& why) {
              NuTable t;
              for (long long m = 0; m <= 25; ++m)
                for (long long l = 1; l <= 25; ++l)
                  if (t.recursive(m, l) != NuTable::closed_form(m, l)) {
                    why = "mismatch at (" + std::to_string(m) + "," + std::to_string(l) + ")";
                    return false;
                  }
              return t.value(2, 2) == BigUint(3) && t.value(2, 3) == BigUint(6);
            });

  criterion("6. closed-form bundle decomposition equals the recursion "
            "(n in {3,4,5}, k in [-6,-1])",
            10.0, [](std::string& why) {
              for (int n = 3; n <= 5; ++n)
                for (long long k = -6; k <= -1; ++k)
                  if (!same_summands(decompose_L(n, k), decompose_L_recursive(n, k))) {
                    why = "n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return false;
                  }
              return true;
            });

  criterion("7. boundary isometry product identities hold exactly "
            "(degree |k| <= 3 for n in {2,3}; corner r <= 3)",
            0, [](std::string& why) {
              for (int n = 2; n <= 3; ++n) {
                for (long long k = -3; k <= 3; ++k) {
                  AlgebraElement v = gadgets::degree_shift_isometry(n, k);
                  AlgebraElement vs = v.adjoint();
                  AlgebraElement one = AlgebraElement::identity(n);
                  AlgebraElement cof = gadgets::proj_cofinite(n, n, k < 0 ? -k : k);
                  bool ok = k >= 0 ? (convolve(vs, v) == one && convolve(v, vs) == cof)
                                   : (convolve(vs, v) == cof && convolve(v, vs) == one);
                  if (!ok || !v.is_homogeneous(k) ||
                      !is_partial_isometry(AlgMatrix::scalar(v))) {
                    why = "degree isometry n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return false;
                  }
                }
                for (long long r = 1; r <= 3; ++r) {
                  AlgebraElement v = gadgets::corner_shift_isometry(n, r);
                  AlgebraElement vs = v.adjoint();
                  AlgebraElement left = convolve(gadgets::proj_cofinite(n, n - 1, r),
                                                 gadgets::proj_finite(n, n, 1));
                  bool ok = convolve(vs, v) == left &&
                            convolve(v, vs) == gadgets::proj_finite(n, n, 1) &&
                            v.is_homogeneous(-r);
                  if (!ok) {
                    why = "corner isometry n=" + std::to_string(n) + " r=" + std::to_string(r);
                    return false;
                  }
                }
              }
              return true;
            });

  criterion("8. line bundle classes have rank one (n in {2,3,4}, |k| <= 5)", 0,
            [](std::string& why) {
              for (int n = 2; n <= 4; ++n)
                for (long long k = -5; k <= 5; ++k)
                  if (rank_of_class(class_of_L(n, k)) != 1) {
                    why = "n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return false;
                  }
              return true;
            });

  criterion("9. corner classes: (-k,1) at n=2 for k <= 10; trailing (-k,1) for n <= 6; "
            "[L1]+[L-1]-2[1] = (1,0,0) at n=3",
            0, [](std::string& why) {
              for (long long k = 0; k <= 10; ++k)
                if (cofinite_corner_class(2, k) != K0Class(2, {-k, 1})) {
                  why = "n=2 k=" + std::to_string(k);
                  return false;
                }
              for (int n = 2; n <= 6; ++n)
                for (long long k = 1; k <= 10; ++k) {
                  K0Class v = cofinite_corner_class(n, k);
                  if (v.coords[n - 1] != 1 || v.coords[n - 2] != -k) {
                    why = "n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return false;
                  }
                }
              K0Class lhs =
                  class_of_L(3, 1) + class_of_L(3, -1) - K0Class::generator(3, 3).scaled(2);
              if (lhs != K0Class(3, {1, 0, 0})) {
                why = "generator sum gave " + lhs.str();
                return false;
              }
              return true;
            });

  criterion("10. structure table: sr {2,2,2,3,3}, gl0_threshold(2)=4, "
            "free-rank threshold (n-1)/2+3, binomial series multiplicities (n <= 5)",
            0, [](std::string& why) {
              long long expect_sr[] = {2, 2, 2, 3, 3};
              for (int n = 1; n <= 5; ++n)
                if (stable_rank(n) != expect_sr[n - 1]) {
                  why = "sr(" + std::to_string(n) + ")";
                  return false;
                }
              if (gl0_threshold(2) != 4) {
                why = "gl0_threshold(2)";
                return false;
              }
              for (int n = 1; n <= 8; ++n)
                if (free_rank_threshold(Ambient::Sphere, n) != (n - 1) / 2 + 3) {
                  why = "free_rank_threshold(" + std::to_string(n) + ")";
                  return false;
                }
              for (int n = 1; n <= 5; ++n) {
                auto layers = composition_series(n, SeriesKind::Toeplitz);
                if ((int)layers.size() != n + 1) return false;
                long long binom = 1;
                for (int j = 0; j <= n; ++j) {
                  if (layers[j].multiplicity != binom || layers[j].compact_dim != n - j ||
                      layers[j].torus_dim != j) {
                    why = "series n=" + std::to_string(n) + " layer " + std::to_string(j);
                    return false;
                  }
                  binom = binom * (n - j) / (j + 1);
                }
                auto sphere = composition_series(n, SeriesKind::Sphere);
                if (sphere.size() != layers.size() - 1 || !(sphere[0] == layers[1])) {
                  why = "sphere series n=" + std::to_string(n);
                  return false;
                }
              }
              return true;
            });

  criterion("11. transport unitary: exactly unitary; conjugates the matrix-unit slice to the "
            "two-slot corner mod the compact ideal (n in {2,3}, k <= 3)",
            0, [](std::string& why) {
              for (int n = 2; n <= 3; ++n)
                for (long long k = 1; k <= 3; ++k) {
                  AlgMatrix u = gadgets::transport_unitary(n, k);
                  if (!is_unitary(u)) {
                    why = "unitarity n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return false;
                  }
                  AlgMatrix before = dsum(AlgMatrix::scalar(gadgets::matrix_unit(n, n, k, k)),
                                          AlgMatrix::zero(1, 1, n));
                  AlgMatrix after = dsum(
                      AlgMatrix::zero(1, 1, n),
                      AlgMatrix::scalar(convolve(gadgets::proj_cofinite(n, n - 1, k),
                                                 gadgets::proj_finite(n, n, 1))));
                  if (!mat_equal(conjugate_unitary(u, before), after, EqMode::ModCompactIdeal)) {
                    why = "conjugation n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return false;
                  }
                }
              return true;
            });

  criterion("12. one-variable classification agrees with the truncated-model brute force "
            "(50 random projections from gadget conjugations)",
            0, [](std::string& why) {
              std::mt19937 rng(424243);
              for (int trial = 0; trial < 50; ++trial) {
                AlgMatrix p = random_gadget_projection(rng);
                if (!is_projection(p)) {
                  why = "trial " + std::to_string(trial) + ": not a projection";
                  return false;
                }
                ClassN1 direct = classify_n1(p);
                ClassN1 oracle;
                if (!brute_force_class(p, oracle, why)) {
                  why = "trial " + std::to_string(trial) + ": " + why;
                  return false;
                }
                if (!(direct == oracle)) {
                  why = "trial " + std::to_string(trial) + ": " + direct.str() +
                        " != " + oracle.str();
                  return false;
                }
              }
              return true;
            });

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: ")
            << (g_failures == 0 ? "" : std::to_string(g_failures)) << std::endl;
  return g_failures == 0 ? 0 : 1;
}
