#pragma once

#include <random>

#include "qps/line_bundles.hpp"
#include "qps/operator_model.hpp"

namespace qps {

// Deterministic random elements for the one-variable operator-model check:
// translations up to shift_max, supports inside [0, support_max] plus tails.
inline AlgebraElement random_element_1d(std::mt19937& rng, long long shift_max,
                                        long long support_max) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<long long> shift(-shift_max, shift_max);
  std::uniform_int_distribution<long long> point(0, support_max);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> coin(0, 3);
  std::vector<RawTerm> terms;
  int count = nterms(rng);
  for (int t = 0; t < count; ++t) {
    std::vector<long long> pts;
    int npts = coin(rng);
    for (int i = 0; i < npts; ++i) pts.push_back(point(rng));
    std::optional<long long> tail;
    if (coin(rng) == 0) tail = point(rng);
    GaussianRational c(coeff(rng));
    if (c.is_zero()) c = GaussianRational(1);
    terms.push_back(RawTerm{c, {shift(rng)}, {ClopenSet(std::move(pts), tail)}});
  }
  return AlgebraElement::from_terms(1, std::move(terms));
}

// Convolution versus truncated matrix multiplication, exact agreement on the
// window where truncation cannot leak.
inline CheckResult check_operator_model(int pairs, long long shift_max, long long support_max,
                                        int window, int compare, unsigned seed = 20240901) {
  std::mt19937 rng(seed);
  for (int i = 0; i < pairs; ++i) {
    AlgebraElement f = random_element_1d(rng, shift_max, support_max);
    AlgebraElement g = random_element_1d(rng, shift_max, support_max);
    DenseMatrix lhs = truncate_element(convolve(f, g), window);
    DenseMatrix rhs = dense_mul(truncate_element(f, window), truncate_element(g, window));
    for (int r = 0; r < compare; ++r)
      for (int c = 0; c < compare; ++c)
        if (lhs[r][c] != rhs[r][c])
          return CheckResult{"operator model", false,
                             "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                 ") differs on pair " + std::to_string(i)};
  }
  return CheckResult{"operator model (" + std::to_string(pairs) + " random pairs)", true, ""};
}

// Absorption certificates for every strictly nested pair of indices.
inline CheckReport verify_absorption(int n, long long weight_max) {
  CheckReport rep;
  for (uint32_t a = 1; a < (1u << n); ++a)
    for (uint32_t b = 0; b < (1u << n); ++b) {
      if (!subset_strictly_below(b, a)) continue;
      for (long long la = 1; la <= weight_max; ++la)
        for (long long lb = 1; lb <= weight_max; ++lb) {
          bool ok = false;
          std::string why;
          try {
            ok = certify_absorption(n, a, la, b, lb);
          } catch (const std::exception& e) {
            why = e.what();
          }
          rep.add("absorption n=" + std::to_string(n) + " " + std::to_string(la) + "*" +
                      subset_str(a) + " absorbs " + std::to_string(lb) + "*" + subset_str(b),
                  ok, why);
        }
    }
  return rep;
}

// nu-table consistency: recursion against closed form on a rectangle, plus
// the Pascal step used in the induction.
inline CheckReport verify_nu(long long m_max, long long l_max) {
  CheckReport rep;
  NuTable t;
  bool agree = true;
  for (long long m = 0; m <= m_max && agree; ++m)
    for (long long l = 1; l <= l_max && agree; ++l)
      agree = t.recursive(m, l) == NuTable::closed_form(m, l);
  rep.add("nu recursion == closed form on [0," + std::to_string(m_max) + "]x[1," +
              std::to_string(l_max) + "]",
          agree);
  bool pascal = true;
  for (long long m = 1; m <= m_max && pascal; ++m)
    for (long long l = 2; l <= l_max && pascal; ++l)
      pascal = t.recursive(m, l) == t.recursive(m - 1, l) + t.recursive(m, l - 1);
  rep.add("nu Pascal identity", pascal);
  rep.add("nu(2,2) == 3", t.value(2, 2) == BigUint(3));
  rep.add("nu(2,3) == 6", t.value(2, 3) == BigUint(6));
  return rep;
}

// Closed-form bundle decomposition against the recursion-only expansion.
inline CheckReport verify_bundle_decompositions(int n_max, long long k_min) {
  CheckReport rep;
  for (int n = 3; n <= n_max; ++n) {
    bool ok = true;
    for (long long k = k_min; k <= -1 && ok; ++k)
      ok = same_summands(decompose_L(n, k), decompose_L_recursive(n, k));
    rep.add("bundle decomposition closed form == recursion, n=" + std::to_string(n), ok);
  }
  bool ranks = true;
  for (int n = 2; n <= std::max(n_max, 2); ++n)
    for (long long k = k_min; k <= -k_min && ranks; ++k)
      ranks = rank_of_class(class_of_L(n, k)) == 1;
  rep.add("line bundles have rank one", ranks);
  return rep;
}

// The degree +-1 bundle classes and the unit satisfy the three-term
// generator identity reported for the two-dimensional projective space.
inline CheckResult check_bundle_class_sum_identity() {
  K0Class lhs = class_of_L(3, 1) + class_of_L(3, -1) - K0Class::generator(3, 3).scaled(2);
  bool ok = lhs == K0Class(3, {1, 0, 0});
  return CheckResult{"[L1]+[L-1]-2[1] == (1,0,0) at n=3", ok,
                     ok ? "" : "got " + lhs.str()};
}

struct VerifyBounds {
  long long gadget_k = 3;
  long long gadget_block = 2;
  long long absorb_weight = 2;
  int absorb_n_max = 3;
  long long nu_m = 25;
  long long nu_l = 25;
  int bundle_n_max = 5;
  long long bundle_k_min = -6;
  int model_pairs = 200;

  static VerifyBounds defaults() { return VerifyBounds{}; }
  static VerifyBounds quick() {
    VerifyBounds b;
    b.gadget_k = 2;
    b.absorb_n_max = 2;
    b.nu_m = 10;
    b.nu_l = 10;
    b.bundle_n_max = 4;
    b.bundle_k_min = -3;
    b.model_pairs = 50;
    return b;
  }
};

// The one-shot identity suite: every family of exact identities the library
// certifies, bounded by the given profile.
inline CheckReport run_full_verification(int n, const VerifyBounds& bounds) {
  CheckReport rep;
  rep.checks.push_back(check_operator_model(bounds.model_pairs, 5, 8, 16, 8));
  gadgets::GadgetBounds gb{bounds.gadget_k, bounds.gadget_block};
  for (int m = 1; m <= n; ++m) rep.merge(gadgets::verify_gadget_identities(m, gb));
  for (int m = 1; m <= std::min(n, bounds.absorb_n_max); ++m)
    rep.merge(verify_absorption(m, bounds.absorb_weight));
  rep.merge(verify_nu(bounds.nu_m, bounds.nu_l));
  rep.merge(verify_bundle_decompositions(bounds.bundle_n_max, bounds.bundle_k_min));
  rep.checks.push_back(check_bundle_class_sum_identity());
  for (int m = 2; m <= n; ++m)
    rep.merge(verify_line_bundle_isometries(m, bounds.gadget_k, bounds.gadget_k));
  return rep;
}

}  // namespace qps
