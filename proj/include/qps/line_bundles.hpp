#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qps/bigint.hpp"
#include "qps/ktheory.hpp"

namespace qps {

// Multiplicity table nu(m, l): nu(m, 1) = 1 and nu(m, l) is the running sum
// of the previous column; it coincides with the binomial C(m+l-1, m), and
// both routes are computed and compared on every query.
class NuTable {
 public:
  const BigUint& recursive(long long m, long long l) {
    check(m, l);
    // Fill by column: the defining sum over the previous column is evaluated
    // as a running total, so the whole table costs one addition per cell.
    if (cols_.empty()) cols_.push_back({});
    while ((long long)cols_.size() <= l) cols_.push_back({});
    if ((long long)cols_[1].size() <= m) cols_[1].assign(m + 1, BigUint(1));
    for (long long ll = 2; ll <= l; ++ll) {
      auto& col = cols_[ll];
      if ((long long)col.size() > m) continue;
      recursive(m, ll - 1);  // make sure the previous column is long enough
      BigUint acc;
      for (long long s = 0; s < (long long)col.size(); ++s) acc += cols_[ll - 1][s];
      for (long long s = (long long)col.size(); s <= m; ++s) {
        acc += cols_[ll - 1][s];
        col.push_back(acc);
      }
    }
    return cols_[l][m];
  }

  static BigUint closed_form(long long m, long long l) {
    check(m, l);
    return binomial_big((unsigned long long)(m + l - 1), (unsigned long long)m);
  }

  // Both computations must agree; disagreement is a hard fault.
  const BigUint& value(long long m, long long l) {
    const BigUint& r = recursive(m, l);
    if (r != closed_form(m, l)) throw std::logic_error("nu: recursion and closed form disagree");
    return r;
  }

 private:
  static void check(long long m, long long l) {
    if (m < 0 || l < 1) throw std::invalid_argument("nu: need m >= 0, l >= 1");
  }
  std::vector<std::vector<BigUint>> cols_;  // cols_[l][m], column 0 unused
};

inline BigUint nu(long long m, long long l) {
  NuTable t;
  return t.value(m, l);
}

// Multiset of identity-prefix tokens: key t means the projection with
// identity in the first t slots and rank-one blocks after (t = n is the unit).
using PrefixTokenCounts = std::map<int, BigUint>;

// Fully expanded corner-module decomposition: each module A_{r,l} splits into
// the modules A_{r-j, l-1} for j < r plus one identity-prefix token of width
// l, bottoming out at width 1.
inline PrefixTokenCounts decompose_A(int n, long long r, long long l) {
  if (n < 2) throw std::invalid_argument("decompose_A: need n >= 2");
  if (r < 1 || l < 1 || l > n - 1) throw std::invalid_argument("decompose_A: need r >= 1, 1 <= l <= n-1");
  std::map<std::pair<long long, long long>, PrefixTokenCounts> memo;
  auto expand = [&](auto&& self, long long rr, long long ll) -> const PrefixTokenCounts& {
    auto key = std::make_pair(rr, ll);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    PrefixTokenCounts out;
    if (ll == 1) {
      out[1] = BigUint(1);
    } else {
      for (long long j = 0; j < rr; ++j)
        for (const auto& [t, c] : self(self, rr - j, ll - 1)) out[t] += c;
      out[(int)ll] += BigUint(1);
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  return expand(expand, r, l);
}

// A degree-k spectral subspace presented as a projection: either the single
// cofinite corner (k >= 0) or a multiset of identity-prefix tokens (k < 0).
struct LBDecomposition {
  int n = 2;
  long long k = 0;
  std::map<ElementaryProj, BigUint> summands;
  bool via_recursion_only = false;  // n = 2 negative degrees have no closed form

  BigUint total_copies() const {
    BigUint t;
    for (const auto& [e, c] : summands) t += c;
    return t;
  }
};

inline ElementaryProj prefix_token(int n, int t) { return ElementaryProj(n, t, 0); }

namespace detail {

// Negative-degree decomposition by unwinding the corner-module recursion.
inline std::map<int, BigUint> negative_degree_tokens_recursive(int n, long long k) {
  std::map<int, BigUint> tokens;
  long long a = -k;
  for (long long m = 0; m < a; ++m)
    if (n == 2) {
      tokens[1] += BigUint(1);  // width-1 modules bottom out immediately
    } else {
      for (const auto& [t, c] : decompose_A(n, a - m, n - 1)) tokens[t] += c;
    }
  tokens[n] += BigUint(1);  // the degree-zero block contributes the unit
  return tokens;
}

// Negative-degree decomposition in closed form (meaningful for n > 2).
inline std::map<int, BigUint> negative_degree_tokens_closed(int n, long long k) {
  std::map<int, BigUint> tokens;
  long long a = -k;
  NuTable nu;
  BigUint rank_one_count;
  for (long long m = 0; m < a; ++m)
    rank_one_count += nu.value(m, n - 2) * (unsigned long long)(a - m);
  tokens[1] = rank_one_count;
  for (long long l = 1; l <= n - 1; ++l) tokens[n - (int)l + 1] += nu.value(a - 1, l);
  return tokens;
}

}  // namespace detail

inline LBDecomposition decompose_L(int n, long long k) {
  if (n < 2) throw std::invalid_argument("decompose_L: need n >= 2");
  LBDecomposition d;
  d.n = n;
  d.k = k;
  if (k >= 0) {
    d.summands[ElementaryProj(n, n, -k)] = BigUint(1);
    return d;
  }
  std::map<int, BigUint> tokens;
  if (n == 2) {
    tokens = detail::negative_degree_tokens_recursive(n, k);
    d.via_recursion_only = true;
  } else {
    tokens = detail::negative_degree_tokens_closed(n, k);
  }
  for (const auto& [t, c] : tokens)
    if (!c.is_zero()) d.summands[prefix_token(n, t)] = c;
  return d;
}

// The same decomposition by pure recursion; for n > 2 this must agree with
// the closed form and serves as its independent check.
inline LBDecomposition decompose_L_recursive(int n, long long k) {
  if (n < 2) throw std::invalid_argument("decompose_L_recursive: need n >= 2");
  if (k >= 0) return decompose_L(n, k);
  LBDecomposition d;
  d.n = n;
  d.k = k;
  d.via_recursion_only = true;
  for (const auto& [t, c] : detail::negative_degree_tokens_recursive(n, k))
    if (!c.is_zero()) d.summands[prefix_token(n, t)] = c;
  return d;
}

inline bool same_summands(const LBDecomposition& a, const LBDecomposition& b) {
  return a.n == b.n && a.k == b.k && a.summands == b.summands;
}

inline K0Class class_of_L(int n, long long k) {
  LBDecomposition d = decompose_L(n, k);
  K0Class c = K0Class::zero(n);
  for (const auto& [e, copies] : d.summands) {
    if (!copies.fits_u64()) throw std::overflow_error("class_of_L: multiplicity too large");
    c = c + class_of_elementary(e).scaled((long long)copies.to_u64());
  }
  return c;
}

// Materialize a decomposition as an honest block-diagonal matrix and recheck
// that it is a projection.
inline AlgMatrix realize_decomposition(const LBDecomposition& d, unsigned long long max_blocks = 512) {
  BigUint total = d.total_copies();
  if (!total.fits_u64() || total.to_u64() > max_blocks)
    throw std::domain_error("realize_decomposition: too many blocks to materialize");
  AlgMatrix out = AlgMatrix::zero(1, 1, d.n);
  bool started = false;
  for (const auto& [e, copies] : d.summands) {
    AlgMatrix blk = AlgMatrix::scalar(realize_elementary(e));
    for (unsigned long long i = 0; i < copies.to_u64(); ++i) {
      out = started ? dsum(out, blk) : blk;
      started = true;
    }
  }
  if (!is_projection(out, EqMode::Exact))
    throw std::logic_error("realize_decomposition: materialized matrix is not a projection");
  return out;
}

// Exact module checks for the degree isometries: the displayed product
// identities plus the right-module action on sampled homogeneous elements.
inline CheckReport verify_line_bundle_isometries(int n, long long k_max, long long r_max) {
  if (n < 2) throw std::invalid_argument("verify_line_bundle_isometries: need n >= 2");
  CheckReport rep;
  gadgets::GadgetBounds b;
  b.k_max = std::max(k_max, r_max);
  rep.merge(gadgets::verify_gadget_identities(n, b));

  // Sampled degree-k elements, built from a spread of translations and boxes.
  auto samples = [&](long long k) {
    std::vector<AlgebraElement> out;
    out.push_back(gadgets::degree_shift_isometry(n, k));
    std::vector<long long> m(n, 0);
    m[0] = k;
    out.push_back(AlgebraElement::monomial(GaussianRational(1), m, Box(n, ClopenSet::full())));
    std::vector<long long> split(n, 0);
    split[0] = k + 1;
    split[n - 1] = -1;
    Box box(n, ClopenSet::full());
    box[n - 1] = ClopenSet::tail_from(2);
    out.push_back(AlgebraElement::monomial(GaussianRational(1, 2), split, box) +
                  gadgets::degree_shift_isometry(n, k).scaled(GaussianRational(-2)));
    return out;
  };

  for (long long k = -k_max; k <= k_max; ++k) {
    AlgebraElement chi = gadgets::degree_shift_isometry(n, k);
    AlgebraElement chis = chi.adjoint();
    AlgebraElement cof = gadgets::proj_cofinite(n, n, k < 0 ? -k : k);
    bool ok = true;
    for (const AlgebraElement& f : samples(k)) {
      if (k >= 0) {
        ok = ok && convolve(convolve(f, chis), chi) == f;
        ok = ok && convolve(convolve(f, chi), chis) == convolve(f, cof);
      } else {
        ok = ok && convolve(convolve(f, chi), chis) == f;
        ok = ok && convolve(convolve(f, chis), chi) == convolve(f, cof);
      }
    }
    rep.add("n=" + std::to_string(n) + " degree-" + std::to_string(k) +
                " module action under the degree isometry",
            ok, ok ? "" : "right-module action mismatch");
  }

  for (long long r = 1; r <= r_max; ++r) {
    AlgebraElement chi = gadgets::corner_shift_isometry(n, r);
    AlgebraElement chis = chi.adjoint();
    AlgebraElement column = convolve(gadgets::proj_cofinite(n, n - 1, r),
                                     gadgets::proj_finite(n, n, 1));
    bool ok = true;
    // Elements of the corner column transport to degree zero and back.
    for (const AlgebraElement& s : samples(-r)) {
      AlgebraElement f = convolve(s, column);
      AlgebraElement g = convolve(f, chis);
      ok = ok && g.is_homogeneous(0);
      ok = ok && convolve(g, chi) == f;
    }
    rep.add("n=" + std::to_string(n) + " corner transport r=" + std::to_string(r), ok,
            ok ? "" : "corner module action mismatch");
  }

  return rep;
}

}  // namespace qps
