#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qps/region.hpp"

namespace qps {

// One generator of the convolution algebra: a group translation m together
// with a compact-open set of source points.  Valid source points x must have
// both x and x+m inside the cone; constructors clamp the support to the legal
// sources silently (this is restriction of functions to the groupoid, not an
// error).
struct RawTerm {
  GaussianRational coeff;
  std::vector<long long> shift;
  Box support;
};

class SigmaElement;

// An element of the dense compactly-supported convolution *-algebra of the
// transformation groupoid (Z^n acting on the compactified cone), i.e. a
// finite linear combination of translation indicators.  This algebra is the
// n-fold Toeplitz tensor power; the quantum sphere and quantum projective
// space live in it through its quotients, with quotient_equal as equality.
//
// Canonical form: terms are grouped by translation, supports of distinct
// coefficients within one translation are disjoint, zero coefficients are
// absent; equality is structural.
class AlgebraElement {
 public:
  struct Component {
    std::vector<long long> shift;
    std::vector<WeightedBox> parts;  // canonical weighted region
    bool operator==(const Component&) const = default;
  };

  explicit AlgebraElement(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("AlgebraElement: negative ambient dimension");
  }

  static AlgebraElement zero(int n) { return AlgebraElement(n); }

  static AlgebraElement identity(int n) {
    return monomial(GaussianRational(1), std::vector<long long>(n, 0),
                    Box(n, ClopenSet::full()));
  }

  // c * chi_{(shift, support)}, support clamped to the legal source set.
  static AlgebraElement monomial(GaussianRational c, std::vector<long long> shift, Box support) {
    AlgebraElement e((int)shift.size());
    e.accumulate({RawTerm{c, std::move(shift), std::move(support)}});
    return e;
  }

  static AlgebraElement indicator(Box support) {
    const size_t n = support.size();
    return monomial(GaussianRational(1), std::vector<long long>(n, 0), std::move(support));
  }

  static AlgebraElement from_terms(int n, std::vector<RawTerm> terms) {
    AlgebraElement e(n);
    e.accumulate(std::move(terms));
    return e;
  }

  int ambient() const { return n_; }
  const std::vector<Component>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    check_ambient(a, b);
    AlgebraElement r(a.n_);
    std::vector<RawTerm> terms;
    a.collect(terms);
    b.collect(terms);
    r.accumulate(std::move(terms));
    return r;
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return a + b.scaled(GaussianRational(-1));
  }
  AlgebraElement operator-() const { return scaled(GaussianRational(-1)); }

  AlgebraElement scaled(const GaussianRational& c) const {
    AlgebraElement r(n_);
    std::vector<RawTerm> terms;
    collect(terms);
    for (auto& t : terms) t.coeff = t.coeff * c;
    r.accumulate(std::move(terms));
    return r;
  }

  // Groupoid convolution: chi_(mA,SA) * chi_(mB,SB) =
  // chi_(mA+mB, pre(SA, mB) n SB), extended bilinearly.  The preimage in
  // coordinate i is {x : x + mB_i in SA_i} with oo fixed; the result is
  // automatically supported on legal sources.
  friend AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b) {
    check_ambient(a, b);
    std::vector<RawTerm> terms;
    for (const auto& ca : a.comps_)
      for (const auto& cb : b.comps_) {
        std::vector<long long> m(a.n_);
        for (int i = 0; i < a.n_; ++i) m[i] = ca.shift[i] + cb.shift[i];
        for (const auto& [xa, boxa] : ca.parts)
          for (const auto& [xb, boxb] : cb.parts) {
            Box s(a.n_);
            bool empty = false;
            for (int i = 0; i < a.n_ && !empty; ++i) {
              s[i] = set_intersect(boxa[i].shift_pre(cb.shift[i]), boxb[i]);
              empty = s[i].is_empty();
            }
            if (!empty) terms.push_back(RawTerm{xa * xb, m, std::move(s)});
          }
      }
    AlgebraElement r(a.n_);
    r.accumulate(std::move(terms));
    return r;
  }

  // *-operation: chi_(m,S)* = chi_(-m, S+m), conjugate-linearly.
  AlgebraElement adjoint() const {
    std::vector<RawTerm> terms;
    for (const auto& c : comps_) {
      std::vector<long long> m(n_);
      for (int i = 0; i < n_; ++i) m[i] = -c.shift[i];
      for (const auto& [x, box] : c.parts) {
        Box s(n_);
        for (int i = 0; i < n_; ++i) s[i] = box[i].translate(c.shift[i]);
        terms.push_back(RawTerm{x.conj(), m, std::move(s)});
      }
    }
    AlgebraElement r(n_);
    r.accumulate(std::move(terms));
    return r;
  }

  // Partition by total degree (sum of the translation vector); reassembling
  // the parts recovers the element, and convolution adds degrees.
  std::map<long long, AlgebraElement> degree_split() const {
    std::map<long long, std::vector<RawTerm>> buckets;
    std::vector<RawTerm> terms;
    collect(terms);
    for (auto& t : terms) {
      long long d = std::accumulate(t.shift.begin(), t.shift.end(), 0ll);
      buckets[d].push_back(std::move(t));
    }
    std::map<long long, AlgebraElement> out;
    for (auto& [d, ts] : buckets) {
      AlgebraElement e(n_);
      e.accumulate(std::move(ts));
      if (!e.is_zero()) out.emplace(d, std::move(e));
    }
    return out;
  }

  bool is_homogeneous(long long degree) const {
    for (const auto& c : comps_)
      if (std::accumulate(c.shift.begin(), c.shift.end(), 0ll) != degree) return false;
    return true;
  }

  // Membership in the ideal of the interior (the compact operators): every
  // support is finite in every coordinate.
  bool in_compact_ideal() const {
    for (const auto& c : comps_)
      for (const auto& [x, box] : c.parts)
        for (const auto& s : box)
          if (s.has_tail()) return false;
    return true;
  }

  // Equality in the quantum-sphere quotient.
  friend bool quotient_equal(const AlgebraElement& a, const AlgebraElement& b) {
    check_ambient(a, b);
    return (a - b).in_compact_ideal();
  }

  SigmaElement restrict_sigma(const std::vector<int>& pinned) const;

  // Pointwise value at a cone point for a given translation (test oracle use).
  GaussianRational value_at(const std::vector<long long>& shift, const ConePoint& p) const {
    for (const auto& c : comps_) {
      if (c.shift != shift) continue;
      for (const auto& [x, box] : c.parts)
        if (p.in_box(box)) return x;
    }
    return GaussianRational(0);
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.n_ == b.n_ && a.comps_ == b.comps_;
  }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  // Bound on all finite structure: first index from which every coordinate
  // set has constant membership, and the largest translation magnitude.
  long long settle_bound() const {
    long long b = 0;
    for (const auto& c : comps_) {
      for (long long m : c.shift) b = std::max(b, m < 0 ? -m : m);
      for (const auto& [x, box] : c.parts)
        for (const auto& s : box) b = std::max(b, s.settle_bound());
    }
    return b;
  }

  std::string str() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (const auto& c : comps_) {
      for (const auto& [x, box] : c.parts) {
        if (!out.empty()) out += " + ";
        out += x.str() + "·χ(m=(";
        for (size_t i = 0; i < c.shift.size(); ++i) {
          if (i) out += ",";
          out += std::to_string(c.shift[i]);
        }
        out += "), ";
        if (box.empty()) out += "pt";
        for (size_t i = 0; i < box.size(); ++i) {
          if (i) out += "×";
          out += box[i].str();
        }
        out += ")";
      }
    }
    return out;
  }

 private:
  static void check_ambient(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("AlgebraElement: ambient dimension mismatch");
  }

  void collect(std::vector<RawTerm>& out) const {
    for (const auto& c : comps_)
      for (const auto& [x, box] : c.parts) out.push_back(RawTerm{x, c.shift, box});
  }

  void accumulate(std::vector<RawTerm> terms) {
    std::map<std::vector<long long>, std::vector<WeightedBox>> grouped;
    for (auto& t : terms) {
      if ((int)t.shift.size() != n_ || (int)t.support.size() != n_)
        throw std::invalid_argument("AlgebraElement: term arity mismatch");
      Box s = std::move(t.support);
      for (int i = 0; i < n_; ++i)
        if (t.shift[i] < 0) s[i] = set_intersect(s[i], ClopenSet::tail_from(-t.shift[i]));
      grouped[std::move(t.shift)].emplace_back(t.coeff, std::move(s));
    }
    comps_.clear();
    for (auto& [m, parts] : grouped) {
      auto canon = weighted_canonical(parts, n_);
      if (!canon.empty()) comps_.push_back(Component{m, std::move(canon)});
    }
  }

  int n_;
  std::vector<Component> comps_;  // sorted by shift (map order)
};

// Image of an element under the restriction map that pins a set of
// coordinates at infinity: a Laurent-polynomial part on the pinned circle
// factors times a residual element on the remaining coordinates.  Only boxes
// whose pinned coordinates reach infinity survive.
class SigmaElement {
 public:
  SigmaElement(int ambient, std::vector<int> pinned)
      : ambient_(ambient), pinned_(std::move(pinned)) {
    std::sort(pinned_.begin(), pinned_.end());
    for (int c : pinned_)
      if (c < 1 || c > ambient_) throw std::invalid_argument("SigmaElement: pinned coordinate out of range");
  }

  int ambient() const { return ambient_; }
  int residual_dim() const { return ambient_ - (int)pinned_.size(); }
  const std::vector<int>& pinned() const { return pinned_; }
  const std::map<std::vector<long long>, AlgebraElement>& parts() const { return parts_; }

  bool is_zero() const { return parts_.empty(); }

  void add_part(std::vector<long long> exponent, const AlgebraElement& residual) {
    if (residual.is_zero()) return;
    auto it = parts_.find(exponent);
    if (it == parts_.end()) {
      parts_.emplace(std::move(exponent), residual);
    } else {
      it->second = it->second + residual;
      if (it->second.is_zero()) parts_.erase(it);
    }
  }

  friend SigmaElement operator+(const SigmaElement& a, const SigmaElement& b) {
    check_compat(a, b);
    SigmaElement r = a;
    for (const auto& [e, f] : b.parts_) r.add_part(e, f);
    return r;
  }

  friend SigmaElement operator*(const SigmaElement& a, const SigmaElement& b) {
    check_compat(a, b);
    SigmaElement r(a.ambient_, a.pinned_);
    for (const auto& [ea, fa] : a.parts_)
      for (const auto& [eb, fb] : b.parts_) {
        std::vector<long long> e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_part(std::move(e), convolve(fa, fb));
      }
    return r;
  }

  // Evaluation of the circle variables at 1: sum of the residual parts.
  AlgebraElement evaluate_at_one() const {
    AlgebraElement total(residual_dim());
    for (const auto& [e, f] : parts_) total = total + f;
    return total;
  }

  friend bool operator==(const SigmaElement& a, const SigmaElement& b) {
    return a.ambient_ == b.ambient_ && a.pinned_ == b.pinned_ && a.parts_ == b.parts_;
  }
  friend bool operator!=(const SigmaElement& a, const SigmaElement& b) { return !(a == b); }

 private:
  static void check_compat(const SigmaElement& a, const SigmaElement& b) {
    if (a.ambient_ != b.ambient_ || a.pinned_ != b.pinned_)
      throw std::invalid_argument("SigmaElement: incompatible restrictions");
  }

  int ambient_;
  std::vector<int> pinned_;
  std::map<std::vector<long long>, AlgebraElement> parts_;
};

inline SigmaElement AlgebraElement::restrict_sigma(const std::vector<int>& pinned) const {
  SigmaElement out(n_, pinned);
  const auto& ps = out.pinned();
  std::vector<bool> is_pinned(n_ + 1, false);
  for (int c : ps) is_pinned[c] = true;

  for (const auto& comp : comps_) {
    std::vector<long long> exponent;
    std::vector<long long> rshift;
    for (int i = 1; i <= n_; ++i)
      (is_pinned[i] ? exponent : rshift).push_back(comp.shift[i - 1]);
    std::vector<RawTerm> residual_terms;
    for (const auto& [x, box] : comp.parts) {
      bool survives = true;
      Box rbox;
      for (int i = 1; i <= n_ && survives; ++i) {
        if (is_pinned[i]) {
          survives = box[i - 1].contains_infinity();
        } else {
          rbox.push_back(box[i - 1]);
        }
      }
      if (survives) residual_terms.push_back(RawTerm{x, rshift, std::move(rbox)});
    }
    if (!residual_terms.empty())
      out.add_part(std::move(exponent),
                   AlgebraElement::from_terms(out.residual_dim(), std::move(residual_terms)));
  }
  return out;
}

// Rank (= trace) of a projection given by one algebra element: the sum over
// the degree-zero part of coefficient times support cardinality, infinite as
// soon as a positive-weight piece has infinite support.
struct TraceAccumulator {
  GaussianRational finite;
  bool infinite = false;

  void add(const AlgebraElement& p) {
    for (const auto& c : p.components()) {
      bool zero_shift = true;
      for (long long m : c.shift) zero_shift = zero_shift && m == 0;
      if (!zero_shift) continue;
      for (const auto& [x, box] : c.parts) {
        ExtNat card = box_cardinality(box);
        if (card.is_finite()) {
          finite += x * GaussianRational((long long)card.finite());
        } else {
          if (!x.is_real() || !(Rational(0) < x.re))
            throw std::domain_error("rank: infinite support with non-positive weight (not a projection)");
          infinite = true;
        }
      }
    }
  }

  ExtNat rank() const {
    if (infinite) return ExtNat::inf();
    if (!finite.is_real() || !finite.re.is_integer() || finite.re.num() < 0)
      throw std::domain_error("rank: trace is not a nonnegative integer (not a projection)");
    return ExtNat((unsigned long long)finite.re.num());
  }
};

inline ExtNat rank_of_projection(const AlgebraElement& p) {
  TraceAccumulator t;
  t.add(p);
  return t.rank();
}

// Rank of a restricted projection: the residual at the torus point 1.
inline ExtNat rank_of_projection(const SigmaElement& p) {
  TraceAccumulator t;
  t.add(p.evaluate_at_one());
  return t.rank();
}

}  // namespace qps
