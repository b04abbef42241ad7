#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qps/standard_sums.hpp"

namespace qps {

// K0 coordinate vector of the quantum projective space in the free basis of
// the prefix standard projections; the last coordinate is the rank of any
// representing projection.
struct K0Class {
  int n = 1;
  std::vector<long long> coords;

  K0Class() = default;
  K0Class(int n_, std::vector<long long> c) : n(n_), coords(std::move(c)) {
    if (n < 1) throw std::invalid_argument("K0Class: need at least one coordinate");
    if ((int)coords.size() != n) throw std::invalid_argument("K0Class: coordinate arity mismatch");
  }

  static K0Class zero(int n) { return K0Class(n, std::vector<long long>(n, 0)); }
  static K0Class generator(int n, int j) {  // class of the j-th prefix generator
    if (j < 1 || j > n) throw std::invalid_argument("K0Class: generator index out of range");
    K0Class c = zero(n);
    c.coords[j - 1] = 1;
    return c;
  }

  // Embeds a class from a lower ambient by trailing zeros (the degree
  // preserving corner embedding sends generators to generators).
  K0Class pad_to(int m) const {
    if (m < n) throw std::invalid_argument("K0Class: cannot pad down");
    std::vector<long long> c = coords;
    c.resize(m, 0);
    return K0Class(m, std::move(c));
  }

  friend K0Class operator+(const K0Class& a, const K0Class& b) {
    if (a.n != b.n) throw std::invalid_argument("K0Class: ambient mismatch");
    K0Class r = a;
    for (int i = 0; i < a.n; ++i) r.coords[i] += b.coords[i];
    return r;
  }
  friend K0Class operator-(const K0Class& a, const K0Class& b) {
    if (a.n != b.n) throw std::invalid_argument("K0Class: ambient mismatch");
    K0Class r = a;
    for (int i = 0; i < a.n; ++i) r.coords[i] -= b.coords[i];
    return r;
  }
  K0Class scaled(long long c) const {
    K0Class r = *this;
    for (auto& x : r.coords) x *= c;
    return r;
  }

  friend bool operator==(const K0Class& a, const K0Class& b) {
    return a.n == b.n && a.coords == b.coords;
  }
  friend bool operator!=(const K0Class& a, const K0Class& b) { return !(a == b); }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < n; ++i) {
      if (i) s += ",";
      s += std::to_string(coords[i]);
    }
    return s + ")";
  }
};

inline long long rank_of_class(const K0Class& c) { return c.coords.back(); }

// Classes of the cofinite corner projections in the last slot: the k-step
// recursion peels one rank-one slice per step through the corner embedding.
//   v(n,0) = e_n,   v(n,k+1) = v(n,k) - pad(v(n-1,k)),   v(1,k) = (1).
// Returns the whole row v(n, 0..k_max), filled bottom-up so repeated peeling
// stays linear in k.
inline std::vector<K0Class> cofinite_corner_classes(int n, long long k_max) {
  if (n < 1 || k_max < 0)
    throw std::invalid_argument("cofinite_corner_classes: need n >= 1, k >= 0");
  std::vector<K0Class> row(k_max + 1, K0Class(1, {1}));
  for (int m = 2; m <= n; ++m) {
    std::vector<K0Class> next(k_max + 1, K0Class::zero(m));
    next[0] = K0Class::generator(m, m);
    for (long long i = 1; i <= k_max; ++i) next[i] = next[i - 1] - row[i - 1].pad_to(m);
    row = std::move(next);
  }
  return row;
}

inline K0Class cofinite_corner_class(int n, long long k) {
  return cofinite_corner_classes(n, k).back();
}

// A single elementary projection: identity in the slots before `slot`, the
// block P_k there (P_0 read as the identity, negative k as the cofinite
// complement), and rank-one blocks after.
struct ElementaryProj {
  int n = 1;
  int slot = 1;
  long long k = 0;

  ElementaryProj() = default;
  ElementaryProj(int n_, int slot_, long long k_) : n(n_), slot(slot_), k(k_) {
    if (n < 1 || slot < 1 || slot > n) throw std::invalid_argument("ElementaryProj: bad slot");
  }

  friend bool operator<(const ElementaryProj& a, const ElementaryProj& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.slot != b.slot) return a.slot < b.slot;
    return a.k < b.k;
  }
  friend bool operator==(const ElementaryProj& a, const ElementaryProj& b) {
    return a.n == b.n && a.slot == b.slot && a.k == b.k;
  }

  std::string str() const {
    std::string s;
    for (int i = 1; i <= n; ++i) {
      if (i > 1) s += "⊗";
      if (i < slot) s += "I";
      else if (i > slot) s += "P1";
      else if (k == 0) s += "I";
      else s += "P" + std::to_string(k);
    }
    return s;
  }
};

inline AlgebraElement realize_elementary(const ElementaryProj& e) {
  Box b(e.n);
  for (int i = 1; i <= e.n; ++i) {
    if (i < e.slot) b[i - 1] = ClopenSet::full();
    else if (i > e.slot) b[i - 1] = ClopenSet::points({0});
    else if (e.k > 0) b[i - 1] = ClopenSet::range(0, e.k);
    else b[i - 1] = ClopenSet::tail_from(-e.k);
  }
  return AlgebraElement::indicator(std::move(b));
}

inline K0Class class_of_elementary(const ElementaryProj& e) {
  if (e.slot < e.n) {
    // Everything past the slot is rank-one: the class comes from the lower
    // ambient through the corner embedding.
    return class_of_elementary(ElementaryProj(e.slot, e.slot, e.k)).pad_to(e.n);
  }
  if (e.k <= 0) return cofinite_corner_class(e.n, -e.k);
  if (e.n == 1) return K0Class::zero(1);  // a finite block dies in the boundary quotient
  // P_k splits into k orthogonal rank-one slices; each transports to the
  // cofinite corner one slot in.
  K0Class c = K0Class::zero(e.n);
  std::vector<K0Class> row = cofinite_corner_classes(e.n - 1, e.k - 1);
  for (long long i = 0; i < e.k; ++i) c = c + row[i].pad_to(e.n);
  return c;
}

// Class of a sum of prefix standard projections (the only shuffles whose
// classes the free basis expresses directly); non-prefix indices are refused.
inline K0Class class_of_standard_sum(const StandardSum& s) {
  K0Class c = K0Class::zero(s.n());
  for (auto [mask, l] : s.weights()) {
    int j = subset_size(mask);
    if (mask != (j >= 32 ? ~0u : ((1u << j) - 1)) || j == 0)
      throw std::invalid_argument("class_of_standard_sum: only prefix indices {1..j} are supported");
    c = c + K0Class::generator(s.n(), j).scaled(l);
  }
  return c;
}

// Positive-cone membership: the cone provably contains every vector avoiding
// the pattern (some j with c_j < 0 and zeros from j+1 on); a negative last
// coordinate is impossible for a projection class; the rest is open.
enum class ConeVerdict { In, NotIn, Unknown };

inline const char* cone_verdict_name(ConeVerdict v) {
  switch (v) {
    case ConeVerdict::In: return "in";
    case ConeVerdict::NotIn: return "not_in";
    case ConeVerdict::Unknown: return "unknown";
  }
  return "?";
}

inline ConeVerdict cone_contains(const K0Class& c) {
  if (c.coords.back() < 0) return ConeVerdict::NotIn;
  int last_nonzero = -1;
  for (int i = c.n - 1; i >= 0; --i)
    if (c.coords[i] != 0) { last_nonzero = i; break; }
  if (last_nonzero < 0) return ConeVerdict::In;           // the zero class
  if (c.coords[last_nonzero] < 0) return ConeVerdict::Unknown;
  return ConeVerdict::In;
}

// ---- structural constants ------------------------------------------------------

inline long long stable_rank(int n) {
  if (n < 1) throw std::invalid_argument("stable_rank: need n >= 1");
  if (n == 1) return 2;
  return n / 2 + 1;
}

inline long long csr_upper(int n) {
  if (n < 1) throw std::invalid_argument("csr_upper: need n >= 1");
  return (n + 1) / 2 + 1;
}

// Size from which the invertible groups are connected.
inline long long gl0_threshold(int n) {
  if (n < 1) throw std::invalid_argument("gl0_threshold: need n >= 1");
  if (n == 1) return 1;
  return n / 2 + 3;
}

// One layer of the ideal filtration indexed by how many coordinates sit at
// infinity: a direct sum of `multiplicity` copies of (compacts on a
// compact_dim-dimensional lattice corner) tensor (torus_dim-torus functions).
struct SeriesLayer {
  long long multiplicity;
  int compact_dim;
  int torus_dim;

  friend bool operator==(const SeriesLayer& a, const SeriesLayer& b) {
    return a.multiplicity == b.multiplicity && a.compact_dim == b.compact_dim &&
           a.torus_dim == b.torus_dim;
  }

  std::string str() const {
    std::string s = std::to_string(multiplicity) + " × ";
    s += "K(l2(Z≥^" + std::to_string(compact_dim) + "))";
    s += " ⊗ C(T^" + std::to_string(torus_dim) + ")";
    return s;
  }
};

enum class SeriesKind { Toeplitz, Sphere };

inline std::vector<SeriesLayer> composition_series(int n, SeriesKind which) {
  if (n < 1) throw std::invalid_argument("composition_series: need n >= 1");
  std::vector<SeriesLayer> layers;
  int start = which == SeriesKind::Toeplitz ? 0 : 1;
  for (int j = start; j <= n; ++j) {
    long long binom = 1;
    for (int i = 1; i <= j; ++i) binom = binom * (n - i + 1) / i;
    layers.push_back(SeriesLayer{binom, n - j, j});
  }
  return layers;
}

}  // namespace qps
