#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qps/gadgets.hpp"
#include "qps/operator_model.hpp"

namespace qps {

// The three ambient algebras standard projections live over: the Toeplitz
// cube, its quantum-sphere quotient, and the degree-zero quantum projective
// subalgebra.
enum class Ambient { Toeplitz, Sphere, CPn };

inline const char* ambient_name(Ambient a) {
  switch (a) {
    case Ambient::Toeplitz: return "toeplitz";
    case Ambient::Sphere: return "sphere";
    case Ambient::CPn: return "cpn";
  }
  return "?";
}

// Shuffle indices are identified with the subsets of {1..n} they pin; the
// partial order is strict inclusion.  Bit i-1 of the mask is coordinate i.
inline bool subset_strictly_below(uint32_t a, uint32_t b) {
  return a != b && (a & b) == a;
}

inline int subset_size(uint32_t a) { return std::popcount(a); }

inline std::vector<int> subset_elements(uint32_t a) {
  std::vector<int> out;
  for (int i = 0; (a >> i) != 0; ++i)
    if ((a >> i) & 1) out.push_back(i + 1);
  return out;
}

inline std::string subset_str(uint32_t a) {
  std::string s = "{";
  bool first = true;
  for (int e : subset_elements(a)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

// A formal diagonal sum of standard projections: a finite weight function on
// shuffle indices.  Same-index weights merge on insertion; over the sphere
// and projective ambients the empty index is the zero projection and drops.
class StandardSum {
 public:
  StandardSum(Ambient ambient, int n) : ambient_(ambient), n_(n) {
    if (n < 1 || n > 20) throw std::invalid_argument("StandardSum: n out of range");
  }

  Ambient ambient() const { return ambient_; }
  int n() const { return n_; }
  const std::map<uint32_t, long long>& weights() const { return weights_; }
  bool empty() const { return weights_.empty(); }

  void add(uint32_t mask, long long weight) {
    if ((n_ < 32 && (mask >> n_) != 0))
      throw std::invalid_argument("StandardSum: index out of range");
    if (weight < 0) throw std::invalid_argument("StandardSum: negative weight");
    if (weight == 0) return;
    if (mask == 0 && ambient_ != Ambient::Toeplitz) return;  // zero projection there
    weights_[mask] += weight;
    if (weights_[mask] > (1ll << 40)) throw std::invalid_argument("StandardSum: weight too large");
  }

  friend StandardSum operator+(const StandardSum& a, const StandardSum& b) {
    check_same(a, b);
    StandardSum r = a;
    for (auto [m, l] : b.weights_) r.add(m, l);
    return r;
  }

  friend bool operator==(const StandardSum& a, const StandardSum& b) {
    return a.ambient_ == b.ambient_ && a.n_ == b.n_ && a.weights_ == b.weights_;
  }
  friend bool operator!=(const StandardSum& a, const StandardSum& b) { return !(a == b); }

  static void check_same(const StandardSum& a, const StandardSum& b) {
    if (a.ambient_ != b.ambient_ || a.n_ != b.n_)
      throw std::invalid_argument("StandardSum: ambient mismatch");
  }

  std::string str() const {
    if (weights_.empty()) return "0";
    std::string s;
    for (auto [m, l] : weights_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(l) + "*" + subset_str(m);
    }
    return s;
  }

 private:
  Ambient ambient_;
  int n_;
  std::map<uint32_t, long long> weights_;
};

// Absorption normal form.  Over the Toeplitz cube and the sphere a token
// strictly below another present token is absorbed by it; over the projective
// ambient nothing absorbs and the weight map itself is the invariant.
inline StandardSum reduce(const StandardSum& s) {
  if (s.ambient() == Ambient::CPn) return s;
  StandardSum out(s.ambient(), s.n());
  for (auto [mask, l] : s.weights()) {
    bool dominated = false;
    for (auto [other, ol] : s.weights())
      dominated = dominated || subset_strictly_below(mask, other);
    if (!dominated) out.add(mask, l);
  }
  return out;
}

// The rank vector: component at A sums, over the tokens (A', l'), the weight
// l' when A = A', infinity when A is strictly below A', and nothing
// otherwise.  It is a monoid homomorphism and separates reduced sums.
struct RhoVector {
  Ambient ambient;
  int n = 1;
  std::map<uint32_t, ExtNat> comps;

  friend bool operator==(const RhoVector& a, const RhoVector& b) {
    return a.ambient == b.ambient && a.n == b.n && a.comps == b.comps;
  }
  friend bool operator!=(const RhoVector& a, const RhoVector& b) { return !(a == b); }

  std::string str() const {
    std::string s = "(";
    bool first = true;
    for (const auto& [mask, v] : comps) {
      if (!first) s += ", ";
      s += subset_str(mask) + ":" + v.str();
      first = false;
    }
    return s + ")";
  }
};

inline RhoVector rho(const StandardSum& s) {
  RhoVector out;
  out.ambient = s.ambient();
  out.n = s.n();
  uint32_t first = s.ambient() == Ambient::Toeplitz ? 0 : 1;
  for (uint32_t a = first; a < (1u << s.n()); ++a) {
    ExtNat v(0);
    for (auto [mask, l] : s.weights()) {
      if (mask == a) v += ExtNat((unsigned long long)l);
      else if (subset_strictly_below(a, mask)) v = ExtNat::inf();
    }
    out.comps[a] = v;
  }
  return out;
}

inline bool equivalent(const StandardSum& s, const StandardSum& t) {
  StandardSum::check_same(s, t);
  if (s.ambient() == Ambient::CPn) return s.weights() == t.weights();
  return reduce(s).weights() == reduce(t).weights();
}

// Block-diagonal matrix of indicator boxes realizing the sum; the zero sum
// realizes as a 1x1 zero block.
inline AlgMatrix realize(const StandardSum& s, long long max_blocks = 4096) {
  long long total = 0;
  for (auto [mask, l] : s.weights()) total += l;
  if (total > max_blocks) throw std::domain_error("realize: too many blocks to materialize");
  AlgMatrix out = AlgMatrix::zero(1, 1, s.n());
  bool started = false;
  for (auto [mask, l] : s.weights()) {
    AlgMatrix blk = gadgets::standard_proj(s.n(), mask, l);
    out = started ? dsum(out, blk) : blk;
    started = true;
  }
  return out;
}

// Operator rank of the restriction that pins the coordinates of `mask` at
// infinity, evaluated at the torus point 1 (idempotent ranks over the torus
// are locally constant, so one point decides).
inline ExtNat sigma_rank(const AlgMatrix& p, uint32_t mask) {
  std::vector<int> pinned = subset_elements(mask);
  TraceAccumulator t;
  for (int i = 0; i < p.rows(); ++i)
    t.add(p.at(i, i).restrict_sigma(pinned).evaluate_at_one());
  return t.rank();
}

inline RhoVector rho_of_realization(const AlgMatrix& p, Ambient ambient, int n) {
  RhoVector out;
  out.ambient = ambient;
  out.n = n;
  uint32_t first = ambient == Ambient::Toeplitz ? 0 : 1;
  for (uint32_t a = first; a < (1u << n); ++a) out.comps[a] = sigma_rank(p, a);
  return out;
}

// ---- ambient-1 classification -------------------------------------------------

// Equivalence class of an idempotent over the one-variable algebra: symbol
// rank m with the finite rank l when m = 0, infinite otherwise.
struct ClassN1 {
  long long symbol_rank = 0;
  ExtNat rank;  // (0, l) or (m, infinity)

  friend bool operator==(const ClassN1& a, const ClassN1& b) {
    return a.symbol_rank == b.symbol_rank && a.rank == b.rank;
  }
  std::string str() const {
    return "(" + std::to_string(symbol_rank) + "," + rank.str() + ")";
  }
};

inline ClassN1 classify_n1(const AlgMatrix& p) {
  if (p.ambient() != 1) throw std::invalid_argument("classify_n1: ambient must be 1");
  if (!is_idempotent(p, EqMode::Exact)) throw std::invalid_argument("classify_n1: not idempotent");

  // Symbol at the torus point 1, as an exact scalar matrix.
  DenseMatrix sym = dense_zero(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      AlgebraElement res = p.at(i, j).restrict_sigma({1}).evaluate_at_one();
      for (const auto& comp : res.components())
        for (const auto& [c, box] : comp.parts) sym[i][j] += c;  // 0-dim boxes
    }
  long long m = dense_rank(sym);
  if (m > 0) return ClassN1{m, ExtNat::inf()};

  TraceAccumulator t;
  for (int i = 0; i < p.rows(); ++i) t.add(p.at(i, i));
  return ClassN1{0, t.rank()};
}

// Every idempotent class of rank at or above this threshold is free.
inline long long free_rank_threshold(Ambient, int n) {
  if (n < 1) throw std::invalid_argument("free_rank_threshold: need n >= 1");
  return (n - 1) / 2 + 3;
}

// ---- absorption witnesses ------------------------------------------------------

namespace detail {

// Witness on two positions of a larger identity: carries
//   diag(..., X at pa, X' at pb, ...) to diag(..., X at pa, 0 at pb, ...)
// where X and X' agree except that coordinate `slot` is full in X and
// rank-one in X'.  It is the adjoint of the absorption unitary, embedded.
inline Invertible absorb_step(int n, int slot, int size, int pa, int pb) {
  AlgMatrix u = gadgets::absorb_unitary(n, slot);
  AlgMatrix fwd = AlgMatrix::identity(size, n);
  AlgMatrix inv = AlgMatrix::identity(size, n);
  AlgMatrix us = mat_adjoint(u);
  int pos[2] = {pa, pb};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      fwd.at(pos[i], pos[j]) = us.at(i, j);
      inv.at(pos[i], pos[j]) = u.at(i, j);
    }
  return Invertible{fwd, inv};
}

}  // namespace detail

// Explicit invertible carrying realize({A:la, A':lb}) (+) scratch zeros to
// realize({A:la}) (+) zeros, for A' strictly below A.  Built as a product of
// two-position absorption steps: each copy of the lower block is pulled up a
// chain of intermediate subsets and absorbed, then block order is restored.
struct AbsorptionWitness {
  Invertible witness;
  AlgMatrix before;  // realize({A:la, A':lb}) padded
  AlgMatrix after;   // realize({A:la}) padded
};

inline AbsorptionWitness absorption_witness(int n, uint32_t maskA, long long la, uint32_t maskB,
                                            long long lb) {
  if (!subset_strictly_below(maskB, maskA))
    throw std::invalid_argument("absorption_witness: second index must lie strictly below the first");
  if (la < 1 || lb < 1) throw std::invalid_argument("absorption_witness: weights must be positive");

  // Chain of subsets from A down to A', dropping one coordinate at a time.
  std::vector<int> dropped = subset_elements(maskA & ~maskB);
  int t = (int)dropped.size();

  // Layout of realize({A:la, A':lb}): blocks in ascending mask order, so the
  // lb copies of the lower token come first, then the la anchor copies.
  int body = (int)(la + lb);
  int size = body + (t - 1);  // scratch zeros for the intermediate subsets
  int anchor = (int)lb;

  Invertible total = Invertible::identity(size, n);
  auto apply = [&](const Invertible& step) { total = step * total; };

  for (int copy = 0; copy < lb; ++copy) {
    // Expand the anchor down the chain: scratch i holds the subset missing
    // dropped[0..i] (1-based), produced by the inverse of an absorb step.
    std::vector<int> pos{anchor};
    for (int i = 0; i + 1 < t; ++i) {
      int scratch = body + i;
      Invertible step = detail::absorb_step(n, dropped[i], size, pos.back(), scratch);
      apply(Invertible{step.inv, step.fwd});  // inverse: expansion
      pos.push_back(scratch);
    }
    // Absorb this copy of the lower token into the deepest chain block.
    apply(detail::absorb_step(n, dropped[t - 1], size, pos.back(), copy));
    // Collapse the chain back up.
    for (int i = t - 2; i >= 0; --i)
      apply(detail::absorb_step(n, dropped[i], size, pos[i], pos[i + 1]));
  }

  // Restore block order: the surviving anchor copies move to the front.
  AlgMatrix perm = AlgMatrix::zero(size, size, n);
  AlgebraElement one = AlgebraElement::identity(n);
  for (int i = 0; i < (int)la; ++i) perm.at(i, anchor + i) = one;
  for (int i = 0; i < (int)lb; ++i) perm.at((int)la + i, i) = one;
  for (int i = body; i < size; ++i) perm.at(i, i) = one;
  apply(Invertible{perm, mat_adjoint(perm)});

  StandardSum both(Ambient::Toeplitz, n), target(Ambient::Toeplitz, n);
  both.add(maskA, la);
  both.add(maskB, lb);
  target.add(maskA, la);
  return AbsorptionWitness{total, realize(both).pad_zero(size), realize(target).pad_zero(size)};
}

inline bool certify_absorption(int n, uint32_t maskA, long long la, uint32_t maskB, long long lb) {
  AbsorptionWitness w = absorption_witness(n, maskA, la, maskB, lb);
  return verify_equivalence(w.before, w.after, w.witness, EqMode::Exact);
}

}  // namespace qps
