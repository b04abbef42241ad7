#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qps/element.hpp"

namespace qps {

// Which equality governs a predicate: on the nose in the Toeplitz cube, or in
// the quantum-sphere quotient (modulo the compact ideal).
enum class EqMode { Exact, ModCompactIdeal };

inline bool elem_equal(const AlgebraElement& a, const AlgebraElement& b, EqMode mode) {
  return mode == EqMode::Exact ? a == b : quotient_equal(a, b);
}

// Dense rectangular matrix over the convolution algebra.  Everything the
// equivalence bookkeeping needs: ring operations, diagonal concatenation,
// adjoints, the idempotent/unitary predicates, and conjugation with padding
// conventions matching the usual nested-matrix-algebra identifications
// (idempotents pad by 0 blocks, invertibles by identity blocks).
class AlgMatrix {
 public:
  AlgMatrix(int rows, int cols, int ambient)
      : rows_(rows), cols_(cols), n_(ambient) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("AlgMatrix: nonpositive shape");
    if ((long long)rows * cols > (1 << 22)) throw std::invalid_argument("AlgMatrix: shape too large");
    e_.assign((size_t)rows * cols, AlgebraElement::zero(ambient));
  }

  static AlgMatrix scalar(const AlgebraElement& a) {
    AlgMatrix m(1, 1, a.ambient());
    m.at(0, 0) = a;
    return m;
  }

  static AlgMatrix identity(int size, int ambient) {
    AlgMatrix m(size, size, ambient);
    for (int i = 0; i < size; ++i) m.at(i, i) = AlgebraElement::identity(ambient);
    return m;
  }

  static AlgMatrix zero(int rows, int cols, int ambient) { return AlgMatrix(rows, cols, ambient); }

  static AlgMatrix diag(const std::vector<AlgebraElement>& d) {
    if (d.empty()) throw std::invalid_argument("AlgMatrix: empty diagonal");
    AlgMatrix m((int)d.size(), (int)d.size(), d[0].ambient());
    for (size_t i = 0; i < d.size(); ++i) m.at((int)i, (int)i) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int ambient() const { return n_; }

  AlgebraElement& at(int r, int c) { return e_[r * cols_ + c]; }
  const AlgebraElement& at(int r, int c) const { return e_[r * cols_ + c]; }

  friend AlgMatrix mat_add(const AlgMatrix& a, const AlgMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("mat_add: shape mismatch");
    AlgMatrix r(a.rows_, a.cols_, a.n_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }

  friend AlgMatrix mat_sub(const AlgMatrix& a, const AlgMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("mat_sub: shape mismatch");
    AlgMatrix r(a.rows_, a.cols_, a.n_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }

  friend AlgMatrix mat_mul(const AlgMatrix& a, const AlgMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("mat_mul: shape mismatch");
    AlgMatrix r(a.rows_, b.cols_, a.n_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        AlgebraElement acc = AlgebraElement::zero(a.n_);
        for (int k = 0; k < a.cols_; ++k) acc = acc + convolve(a.at(i, k), b.at(k, j));
        r.at(i, j) = std::move(acc);
      }
    return r;
  }

  friend AlgMatrix mat_adjoint(const AlgMatrix& a) {
    AlgMatrix r(a.cols_, a.rows_, a.n_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) r.at(j, i) = a.at(i, j).adjoint();
    return r;
  }

  // Diagonal concatenation.
  friend AlgMatrix dsum(const AlgMatrix& a, const AlgMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("dsum: ambient mismatch");
    AlgMatrix r(a.rows_ + b.rows_, a.cols_ + b.cols_, a.n_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) r.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
    return r;
  }

  friend AlgMatrix dsum_pow(const AlgMatrix& a, int copies) {
    if (copies < 1) throw std::invalid_argument("dsum_pow: need at least one copy");
    AlgMatrix r = a;
    for (int i = 1; i < copies; ++i) r = dsum(r, a);
    return r;
  }

  // x |-> x (+) 0  : idempotent-style padding to a larger square size.
  AlgMatrix pad_zero(int size) const {
    if (size < rows_ || size < cols_) throw std::invalid_argument("pad_zero: shrinking");
    AlgMatrix r(size, size, n_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    return r;
  }

  // x |-> x (+) 1  : invertible-style padding to a larger square size.
  AlgMatrix pad_identity(int size) const {
    if (rows_ != cols_) throw std::invalid_argument("pad_identity: not square");
    if (size < rows_) throw std::invalid_argument("pad_identity: shrinking");
    AlgMatrix r = pad_zero(size);
    for (int i = rows_; i < size; ++i) r.at(i, i) = AlgebraElement::identity(n_);
    return r;
  }

  friend bool mat_equal(const AlgMatrix& a, const AlgMatrix& b, EqMode mode) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.n_ != b.n_) return false;
    for (size_t i = 0; i < a.e_.size(); ++i)
      if (!elem_equal(a.e_[i], b.e_[i], mode)) return false;
    return true;
  }
  friend bool operator==(const AlgMatrix& a, const AlgMatrix& b) {
    return mat_equal(a, b, EqMode::Exact);
  }
  friend bool operator!=(const AlgMatrix& a, const AlgMatrix& b) { return !(a == b); }

  bool is_square() const { return rows_ == cols_; }

  std::string str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      s += "[ ";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += " | ";
        s += at(i, j).str();
      }
      s += " ]\n";
    }
    return s;
  }

 private:
  int rows_, cols_, n_;
  std::vector<AlgebraElement> e_;
};

inline bool is_idempotent(const AlgMatrix& a, EqMode mode = EqMode::Exact) {
  if (!a.is_square()) return false;
  return mat_equal(mat_mul(a, a), a, mode);
}

inline bool is_self_adjoint(const AlgMatrix& a, EqMode mode = EqMode::Exact) {
  if (!a.is_square()) return false;
  return mat_equal(mat_adjoint(a), a, mode);
}

inline bool is_projection(const AlgMatrix& a, EqMode mode = EqMode::Exact) {
  return is_idempotent(a, mode) && is_self_adjoint(a, mode);
}

inline bool is_unitary(const AlgMatrix& a, EqMode mode = EqMode::Exact) {
  if (!a.is_square()) return false;
  AlgMatrix id = AlgMatrix::identity(a.rows(), a.ambient());
  AlgMatrix s = mat_adjoint(a);
  return mat_equal(mat_mul(a, s), id, mode) && mat_equal(mat_mul(s, a), id, mode);
}

inline bool is_partial_isometry(const AlgMatrix& a, EqMode mode = EqMode::Exact) {
  AlgMatrix s = mat_adjoint(a);
  return mat_equal(mat_mul(mat_mul(a, s), a), a, mode);
}

// Invertibility is certified only by an explicit two-sided inverse; there is
// no general inverse algorithm over this ring, and every gadget supplies one
// (the adjoint, for unitaries).
struct Invertible {
  AlgMatrix fwd;
  AlgMatrix inv;

  static Invertible from_unitary(const AlgMatrix& u, EqMode mode = EqMode::Exact) {
    Invertible w{u, mat_adjoint(u)};
    if (!w.certify(mode)) throw std::invalid_argument("Invertible: matrix is not unitary");
    return w;
  }

  static Invertible identity(int size, int ambient) {
    AlgMatrix id = AlgMatrix::identity(size, ambient);
    return Invertible{id, id};
  }

  bool certify(EqMode mode) const {
    if (!fwd.is_square() || fwd.rows() != inv.rows() || fwd.cols() != inv.cols()) return false;
    AlgMatrix id = AlgMatrix::identity(fwd.rows(), fwd.ambient());
    return mat_equal(mat_mul(fwd, inv), id, mode) && mat_equal(mat_mul(inv, fwd), id, mode);
  }

  // Padded copy: invertibles grow by identity blocks.
  Invertible pad(int size) const { return Invertible{fwd.pad_identity(size), inv.pad_identity(size)}; }

  friend Invertible operator*(const Invertible& a, const Invertible& b) {
    int size = std::max(a.fwd.rows(), b.fwd.rows());
    Invertible ap = a.fwd.rows() < size ? a.pad(size) : a;
    Invertible bp = b.fwd.rows() < size ? b.pad(size) : b;
    return Invertible{mat_mul(ap.fwd, bp.fwd), mat_mul(bp.inv, ap.inv)};
  }
};

// u p u^{-1}, aligning sizes first (p pads by zeros, u by identity).
inline AlgMatrix conjugate(const Invertible& u, const AlgMatrix& p, EqMode mode = EqMode::Exact) {
  if (!u.certify(mode)) throw std::invalid_argument("conjugate: witness is not invertible");
  int size = std::max(u.fwd.rows(), std::max(p.rows(), p.cols()));
  AlgMatrix pp = (p.rows() < size || p.cols() < size) ? p.pad_zero(size) : p;
  Invertible uu = u.fwd.rows() < size ? u.pad(size) : u;
  return mat_mul(mat_mul(uu.fwd, pp), uu.inv);
}

inline AlgMatrix conjugate_unitary(const AlgMatrix& u, const AlgMatrix& p,
                                   EqMode mode = EqMode::Exact) {
  return conjugate(Invertible::from_unitary(u, mode), p, mode);
}

// Does the witness carry p to q?  Sizes are aligned by padding (idempotents
// with 0, the witness with identity blocks).
inline bool verify_equivalence(const AlgMatrix& p, const AlgMatrix& q, const Invertible& witness,
                               EqMode mode = EqMode::Exact) {
  if (!witness.certify(mode)) return false;
  int size = std::max({p.rows(), q.rows(), witness.fwd.rows()});
  AlgMatrix pp = p.rows() < size ? p.pad_zero(size) : p;
  AlgMatrix qq = q.rows() < size ? q.pad_zero(size) : q;
  Invertible w = witness.fwd.rows() < size ? witness.pad(size) : witness;
  return mat_equal(mat_mul(mat_mul(w.fwd, pp), w.inv), qq, mode);
}

// Rank (= trace) of a projection matrix; the degree-zero diagonal carries it.
inline ExtNat rank_of_projection(const AlgMatrix& p, EqMode mode = EqMode::Exact) {
  if (!is_projection(p, mode)) throw std::invalid_argument("rank_of_projection: not a projection");
  TraceAccumulator t;
  for (int i = 0; i < p.rows(); ++i) t.add(p.at(i, i));
  return t.rank();
}

// Trace of the degree-zero diagonal without any projection check (callers
// that have already certified idempotence use this).
inline ExtNat diagonal_rank(const AlgMatrix& p) {
  TraceAccumulator t;
  for (int i = 0; i < p.rows(); ++i) t.add(p.at(i, i));
  return t.rank();
}

}  // namespace qps
