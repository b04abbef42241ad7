#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qps {

// Exact rational arithmetic on 64-bit numerator/denominator.  All coefficient
// arithmetic in this library stays tiny (products of small integers), but
// intermediates go through 128 bits and overflow is detected rather than
// silently wrapped.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(-num_, den_, already_normal{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  struct already_normal {};
  Rational(long long n, long long d, already_normal) : num_(n), den_(d) {}

  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rational: 64-bit overflow");
    return Rational((long long)n, (long long)d, already_normal{});
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  long long num_, den_;
};

// Gaussian rational a + b*i: the coefficient field of the convolution algebra.
struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(long long n) : re(n), im(0) {}
  GaussianRational(Rational r) : re(r), im(0) {}
  GaussianRational(Rational r, Rational i) : re(r), im(i) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  GaussianRational conj() const { return {re, -im}; }
  GaussianRational operator-() const { return {-re, -im}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  // Not a field order, just a deterministic total order for canonical forms.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  std::string str() const {
    if (im.is_zero()) return re.str();
    if (re.is_zero()) return im.str() + "i";
    return re.str() + (im < Rational(0) ? "" : "+") + im.str() + "i";
  }
};

inline GaussianRational gdiv(const GaussianRational& a, const GaussianRational& b) {
  Rational n2 = b.re * b.re + b.im * b.im;
  if (n2.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  GaussianRational num = a * b.conj();
  return {num.re / n2, num.im / n2};
}

}  // namespace qps
