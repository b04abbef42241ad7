#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qps {

// Minimal arbitrary-precision unsigned integer: just what exact combinatorics
// needs (addition, small-word multiply/divide, comparison, printing).
class BigUint {
 public:
  BigUint() {}
  BigUint(unsigned long long v) {
    while (v) { d_.push_back((uint32_t)(v % kBase)); v /= kBase; }
  }

  bool is_zero() const { return d_.empty(); }

  friend BigUint operator+(const BigUint& a, const BigUint& b) {
    BigUint r;
    uint64_t carry = 0;
    size_t n = std::max(a.d_.size(), b.d_.size());
    r.d_.reserve(n + 1);
    for (size_t i = 0; i < n || carry; ++i) {
      uint64_t s = carry;
      if (i < a.d_.size()) s += a.d_[i];
      if (i < b.d_.size()) s += b.d_[i];
      r.d_.push_back((uint32_t)(s % kBase));
      carry = s / kBase;
    }
    return r;
  }
  BigUint& operator+=(const BigUint& o) { return *this = *this + o; }

  friend BigUint operator*(const BigUint& a, uint64_t m) {
    if (m == 0 || a.is_zero()) return BigUint();
    BigUint r;
    r.d_.reserve(a.d_.size() + 3);
    uint64_t carry = 0;
    for (uint32_t w : a.d_) {
      // m can be up to ~2^34 before w*m risks overflow; combinatorial factors
      // here are far below that.
      if (m >= (1ull << 34)) throw std::overflow_error("BigUint: multiplier too large");
      uint64_t s = (uint64_t)w * m + carry;
      r.d_.push_back((uint32_t)(s % kBase));
      carry = s / kBase;
    }
    while (carry) { r.d_.push_back((uint32_t)(carry % kBase)); carry /= kBase; }
    return r;
  }

  // Exact division by a small divisor; throws if a remainder is left.
  friend BigUint divexact(const BigUint& a, uint64_t dvsr) {
    if (dvsr == 0) throw std::domain_error("BigUint: divide by zero");
    BigUint r;
    r.d_.assign(a.d_.size(), 0);
    uint64_t rem = 0;
    for (size_t i = a.d_.size(); i-- > 0;) {
      uint64_t cur = rem * kBase + a.d_[i];
      r.d_[i] = (uint32_t)(cur / dvsr);
      rem = cur % dvsr;
    }
    if (rem != 0) throw std::logic_error("BigUint: division not exact");
    r.trim();
    return r;
  }

  friend bool operator==(const BigUint& a, const BigUint& b) { return a.d_ == b.d_; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return !(a == b); }
  friend bool operator<(const BigUint& a, const BigUint& b) {
    if (a.d_.size() != b.d_.size()) return a.d_.size() < b.d_.size();
    for (size_t i = a.d_.size(); i-- > 0;)
      if (a.d_[i] != b.d_[i]) return a.d_[i] < b.d_[i];
    return false;
  }

  bool fits_u64() const {
    if (d_.size() > 3) return false;
    unsigned __int128 v = 0;
    for (size_t i = d_.size(); i-- > 0;) v = v * kBase + d_[i];
    return v <= (unsigned __int128)UINT64_MAX;
  }
  unsigned long long to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint: does not fit in 64 bits");
    unsigned long long v = 0;
    for (size_t i = d_.size(); i-- > 0;) v = v * kBase + d_[i];
    return v;
  }

  std::string str() const {
    if (d_.empty()) return "0";
    std::string s = std::to_string(d_.back());
    for (size_t i = d_.size() - 1; i-- > 0;) {
      std::string w = std::to_string(d_[i]);
      s += std::string(9 - w.size(), '0') + w;
    }
    return s;
  }

 private:
  static constexpr uint64_t kBase = 1000000000ull;
  void trim() { while (!d_.empty() && d_.back() == 0) d_.pop_back(); }
  std::vector<uint32_t> d_;  // little-endian base-1e9 digits, no leading zeros
};

// Exact binomial coefficient C(n, k) via the stepwise-exact product formula.
inline BigUint binomial_big(unsigned long long n, unsigned long long k) {
  if (k > n) return BigUint();
  if (k > n - k) k = n - k;
  BigUint r(1);
  for (unsigned long long i = 1; i <= k; ++i) r = divexact(r * (n - k + i), i);
  return r;
}

}  // namespace qps
