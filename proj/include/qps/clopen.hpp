#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qps/extnat.hpp"

namespace qps {

// A compact-open subset of the one-point compactification of Z>=.  Such a set
// is either a finite set of nonnegative integers, or contains the point at
// infinity together with a full tail [t, oo).  Canonical form: every finite
// element lies below the tail start, and the tail start is minimal (t = 0 or
// t-1 is not a listed finite element).  Equality of canonical forms is set
// equality.
class ClopenSet {
 public:
  ClopenSet() {}
  ClopenSet(std::vector<long long> finite, std::optional<long long> tail = std::nullopt)
      : finite_(std::move(finite)), tail_(tail) {
    normalize();
  }

  static ClopenSet empty() { return ClopenSet(); }
  static ClopenSet full() { return ClopenSet({}, 0); }                   // all of Z>= and oo
  static ClopenSet tail_from(long long t) { return ClopenSet({}, t); }   // [t, oo]
  static ClopenSet points(std::vector<long long> xs) { return ClopenSet(std::move(xs)); }
  static ClopenSet range(long long lo, long long hi) {  // {lo, ..., hi-1}
    std::vector<long long> xs;
    for (long long x = lo; x < hi; ++x) xs.push_back(x);
    return ClopenSet(std::move(xs));
  }

  bool is_empty() const { return finite_.empty() && !tail_; }
  bool has_tail() const { return tail_.has_value(); }
  long long tail_start() const { return *tail_; }
  const std::vector<long long>& finite_part() const { return finite_; }

  bool contains(long long x) const {
    if (x < 0) return false;
    if (tail_ && x >= *tail_) return true;
    return std::binary_search(finite_.begin(), finite_.end(), x);
  }
  bool contains_infinity() const { return tail_.has_value(); }

  ExtNat cardinality() const {
    if (tail_) return ExtNat::inf();
    return ExtNat(finite_.size());
  }

  // Least point of a nonempty set (the tail start when no finite part).
  long long min_point() const {
    if (!finite_.empty()) return finite_.front();
    return *tail_;
  }

  friend ClopenSet set_union(const ClopenSet& a, const ClopenSet& b) {
    std::vector<long long> xs = a.finite_;
    xs.insert(xs.end(), b.finite_.begin(), b.finite_.end());
    std::optional<long long> t;
    if (a.tail_ && b.tail_) t = std::min(*a.tail_, *b.tail_);
    else if (a.tail_) t = a.tail_;
    else if (b.tail_) t = b.tail_;
    // Finite points of one operand below the other's tail are absorbed by
    // normalize(); points above a tail are dropped there too.
    return ClopenSet(std::move(xs), t);
  }

  friend ClopenSet set_intersect(const ClopenSet& a, const ClopenSet& b) {
    std::vector<long long> xs;
    for (long long x : a.finite_)
      if (b.contains(x)) xs.push_back(x);
    for (long long x : b.finite_)
      if (a.contains(x)) xs.push_back(x);
    std::optional<long long> t;
    if (a.tail_ && b.tail_) t = std::max(*a.tail_, *b.tail_);
    return ClopenSet(std::move(xs), t);
  }

  friend ClopenSet set_subtract(const ClopenSet& a, const ClopenSet& b) {
    std::vector<long long> xs;
    for (long long x : a.finite_)
      if (!b.contains(x)) xs.push_back(x);
    std::optional<long long> t;
    if (a.tail_) {
      if (!b.tail_) {
        // a keeps its tail; carve the finitely many removed points out of it.
        long long cut = *a.tail_;
        for (long long x : b.finite_)
          if (x >= cut) cut = x + 1;
        for (long long x = *a.tail_; x < cut; ++x)
          if (!b.contains(x)) xs.push_back(x);
        t = cut;
      } else {
        // both tails: survivors of a's tail below b's tail
        for (long long x = *a.tail_; x < *b.tail_; ++x)
          if (!b.contains(x)) xs.push_back(x);
      }
    }
    return ClopenSet(std::move(xs), t);
  }

  // Preimage {x : x + m in this} under translation by m, with oo fixed.
  ClopenSet shift_pre(long long m) const {
    std::vector<long long> xs;
    for (long long f : finite_)
      if (f - m >= 0) xs.push_back(f - m);
    std::optional<long long> t;
    if (tail_) t = std::max(0ll, *tail_ - m);
    return ClopenSet(std::move(xs), t);
  }

  // Image {x + m : x in this, x + m >= 0}, with oo fixed.
  ClopenSet translate(long long m) const {
    std::vector<long long> xs;
    for (long long f : finite_)
      if (f + m >= 0) xs.push_back(f + m);
    std::optional<long long> t;
    if (tail_) t = std::max(0ll, *tail_ + m);
    return ClopenSet(std::move(xs), t);
  }

  friend bool operator==(const ClopenSet& a, const ClopenSet& b) {
    return a.tail_ == b.tail_ && a.finite_ == b.finite_;
  }
  friend bool operator!=(const ClopenSet& a, const ClopenSet& b) { return !(a == b); }
  friend bool operator<(const ClopenSet& a, const ClopenSet& b) {
    if (a.tail_.has_value() != b.tail_.has_value()) return b.tail_.has_value();
    if (a.tail_ && *a.tail_ != *b.tail_) return *a.tail_ < *b.tail_;
    return a.finite_ < b.finite_;
  }

  // First integer from which membership is constant (everything at or above
  // is in the tail, or out of the set).
  long long settle_bound() const {
    long long b = tail_ ? *tail_ : 0;
    if (!finite_.empty()) b = std::max(b, finite_.back() + 1);
    return b;
  }

  std::string str() const {
    if (is_empty()) return "∅";
    std::string s;
    if (!finite_.empty()) {
      s += "{";
      for (size_t i = 0; i < finite_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(finite_[i]);
      }
      s += "}";
    }
    if (tail_) {
      if (!s.empty()) s += "∪";
      s += "[" + std::to_string(*tail_) + ",∞]";
    }
    return s;
  }

 private:
  void normalize() {
    std::sort(finite_.begin(), finite_.end());
    finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
    if (!finite_.empty() && finite_.front() < 0)
      throw std::domain_error("ClopenSet: negative element");
    if (tail_) {
      if (*tail_ < 0) tail_ = 0;
      while (!finite_.empty() && finite_.back() >= *tail_) finite_.pop_back();
      while (*tail_ > 0 && !finite_.empty() && finite_.back() == *tail_ - 1) {
        finite_.pop_back();
        --*tail_;
      }
      if (*tail_ == 0) finite_.clear();
    }
  }

  std::vector<long long> finite_;  // sorted, all strictly below the tail start
  std::optional<long long> tail_;  // when set: [tail_, oo) and the point oo
};

}  // namespace qps
