#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qps {

// Element of Z>= together with the absorbing point at infinity.
struct ExtNat {
  bool infinite = false;
  unsigned long long value = 0;

  ExtNat() = default;
  ExtNat(unsigned long long v) : infinite(false), value(v) {}
  static ExtNat inf() {
    ExtNat e;
    e.infinite = true;
    return e;
  }

  bool is_finite() const { return !infinite; }
  unsigned long long finite() const {
    if (infinite) throw std::domain_error("ExtNat: value is infinite");
    return value;
  }

  friend ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.infinite || b.infinite) return inf();
    return ExtNat(a.value + b.value);
  }
  ExtNat& operator+=(ExtNat o) { return *this = *this + o; }
  friend ExtNat operator*(ExtNat a, ExtNat b) {
    if ((a.infinite && (b.infinite || b.value > 0)) || (b.infinite && a.value > 0)) return inf();
    if (a.infinite || b.infinite) return ExtNat(0);  // inf * 0 = 0 (empty product of sets)
    return ExtNat(a.value * b.value);
  }

  friend bool operator==(ExtNat a, ExtNat b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator!=(ExtNat a, ExtNat b) { return !(a == b); }
  friend bool operator<(ExtNat a, ExtNat b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }

  std::string str() const { return infinite ? "∞" : std::to_string(value); }
};

}  // namespace qps
