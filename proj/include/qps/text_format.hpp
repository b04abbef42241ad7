#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "qps/standard_sums.hpp"

namespace qps {

// Parses the human syntax for standard sums: weighted subset tokens joined by
// '+', e.g. "2*{1,2} + 1*{1}".  Whitespace-insensitive; a bare "{...}" token
// means weight 1; "{}" is the empty index.
inline StandardSum parse_sum(const std::string& text, Ambient ambient, int n) {
  StandardSum sum(ambient, n);
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
  auto parse_int = [&]() -> long long {
    skip_ws();
    size_t start = i;
    while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
    if (i == start) throw std::invalid_argument("sum: expected a number at position " + std::to_string(start));
    return std::stoll(text.substr(start, i - start));
  };

  skip_ws();
  if (i == text.size() || text.compare(i, 1, "0") == 0) {
    if (i < text.size()) ++i;
    skip_ws();
    if (i != text.size()) throw std::invalid_argument("sum: trailing input after 0");
    return sum;  // the empty sum
  }

  bool expect_token = true;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (!expect_token) {
      if (text[i] != '+') throw std::invalid_argument("sum: expected '+' between tokens");
      ++i;
      expect_token = true;
      continue;
    }
    long long weight = 1;
    skip_ws();
    if (i < text.size() && std::isdigit((unsigned char)text[i])) {
      weight = parse_int();
      skip_ws();
      if (i >= text.size() || text[i] != '*')
        throw std::invalid_argument("sum: expected '*' after weight");
      ++i;
    }
    skip_ws();
    if (i >= text.size() || text[i] != '{') throw std::invalid_argument("sum: expected '{'");
    ++i;
    uint32_t mask = 0;
    skip_ws();
    if (i < text.size() && text[i] != '}') {
      while (true) {
        long long e = parse_int();
        if (e < 1 || e > n) throw std::invalid_argument("sum: coordinate out of range");
        mask |= 1u << (e - 1);
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        break;
      }
    }
    skip_ws();
    if (i >= text.size() || text[i] != '}') throw std::invalid_argument("sum: expected '}'");
    ++i;
    sum.add(mask, weight);
    expect_token = false;
  }
  if (expect_token) throw std::invalid_argument("sum: dangling '+'");
  return sum;
}

inline Ambient parse_ambient(const std::string& s) {
  if (s == "toeplitz") return Ambient::Toeplitz;
  if (s == "sphere") return Ambient::Sphere;
  if (s == "cpn") return Ambient::CPn;
  throw std::invalid_argument("unknown ambient '" + s + "' (expected toeplitz|sphere|cpn)");
}

}  // namespace qps
