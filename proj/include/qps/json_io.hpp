#pragma once

#include <json.hpp>

#include "qps/check.hpp"
#include "qps/line_bundles.hpp"
#include "qps/text_format.hpp"

namespace qps {

using nlohmann::json;

// ---- coordinate sets and boxes ----------------------------------------------

inline json to_json(const ClopenSet& s) {
  json j;
  j["finite"] = s.finite_part();
  if (s.has_tail()) j["tail"] = s.tail_start();
  else j["tail"] = nullptr;
  return j;
}

inline ClopenSet clopen_from_json(const json& j) {
  std::vector<long long> finite = j.at("finite").get<std::vector<long long>>();
  std::optional<long long> tail;
  if (!j.at("tail").is_null()) tail = j.at("tail").get<long long>();
  return ClopenSet(std::move(finite), tail);
}

inline json to_json(const Box& b) {
  json j = json::array();
  for (const auto& s : b) j.push_back(to_json(s));
  return j;
}

inline Box box_from_json(const json& j) {
  Box b;
  for (const auto& s : j) b.push_back(clopen_from_json(s));
  return b;
}

// ---- algebra elements and matrices -------------------------------------------

inline json to_json(const GaussianRational& c) {
  return json::array({c.re.num(), c.re.den(), c.im.num(), c.im.den()});
}

inline GaussianRational coeff_from_json(const json& j) {
  return GaussianRational(Rational(j.at(0).get<long long>(), j.at(1).get<long long>()),
                          Rational(j.at(2).get<long long>(), j.at(3).get<long long>()));
}

inline json to_json(const AlgebraElement& e) {
  json terms = json::array();
  for (const auto& comp : e.components()) {
    // One serialized term per coefficient value, in order of first appearance
    // in the canonical part list.
    std::vector<std::pair<GaussianRational, json>> grouped;
    for (const auto& [c, box] : comp.parts) {
      bool found = false;
      for (auto& [gc, boxes] : grouped)
        if (gc == c) {
          boxes.push_back(to_json(box));
          found = true;
        }
      if (!found) grouped.emplace_back(c, json::array({to_json(box)}));
    }
    for (auto& [c, boxes] : grouped) {
      json t;
      t["c"] = to_json(c);
      t["m"] = comp.shift;
      t["boxes"] = std::move(boxes);
      terms.push_back(std::move(t));
    }
  }
  json j;
  j["n"] = e.ambient();
  j["terms"] = std::move(terms);
  return j;
}

inline AlgebraElement element_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::vector<RawTerm> terms;
  for (const auto& t : j.at("terms")) {
    GaussianRational c = coeff_from_json(t.at("c"));
    std::vector<long long> m = t.at("m").get<std::vector<long long>>();
    for (const auto& b : t.at("boxes")) terms.push_back(RawTerm{c, m, box_from_json(b)});
  }
  return AlgebraElement::from_terms(n, std::move(terms));
}

inline json to_json(const AlgMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(to_json(a.at(i, j)));
    rows.push_back(std::move(row));
  }
  json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  j["n"] = a.ambient();
  j["entries"] = std::move(rows);
  return j;
}

inline AlgMatrix matrix_from_json(const json& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  int n = j.at("n").get<int>();
  AlgMatrix m(rows, cols, n);
  const json& entries = j.at("entries");
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) {
      AlgebraElement e = element_from_json(entries.at(i).at(c));
      if (e.ambient() != n) throw std::invalid_argument("matrix: entry ambient mismatch");
      m.at(i, c) = std::move(e);
    }
  return m;
}

// ---- sums, rank vectors, classes ----------------------------------------------

inline json to_json(const StandardSum& s) {
  json tokens = json::array();
  for (auto [mask, l] : s.weights()) {
    json t;
    t["A"] = subset_elements(mask);
    t["l"] = l;
    tokens.push_back(std::move(t));
  }
  json j;
  j["ambient"] = ambient_name(s.ambient());
  j["n"] = s.n();
  j["tokens"] = std::move(tokens);
  return j;
}

inline StandardSum sum_from_json(const json& j) {
  StandardSum s(parse_ambient(j.at("ambient").get<std::string>()), j.at("n").get<int>());
  for (const auto& t : j.at("tokens")) {
    uint32_t mask = 0;
    for (long long e : t.at("A").get<std::vector<long long>>()) {
      if (e < 1 || e > s.n()) throw std::invalid_argument("sum: coordinate out of range");
      mask |= 1u << (e - 1);
    }
    s.add(mask, t.at("l").get<long long>());
  }
  return s;
}

inline json to_json(const ExtNat& v) {
  if (v.infinite) return json("inf");
  return json(v.value);
}

inline json to_json(const RhoVector& r) {
  json comps = json::array();
  for (const auto& [mask, v] : r.comps) {
    json c;
    c["A"] = subset_elements(mask);
    c["value"] = to_json(v);
    comps.push_back(std::move(c));
  }
  json j;
  j["ambient"] = ambient_name(r.ambient);
  j["n"] = r.n;
  j["components"] = std::move(comps);
  return j;
}

inline json to_json(const K0Class& c) {
  json j;
  j["n"] = c.n;
  j["coords"] = c.coords;
  return j;
}

inline K0Class k0_from_json(const json& j) {
  return K0Class(j.at("n").get<int>(), j.at("coords").get<std::vector<long long>>());
}

inline json to_json(const ClassN1& c) {
  json j;
  j["m"] = c.symbol_rank;
  j["l"] = to_json(c.rank);
  return j;
}

inline json to_json(const BigUint& b) {
  if (b.fits_u64() && b.to_u64() <= (1ull << 53)) return json(b.to_u64());
  return json(b.str());
}

inline json to_json(const LBDecomposition& d) {
  json summands = json::array();
  for (const auto& [e, c] : d.summands) {
    json s;
    s["token"] = e.str();
    s["slot"] = e.slot;
    s["k"] = e.k;
    s["mult"] = to_json(c);
    summands.push_back(std::move(s));
  }
  json j;
  j["n"] = d.n;
  j["k"] = d.k;
  j["summands"] = std::move(summands);
  K0Class c = class_of_L(d.n, d.k);
  j["k0"] = c.coords;
  j["rank"] = rank_of_class(c);
  if (d.via_recursion_only) j["derived_by"] = "recursion";
  return j;
}

inline json to_json(const std::vector<SeriesLayer>& layers) {
  json arr = json::array();
  for (const auto& l : layers) {
    json j;
    j["multiplicity"] = l.multiplicity;
    j["compact_dim"] = l.compact_dim;
    j["torus_dim"] = l.torus_dim;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline json to_json(const CheckReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  json j;
  j["checks"] = std::move(checks);
  j["failures"] = rep.failures();
  j["pass"] = rep.all_pass();
  return j;
}

}  // namespace qps
