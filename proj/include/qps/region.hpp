#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qps/clopen.hpp"
#include "qps/rational.hpp"

namespace qps {

// A box is a product of one coordinate set per dimension.  dim 0 is allowed
// (the empty product, a single point); it shows up as the residual of a fully
// pinned restriction.
using Box = std::vector<ClopenSet>;

inline bool box_is_empty(const Box& b) {
  for (const auto& s : b)
    if (s.is_empty()) return true;
  return false;
}

inline ExtNat box_cardinality(const Box& b) {
  ExtNat c(1);
  for (const auto& s : b) c = c * s.cardinality();
  return c;
}

// A point of the compactified cone; 'inf' flags per coordinate.
struct ConePoint {
  std::vector<long long> x;       // coordinate value, ignored where infinite
  std::vector<bool> at_infinity;  // same length

  bool in_box(const Box& b) const {
    for (size_t i = 0; i < b.size(); ++i) {
      if (at_infinity[i]) {
        if (!b[i].contains_infinity()) return false;
      } else if (!b[i].contains(x[i])) {
        return false;
      }
    }
    return true;
  }
};

namespace detail {

// The coordinate sets of a finite family generate a finite Boolean algebra on
// the compactified half-line.  Its atoms can be taken as the singletons below
// a cut (the largest constant-membership point of any of the sets) plus the
// single tail [cut, oo].
struct AtomCover {
  long long cut = 0;
  bool has_tail_atom = false;
};

template <typename It>
AtomCover atom_cover(It begin, It end) {
  AtomCover a;
  for (It it = begin; it != end; ++it) {
    a.cut = std::max(a.cut, it->settle_bound());
    a.has_tail_atom = a.has_tail_atom || it->has_tail();
  }
  return a;
}

}  // namespace detail

// Canonical disjoint-box decomposition of a union of boxes.  Works
// coordinate-by-coordinate: points of coordinate 0 are grouped by the
// canonical residual region they slice out, each group's points reassemble
// into one ClopenSet, and groups are emitted ordered by least point.  The
// output is a function of the underlying point set only.
inline std::vector<Box> region_canonical(const std::vector<Box>& boxes, int dim) {
  std::vector<Box> live;
  for (const auto& b : boxes) {
    if ((int)b.size() != dim) throw std::invalid_argument("region: box dimension mismatch");
    if (!box_is_empty(b)) live.push_back(b);
  }
  if (live.empty()) return {};
  if (dim == 0) return {Box{}};

  std::vector<ClopenSet> heads;
  for (const auto& b : live) heads.push_back(b[0]);
  auto cover = detail::atom_cover(heads.begin(), heads.end());

  struct Group {
    std::vector<long long> pts;
    bool tail = false;
  };
  std::map<std::vector<Box>, Group> groups;

  auto residual_at = [&](bool at_tail, long long x) {
    std::vector<Box> rest;
    for (const auto& b : live) {
      bool hit = at_tail ? b[0].has_tail() : b[0].contains(x);
      if (hit) rest.emplace_back(b.begin() + 1, b.end());
    }
    return region_canonical(rest, dim - 1);
  };

  for (long long x = 0; x < cover.cut; ++x) {
    auto res = residual_at(false, x);
    if (res.empty()) continue;
    groups[std::move(res)].pts.push_back(x);
  }
  if (cover.has_tail_atom) {
    auto res = residual_at(true, 0);
    if (!res.empty()) groups[std::move(res)].tail = true;
  }

  std::vector<std::pair<ClopenSet, const std::vector<Box>*>> ordered;
  for (auto& [res, g] : groups) {
    ClopenSet s(g.pts, g.tail ? std::optional<long long>(cover.cut) : std::nullopt);
    if (s.is_empty()) continue;
    ordered.emplace_back(std::move(s), &res);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first.min_point() < b.first.min_point(); });

  std::vector<Box> out;
  for (auto& [s, res] : ordered) {
    for (const Box& r : *res) {
      Box b;
      b.reserve(dim);
      b.push_back(s);
      b.insert(b.end(), r.begin(), r.end());
      out.push_back(std::move(b));
    }
  }
  return out;
}

using WeightedBox = std::pair<GaussianRational, Box>;

// Canonical form of a finitely supported locally constant function given as a
// sum of weighted boxes: same residual-grouping scheme, with coefficients
// added where boxes overlap and zero slices dropped.
inline std::vector<WeightedBox> weighted_canonical(const std::vector<WeightedBox>& items, int dim) {
  std::vector<WeightedBox> live;
  for (const auto& [c, b] : items) {
    if ((int)b.size() != dim) throw std::invalid_argument("region: box dimension mismatch");
    if (!c.is_zero() && !box_is_empty(b)) live.emplace_back(c, b);
  }
  if (live.empty()) return {};
  if (dim == 0) {
    GaussianRational total;
    for (const auto& [c, b] : live) total += c;
    if (total.is_zero()) return {};
    return {{total, Box{}}};
  }

  std::vector<ClopenSet> heads;
  for (const auto& [c, b] : live) heads.push_back(b[0]);
  auto cover = detail::atom_cover(heads.begin(), heads.end());

  struct Group {
    std::vector<long long> pts;
    bool tail = false;
  };
  std::map<std::vector<WeightedBox>, Group> groups;

  auto residual_at = [&](bool at_tail, long long x) {
    std::vector<WeightedBox> rest;
    for (const auto& [c, b] : live) {
      bool hit = at_tail ? b[0].has_tail() : b[0].contains(x);
      if (hit) rest.emplace_back(c, Box(b.begin() + 1, b.end()));
    }
    return weighted_canonical(rest, dim - 1);
  };

  for (long long x = 0; x < cover.cut; ++x) {
    auto res = residual_at(false, x);
    if (res.empty()) continue;
    groups[std::move(res)].pts.push_back(x);
  }
  if (cover.has_tail_atom) {
    auto res = residual_at(true, 0);
    if (!res.empty()) groups[std::move(res)].tail = true;
  }

  std::vector<std::pair<ClopenSet, const std::vector<WeightedBox>*>> ordered;
  for (auto& [res, g] : groups) {
    ClopenSet s(g.pts, g.tail ? std::optional<long long>(cover.cut) : std::nullopt);
    if (s.is_empty()) continue;
    ordered.emplace_back(std::move(s), &res);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first.min_point() < b.first.min_point(); });

  std::vector<WeightedBox> out;
  for (auto& [s, res] : ordered) {
    for (const auto& [c, r] : *res) {
      Box b;
      b.reserve(dim);
      b.push_back(s);
      b.insert(b.end(), r.begin(), r.end());
      out.emplace_back(c, std::move(b));
    }
  }
  return out;
}

// Canonical compact-open subset of the compactified cone (Z>= u {oo})^n.
class BoxRegion {
 public:
  explicit BoxRegion(int dim) : dim_(dim) {}
  BoxRegion(int dim, std::vector<Box> boxes) : dim_(dim), boxes_(region_canonical(boxes, dim)) {}

  static BoxRegion empty(int dim) { return BoxRegion(dim); }
  static BoxRegion full(int dim) {
    return BoxRegion(dim, {Box(dim, ClopenSet::full())});
  }
  static BoxRegion from_box(Box b) {
    int d = (int)b.size();
    return BoxRegion(d, {std::move(b)});
  }

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool is_empty() const { return boxes_.empty(); }

  bool contains(const ConePoint& p) const {
    for (const auto& b : boxes_)
      if (p.in_box(b)) return true;
    return false;
  }

  ExtNat cardinality() const {
    ExtNat c(0);
    for (const auto& b : boxes_) c += box_cardinality(b);
    return c;
  }

  friend BoxRegion region_union(const BoxRegion& a, const BoxRegion& b) {
    check_dims(a, b);
    std::vector<Box> all = a.boxes_;
    all.insert(all.end(), b.boxes_.begin(), b.boxes_.end());
    return BoxRegion(a.dim_, std::move(all));
  }

  friend BoxRegion region_intersect(const BoxRegion& a, const BoxRegion& b) {
    check_dims(a, b);
    std::vector<Box> out;
    for (const auto& x : a.boxes_)
      for (const auto& y : b.boxes_) {
        Box z(a.dim_);
        for (int i = 0; i < a.dim_; ++i) z[i] = set_intersect(x[i], y[i]);
        if (!box_is_empty(z)) out.push_back(std::move(z));
      }
    return BoxRegion(a.dim_, std::move(out));
  }

  friend BoxRegion region_subtract(const BoxRegion& a, const BoxRegion& b) {
    check_dims(a, b);
    std::vector<Box> cur = a.boxes_;
    for (const auto& cut : b.boxes_) {
      std::vector<Box> next;
      for (const auto& r : cur) box_minus(r, cut, next);
      cur = std::move(next);
    }
    return BoxRegion(a.dim_, std::move(cur));
  }

  // Preimage under the coordinatewise translation by m (oo is fixed).
  BoxRegion shift_pre(const std::vector<long long>& m) const {
    return mapped(m, [](const ClopenSet& s, long long mi) { return s.shift_pre(mi); });
  }
  // Image under the coordinatewise translation by m (oo is fixed).
  BoxRegion translate(const std::vector<long long>& m) const {
    return mapped(m, [](const ClopenSet& s, long long mi) { return s.translate(mi); });
  }

  friend bool operator==(const BoxRegion& a, const BoxRegion& b) {
    return a.dim_ == b.dim_ && a.boxes_ == b.boxes_;
  }
  friend bool operator!=(const BoxRegion& a, const BoxRegion& b) { return !(a == b); }

  std::string str() const {
    if (boxes_.empty()) return "∅";
    std::string s;
    for (size_t i = 0; i < boxes_.size(); ++i) {
      if (i) s += " ⊔ ";
      if (boxes_[i].empty()) s += "(pt)";
      for (size_t j = 0; j < boxes_[i].size(); ++j) {
        if (j) s += "×";
        s += boxes_[i][j].str();
      }
    }
    return s;
  }

 private:
  static void check_dims(const BoxRegion& a, const BoxRegion& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("region: dimension mismatch");
  }

  template <typename F>
  BoxRegion mapped(const std::vector<long long>& m, F f) const {
    if ((int)m.size() != dim_) throw std::invalid_argument("region: translation length mismatch");
    std::vector<Box> out;
    for (const auto& b : boxes_) {
      Box z(dim_);
      for (int i = 0; i < dim_; ++i) z[i] = f(b[i], m[i]);
      if (!box_is_empty(z)) out.push_back(std::move(z));
    }
    return BoxRegion(dim_, std::move(out));
  }

  // r \ cut as disjoint boxes, appended to out.
  static void box_minus(const Box& r, const Box& cut, std::vector<Box>& out) {
    int d = (int)r.size();
    for (int k = 0; k < d; ++k) {
      Box piece(d);
      bool empty = false;
      for (int i = 0; i < k && !empty; ++i) {
        piece[i] = set_intersect(r[i], cut[i]);
        empty = piece[i].is_empty();
      }
      if (empty) continue;
      piece[k] = set_subtract(r[k], cut[k]);
      if (piece[k].is_empty()) continue;
      for (int i = k + 1; i < d; ++i) piece[i] = r[i];
      out.push_back(std::move(piece));
    }
    if (d == 0) {
      // 0-dim: r \ cut is empty whenever cut is a (nonempty) point.
    }
  }

  int dim_;
  std::vector<Box> boxes_;
};

}  // namespace qps
