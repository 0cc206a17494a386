#pragma once

#include <vector>

#include "cilab/linalg.hpp"

namespace cilab {

/// Axis-aligned box [lo, hi] in R^n.
struct Box {
  Vec lo, hi;

  int dim() const { return lo.dim(); }
  double measure() const {
    double m = 1;
    for (int i = 0; i < dim(); ++i) m *= std::max(0.0, hi[i] - lo[i]);
    return m;
  }
  bool contains(const Vec& x, double pad = 0.0) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] - pad || x[i] > hi[i] + pad) return false;
    return true;
  }
  Box intersect(const Box& o) const {
    Box r = *this;
    for (int i = 0; i < dim(); ++i) {
      r.lo[i] = std::max(lo[i], o.lo[i]);
      r.hi[i] = std::min(hi[i], o.hi[i]);
      if (r.hi[i] < r.lo[i]) r.hi[i] = r.lo[i];
    }
    return r;
  }
  Box shrunk(double margin) const {
    Box r = *this;
    for (int i = 0; i < dim(); ++i) {
      r.lo[i] += margin;
      r.hi[i] -= margin;
      if (r.hi[i] < r.lo[i]) r.hi[i] = r.lo[i] = 0.5 * (r.lo[i] + r.hi[i]);
    }
    return r;
  }
};

inline Box make_box2(double x0, double x1, double y0, double y1) {
  return Box{Vec{x0, y0}, Vec{x1, y1}};
}

/// Finite union of axis-aligned boxes with pairwise disjoint interiors,
/// so measures add and box containment reduces to volume accounting.
class BoxUnion {
 public:
  BoxUnion() = default;
  explicit BoxUnion(std::vector<Box> boxes) : boxes_(std::move(boxes)) {}
  explicit BoxUnion(Box b) : boxes_{std::move(b)} {}

  const std::vector<Box>& boxes() const { return boxes_; }
  int dim() const { return boxes_.empty() ? 0 : boxes_[0].dim(); }
  bool empty() const { return boxes_.empty(); }

  double measure() const {
    double m = 0;
    for (const auto& b : boxes_) m += b.measure();
    return m;
  }

  bool contains(const Vec& x) const {
    for (const auto& b : boxes_)
      if (b.contains(x)) return true;
    return false;
  }

  /// Exact up to roundoff for disjoint unions: q is inside iff the covered
  /// volume matches vol(q).
  bool contains_box(const Box& q, double rel_tol = 1e-12) const {
    double vq = q.measure();
    if (vq == 0.0) return contains(q.lo);
    double covered = 0;
    for (const auto& b : boxes_) covered += q.intersect(b).measure();
    return covered >= vq * (1.0 - rel_tol);
  }

  Box bounding_box() const {
    Box bb = boxes_.at(0);
    for (const auto& b : boxes_)
      for (int i = 0; i < b.dim(); ++i) {
        bb.lo[i] = std::min(bb.lo[i], b.lo[i]);
        bb.hi[i] = std::max(bb.hi[i], b.hi[i]);
      }
    return bb;
  }

  double diameter() const {
    Box bb = bounding_box();
    Vec d = bb.hi - bb.lo;
    return d.norm();
  }

  BoxUnion shrunk(double margin) const {
    std::vector<Box> out;
    for (const auto& b : boxes_) {
      Box s = b.shrunk(margin);
      if (s.measure() > 0) out.push_back(s);
    }
    return BoxUnion(std::move(out));
  }

 private:
  std::vector<Box> boxes_;
};

/// Column staircase inscribed in the unit ball of R^2 scaled by `radius`;
/// the measure gap to the disc shrinks with `columns`.
BoxUnion inscribed_disc_boxes(double radius, int columns);

}  // namespace cilab
