#pragma once

#include <array>
#include <functional>
#include <unordered_map>
#include <vector>

#include "cilab/boxes.hpp"

namespace cilab {

struct EmptyGrid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Value and first three derivatives of a 1-D profile factor.
struct Jet3 {
  double v = 0, d1 = 0, d2 = 0, d3 = 0;
};

/// The C-infinity ramp built from exp(-1/s): rises from 0 at x<=0 to 1 at
/// x>=1, strictly monotone in between, with closed-form derivatives.
namespace ramp {
Jet3 eval(double x);
/// Max absolute value of |d^k ramp| over [0,1] (k = 1..3), sampled once.
double shape_max(int k);
}  // namespace ramp

/// Tensor-product cutoff for one space-time cell: identically 1 on the
/// concentric 3/4 box, supported in the cell, strictly below 1 outside the
/// plateau. Ramp width is h/8 per axis.
class CutoffProfile {
 public:
  CutoffProfile() = default;
  /// center has n spatial coordinates; the time axis is handled separately
  /// so cells of either parity reuse the same shape.
  CutoffProfile(Vec center_x, double t_center, double h, int n)
      : cx_(std::move(center_x)), ct_(t_center), h_(h), n_(n) {}

  int n() const { return n_; }
  double h() const { return h_; }
  double half() const { return 0.5 * h_; }
  double plateau() const { return 0.375 * h_; }

  /// Jet of the 1-D factor along one axis; axis n is time.
  Jet3 axis_jet(int axis, double coord) const;

  /// phi(x, t): product of the n+1 axis factors.
  double value(const Vec& x, double t) const;

  /// True when phi == 1 exactly in a neighborhood (all axes on plateau).
  bool on_plateau(const Vec& x, double t) const;
  bool supports(const Vec& x, double t) const;

  /// Partial derivative for a multi-index given as per-axis orders
  /// (sum <= 3). Exact product of axis jets.
  double partial(const Vec& x, double t, const std::array<int, 4>& orders) const;

  /// Reported C^3 norm bound: max_k shape_max over (h/8)^k scaling.
  double c3_norm() const;

 private:
  Vec cx_;
  double ct_ = 0;
  double h_ = 0;
  int n_ = 0;
};

struct GridCell {
  std::array<int, 3> zeta{};  // spatial lattice index (n <= 3)
  int i = 0;                  // time index
  bool odd = false;           // parity of |zeta|
  Box spatial;                // Q_zeta
  double t0 = 0, t1 = 0;      // time interval
  Vec anchor_x;               // zeta h
  double anchor_t = 0;        // i h
};

/// Parity-shifted space-time grid: cells Q_zeta x I with time intervals
/// staggered by h/2 between even and odd |zeta|.
class ShiftedGrid {
 public:
  int n = 0;
  double h = 0;
  BoxUnion domain;       // Omega_0
  double t_lo = 0, t_hi = 0;
  std::vector<GridCell> cells;

  const GridCell* find(const std::array<int, 3>& zeta, int i) const;
  int spatial_cell_count(bool odd) const;

  /// Cells whose closed time interval is inside [a, b].
  std::vector<int> cells_in_window(double a, double b) const;

  /// Cutoff of a cell (translation of the canonical profile).
  CutoffProfile cutoff(const GridCell& c) const;

  /// Aggregate cutoff phi^h(x,t): sum over the full lattice (not just the
  /// domain cells), evaluated through the O(1) covering-cell lookup.
  double phi_h(const Vec& x, double t) const;

  /// Times in tau^h_nu (nu = 1 covers the even-parity plateaus).
  static bool in_tau(double t, double h, int nu);

  std::vector<int> zeta_of(const Vec& x) const;

 private:
  std::unordered_map<uint64_t, int> index_;
  friend ShiftedGrid build_grid_window(const BoxUnion&, double, double, double);
};

/// Enumerates all cells contained in domain x [t_lo, t_hi].
ShiftedGrid build_grid_window(const BoxUnion& domain, double t_lo, double t_hi, double h);

/// The §-style signature: window [eps/2, T - eps/2], requires 0 < h < eps/2.
ShiftedGrid build_grid(const BoxUnion& domain, double eps, double T, double h);

/// Indicator-evaluable Omega^h_nu (union of the 3/4 boxes of one parity).
struct OmegaSet {
  const ShiftedGrid* grid = nullptr;
  int nu = 1;  // 1 = even, 2 = odd

  bool contains(const Vec& x) const;
  double measure() const;
};

OmegaSet omega_set(const ShiftedGrid& g, int nu);

/// Per-cell deficit anchors E_h = 1/2 |v|^2 - ebar at (zeta h, i h).
struct DeficitStep {
  const ShiftedGrid* grid = nullptr;
  std::vector<double> anchor;  // aligned with grid->cells

  double value(int cell_idx) const { return anchor[size_t(cell_idx)]; }
  /// integral over Omega^h_nu of |E_h(., t)|
  double aggregate_abs(int nu, double t) const;
};

using VelocityField = std::function<Vec(const Vec&, double)>;
using ScalarFn = std::function<double(const Vec&, double)>;

DeficitStep deficit(const ShiftedGrid& g, const VelocityField& v, const ScalarFn& ebar);

}  // namespace cilab
