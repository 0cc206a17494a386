#include "cilab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace cilab {

namespace ramp {

namespace {
// f1 and derivatives; f1(x) = exp(-1/x) on x > 0.
inline void f1_jet(double x, double out[4]) {
  if (x <= 0) {
    out[0] = out[1] = out[2] = out[3] = 0;
    return;
  }
  double e = std::exp(-1.0 / x);
  double ix = 1.0 / x;
  out[0] = e;
  out[1] = e * ix * ix;
  out[2] = e * (ix * ix * ix * ix - 2.0 * ix * ix * ix);
  out[3] = e * (ix * ix * ix * ix * ix * ix - 6.0 * ix * ix * ix * ix * ix +
                6.0 * ix * ix * ix * ix);
}
}  // namespace

Jet3 eval(double x) {
  if (x <= 0) return {0, 0, 0, 0};
  if (x >= 1) return {1, 0, 0, 0};
  double u[4], vv[4];
  f1_jet(x, u);
  f1_jet(1.0 - x, vv);
  // v(x) = f1(1-x); w = u + v
  double w0 = u[0] + vv[0];
  double w1 = u[1] - vv[1];
  double w2 = u[2] + vv[2];
  double w3 = u[3] - vv[3];
  Jet3 y;
  y.v = u[0] / w0;
  y.d1 = (u[1] - y.v * w1) / w0;
  y.d2 = (u[2] - 2.0 * y.d1 * w1 - y.v * w2) / w0;
  y.d3 = (u[3] - 3.0 * y.d2 * w1 - 3.0 * y.d1 * w2 - y.v * w3) / w0;
  return y;
}

double shape_max(int k) {
  static const std::array<double, 4> maxima = [] {
    std::array<double, 4> m{1.0, 0, 0, 0};
    const int samples = 200001;
    for (int i = 0; i <= samples; ++i) {
      Jet3 j = eval(double(i) / samples);
      m[1] = std::max(m[1], std::fabs(j.d1));
      m[2] = std::max(m[2], std::fabs(j.d2));
      m[3] = std::max(m[3], std::fabs(j.d3));
    }
    return m;
  }();
  return maxima[size_t(k)];
}

}  // namespace ramp

Jet3 CutoffProfile::axis_jet(int axis, double coord) const {
  const double c = (axis == n_) ? ct_ : cx_[axis];
  const double s = std::fabs(coord - c);
  const double pl = plateau();
  if (s <= pl) return {1, 0, 0, 0};
  const double hf = half();
  if (s >= hf) return {0, 0, 0, 0};
  const double rw = hf - pl;  // h/8
  Jet3 r = ramp::eval((hf - s) / rw);
  const double sgn = (coord >= c) ? -1.0 : 1.0;  // d/dcoord of (hf-|s|)/rw
  const double k = sgn / rw;
  return {r.v, r.d1 * k, r.d2 * k * k, r.d3 * k * k * k};
}

double CutoffProfile::value(const Vec& x, double t) const {
  double p = axis_jet(n_, t).v;
  for (int a = 0; a < n_ && p != 0.0; ++a) p *= axis_jet(a, x[a]).v;
  return p;
}

bool CutoffProfile::on_plateau(const Vec& x, double t) const {
  if (std::fabs(t - ct_) > plateau()) return false;
  for (int a = 0; a < n_; ++a)
    if (std::fabs(x[a] - cx_[a]) > plateau()) return false;
  return true;
}

bool CutoffProfile::supports(const Vec& x, double t) const {
  if (std::fabs(t - ct_) >= half()) return false;
  for (int a = 0; a < n_; ++a)
    if (std::fabs(x[a] - cx_[a]) >= half()) return false;
  return true;
}

double CutoffProfile::partial(const Vec& x, double t,
                              const std::array<int, 4>& orders) const {
  double p = 1.0;
  for (int a = 0; a <= n_; ++a) {
    Jet3 j = axis_jet(a, a == n_ ? t : x[a]);
    switch (orders[size_t(a)]) {
      case 0: p *= j.v; break;
      case 1: p *= j.d1; break;
      case 2: p *= j.d2; break;
      case 3: p *= j.d3; break;
      default: throw std::invalid_argument("cutoff partial order > 3");
    }
    if (p == 0.0) return 0.0;
  }
  return p;
}

double CutoffProfile::c3_norm() const {
  const double rw = h_ / 8.0;
  double m1 = ramp::shape_max(1) / rw;
  double m2 = ramp::shape_max(2) / (rw * rw);
  double m3 = ramp::shape_max(3) / (rw * rw * rw);
  return std::max({1.0, m1, m2, m1 * m1, m3, m2 * m1, m1 * m1 * m1});
}

namespace {

uint64_t cell_key(const std::array<int, 3>& zeta, int i) {
  uint64_t k = 0;
  for (int a = 0; a < 3; ++a) k = k * 0x100000ull + uint64_t(zeta[size_t(a)] + 0x7ffff);
  return k * 0x100000ull + uint64_t(i + 0x7ffff);
}

}  // namespace

const GridCell* ShiftedGrid::find(const std::array<int, 3>& zeta, int i) const {
  auto it = index_.find(cell_key(zeta, i));
  return it == index_.end() ? nullptr : &cells[size_t(it->second)];
}

int ShiftedGrid::spatial_cell_count(bool odd) const {
  // Count distinct zeta of one parity (cells share zeta across time indices).
  int count = 0;
  std::array<int, 3> last{INT32_MIN, 0, 0};
  (void)last;
  std::vector<std::array<int, 3>> seen;
  for (const auto& c : cells)
    if (c.odd == odd) seen.push_back(c.zeta);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  count = int(seen.size());
  return count;
}

std::vector<int> ShiftedGrid::cells_in_window(double a, double b) const {
  std::vector<int> out;
  const double slack = 1e-12 * h;
  for (size_t k = 0; k < cells.size(); ++k)
    if (cells[k].t0 >= a - slack && cells[k].t1 <= b + slack) out.push_back(int(k));
  return out;
}

CutoffProfile ShiftedGrid::cutoff(const GridCell& c) const {
  return CutoffProfile(c.anchor_x, 0.5 * (c.t0 + c.t1), h, n);
}

std::vector<int> ShiftedGrid::zeta_of(const Vec& x) const {
  std::vector<int> z(static_cast<size_t>(n), 0);
  for (int a = 0; a < n; ++a) z[size_t(a)] = int(std::lround(x[a] / h));
  return z;
}

double ShiftedGrid::phi_h(const Vec& x, double t) const {
  // The aggregate cutoff is defined over the whole lattice; spatial supports
  // tile, so only the nearest zeta contributes, with one or two time cells.
  std::array<int, 3> zeta{0, 0, 0};
  int psum = 0;
  for (int a = 0; a < n; ++a) {
    zeta[size_t(a)] = int(std::lround(x[a] / h));
    psum += zeta[size_t(a)];
  }
  const bool odd = (psum % 2) != 0;
  Vec cx(n);
  for (int a = 0; a < n; ++a) cx[a] = zeta[size_t(a)] * h;
  double val = 0;
  if (!odd) {
    int i = int(std::floor(t / h));
    for (int di = 0; di <= 1; ++di) {
      double tc = (i - di + 0.5) * h;
      val += CutoffProfile(cx, tc, h, n).value(x, t);
    }
  } else {
    int i = int(std::lround(t / h));
    for (int di = -1; di <= 1; ++di) {
      double tc = (i + di) * h;
      val += CutoffProfile(cx, tc, h, n).value(x, t);
    }
  }
  return val;
}

bool ShiftedGrid::in_tau(double t, double h, int nu) {
  double frac = t / h - std::floor(t / h);
  bool tau1 = (frac >= 0.25 && frac < 0.75);
  return nu == 1 ? tau1 : !tau1;
}

ShiftedGrid build_grid_window(const BoxUnion& domain, double t_lo, double t_hi,
                              double h) {
  if (!(h > 0)) throw std::invalid_argument("grid needs h > 0");
  ShiftedGrid g;
  g.n = domain.dim();
  if (g.n < 1 || g.n > 3) throw std::invalid_argument("grid supports n in {1,2,3}");
  g.h = h;
  g.domain = domain;
  g.t_lo = t_lo;
  g.t_hi = t_hi;

  const Box bb = domain.bounding_box();
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < g.n; ++a) {
    lo[size_t(a)] = int(std::ceil((bb.lo[a] + 0.5 * h) / h - 1e-12));
    hi[size_t(a)] = int(std::floor((bb.hi[a] - 0.5 * h) / h + 1e-12));
  }
  const double slack = 1e-12 * std::max(1.0, std::fabs(t_hi));

  auto time_range = [&](bool odd, int& i0, int& i1) {
    if (!odd) {  // [i h, (i+1) h]
      i0 = int(std::ceil(t_lo / h - 1e-9));
      i1 = int(std::floor(t_hi / h + 1e-9)) - 1;
    } else {  // [(i-1/2) h, (i+1/2) h]
      i0 = int(std::ceil(t_lo / h + 0.5 - 1e-9));
      i1 = int(std::floor(t_hi / h - 0.5 + 1e-9));
    }
  };

  std::array<int, 3> z{0, 0, 0};
  auto emit = [&](auto&& self, int axis) -> void {
    if (axis == g.n) {
      Vec cx(g.n);
      Box q;
      q.lo = Vec(g.n);
      q.hi = Vec(g.n);
      int psum = 0;
      for (int a = 0; a < g.n; ++a) {
        cx[a] = z[size_t(a)] * h;
        q.lo[a] = cx[a] - 0.5 * h;
        q.hi[a] = cx[a] + 0.5 * h;
        psum += z[size_t(a)];
      }
      if (!domain.contains_box(q)) return;
      const bool odd = (psum % 2) != 0;
      int i0, i1;
      time_range(odd, i0, i1);
      for (int i = i0; i <= i1; ++i) {
        GridCell c;
        c.zeta = z;
        c.i = i;
        c.odd = odd;
        c.spatial = q;
        c.t0 = odd ? (i - 0.5) * h : i * h;
        c.t1 = c.t0 + h;
        if (c.t0 < t_lo - slack || c.t1 > t_hi + slack) continue;
        c.anchor_x = cx;
        c.anchor_t = i * h;
        g.index_[cell_key(c.zeta, c.i)] = int(g.cells.size());
        g.cells.push_back(std::move(c));
      }
      return;
    }
    for (int v = lo[size_t(axis)]; v <= hi[size_t(axis)]; ++v) {
      z[size_t(axis)] = v;
      self(self, axis + 1);
    }
  };
  emit(emit, 0);

  if (g.cells.empty()) throw EmptyGrid("no grid cell fits the domain/window");
  return g;
}

ShiftedGrid build_grid(const BoxUnion& domain, double eps, double T, double h) {
  if (!(h > 0 && h < 0.5 * eps))
    throw std::invalid_argument("build_grid requires 0 < h < eps/2");
  return build_grid_window(domain, 0.5 * eps, T - 0.5 * eps, h);
}

bool OmegaSet::contains(const Vec& x) const {
  const auto& g = *grid;
  std::array<int, 3> zeta{0, 0, 0};
  int psum = 0;
  for (int a = 0; a < g.n; ++a) {
    zeta[size_t(a)] = int(std::lround(x[a] / g.h));
    psum += zeta[size_t(a)];
    if (std::fabs(x[a] - zeta[size_t(a)] * g.h) > 0.375 * g.h) return false;
  }
  const bool odd = (psum % 2) != 0;
  if ((nu == 1) == odd) return false;
  // Q_zeta must be a domain cell; any time index witnesses that.
  Box q;
  q.lo = Vec(g.n);
  q.hi = Vec(g.n);
  for (int a = 0; a < g.n; ++a) {
    q.lo[a] = zeta[size_t(a)] * g.h - 0.5 * g.h;
    q.hi[a] = zeta[size_t(a)] * g.h + 0.5 * g.h;
  }
  return g.domain.contains_box(q);
}

double OmegaSet::measure() const {
  const auto& g = *grid;
  double cell = std::pow(0.75 * g.h, g.n);
  return cell * g.spatial_cell_count(nu == 2);
}

OmegaSet omega_set(const ShiftedGrid& g, int nu) { return OmegaSet{&g, nu}; }

DeficitStep deficit(const ShiftedGrid& g, const VelocityField& v, const ScalarFn& ebar) {
  DeficitStep d;
  d.grid = &g;
  d.anchor.resize(g.cells.size());
  for (size_t k = 0; k < g.cells.size(); ++k) {
    const GridCell& c = g.cells[k];
    Vec vv = v(c.anchor_x, c.anchor_t);
    d.anchor[k] = 0.5 * vv.norm2() - ebar(c.anchor_x, c.anchor_t);
  }
  return d;
}

double DeficitStep::aggregate_abs(int nu, double t) const {
  const auto& g = *grid;
  const double tile = std::pow(0.75 * g.h, g.n);
  double sum = 0;
  const double slack = 1e-12 * g.h;
  for (size_t k = 0; k < g.cells.size(); ++k) {
    const GridCell& c = g.cells[k];
    if ((nu == 1) == c.odd) continue;
    if (t < c.t0 - slack || t >= c.t1 - slack) continue;
    sum += std::fabs(anchor[k]) * tile;
  }
  return sum;
}

}  // namespace cilab
