#include "cilab/waves.hpp"

#include <complex>

namespace cilab {

WaveGenerators::WaveGenerators(Vec a_, Vec b_) : a(std::move(a_)), b(std::move(b_)) {
  a.require_same(b);
  const double na = a.norm(), nb = b.norm();
  if (std::fabs(na - nb) > 1e-12 * std::max(1.0, na))
    throw DegenerateGenerators("wave generators need |a| = |b|");
  if (std::min((a - b).norm(), (a + b).norm()) <= 1e-10)
    throw DegenerateGenerators("wave generators need a != +-b");
}

Vec eta(const WaveGenerators& g) {
  const int n = g.n();
  const double s = g.a.norm() * g.b.norm() + g.a.dot(g.b);
  if (s <= 1e-12 * g.a.norm() * g.b.norm())
    throw DegenerateGenerators("generators nearly antipodal: |a||b| + a.b ~ 0");
  const double scale = -1.0 / std::pow(s, 2.0 / 3.0);
  Vec e(n + 1);
  for (int i = 0; i < n; ++i) e[i] = scale * (g.a[i] + g.b[i]);
  e[n] = scale * (-s);
  return e;
}

LiftedMatrix symbol_eval(const PotentialSymbol& sym, const Vec& xi) {
  const int n = sym.generators.n();
  const int d = n + 1;
  if (xi.dim() != d) throw DimensionMismatch("symbol argument needs dim n+1");

  // R xi with R = a (x) b - b (x) a (a, b embedded with zero time part)
  Vec rxi(d);
  double bdot = 0, adot = 0;
  for (int i = 0; i < n; ++i) {
    bdot += sym.generators.b[i] * xi[i];
    adot += sym.generators.a[i] * xi[i];
  }
  for (int i = 0; i < n; ++i)
    rxi[i] = sym.generators.a[i] * bdot - sym.generators.b[i] * adot;
  rxi[d - 1] = 0.0;

  // Q(xi) xi = xi_d xi - |xi|^2 e_d
  Vec qxi(d);
  const double nx2 = xi.norm2();
  for (int i = 0; i < d; ++i) qxi[i] = xi[i] * xi[d - 1];
  qxi[d - 1] -= nx2;

  LiftedMatrix out;
  out.n = n;
  out.m = outer_sym(rxi, qxi);
  return out;
}

LiftedMatrix state_difference(const WaveGenerators& g) {
  ReynoldsTriple t(g.a - g.b,
                   traceless_product(g.a, g.a) - traceless_product(g.b, g.b), 0.0);
  return lift(t);
}

WaveAtom::WaveAtom(WaveGenerators g, double amplitude, int frequency,
                   CutoffProfile cutoff)
    : gen_(std::move(g)),
      amplitude_(amplitude),
      n_freq_(frequency),
      cutoff_(std::move(cutoff)) {
  n_ = gen_.n();
  eta_ = eta(gen_);
  const int d = n_ + 1;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      rdata_[size_t(i * d + j)] = gen_.a[i] * gen_.b[j] - gen_.b[i] * gen_.a[j];
  plateau_dir_ = ReynoldsTriple(
      amplitude_ * (gen_.a - gen_.b),
      amplitude_ * (traceless_product(gen_.a, gen_.a) - traceless_product(gen_.b, gen_.b)),
      0.0);
}

double WaveAtom::max_space_wavenumber() const {
  double k = 0;
  for (int i = 0; i < n_; ++i) k = std::max(k, double(n_freq_) * std::fabs(eta_[i]));
  return k;
}

double WaveAtom::time_wavenumber() const {
  return double(n_freq_) * std::fabs(eta_[n_]);
}

ReynoldsTriple WaveAtom::eval(const Vec& x, double t) const {
  if (!cutoff_.supports(x, t)) return ReynoldsTriple::zero(n_);
  double phase = eta_[n_] * t;
  for (int i = 0; i < n_; ++i) phase += eta_[i] * x[i];
  phase *= n_freq_;

  if (cutoff_.on_plateau(x, t)) {
    // phi == 1 in a neighborhood: the operator sees the pure plane wave.
    double s = std::sin(phase);
    ReynoldsTriple r = plateau_dir_;
    r.v *= s;
    r.u *= s;
    return r;
  }

  std::array<Jet3, 4> jets;
  for (int a = 0; a < n_; ++a) jets[size_t(a)] = cutoff_.axis_jet(a, x[a]);
  jets[size_t(n_)] = cutoff_.axis_jet(n_, t);
  return eval_from_jets(jets.data(), phase);
}

ReynoldsTriple WaveAtom::eval_from_jets(const Jet3* jets, double phase) const {
  const int d = n_ + 1;
  const double N = double(n_freq_);
  // psi = N^-3 cos(N s) and its derivative ladder, scaled by the amplitude
  const double cn = std::cos(phase), sn = std::sin(phase);
  const double p0 = amplitude_ * cn / (N * N * N);
  const double p1 = -amplitude_ * sn / (N * N);
  const double p2 = -amplitude_ * cn / N;
  const double p3 = amplitude_ * sn;

  // phi partial for per-axis derivative counts
  auto phip = [&](int c0, int c1, int c2, int c3) {
    auto pick = [&](const Jet3& j, int c) {
      switch (c) {
        case 0: return j.v;
        case 1: return j.d1;
        case 2: return j.d2;
        default: return j.d3;
      }
    };
    double p = pick(jets[0], c0) * pick(jets[1], c1);
    p *= pick(jets[2], c2);
    if (d == 4) p *= pick(jets[3], c3);
    return p;
  };

  // third derivative tensor of phi * psi(eta . y), multiset indices a<=b<=c
  double d3[4][4][4];
  std::array<int, 4> cnt{};
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b)
      for (int c = b; c < d; ++c) {
        cnt = {0, 0, 0, 0};
        cnt[size_t(a)]++;
        cnt[size_t(b)]++;
        cnt[size_t(c)]++;
        double v = phip(cnt[0], cnt[1], cnt[2], cnt[3]) * p0;

        std::array<int, 4> m = cnt;
        m[size_t(c)]--;
        v += phip(m[0], m[1], m[2], m[3]) * eta_[c] * p1;
        m = cnt;
        m[size_t(b)]--;
        v += phip(m[0], m[1], m[2], m[3]) * eta_[b] * p1;
        m = cnt;
        m[size_t(a)]--;
        v += phip(m[0], m[1], m[2], m[3]) * eta_[a] * p1;

        m = cnt;
        m[size_t(b)]--;
        m[size_t(c)]--;
        v += phip(m[0], m[1], m[2], m[3]) * eta_[b] * eta_[c] * p2;
        m = cnt;
        m[size_t(a)]--;
        m[size_t(c)]--;
        v += phip(m[0], m[1], m[2], m[3]) * eta_[a] * eta_[c] * p2;
        m = cnt;
        m[size_t(a)]--;
        m[size_t(b)]--;
        v += phip(m[0], m[1], m[2], m[3]) * eta_[a] * eta_[b] * p2;

        v += phip(0, 0, 0, 0) * eta_[a] * eta_[b] * eta_[c] * p3;

        d3[a][b][c] = d3[a][c][b] = d3[b][a][c] = d3[b][c][a] = d3[c][a][b] =
            d3[c][b][a] = v;
      }

  // T_{al} = d3[a][l][time] - delta_{l,time} * d_a(Laplacian)
  double lap[4];  // d_a of the space-time Laplacian of g
  for (int a = 0; a < d; ++a) {
    double s = 0;
    for (int b = 0; b < d; ++b) s += d3[a][b][b];
    lap[a] = s;
  }
  const int td = d - 1;
  double T[4][4];
  for (int a = 0; a < d; ++a)
    for (int l = 0; l < d; ++l) T[a][l] = d3[a][l][td] - (l == td ? lap[a] : 0.0);

  // U_{kl} = 1/2 sum_a (R_{ka} T_{al} + R_{la} T_{ak}); R has zero time row.
  // Read the triple off directly: v_i = U_{i,td}, u = traceless upper block.
  ReynoldsTriple out = ReynoldsTriple::zero(n_);
  auto ukl = [&](int k, int l) {
    double s = 0;
    for (int a = 0; a < n_; ++a)
      s += r_entry(k, a) * T[a][l];  // a ranges over spatial axes only
    return s;
  };
  for (int i = 0; i < n_; ++i) out.v[i] = 0.5 * ukl(i, td);  // U_{i,td}: R row i only
  // U_{i,td} = 1/2 (sum_a R_{ia} T[a][td] + sum_a R_{td,a} T[a][i]); the
  // second sum vanishes because R's time row is zero.
  SymMat upper(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) upper.set(i, j, 0.5 * (ukl(i, j) + ukl(j, i)));
  out.u = TracelessSym::traceless_part(upper);
  out.q = 0.0;
  return out;
}

AtomResidualReport atom_residual(const WaveAtom& w, const Box& window, double t0,
                                 double t1, int points, double delta) {
  AtomResidualReport rep;
  rep.spacing = delta;
  const int n = w.generators().n();
  const int d = n + 1;

  auto lifted = [&](Vec x, double t) { return lift(w.eval(x, t)); };

  for (int it = 0; it < points; ++it) {
    double t = t0 + (t1 - t0) * (points == 1 ? 0.5 : double(it) / (points - 1));
    std::vector<double> xs(static_cast<size_t>(n), 0.0);
    auto walk = [&](auto&& self, int axis) -> void {
      if (axis == n) {
        Vec x(n);
        for (int a = 0; a < n; ++a) x[a] = xs[size_t(a)];
        LiftedMatrix u0 = lifted(x, t);
        // representation checks on the lifted value
        rep.corner_defect = std::max(rep.corner_defect, std::fabs(u0.m(n, n)));
        rep.trace_defect = std::max(rep.trace_defect, std::fabs(u0.m.trace()));
        // SymMat storage is symmetric by construction; defect stays 0.
        std::array<LiftedMatrix, 4> up, um;
        for (int l = 0; l < d; ++l) {
          Vec xp = x, xm = x;
          double tp = t, tm = t;
          if (l < n) {
            xp[l] += delta;
            xm[l] -= delta;
          } else {
            tp += delta;
            tm -= delta;
          }
          up[size_t(l)] = lifted(xp, tp);
          um[size_t(l)] = lifted(xm, tm);
        }
        for (int k = 0; k < d; ++k) {
          double div = 0;
          for (int l = 0; l < d; ++l)
            div += (up[size_t(l)].m(k, l) - um[size_t(l)].m(k, l)) / (2 * delta);
          rep.divergence_max = std::max(rep.divergence_max, std::fabs(div));
        }
        return;
      }
      for (int i = 0; i < points; ++i) {
        xs[size_t(axis)] =
            window.lo[axis] +
            (window.hi[axis] - window.lo[axis]) * (points == 1 ? 0.5 : double(i) / (points - 1));
        self(self, axis + 1);
      }
    };
    walk(walk, 0);
  }
  return rep;
}

double sin_sq_average(const Box& B, const Vec& e, double n_freq, double t) {
  const int n = B.dim();
  if (e.dim() != n + 1) throw DimensionMismatch("eta needs dim n+1");
  // sin^2(s) = 1/2 - 1/2 cos(2s); the cos integral factors over coordinates.
  std::complex<double> prod(1.0, 0.0);
  for (int j = 0; j < n; ++j) {
    double k = 2.0 * n_freq * e[j];
    double a = B.lo[j], b = B.hi[j];
    if (std::fabs(k) < 1e-300) {
      prod *= (b - a);
    } else {
      std::complex<double> ik(0.0, k);
      prod *= (std::exp(ik * b) - std::exp(ik * a)) / ik;
    }
  }
  double c = 2.0 * n_freq * e[n] * t;
  double cos_int = (prod * std::exp(std::complex<double>(0.0, c))).real();
  return 0.5 * B.measure() - 0.5 * cos_int;
}

}  // namespace cilab
