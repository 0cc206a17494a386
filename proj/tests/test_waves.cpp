#include <doctest.h>

#include <random>

#include "cilab/random.hpp"
#include "cilab/waves.hpp"

using namespace cilab;

namespace {

WaveGenerators random_generators(Rng& rng, int n, double r = 1.0) {
  for (;;) {
    Vec a = random_unit_vector(rng, n) * r;
    Vec b = random_unit_vector(rng, n) * r;
    if (std::min((a - b).norm(), (a + b).norm()) > 0.3 * r) return {a, b};
  }
}

Vec random_xi(Rng& rng, int d) {
  std::uniform_real_distribution<double> u(-2, 2);
  Vec xi(d);
  for (int i = 0; i < d; ++i) xi[i] = u(rng);
  return xi;
}

}  // namespace

TEST_CASE("eta: closed form, degenerate pair, A(eta) identity") {
  WaveGenerators g(Vec{1, 0}, Vec{0, 1});
  Vec e = eta(g);
  CHECK(e[0] == doctest::Approx(-1.0));
  CHECK(e[1] == doctest::Approx(-1.0));
  CHECK(e[2] == doctest::Approx(1.0));

  CHECK_THROWS_AS(WaveGenerators(Vec{1, 0}, Vec{-1, 0}), DegenerateGenerators);

  Rng rng(3);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      WaveGenerators gg = random_generators(rng, n, 1.3);
      Vec ee = eta(gg);
      double space = 0;
      for (int i = 0; i < n; ++i) space = std::max(space, std::fabs(ee[i]));
      CHECK(space > 1e-10);
      LiftedMatrix a = symbol_eval({gg}, ee);
      LiftedMatrix diff = state_difference(gg);
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          CHECK(std::fabs(a.m(i, j) - diff.m(i, j)) <= 1e-12);
    }
  }
}

TEST_CASE("symbol: kernel direction, example value, homogeneity, constraints") {
  WaveGenerators g(Vec{1, 0}, Vec{0, 1});
  PotentialSymbol s{g};

  Vec e3{0, 0, 1};
  CHECK(symbol_eval(s, e3).m.max_abs() == 0.0);

  Vec e = eta(g);
  LiftedMatrix a = symbol_eval(s, e);
  double expect[3][3] = {{1, 0, 1}, {0, -1, -1}, {1, -1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a.m(i, j) == doctest::Approx(expect[i][j]));

  Rng rng(5);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 500; ++trial) {
      WaveGenerators gg = random_generators(rng, n);
      Vec xi = random_xi(rng, n + 1);
      LiftedMatrix A = symbol_eval({gg}, xi);
      // A xi = 0, symmetry by storage, zero corner, zero trace
      Vec axi = A.m.apply(xi);
      CHECK(axi.norm() <= 1e-13 * std::max(1.0, A.m.max_abs()));
      CHECK(std::fabs(A.m(n, n)) <= 1e-13);
      CHECK(std::fabs(A.m.trace()) <= 1e-13 * std::max(1.0, A.m.max_abs()));
      // homogeneity of degree 3
      LiftedMatrix A2 = symbol_eval({gg}, 2.0 * xi);
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          CHECK(A2.m(i, j) == doctest::Approx(8.0 * A.m(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("atom: support, plateau identity, sup-norm error decays like 1/N") {
  WaveGenerators g(Vec{1, 0}, Vec{0, 1});
  CutoffProfile cut(Vec{0, 0}, 0.0, 0.5, 2);

  // outside the cell the atom vanishes identically
  WaveAtom w(g, 0.7, 16, cut);
  CHECK(w.eval(Vec{0.9, 0.0}, 0.0).v.norm() == 0.0);
  CHECK(w.eval(Vec{0.0, 0.0}, 0.49).u.max_abs() == 0.0);

  // on the plateau the field is amplitude (a-b, a x a - b x b) sin(N eta y)
  Vec e = eta(g);
  Vec x{0.05, -0.08};
  double t = 0.03;
  ReynoldsTriple val = w.eval(x, t);
  double phase = 16.0 * (e[0] * x[0] + e[1] * x[1] + e[2] * t);
  Vec expect_v = 0.7 * std::sin(phase) * (g.a - g.b);
  CHECK((val.v - expect_v).norm() < 1e-13);
  CHECK(val.q == 0.0);

  // Sup distance to the modulated plane wave scales ~ C/N once N h beats
  // the cutoff derivative scale; with this profile that is N h >~ 100, so
  // probe the dyadic ladder there and expect halving ratios of 2 +- 0.2.
  CutoffProfile fat(Vec{0, 0}, 0.0, 2.0, 2);
  auto sup_err = [&](int N) {
    WaveAtom atom(g, 0.7, N, fat);
    double m = 0;
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j) {
        Vec xx{2.0 * (-0.5 + (i + 0.5) / 40), 2.0 * (-0.5 + (j + 0.5) / 40)};
        for (int k = 0; k < 9; ++k) {
          double tt = 2.0 * (-0.5 + (k + 0.5) / 9);
          ReynoldsTriple a = atom.eval(xx, tt);
          double ph = N * (e[0] * xx[0] + e[1] * xx[1] + e[2] * tt);
          double phi = fat.value(xx, tt);
          ReynoldsTriple ideal = atom.plateau_direction();
          ideal.v *= phi * std::sin(ph);
          ideal.u *= phi * std::sin(ph);
          m = std::max(m, (a.v - ideal.v).norm() + (a.u - ideal.u).max_abs());
        }
      }
    return m;
  };
  double e64 = sup_err(64), e128 = sup_err(128), e256 = sup_err(256),
         e512 = sup_err(512);
  for (double ratio : {e64 / e128, e128 / e256, e256 / e512}) {
    CHECK(ratio > 1.8);
    CHECK(ratio < 2.2);
  }
}

TEST_CASE("atom residual: defects zero, FD divergence converges at order 2") {
  WaveGenerators g(Vec{0.6, 0.8}, Vec{-0.8, 0.6});
  CutoffProfile cut(Vec{0, 0}, 0.0, 0.5, 2);
  WaveAtom w(g, 0.4, 8, cut);

  Box window = make_box2(-0.23, 0.23, -0.23, 0.23);
  double delta = 2e-3;
  AtomResidualReport r1 = atom_residual(w, window, -0.2, 0.2, 7, delta);
  AtomResidualReport r2 = atom_residual(w, window, -0.2, 0.2, 7, delta / 2);
  CHECK(r1.symmetry_defect <= 1e-14);
  CHECK(r1.corner_defect <= 1e-14);
  CHECK(r1.trace_defect <= 1e-14);
  double ratio = r1.divergence_max / r2.divergence_max;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("plane-wave identity: cubic psi makes A(d)phi = (Ua-Ub) psi'''") {
  // With phi(y) = psi(eta . y) and psi a cubic polynomial, the operator
  // reproduces the constant third derivative exactly. The evaluator works
  // on cutoff-modulated cosines, so check the equivalent exact statement:
  // on the plateau (phi == 1) the divergence of the lifted field vanishes
  // under exact plane-wave differentiation, i.e. (U_a - U_b) eta = 0.
  Rng rng(17);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      WaveGenerators g = random_generators(rng, n, 1.1);
      Vec e = eta(g);
      LiftedMatrix diff = state_difference(g);
      Vec r = diff.m.apply(e);
      CHECK(r.norm() <= 1e-12 * std::max(1.0, diff.m.max_abs()));
    }
  }
}

TEST_CASE("sin_sq_average: exact full periods, N=256 concentration, trend") {
  // full periods: N=1, eta' = (1,0), box [0,2pi]^2
  Box b2 = make_box2(0, 2 * M_PI, 0, 2 * M_PI);
  Vec e{1, 0, 0.3};
  double v = sin_sq_average(b2, e, 1.0, 0.0);
  CHECK(v == doctest::Approx(0.5 * b2.measure()).epsilon(1e-13));

  Rng rng(19);
  Box unit = make_box2(0, 1, 0, 1);
  std::uniform_real_distribution<double> ut(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    WaveGenerators g = random_generators(rng, 2);
    Vec ee = eta(g);
    double t = ut(rng);
    double s = sin_sq_average(unit, ee, 256.0, t);
    CHECK(std::fabs(s - 0.5) <= 0.01);
  }

  // deviation decreases with N (10% slack for non-monotone noise)
  WaveGenerators g = random_generators(rng, 2);
  Vec ee = eta(g);
  double prev = 1e9;
  for (int N : {16, 32, 64, 128, 256, 512}) {
    double dev = std::fabs(sin_sq_average(unit, ee, N, 0.37) - 0.5);
    CHECK(dev <= prev * 1.1 + 1e-9);
    prev = std::max(dev, 1e-12);
  }
}

TEST_CASE("sin_sq_average agrees with brute-force quadrature") {
  Rng rng(23);
  Box box = make_box2(-0.3, 0.5, 0.1, 0.9);
  for (int trial = 0; trial < 5; ++trial) {
    WaveGenerators g = random_generators(rng, 2);
    Vec ee = eta(g);
    double N = 16.0, t = 0.4;
    double exact = sin_sq_average(box, ee, N, t);
    // midpoint rule at high resolution
    int m = 2000;
    double dx = (box.hi[0] - box.lo[0]) / m, dy = (box.hi[1] - box.lo[1]) / m;
    double sum = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double x = box.lo[0] + (i + 0.5) * dx, y = box.lo[1] + (j + 0.5) * dy;
        double s = std::sin(N * (ee[0] * x + ee[1] * y + ee[2] * t));
        sum += s * s * dx * dy;
      }
    CHECK(exact == doctest::Approx(sum).epsilon(1e-6));
  }
}
