#include <doctest.h>

#include <random>

#include "cilab/hull.hpp"

using namespace cilab;

namespace {

Vec random_vec(Rng& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

TracelessSym random_traceless(Rng& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  TracelessSym t(n);
  for (int k = 0; k < t.packed_size(); ++k) t.set_packed(k, u(rng));
  return t;
}

EulerPoint random_interior_point(Rng& rng, int n, double r) {
  for (;;) {
    EulerPoint p(random_vec(rng, n, 0.9 * r), random_traceless(rng, n, 0.4 * r * r));
    if (classify({p, r}) == HullPosition::Interior) return p;
  }
}

}  // namespace

TEST_CASE("classify: origin, Euler state, rejection-sampled outside point") {
  EulerPoint origin(Vec{0, 0}, TracelessSym(2));
  CHECK(classify({origin, 1.0}) == HullPosition::Interior);

  Vec v{0.6, 0.8};  // |v| = 1
  CHECK(classify({euler_state(v), 1.0}) == HullPosition::Boundary);

  Rng rng(7);
  EulerPoint out;
  for (;;) {
    EulerPoint p(random_vec(rng, 2), random_traceless(rng, 2));
    if (energy_density(p) > 0.7 && energy_density(p) < 2.0) {
      out = p;
      break;
    }
  }
  CHECK(classify({out, 1.0}) == HullPosition::Outside);
}

TEST_CASE("min_speed: zero, Euler state, bisection oracle") {
  EulerPoint origin(Vec{0, 0}, TracelessSym(2));
  CHECK(min_speed(origin) == 0.0);

  Vec v{0.6, -0.8};
  CHECK(min_speed(euler_state(v)) == doctest::Approx(1.0).epsilon(1e-13));

  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    EulerPoint p(random_vec(rng, 2), random_traceless(rng, 2));
    double rho = min_speed(p);
    CHECK(classify({p, rho}) == HullPosition::Boundary);
    // bisection on r over classify
    double lo = 1e-6, hi = 10.0;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      if (classify({p, mid}) == HullPosition::Outside) lo = mid;
      else hi = mid;
    }
    CHECK(std::fabs(rho - hi) < 1e-8);
  }
}

TEST_CASE("caratheodory: valid decomposition at the origin (n=2)") {
  EulerPoint origin(Vec{0, 0}, TracelessSym(2));
  CaratheodoryDecomposition d = caratheodory_decompose({origin, 1.0}, 2024);
  CHECK(d.weights.size() == 5);  // N+1 with N = 4
  double sum = 0;
  for (size_t i = 0; i < d.weights.size(); ++i) {
    sum += d.weights[i];
    CHECK(d.weights[i] > 0.0);
    CHECK(d.weights[i] < 1.0);
    CHECK(std::fabs(d.generators[i].norm() - 1.0) <= 1e-12);
  }
  CHECK(std::fabs(sum - 1.0) <= 1e-12);
  // pairwise distinct after sign alignment
  for (size_t i = 0; i < d.generators.size(); ++i)
    for (size_t j = i + 1; j < d.generators.size(); ++j) {
      double dm = (d.generators[i] - d.generators[j]).norm();
      double dp = (d.generators[i] + d.generators[j]).norm();
      CHECK(std::min(dm, dp) > 1e-8);
    }
  EulerPoint back = d.recombine();
  CHECK((back.v - origin.v).norm() < 1e-9);
  CHECK((back.u - origin.u).max_abs() < 1e-9);
}

TEST_CASE("caratheodory: forward-constructed combinations recombine") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    // known convex combination of 5 random unit Euler states
    std::vector<Vec> gen;
    std::vector<double> w;
    double sum = 0;
    for (int i = 0; i < 5; ++i) {
      gen.push_back(random_vec(rng, 2));
      gen.back() *= 1.0 / gen.back().norm();
      w.push_back(0.05 + std::uniform_real_distribution<double>(0, 1)(rng));
      sum += w.back();
    }
    EulerPoint z(Vec(2), TracelessSym(2));
    for (int i = 0; i < 5; ++i) {
      w[size_t(i)] /= sum;
      z.v += w[size_t(i)] * gen[size_t(i)];
      z.u += w[size_t(i)] * traceless_product(gen[size_t(i)], gen[size_t(i)]);
    }
    if (classify({z, 1.0}) != HullPosition::Interior) continue;
    CaratheodoryDecomposition d = caratheodory_decompose({z, 1.0}, 100 + uint64_t(trial));
    EulerPoint back = d.recombine();
    CHECK((back.v - z.v).norm() < 1e-9);
    CHECK((back.u - z.u).max_abs() < 1e-9);
  }
}

TEST_CASE("caratheodory: boundary point is rejected") {
  Vec v{1, 0};
  CHECK_THROWS_AS(caratheodory_decompose({euler_state(v), 1.0}, 5), PointNotInterior);
}

TEST_CASE("decomposition soundness on random interior points (n=2 and n=3)") {
  Rng rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    EulerPoint p = random_interior_point(rng, 2, 1.0);
    auto d = caratheodory_decompose({p, 1.0}, 900 + uint64_t(trial));
    EulerPoint back = d.recombine();
    CHECK((back.v - p.v).norm() + (back.u - p.u).max_abs() < 1e-9);
  }
  for (int trial = 0; trial < 50; ++trial) {
    EulerPoint p = random_interior_point(rng, 3, 1.0);
    auto d = caratheodory_decompose({p, 1.0}, 7000 + uint64_t(trial));
    EulerPoint back = d.recombine();
    CHECK((back.v - p.v).norm() + (back.u - p.u).max_abs() < 1e-9);
  }
}

TEST_CASE("admissible segment: lower bound at the origin and near-boundary") {
  EulerPoint origin(Vec{0, 0}, TracelessSym(2));
  AdmissibleSegment s = admissible_segment({origin, 1.0}, 3);
  CHECK(s.dir_v.norm() >= 1.0 / 16.0 - 1e-12);  // N = 4, r = 1, |v| = 0

  Rng rng(29);
  Vec a = random_vec(rng, 2);
  a *= 1.0 / a.norm();
  EulerPoint p(0.9 * a, 0.81 * traceless_product(a, a));
  AdmissibleSegment s2 = admissible_segment({p, 1.0}, 4);
  CHECK(s2.dir_v.norm() >= (1.0 / 16.0) * (1.0 - 0.81) - 1e-12);

  CHECK_THROWS_AS(admissible_segment({euler_state(a), 1.0}, 5), PointNotInterior);
}

TEST_CASE("admissible segment invariants on 200 random interior points") {
  Rng rng(31);
  const int nn = state_space_dim(2);
  for (int trial = 0; trial < 200; ++trial) {
    double r = 0.5 + std::uniform_real_distribution<double>(0, 1.5)(rng);
    EulerPoint p = random_interior_point(rng, 2, r);
    AdmissibleSegment s = admissible_segment({p, r}, 5000 + uint64_t(trial));

    CHECK(classify({s.endpoint(+1), r}) == HullPosition::Interior);
    CHECK(classify({s.endpoint(-1), r}) == HullPosition::Interior);
    CHECK(std::fabs(s.a.norm() - r) <= 1e-10);
    CHECK(std::fabs(s.b.norm() - r) <= 1e-10);
    CHECK(std::min((s.a - s.b).norm(), (s.a + s.b).norm()) > 1e-8);
    CHECK(s.lambda > 0.0);
    CHECK(s.dir_v.norm() >= (r * r - p.v.norm2()) / (4.0 * nn * r) - 1e-12);

    // direction is (lambda/2)((a, a x a) - (b, b x b))
    Vec dv = 0.5 * s.lambda * (s.a - s.b);
    CHECK((dv - s.dir_v).norm() < 1e-12);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double expect = 0.5 * s.lambda *
                        (s.a[i] * s.a[j] - s.b[i] * s.b[j] -
                         (i == j ? (s.a.norm2() - s.b.norm2()) / 2.0 : 0.0));
        CHECK(std::fabs(s.dir_u(i, j) - expect) < 1e-10);
      }
  }
}

TEST_CASE("non-extreme points admit a two-sided perturbation in S_r") {
  // Lemma's construction in the diagonalizing frame of v x v - u.
  Rng rng(37);
  int tested = 0;
  while (tested < 50) {
    int n = 2 + (tested % 2);
    EulerPoint p = random_interior_point(rng, n, 1.0);
    SymMat w = outer(p.v);
    w -= p.u.to_sym();
    EigenSym eig = sym_eigen(w);
    double delta = 1.0 / n - eig.values[0];  // lambda_min of v x v - u vs 1/n
    if (delta <= 1e-6) continue;
    ++tested;

    // frame: columns of eig.vectors; e_n direction = eigenvector of lambda_min
    Vec en(n);
    for (int i = 0; i < n; ++i) en[i] = eig.vectors(i, 0);
    // v components in that frame
    Vec vi(n);
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += eig.vectors(i, k) * p.v[i];
      vi[k] = s;
    }
    // (vbar, ubar) = (e_n, sum_i v^i (e_i x e_n + e_n x e_i)), frame e_n = min direction
    Vec vbar = en;
    SymMat ubar(n);
    for (int k = 0; k < n; ++k) {
      if (k == 0) continue;  // skip the e_n (min) direction itself
      Vec ek(n);
      for (int i = 0; i < n; ++i) ek[i] = eig.vectors(i, k);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          ubar.add(i, j, vi[k] * (ek[i] * en[j] + en[i] * ek[j]));
    }
    TracelessSym ub = TracelessSym::traceless_part(ubar);
    CHECK(std::fabs(ubar.trace()) < 1e-12);

    double vn = vi[0];
    double t0 = std::min(delta / (4.0 * std::fabs(vn) + 1.0), 0.5 * std::sqrt(delta));
    for (int sign : {-1, 1}) {
      EulerPoint q = p;
      q.v += (sign * t0) * vbar;
      q.u += (sign * t0) * ub;
      CHECK(energy_density(q) <= 0.5 + 1e-10);
    }
  }
}
