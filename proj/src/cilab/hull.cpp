#include "cilab/hull.hpp"

#include <algorithm>
#include <vector>

namespace cilab {

namespace {
constexpr double kWeightFloor = 1e-6;
constexpr int kMaxAttempts = 500;
constexpr double kJitter = 1e-3;
}  // namespace

HullPosition classify(const HullQuery& q) {
  if (!(q.r > 0)) throw std::invalid_argument("classify requires r > 0");
  const double e = energy_density(q.point);
  const double half = 0.5 * q.r * q.r;
  const double tol = 1e-10 * q.r * q.r;
  if (e < half - tol) return HullPosition::Interior;
  if (e <= half + tol) return HullPosition::Boundary;
  return HullPosition::Outside;
}

double min_speed(const EulerPoint& p) { return std::sqrt(2.0 * energy_density(p)); }

EulerPoint CaratheodoryDecomposition::recombine() const {
  EulerPoint z(Vec(generators[0].dim()), TracelessSym(generators[0].dim()));
  for (size_t i = 0; i < weights.size(); ++i) {
    z.v += weights[i] * generators[i];
    z.u += weights[i] * traceless_product(generators[i], generators[i]);
  }
  return z;
}

namespace {

// One barycentric attempt: fills weights for the given generators.
// Rows: n velocity components, n(n+1)/2 - 1 packed u components, 1 sum.
bool solve_barycentric(const EulerPoint& z, const std::vector<Vec>& gen,
                       std::vector<double>& weights) {
  const int n = z.dim();
  const int m = state_space_dim(n) + 1;
  std::vector<double> a(size_t(m) * m, 0.0);
  std::vector<double> b(size_t(m), 0.0);
  const int nu = z.u.packed_size();
  for (int col = 0; col < m; ++col) {
    for (int i = 0; i < n; ++i) a[size_t(i) * m + col] = gen[size_t(col)][i];
    TracelessSym s = traceless_product(gen[size_t(col)], gen[size_t(col)]);
    for (int k = 0; k < nu; ++k) a[size_t(n + k) * m + col] = s.packed(k);
    a[size_t(n + nu) * m + col] = 1.0;
  }
  for (int i = 0; i < n; ++i) b[size_t(i)] = z.v[i];
  for (int k = 0; k < nu; ++k) b[size_t(n + k)] = z.u.packed(k);
  b[size_t(n + nu)] = 1.0;
  if (!solve_linear(a, b, m)) return false;
  weights = b;
  return true;
}

void jitter_collisions(std::vector<Vec>& gen, double r, Rng& rng) {
  const int n = gen[0].dim();
  for (size_t i = 0; i < gen.size(); ++i)
    for (size_t j = i + 1; j < gen.size(); ++j) {
      double dm = (gen[i] - gen[j]).norm();
      double dp = (gen[i] + gen[j]).norm();
      if (std::min(dm, dp) <= kJitter * r) {
        Vec t = random_unit_vector(rng, n);
        gen[j] += (kJitter * r) * t;
        gen[j] *= r / gen[j].norm();
      }
    }
}

// Exact split of an interior point into 2n sphere points: for each
// eigendirection f of C = u + (r^2/n) I - v (x) v, the line v + s f meets
// the sphere |w| = r in two points whose pair-average is v and whose
// second-moment contribution is (r^2 - |v|^2) f (x) f. Eigen-weights then
// reproduce C exactly. Returns false when a weight degenerates.
bool moment_split(const EulerPoint& z, double r, std::vector<Vec>& gen,
                  std::vector<double>& w) {
  const int n = z.dim();
  SymMat c = z.u.to_sym();
  for (int i = 0; i < n; ++i) c.add(i, i, r * r / n);
  c -= outer(z.v);
  const double spread = r * r - z.v.norm2();
  if (spread <= 0) return false;
  EigenSym es = sym_eigen(c);
  gen.clear();
  w.clear();
  for (int k = 0; k < n; ++k) {
    double mu = es.values[k];
    double omega = mu / spread;
    if (omega <= 4 * kWeightFloor) return false;
    const Vec& f = es.vectors[size_t(k)];
    double vf = z.v.dot(f);
    double disc = std::sqrt(vf * vf + spread);
    double sp = -vf + disc, sm = -vf - disc;
    double rel_p = -sm / (sp - sm), rel_m = sp / (sp - sm);
    if (rel_p <= 2 * kWeightFloor || rel_m <= 2 * kWeightFloor) return false;
    gen.push_back(z.v + sp * f);
    gen.push_back(z.v + sm * f);
    w.push_back(omega * rel_p);
    w.push_back(omega * rel_m);
  }
  return true;
}

}  // namespace

CaratheodoryDecomposition caratheodory_decompose(const HullQuery& q, uint64_t seed) {
  if (classify(q) != HullPosition::Interior)
    throw PointNotInterior("caratheodory_decompose requires an interior point");

  const int n = q.point.dim();
  const int count = state_space_dim(n) + 1;
  const double r = q.r;
  Rng rng(mix_seed(seed, 0xCA7A));

  // Sampling bias: mean v and second moment u + (r^2/n) I. Any interior
  // point forces that moment matrix to dominate v (x) v, so it is PSD and
  // its square root shapes the cluster of generator directions correctly
  // even near the boundary of the hull.
  SymMat m2 = q.point.u.to_sym();
  for (int i = 0; i < n; ++i) m2.add(i, i, r * r / n);
  EigenSym es = sym_eigen(m2);
  std::vector<Vec> sqrt_cols;
  for (int k = 0; k < n; ++k)
    sqrt_cols.push_back(es.vectors[size_t(k)] * std::sqrt(std::max(0.0, es.values[k])));

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  const double margin = 1.0 - energy_density(q.point) / (0.5 * r * r);

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Vec> gen;
    std::vector<double> w;

    if (attempt < 100) {
      // Pure rejection sampling: N+1 shaped random sphere points, solve,
      // accept when every weight is admissible. Reliable for n = 2; the
      // containment probability collapses with the state dimension.
      double spread = 0.4 + 0.3 * double(attempt % 5);
      gen.reserve(size_t(count));
      for (int i = 0; i < count; ++i) {
        Vec raw = q.point.v;
        for (int k = 0; k < n; ++k) raw += (spread * gauss(rng)) * sqrt_cols[size_t(k)];
        double nr = raw.norm();
        if (nr < 1e-12 * r) raw = random_unit_vector(rng, n) * r;
        else raw *= r / nr;
        gen.push_back(raw);
      }
      jitter_collisions(gen, r, rng);
      if (!solve_barycentric(q.point, gen, w)) continue;
    } else {
      // Randomized moment splitting: give a few random generators small
      // weights, split the remainder point exactly through eigen-pairs.
      const int extras = count - 2 * n;
      double eps_total = std::min(0.04, 0.05 * margin) / (1 << ((attempt / 100) % 4));
      EulerPoint rem = q.point;
      std::vector<Vec> egen;
      std::vector<double> ew;
      double used = 0;
      for (int j = 0; j < extras; ++j) {
        Vec g = random_unit_vector(rng, n) * r;
        double e = eps_total / std::max(1, extras) * unif(rng);
        egen.push_back(g);
        ew.push_back(e);
        used += e;
        rem.v -= e * g;
        rem.u -= e * traceless_product(g, g);
      }
      if (used >= 1.0) continue;
      rem.v *= 1.0 / (1.0 - used);
      rem.u *= 1.0 / (1.0 - used);
      if (cilab::classify({rem, r}) != HullPosition::Interior) continue;
      if (!moment_split(rem, r, gen, w)) continue;
      for (double& wi : w) wi *= (1.0 - used);
      gen.insert(gen.end(), egen.begin(), egen.end());
      w.insert(w.end(), ew.begin(), ew.end());
      jitter_collisions(gen, r, rng);
      // jitter may have moved a generator; redistribute by re-solving when
      // the count matches the barycentric system size
      if (int(gen.size()) == count) {
        std::vector<double> w2;
        if (solve_barycentric(q.point, gen, w2)) w = std::move(w2);
      }
    }

    bool ok = true;
    for (double wi : w)
      if (!(wi > kWeightFloor && wi < 1.0)) {
        ok = false;
        break;
      }
    if (!ok) continue;

    CaratheodoryDecomposition d;
    d.weights = std::move(w);
    d.generators = std::move(gen);
    d.r = r;
    // Guard against an ill-conditioned solve slipping through.
    EulerPoint back = d.recombine();
    double err = (back.v - q.point.v).norm() + (back.u - q.point.u).max_abs();
    if (err > 1e-9 * std::max(1.0, r * r)) continue;
    return d;
  }
  throw DecompositionFailed("caratheodory search exhausted its retry budget");
}

EulerPoint AdmissibleSegment::endpoint(int sign) const {
  EulerPoint e = midpoint;
  e.v += double(sign) * dir_v;
  e.u += double(sign) * dir_u;
  return e;
}

AdmissibleSegment admissible_segment(const HullQuery& q, uint64_t seed) {
  const int n = q.point.dim();
  const int nn = state_space_dim(n);

  for (int retry = 0; retry < 64; ++retry) {
    CaratheodoryDecomposition d = caratheodory_decompose(q, mix_seed(seed, uint64_t(retry)));

    size_t i1 = 0;
    for (size_t i = 1; i < d.weights.size(); ++i)
      if (d.weights[i] > d.weights[i1]) i1 = i;

    size_t ij = (i1 == 0) ? 1 : 0;
    double best = -1.0;
    for (size_t i = 0; i < d.weights.size(); ++i) {
      if (i == i1) continue;
      double s = d.weights[i] * (d.generators[i] - d.generators[i1]).norm();
      if (s >= best) {  // largest index wins exact ties
        best = s;
        ij = i;
      }
    }

    AdmissibleSegment seg;
    seg.midpoint = q.point;
    seg.a = d.generators[ij];
    seg.b = d.generators[i1];
    seg.lambda = d.weights[ij];
    seg.r = q.r;
    seg.dir_v = 0.5 * seg.lambda * (seg.a - seg.b);
    seg.dir_u = 0.5 * seg.lambda *
                (traceless_product(seg.a, seg.a) - traceless_product(seg.b, seg.b));

    const double bound =
        (q.r * q.r - q.point.v.norm2()) / (4.0 * nn * q.r);
    if (seg.dir_v.norm() < bound - 1e-12) continue;
    if (classify({seg.endpoint(+1), q.r}) != HullPosition::Interior) continue;
    if (classify({seg.endpoint(-1), q.r}) != HullPosition::Interior) continue;
    return seg;
  }
  throw DecompositionFailed("admissible_segment could not certify a segment");
}

}  // namespace cilab
