#pragma once

#include <vector>

#include "cilab/random.hpp"
#include "cilab/states.hpp"

namespace cilab {

struct PointNotInterior : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DecompositionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class HullPosition { Interior, Boundary, Outside };

struct HullQuery {
  EulerPoint point;
  double r = 1.0;  // speed, > 0
};

/// Classification against K_r^co = { e(v,u) <= r^2/2 } with a scale-aware
/// band of width 1e-10 r^2 around the boundary.
HullPosition classify(const HullQuery& q);

/// Smallest speed rho with (v,u) in K_rho^co, i.e. sqrt(2 e(v,u)).
double min_speed(const EulerPoint& p);

/// Barycentric decomposition over Euler states of speed r:
/// point = sum lambda_i (v_i, v_i o v_i), lambda_i in (0,1), sum = 1.
struct CaratheodoryDecomposition {
  std::vector<double> weights;
  std::vector<Vec> generators;  // |v_i| = r
  double r = 0.0;

  EulerPoint recombine() const;
};

/// State-space dimension N = n(n+3)/2 - 1.
inline int state_space_dim(int n) { return n * (n + 3) / 2 - 1; }

/// Randomized Caratheodory search: N+1 unit-sphere velocities biased toward
/// v/|v|, barycentric linear solve, accept when every weight lies in
/// (1e-6, 1). Up to 500 fresh attempts; colliding generators are jittered
/// by 1e-3 r before the solve.
CaratheodoryDecomposition caratheodory_decompose(const HullQuery& q, uint64_t seed);

/// Segment [midpoint - dir, midpoint + dir] with dir = (lambda/2)(a - b,
/// a (x) a - b (x) b); both endpoints strictly inside K_r^co.
struct AdmissibleSegment {
  EulerPoint midpoint;
  Vec dir_v;
  TracelessSym dir_u;
  Vec a, b;        // generators, |a| = |b| = r, a != +-b
  double lambda = 0.0;  // positive multiple: dir = (lambda/2)((a,a x a)-(b,b x b))
  double r = 0.0;

  EulerPoint endpoint(int sign) const;
};

/// Admissible segment through an interior point with the quantitative bound
/// |dir_v| >= (1/(4 N r)) (r^2 - |v|^2), N = n(n+3)/2 - 1.
AdmissibleSegment admissible_segment(const HullQuery& q, uint64_t seed);

}  // namespace cilab
