#pragma once

#include <cstdint>
#include <random>

#include "cilab/linalg.hpp"

namespace cilab {

/// Derives independent sub-seeds from (seed, stream index) so that
/// per-cell randomized searches are reproducible and order-independent.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Vec random_unit_vector(Rng& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  double s = 0;
  do {
    for (int i = 0; i < n; ++i) v[i] = g(rng);
    s = v.norm();
  } while (s < 1e-12);
  return v * (1.0 / s);
}

/// Halton sequence (first point has index 1) for quasi-random sample plans.
class Halton {
 public:
  explicit Halton(int dim, uint64_t start = 1) : dim_(dim), index_(start) {}

  Vec next() {
    static constexpr int primes[9] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    Vec p(dim_);
    for (int d = 0; d < dim_; ++d) p[d] = radical_inverse(index_, primes[d]);
    ++index_;
    return p;
  }

 private:
  static double radical_inverse(uint64_t i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
      f /= base;
      r += f * double(i % uint64_t(base));
      i /= uint64_t(base);
    }
    return r;
  }
  int dim_;
  uint64_t index_;
};

}  // namespace cilab
