#pragma once

#include "cilab/linalg.hpp"

namespace cilab {

/// Trace-free symmetric n x n matrix. Stores the strict upper triangle plus
/// the first n-1 diagonal entries; the last diagonal entry is reconstructed
/// as minus their sum, so the trace is zero by representation and cannot
/// drift under long sums of wave contributions.
class TracelessSym {
 public:
  TracelessSym() = default;
  explicit TracelessSym(int n) : n_(n) {
    if (n < 2 || n > kMaxDim) throw DimensionMismatch("TracelessSym dimension");
    c_.fill(0.0);
  }

  /// Projects a symmetric matrix onto its traceless part.
  static TracelessSym traceless_part(const SymMat& m) {
    TracelessSym u(m.dim());
    double q = m.trace() / m.dim();
    for (int i = 0; i < m.dim() - 1; ++i) u.set_diag(i, m(i, i) - q);
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i + 1; j < m.dim(); ++j) u.set_off(i, j, m(i, j));
    return u;
  }

  /// Validates that m is traceless within tol (relative to its magnitude).
  static TracelessSym from_symmetric(const SymMat& m, double tol = 1e-12) {
    if (std::fabs(m.trace()) > tol * std::max(1.0, m.max_abs()))
      throw NotSymmetric("matrix has nonzero trace");
    return traceless_part(m);
  }

  int dim() const { return n_; }

  double operator()(int i, int j) const {
    if (i == j) return diag(i);
    return c_[size_t(off_index(i, j))];
  }

  void set_off(int i, int j, double v) {
    if (i == j) throw std::logic_error("set_off on diagonal");
    c_[size_t(off_index(i, j))] = v;
  }
  void set_diag(int i, double v) {
    if (i == n_ - 1) throw std::logic_error("last diagonal entry is dependent");
    c_[size_t(noff() + i)] = v;
  }
  double diag(int i) const {
    if (i < n_ - 1) return c_[size_t(noff() + i)];
    double s = 0;
    for (int k = 0; k < n_ - 1; ++k) s += c_[size_t(noff() + k)];
    return -s;
  }

  SymMat to_sym() const {
    SymMat m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) m.set(i, j, (*this)(i, j));
    return m;
  }

  /// Number of free coefficients, n(n+1)/2 - 1.
  int packed_size() const { return noff() + n_ - 1; }
  double packed(int k) const { return c_[size_t(k)]; }
  void set_packed(int k, double v) { c_[size_t(k)] = v; }

  TracelessSym& operator+=(const TracelessSym& o) {
    require_same(o);
    for (int k = 0; k < packed_size(); ++k) c_[size_t(k)] += o.c_[size_t(k)];
    return *this;
  }
  TracelessSym& operator-=(const TracelessSym& o) {
    require_same(o);
    for (int k = 0; k < packed_size(); ++k) c_[size_t(k)] -= o.c_[size_t(k)];
    return *this;
  }
  TracelessSym& operator*=(double s) {
    for (int k = 0; k < packed_size(); ++k) c_[size_t(k)] *= s;
    return *this;
  }
  friend TracelessSym operator+(TracelessSym a, const TracelessSym& b) { return a += b; }
  friend TracelessSym operator-(TracelessSym a, const TracelessSym& b) { return a -= b; }
  friend TracelessSym operator*(double s, TracelessSym a) { return a *= s; }

  double max_abs() const {
    double m = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) m = std::max(m, std::fabs((*this)(i, j)));
    return m;
  }

  void require_same(const TracelessSym& o) const {
    if (n_ != o.n_) throw DimensionMismatch("TracelessSym dimensions differ");
  }

 private:
  int noff() const { return n_ * (n_ - 1) / 2; }
  int off_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    // row-major strict upper triangle
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }
  std::array<double, kMaxDim*(kMaxDim + 1) / 2> c_{};
  int n_ = 0;
};

/// A point (v, u) of the state space R^n x S_0^n.
struct EulerPoint {
  Vec v;
  TracelessSym u;

  EulerPoint() = default;
  EulerPoint(Vec v_, TracelessSym u_) : v(std::move(v_)), u(std::move(u_)) {
    if (v.dim() != u.dim()) throw DimensionMismatch("EulerPoint components");
  }
  int dim() const { return v.dim(); }

  EulerPoint& operator+=(const EulerPoint& o) {
    v += o.v;
    u += o.u;
    return *this;
  }
  EulerPoint& operator-=(const EulerPoint& o) {
    v -= o.v;
    u -= o.u;
    return *this;
  }
  EulerPoint& operator*=(double s) {
    v *= s;
    u *= s;
    return *this;
  }
  friend EulerPoint operator+(EulerPoint a, const EulerPoint& b) { return a += b; }
  friend EulerPoint operator-(EulerPoint a, const EulerPoint& b) { return a -= b; }
  friend EulerPoint operator*(double s, EulerPoint a) { return a *= s; }
};

/// Value of a (v, u, q) triple for the relaxed linear system.
struct ReynoldsTriple {
  Vec v;
  TracelessSym u;
  double q = 0.0;

  ReynoldsTriple() = default;
  ReynoldsTriple(Vec v_, TracelessSym u_, double q_)
      : v(std::move(v_)), u(std::move(u_)), q(q_) {
    if (v.dim() != u.dim()) throw DimensionMismatch("ReynoldsTriple components");
  }
  static ReynoldsTriple zero(int n) { return {Vec(n), TracelessSym(n), 0.0}; }
  int dim() const { return v.dim(); }

  ReynoldsTriple& operator+=(const ReynoldsTriple& o) {
    v += o.v;
    u += o.u;
    q += o.q;
    return *this;
  }
  friend ReynoldsTriple operator+(ReynoldsTriple a, const ReynoldsTriple& b) { return a += b; }
};

/// The (n+1) x (n+1) lift U = (u + q I, v; v, 0).
struct LiftedMatrix {
  SymMat m;  // dimension n+1
  int n = 0;
};

/// Traceless symmetrized tensor product v o w (the paper's ring product).
TracelessSym traceless_product(const Vec& v, const Vec& w);

/// Generalized energy density e(v,u) = (n/2) lambda_max(v (x) v - u).
double energy_density(const EulerPoint& p);

/// The Euler state (v, v o v) of a velocity.
EulerPoint euler_state(const Vec& v);

LiftedMatrix lift(const ReynoldsTriple& t);
ReynoldsTriple unlift(const LiftedMatrix& m);

/// Pressure of the exact correspondence, p = q - |v|^2 / n.
double pressure_recovery(const Vec& v, double q);

}  // namespace cilab
