#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cilab {

// Dimensions stay tiny (n <= 8 for states, n+1 <= 9 for lifted matrices),
// so vectors and matrices live on the stack with a runtime dimension.
inline constexpr int kMaxDim = 9;

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSymmetric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense real vector of runtime dimension (<= kMaxDim).
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim, double fill = 0.0) : dim_(check_dim(dim)) {
    c_.fill(0.0);
    for (int i = 0; i < dim_; ++i) c_[i] = fill;
  }
  Vec(std::initializer_list<double> xs) : dim_(check_dim(int(xs.size()))) {
    c_.fill(0.0);
    int i = 0;
    for (double x : xs) c_[i++] = x;
  }

  int dim() const { return dim_; }
  double& operator[](int i) { return c_[size_t(i)]; }
  double operator[](int i) const { return c_[size_t(i)]; }

  Vec& operator+=(const Vec& o) {
    require_same(o);
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    require_same(o);
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }

  double dot(const Vec& o) const {
    require_same(o);
    double s = 0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  void require_same(const Vec& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("vector dimensions differ");
  }

 private:
  static int check_dim(int d) {
    if (d < 0 || d > kMaxDim) throw DimensionMismatch("dimension out of range");
    return d;
  }
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

/// Dense symmetric matrix; symmetry is maintained by set() writing both
/// triangles, so only construction from raw data can violate it.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(int dim) : dim_(check_dim(dim)) { a_.fill(0.0); }

  static SymMat identity(int dim) {
    SymMat m(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
  }

  /// Validates symmetry of row-major data within `tol` (relative to the
  /// largest entry) and symmetrizes the representation.
  static SymMat from_dense(const double* data, int dim, double tol = 1e-12) {
    SymMat m(dim);
    double scale = 0.0;
    for (int i = 0; i < dim * dim; ++i) scale = std::max(scale, std::fabs(data[i]));
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        double a = data[i * dim + j], b = data[j * dim + i];
        if (std::fabs(a - b) > tol * std::max(1.0, scale))
          throw NotSymmetric("matrix not symmetric within tolerance");
        m.set(i, j, 0.5 * (a + b));
      }
    return m;
  }

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[size_t(i * dim_ + j)]; }
  void set(int i, int j, double v) {
    a_[size_t(i * dim_ + j)] = v;
    a_[size_t(j * dim_ + i)] = v;
  }
  void add(int i, int j, double v) { set(i, j, (*this)(i, j) + v); }

  SymMat& operator+=(const SymMat& o) {
    require_same(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  SymMat& operator-=(const SymMat& o) {
    require_same(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  SymMat& operator*=(double s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator*(double s, SymMat a) { return a *= s; }

  double trace() const {
    double t = 0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }
  double max_abs() const {
    double m = 0;
    for (int i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::fabs(a_[size_t(i)]));
    return m;
  }
  double frobenius() const {
    double s = 0;
    for (int i = 0; i < dim_ * dim_; ++i) s += a_[size_t(i)] * a_[size_t(i)];
    return std::sqrt(s);
  }
  Vec apply(const Vec& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("matrix/vector dim");
    Vec y(dim_);
    for (int i = 0; i < dim_; ++i) {
      double s = 0;
      for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  void require_same(const SymMat& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("matrix dimensions differ");
  }

 private:
  static int check_dim(int d) {
    if (d < 1 || d > kMaxDim) throw DimensionMismatch("dimension out of range");
    return d;
  }
  std::array<double, kMaxDim * kMaxDim> a_{};
  int dim_ = 0;
};

inline SymMat outer_sym(const Vec& v, const Vec& w) {
  v.require_same(w);
  SymMat m(v.dim());
  for (int i = 0; i < v.dim(); ++i)
    for (int j = i; j < v.dim(); ++j) m.set(i, j, 0.5 * (v[i] * w[j] + v[j] * w[i]));
  return m;
}

inline SymMat outer(const Vec& v) { return outer_sym(v, v); }

struct EigenSym {
  Vec values;                // ascending
  std::vector<Vec> vectors;  // vectors[k] is the unit eigenvector of values[k]
};

/// Cyclic Jacobi eigendecomposition. Off-diagonal Frobenius threshold is
/// relative to the matrix scale; at most `max_sweeps` full sweeps.
EigenSym sym_eigen(SymMat m, double threshold = 1e-13, int max_sweeps = 100);

/// Largest eigenvalue: closed form for dim 1..3, cyclic Jacobi above.
double lambda_max(const SymMat& m);
double lambda_min(const SymMat& m);

/// Solves a.x = b in place by Gaussian elimination with partial pivoting.
/// a is row-major dim x dim. Returns false when the pivot collapses.
bool solve_linear(std::vector<double>& a, std::vector<double>& b, int dim);

}  // namespace cilab
