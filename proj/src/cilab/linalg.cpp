#include "cilab/linalg.hpp"

#include <algorithm>
#include <vector>

namespace cilab {

namespace {

double off_diag_frobenius(const SymMat& m) {
  double s = 0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i + 1; j < m.dim(); ++j) s += 2.0 * m(i, j) * m(i, j);
  return std::sqrt(s);
}

// Largest eigenvalue of a 2x2 symmetric matrix.
double lambda_max_2(const SymMat& m) {
  double mean = 0.5 * (m(0, 0) + m(1, 1));
  double d = 0.5 * (m(0, 0) - m(1, 1));
  return mean + std::hypot(d, m(0, 1));
}

// Trigonometric solution of the characteristic cubic (all roots real).
double lambda_max_3(const SymMat& m) {
  double q = m.trace() / 3.0;
  double p2 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double e = m(i, j) - (i == j ? q : 0.0);
      p2 += e * e;
    }
  double p = std::sqrt(p2 / 6.0);
  if (p < 1e-300) return q;  // multiple of the identity
  // r = det((m - q I)/p) / 2, clamped against roundoff
  double b[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (m(i, j) - (i == j ? q : 0.0)) / p;
  double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
               b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
               b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  double r = std::clamp(det / 2.0, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi);
}

}  // namespace

EigenSym sym_eigen(SymMat m, double threshold, int max_sweeps) {
  const int n = m.dim();
  // accumulated rotations, column k = eigenvector k (dense, not symmetric)
  std::vector<double> vc(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) vc[size_t(i) * n + i] = 1.0;

  const double scale = std::max(m.frobenius(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diag_frobenius(m) <= threshold * scale) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = m(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        double app = m(p, p), aqq = m(q, q);
        m.set(p, q, 0.0);
        m.set(p, p, app - t * apq);
        m.set(q, q, aqq + t * apq);
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            double arp = m(r, p), arq = m(r, q);
            m.set(r, p, arp - s * (arq + tau * arp));
            m.set(r, q, arq + s * (arp - tau * arq));
          }
          double vrp = vc[size_t(r) * n + p], vrq = vc[size_t(r) * n + q];
          vc[size_t(r) * n + p] = vrp - s * (vrq + tau * vrp);
          vc[size_t(r) * n + q] = vrq + s * (vrp - tau * vrq);
        }
      }
  }

  // Sort ascending by eigenvalue, permuting columns alongside.
  std::array<int, kMaxDim> idx{};
  for (int i = 0; i < n; ++i) idx[size_t(i)] = i;
  std::sort(idx.begin(), idx.begin() + n,
            [&](int a, int b) { return m(a, a) < m(b, b); });

  EigenSym out;
  out.values = Vec(n);
  out.vectors.resize(size_t(n), Vec(n));
  for (int k = 0; k < n; ++k) {
    out.values[k] = m(idx[size_t(k)], idx[size_t(k)]);
    for (int i = 0; i < n; ++i)
      out.vectors[size_t(k)][i] = vc[size_t(i) * n + idx[size_t(k)]];
  }
  return out;
}

double lambda_max(const SymMat& m) {
  switch (m.dim()) {
    case 1:
      return m(0, 0);
    case 2:
      return lambda_max_2(m);
    case 3:
      return lambda_max_3(m);
    default: {
      EigenSym e = sym_eigen(m);
      return e.values[m.dim() - 1];
    }
  }
}

double lambda_min(const SymMat& m) {
  SymMat neg = m;
  neg *= -1.0;
  return -lambda_max(neg);
}

bool solve_linear(std::vector<double>& a, std::vector<double>& b, int dim) {
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    for (int r = col + 1; r < dim; ++r)
      if (std::fabs(a[size_t(r) * dim + col]) > std::fabs(a[size_t(piv) * dim + col]))
        piv = r;
    if (std::fabs(a[size_t(piv) * dim + col]) < 1e-13) return false;
    if (piv != col) {
      for (int c = 0; c < dim; ++c)
        std::swap(a[size_t(piv) * dim + c], a[size_t(col) * dim + c]);
      std::swap(b[size_t(piv)], b[size_t(col)]);
    }
    double inv = 1.0 / a[size_t(col) * dim + col];
    for (int r = col + 1; r < dim; ++r) {
      double f = a[size_t(r) * dim + col] * inv;
      if (f == 0.0) continue;
      a[size_t(r) * dim + col] = 0.0;
      for (int c = col + 1; c < dim; ++c) a[size_t(r) * dim + c] -= f * a[size_t(col) * dim + c];
      b[size_t(r)] -= f * b[size_t(col)];
    }
  }
  for (int r = dim - 1; r >= 0; --r) {
    double s = b[size_t(r)];
    for (int c = r + 1; c < dim; ++c) s -= a[size_t(r) * dim + c] * b[size_t(c)];
    b[size_t(r)] = s / a[size_t(r) * dim + r];
  }
  return true;
}

}  // namespace cilab
