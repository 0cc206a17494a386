#include "cilab/states.hpp"

namespace cilab {

TracelessSym traceless_product(const Vec& v, const Vec& w) {
  v.require_same(w);
  const int n = v.dim();
  TracelessSym u(n);
  const double c = v.dot(w) / n;
  for (int i = 0; i < n - 1; ++i) u.set_diag(i, v[i] * w[i] - c);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u.set_off(i, j, 0.5 * (v[i] * w[j] + v[j] * w[i]));
  return u;
}

double energy_density(const EulerPoint& p) {
  const int n = p.dim();
  SymMat m = outer(p.v);
  m -= p.u.to_sym();
  return 0.5 * n * lambda_max(m);
}

EulerPoint euler_state(const Vec& v) { return {v, traceless_product(v, v)}; }

LiftedMatrix lift(const ReynoldsTriple& t) {
  const int n = t.dim();
  LiftedMatrix out;
  out.n = n;
  out.m = SymMat(n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) out.m.set(i, j, t.u(i, j) + (i == j ? t.q : 0.0));
    out.m.set(i, n, t.v[i]);
  }
  out.m.set(n, n, 0.0);
  return out;
}

ReynoldsTriple unlift(const LiftedMatrix& lm) {
  const int n = lm.n;
  ReynoldsTriple t = ReynoldsTriple::zero(n);
  t.q = 0.0;
  for (int i = 0; i < n; ++i) t.q += lm.m(i, i);
  t.q /= n;
  for (int i = 0; i < n; ++i) t.v[i] = lm.m(i, n);
  for (int i = 0; i < n - 1; ++i) t.u.set_diag(i, lm.m(i, i) - t.q);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t.u.set_off(i, j, lm.m(i, j));
  return t;
}

double pressure_recovery(const Vec& v, double q) { return q - v.norm2() / v.dim(); }

}  // namespace cilab
