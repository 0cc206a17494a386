#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cilab/hull.hpp"
#include "cilab/waves.hpp"

namespace py = pybind11;
using namespace cilab;

namespace {

Vec to_vec(const std::vector<double>& xs) {
  Vec v(int(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i) v[int(i)] = xs[i];
  return v;
}

std::vector<std::vector<double>> sym_to_list(const SymMat& m) {
  std::vector<std::vector<double>> out(size_t(m.dim()), std::vector<double>(size_t(m.dim())));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out[size_t(i)][size_t(j)] = m(i, j);
  return out;
}

SymMat sym_from_list(const std::vector<std::vector<double>>& rows) {
  int n = int(rows.size());
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (int(r.size()) != n) throw DimensionMismatch("matrix rows must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return SymMat::from_dense(flat.data(), n);
}

EulerPoint point_from(const std::vector<double>& v,
                      const std::vector<std::vector<double>>& u) {
  return EulerPoint(to_vec(v), TracelessSym::from_symmetric(sym_from_list(u)));
}

}  // namespace

PYBIND11_MODULE(_cilab, m) {
  m.doc() = "Convex-integration laboratory for the incompressible Euler relaxation";

  m.def("traceless_product",
        [](const std::vector<double>& v, const std::vector<double>& w) {
          return sym_to_list(traceless_product(to_vec(v), to_vec(w)).to_sym());
        },
        py::arg("v"), py::arg("w"));

  m.def("lambda_max",
        [](const std::vector<std::vector<double>>& rows) {
          return lambda_max(sym_from_list(rows));
        },
        py::arg("matrix"));

  m.def("energy_density",
        [](const std::vector<double>& v, const std::vector<std::vector<double>>& u) {
          return energy_density(point_from(v, u));
        },
        py::arg("v"), py::arg("u"));

  m.def("pressure_recovery",
        [](const std::vector<double>& v, double q) {
          return pressure_recovery(to_vec(v), q);
        },
        py::arg("v"), py::arg("q"));

  m.def("lift",
        [](const std::vector<double>& v, const std::vector<std::vector<double>>& u,
           double q) {
          ReynoldsTriple t(to_vec(v), TracelessSym::from_symmetric(sym_from_list(u)), q);
          return sym_to_list(lift(t).m);
        },
        py::arg("v"), py::arg("u"), py::arg("q"));

  m.def("min_speed",
        [](const std::vector<double>& v, const std::vector<std::vector<double>>& u) {
          return min_speed(point_from(v, u));
        },
        py::arg("v"), py::arg("u"));

  m.def("classify",
        [](const std::vector<double>& v, const std::vector<std::vector<double>>& u,
           double r) -> std::string {
          switch (cilab::classify({point_from(v, u), r})) {
            case HullPosition::Interior: return "interior";
            case HullPosition::Boundary: return "boundary";
            default: return "outside";
          }
        },
        py::arg("v"), py::arg("u"), py::arg("r"));

  m.def("caratheodory_decompose",
        [](const std::vector<double>& v, const std::vector<std::vector<double>>& u,
           double r, uint64_t seed) {
          auto d = cilab::caratheodory_decompose({point_from(v, u), r}, seed);
          std::vector<std::vector<double>> gens;
          for (const auto& g : d.generators) {
            std::vector<double> gg(size_t(g.dim()));
            for (int i = 0; i < g.dim(); ++i) gg[size_t(i)] = g[i];
            gens.push_back(std::move(gg));
          }
          return py::make_tuple(d.weights, gens);
        },
        py::arg("v"), py::arg("u"), py::arg("r"), py::arg("seed"));

  m.def("admissible_segment",
        [](const std::vector<double>& v, const std::vector<std::vector<double>>& u,
           double r, uint64_t seed) {
          auto s = cilab::admissible_segment({point_from(v, u), r}, seed);
          std::vector<double> dv(size_t(s.dir_v.dim()));
          for (int i = 0; i < s.dir_v.dim(); ++i) dv[size_t(i)] = s.dir_v[i];
          std::vector<double> a(size_t(s.a.dim())), b(size_t(s.b.dim()));
          for (int i = 0; i < s.a.dim(); ++i) {
            a[size_t(i)] = s.a[i];
            b[size_t(i)] = s.b[i];
          }
          return py::make_tuple(dv, a, b, s.lambda);
        },
        py::arg("v"), py::arg("u"), py::arg("r"), py::arg("seed"));

  m.def("eta",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          Vec e = eta(WaveGenerators(to_vec(a), to_vec(b)));
          std::vector<double> out(size_t(e.dim()));
          for (int i = 0; i < e.dim(); ++i) out[size_t(i)] = e[i];
          return out;
        },
        py::arg("a"), py::arg("b"));

  m.def("symbol_eval",
        [](const std::vector<double>& a, const std::vector<double>& b,
           const std::vector<double>& xi) {
          PotentialSymbol s{WaveGenerators(to_vec(a), to_vec(b))};
          return sym_to_list(symbol_eval(s, to_vec(xi)).m);
        },
        py::arg("a"), py::arg("b"), py::arg("xi"));

  m.def("sin_sq_average",
        [](const std::vector<double>& lo, const std::vector<double>& hi,
           const std::vector<double>& e, double n_freq, double t) {
          Box b{to_vec(lo), to_vec(hi)};
          return sin_sq_average(b, to_vec(e), n_freq, t);
        },
        py::arg("lo"), py::arg("hi"), py::arg("eta"), py::arg("n"), py::arg("t"));
}
