#pragma once

#include "cilab/grid.hpp"
#include "cilab/states.hpp"

namespace cilab {

struct DegenerateGenerators : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pair of equal-speed velocities a != +-b generating a plane-wave direction.
struct WaveGenerators {
  Vec a, b;

  WaveGenerators() = default;
  WaveGenerators(Vec a_, Vec b_);
  int n() const { return a.dim(); }
};

/// Oscillation direction eta in R^{n+1}; never parallel to e_{n+1}.
Vec eta(const WaveGenerators& g);

/// The cubic matrix symbol A(xi) = R xi (sym) Q(xi) xi with
/// R = a (x) b - b (x) a and Q(xi) = xi (x) e_{n+1} - e_{n+1} (x) xi.
struct PotentialSymbol {
  WaveGenerators generators;
};

LiftedMatrix symbol_eval(const PotentialSymbol& s, const Vec& xi);

/// Lift of the Euler-state difference U_a - U_b (the plateau amplitude).
LiftedMatrix state_difference(const WaveGenerators& g);

/// One localized plane-wave perturbation: the triple
///   (v,u)(y) = A(d)[ amplitude * phi(y) * N^-3 cos(N eta . y) ]
/// evaluated in closed form by a third-order Leibniz expansion, so the
/// linear system holds to machine precision and q is identically zero.
class WaveAtom {
 public:
  WaveAtom() = default;
  WaveAtom(WaveGenerators g, double amplitude, int frequency, CutoffProfile cutoff);

  const WaveGenerators& generators() const { return gen_; }
  const Vec& direction() const { return eta_; }
  double amplitude() const { return amplitude_; }
  int frequency() const { return n_freq_; }
  const CutoffProfile& cutoff() const { return cutoff_; }

  /// Plateau value scale: amplitude * (a - b, a x a - b x b).
  const ReynoldsTriple& plateau_direction() const { return plateau_dir_; }

  ReynoldsTriple eval(const Vec& x, double t) const;

  /// Evaluation from precomputed per-axis cutoff jets and phase parts;
  /// jets[0..n-1] spatial, jets[n] time; phase = N eta . (x,t).
  ReynoldsTriple eval_from_jets(const Jet3* jets, double phase) const;

  bool supports(const Vec& x, double t) const { return cutoff_.supports(x, t); }
  bool on_plateau(const Vec& x, double t) const { return cutoff_.on_plateau(x, t); }

  /// Largest spatial wavenumber |N eta_j| over spatial axes.
  double max_space_wavenumber() const;
  double time_wavenumber() const;

 private:
  WaveGenerators gen_;
  Vec eta_;          // dim n+1
  double amplitude_ = 0;
  int n_freq_ = 0;
  CutoffProfile cutoff_;
  std::array<double, (kMaxDim) * (kMaxDim)> rdata_{};  // antisymmetric R
  ReynoldsTriple plateau_dir_;
  int n_ = 0;

  double r_entry(int i, int j) const { return rdata_[size_t(i * (n_ + 1) + j)]; }
};

struct AtomResidualReport {
  double divergence_max = 0;   // finite-difference div of the lifted field
  double symmetry_defect = 0;  // exact-representation checks
  double corner_defect = 0;
  double trace_defect = 0;
  double spacing = 0;
};

/// Finite-difference residual of the lifted field on a lattice inside
/// `window` (space) x [t0, t1]; `points` samples per axis, FD step `delta`.
AtomResidualReport atom_residual(const WaveAtom& w, const Box& window, double t0,
                                 double t1, int points, double delta);

/// Exact space integral of sin^2(N eta . (x, t)) over the box B at time t.
double sin_sq_average(const Box& B, const Vec& eta, double n_freq, double t);

}  // namespace cilab
