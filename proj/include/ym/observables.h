#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "ym/forms.h"

namespace ym {

// Conventions (fixed once, used everywhere):
//   pointwise density |F(x)|^2 = (1/2) sum_{mu<nu} <F_munu, F_munu>
//   F_norm2           = a^4 sum_x |F(x)|^2
//   Q                 = -(a^4 / 8 pi^2) sum_x [<F01,F23> - <F02,F13> + <F03,F12>]
// With these, F_norm2 = 8 pi^2 Q + 2 Fp_norm2 is an exact pointwise identity
// and anti-self-dual fields carry Q > 0.

struct ObservableSample {
  double t = 0.0;
  double F_norm2 = 0.0, Fp_norm2 = 0.0, Fm_norm2 = 0.0;
  double Q = 0.0;
  double max_density = 0.0, max_density_p = 0.0;
  std::optional<double> conc_radius;
  double force_norm2 = 0.0;
};

std::tuple<double, double, double> ym_energies(const LinkField &U);
std::tuple<double, double, double> ym_energies(const AdjTwoForm &F);

double topological_charge(const LinkField &U);
double topological_charge(const AdjTwoForm &F);

// |F_norm2 - 2 Fp_norm2 - 8 pi^2 Q|, pure rounding by construction.
double energy_formula_audit(const LinkField &U);

// Pointwise densities (full, plus part), indexed by site.
void densities(const AdjTwoForm &F, std::vector<double> &full, std::vector<double> &plus);

std::pair<double, double> max_densities(const LinkField &U);

// (full, plus) energy over sites within torus distance R of x0.
std::pair<double, double> local_ball_energy(const LinkField &U, const std::array<int, 4> &x0, double R);

struct ConcentrationResult {
  double radius;
  std::array<int, 4> center;
};

// Smallest grid R whose max-over-centers ball energy reaches eps0.
std::optional<ConcentrationResult> concentration_scan(const LinkField &U, double eps0,
                                                      const std::vector<double> &R_grid,
                                                      int stride = 1);
std::optional<ConcentrationResult> concentration_scan(const std::vector<double> &density,
                                                      const Geometry &geo, double eps0,
                                                      const std::vector<double> &R_grid,
                                                      int stride = 1);

// Logarithmic cutoff beta(x) = step(log(N |x-x0| / R) / log N): 1 inside R/N,
// 0 outside R, quintic smooth-step profile in between.
struct CutoffField {
  Geometry geo;
  std::array<int, 4> x0;
  double R = 0.0, N = 0.0;
  std::vector<double> beta;
  double grad_l4 = 0.0;   // || grad beta ||_L4, central differences
  double hess_l2 = 0.0;   // || grad^2 beta ||_L2, per-direction second differences
};

CutoffField log_cutoff(const Geometry &geo, const std::array<int, 4> &x0, double R, double N);

// Audit of the local energy bound across a run: reports the smallest C >= 0
// making  E_inner(T) <= E_outer(0) + int ||F+||_inf (C + ||F||^2_B) dt / sqrt(log N).
struct CutoffAudit {
  double lhs = 0.0;        // inner-ball (R/N) energy at final time
  double rhs_init = 0.0;   // outer-ball (R) energy at initial time
  double integral_sup = 0.0;     // int ||F+||_{L_inf(B_R)} dt
  double integral_sup_en = 0.0;  // int ||F+||_{L_inf(B_R)} ||F||^2_{L2(B_R)} dt
  double c_min = 0.0;
  bool holds_with_zero = false;
};

CutoffAudit cutoff_energy_audit(const std::vector<std::pair<double, const LinkField *>> &snapshots,
                                const std::array<int, 4> &x0, double R, double N);

struct DecayFit {
  double rate = 0.0;       // positive = decay
  double intercept = 0.0;  // log value at t = 0
  double r_squared = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
};

DecayFit decay_fit(const std::vector<std::pair<double, double>> &series, double t_lo, double t_hi);

// Full sample for trajectory rows; scan settings optional.
ObservableSample sample_observables(const LinkField &U, double t, double scan_eps0 = 0.0,
                                    const std::vector<double> *scan_grid = nullptr,
                                    int scan_stride = 1);

}  // namespace ym
