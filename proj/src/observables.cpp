#include "ym/observables.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ym/lattice.h"
#include "ym/parallel.h"

namespace ym {

namespace {

constexpr double kPi = std::numbers::pi;

double a4_of(const Geometry &g) {
  double a2 = g.a * g.a;
  return a2 * a2;
}

}  // namespace

std::tuple<double, double, double> ym_energies(const AdjTwoForm &F) {
  const Geometry &g = F.geo;
  double a4 = a4_of(g);
  double fp2 = 0.0, fm2 = 0.0;
  // dual index/sign tables as in forms.cpp
  static constexpr int dual[6] = {5, 4, 3, 2, 1, 0};
  static constexpr double dsign[6] = {1.0, -1.0, 1.0, 1.0, -1.0, 1.0};
  fp2 = 0.5 * a4 * parallel_sum(g.volume(), [&](std::int64_t s) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) {
      Algebra plus = (F(s, p) + F(s, dual[p]) * dsign[p]) * 0.5;
      acc += su2_inner(plus, plus);
    }
    return acc;
  });
  fm2 = 0.5 * a4 * parallel_sum(g.volume(), [&](std::int64_t s) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) {
      Algebra minus = (F(s, p) - F(s, dual[p]) * dsign[p]) * 0.5;
      acc += su2_inner(minus, minus);
    }
    return acc;
  });
  return {fp2 + fm2, fp2, fm2};
}

std::tuple<double, double, double> ym_energies(const LinkField &U) {
  return ym_energies(clover_two_form(U));
}

double topological_charge(const AdjTwoForm &F) {
  const Geometry &g = F.geo;
  double a4 = a4_of(g);
  double s8 = parallel_sum(g.volume(), [&](std::int64_t s) {
    return su2_inner(F(s, 0), F(s, 5)) - su2_inner(F(s, 1), F(s, 4)) + su2_inner(F(s, 2), F(s, 3));
  });
  return -(a4 / (8.0 * kPi * kPi)) * s8;
}

double topological_charge(const LinkField &U) {
  return topological_charge(clover_two_form(U));
}

double energy_formula_audit(const LinkField &U) {
  AdjTwoForm F = clover_two_form(U);
  auto [f2, fp2, fm2] = ym_energies(F);
  double q = topological_charge(F);
  return std::abs(f2 - 2.0 * fp2 - 8.0 * kPi * kPi * q);
}

void densities(const AdjTwoForm &F, std::vector<double> &full, std::vector<double> &plus) {
  const Geometry &g = F.geo;
  full.resize(g.volume());
  plus.resize(g.volume());
  static constexpr int dual[6] = {5, 4, 3, 2, 1, 0};
  static constexpr double dsign[6] = {1.0, -1.0, 1.0, 1.0, -1.0, 1.0};
  parallel_for(g.volume(), [&](std::int64_t s) {
    double df = 0.0, dp = 0.0;
    for (int p = 0; p < 6; ++p) {
      df += su2_inner(F(s, p), F(s, p));
      Algebra pl = (F(s, p) + F(s, dual[p]) * dsign[p]) * 0.5;
      dp += su2_inner(pl, pl);
    }
    full[s] = 0.5 * df;
    plus[s] = 0.5 * dp;
  });
}

std::pair<double, double> max_densities(const LinkField &U) {
  AdjTwoForm F = clover_two_form(U);
  std::vector<double> full, plus;
  densities(F, full, plus);
  auto n = static_cast<std::int64_t>(full.size());
  double mf = parallel_max(n, [&](std::int64_t i) { return full[i]; });
  double mp = parallel_max(n, [&](std::int64_t i) { return plus[i]; });
  return {mf, mp};
}

std::pair<double, double> local_ball_energy(const LinkField &U, const std::array<int, 4> &x0, double R) {
  const Geometry &g = U.geo;
  if (!(R > 0.0) || R > g.r0()) throw std::invalid_argument("local_ball_energy: need 0 < R <= R0");
  AdjTwoForm F = clover_two_form(U);
  std::vector<double> full, plus;
  densities(F, full, plus);
  double a4 = a4_of(g);
  double ef = 0.0, ep = 0.0;
  for (std::int64_t s = 0; s < g.volume(); ++s) {
    if (g.torus_dist(s, x0) <= R) {
      ef += full[s];
      ep += plus[s];
    }
  }
  return {a4 * ef, a4 * ep};
}

std::optional<ConcentrationResult> concentration_scan(const std::vector<double> &density,
                                                      const Geometry &geo, double eps0,
                                                      const std::vector<double> &R_grid,
                                                      int stride) {
  if (R_grid.empty()) throw std::invalid_argument("concentration_scan: empty R grid");
  for (size_t i = 0; i + 1 < R_grid.size(); ++i)
    if (R_grid[i + 1] < R_grid[i]) throw std::invalid_argument("concentration_scan: grid not ascending");
  if (R_grid.back() > geo.r0()) throw std::invalid_argument("concentration_scan: R exceeds R0");
  if (stride < 1) stride = 1;
  double a4 = a4_of(geo);

  // offsets (coordinate displacements) within the largest radius, sorted by distance
  double rmax = R_grid.back() / geo.a;
  int w = static_cast<int>(std::floor(rmax));
  struct Off {
    double r;
    std::array<int, 4> d;
  };
  std::vector<Off> offs;
  for (int d0 = -w; d0 <= w; ++d0)
    for (int d1 = -w; d1 <= w; ++d1)
      for (int d2 = -w; d2 <= w; ++d2)
        for (int d3 = -w; d3 <= w; ++d3) {
          double r = std::sqrt(double(d0) * d0 + double(d1) * d1 + double(d2) * d2 + double(d3) * d3);
          if (r <= rmax) offs.push_back({r * geo.a, {d0, d1, d2, d3}});
        }
  std::sort(offs.begin(), offs.end(), [](const Off &a, const Off &b) { return a.r < b.r; });

  std::vector<std::int64_t> centers;
  for (std::int64_t s = 0; s < geo.volume(); ++s) {
    auto c = geo.coords(s);
    if (c[0] % stride || c[1] % stride || c[2] % stride || c[3] % stride) continue;
    centers.push_back(s);
  }

  // cumulative ball energies per center, walking offsets in radius order
  for (double R : R_grid) {
    double best = -1.0;
    std::int64_t best_center = -1;
    std::vector<double> vals(centers.size());
    parallel_for(static_cast<std::int64_t>(centers.size()), [&](std::int64_t ci) {
      auto c = geo.coords(centers[ci]);
      double acc = 0.0;
      for (const Off &o : offs) {
        if (o.r > R) break;
        int x0 = (c[0] + o.d[0] + geo.dims[0]) % geo.dims[0];
        int x1 = (c[1] + o.d[1] + geo.dims[1]) % geo.dims[1];
        int x2 = (c[2] + o.d[2] + geo.dims[2]) % geo.dims[2];
        int x3 = (c[3] + o.d[3] + geo.dims[3]) % geo.dims[3];
        acc += density[geo.site(x0, x1, x2, x3)];
      }
      vals[ci] = a4 * acc;
    });
    for (size_t ci = 0; ci < centers.size(); ++ci)
      if (vals[ci] > best) {
        best = vals[ci];
        best_center = centers[ci];
      }
    if (best >= eps0) return ConcentrationResult{R, geo.coords(best_center)};
  }
  return std::nullopt;
}

std::optional<ConcentrationResult> concentration_scan(const LinkField &U, double eps0,
                                                      const std::vector<double> &R_grid,
                                                      int stride) {
  AdjTwoForm F = clover_two_form(U);
  std::vector<double> full, plus;
  densities(F, full, plus);
  return concentration_scan(full, U.geo, eps0, R_grid, stride);
}

namespace {

double smoothstep_down(double s) {
  // 1 at s <= 0 down to 0 at s >= 1, quintic
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 1.0 - (10.0 - (15.0 - 6.0 * s) * s) * s * s * s;
}

}  // namespace

CutoffField log_cutoff(const Geometry &geo, const std::array<int, 4> &x0, double R, double N) {
  if (!(N > 1.0)) throw std::invalid_argument("log_cutoff: need N > 1");
  if (!(R > 0.0) || R > geo.r0()) throw std::invalid_argument("log_cutoff: need 0 < R <= R0");
  CutoffField out;
  out.geo = geo;
  out.x0 = x0;
  out.R = R;
  out.N = N;
  out.beta.resize(geo.volume());
  double logN = std::log(N);
  parallel_for(geo.volume(), [&](std::int64_t s) {
    double r = geo.torus_dist(s, x0);
    if (r <= R / N) {
      out.beta[s] = 1.0;
    } else if (r >= R) {
      out.beta[s] = 0.0;
    } else {
      out.beta[s] = smoothstep_down(std::log(N * r / R) / logN);
    }
  });
  // grad: central differences; hessian: per-direction repeated central difference
  double a = geo.a;
  double sum_g4 = parallel_sum(geo.volume(), [&](std::int64_t s) {
    double g2 = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      double gmu = (out.beta[geo.up(s, mu)] - out.beta[geo.down(s, mu)]) / (2.0 * a);
      g2 += gmu * gmu;
    }
    return g2 * g2;
  });
  double sum_h2 = parallel_sum(geo.volume(), [&](std::int64_t s) {
    double h2 = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      std::int64_t s2u = geo.up(geo.up(s, mu), mu);
      std::int64_t s2d = geo.down(geo.down(s, mu), mu);
      double hmu = (out.beta[s2u] + out.beta[s2d] - 2.0 * out.beta[s]) / (4.0 * a * a);
      h2 += hmu * hmu;
    }
    return h2;
  });
  double a4 = a4_of(geo);
  out.grad_l4 = std::pow(a4 * sum_g4, 0.25);
  out.hess_l2 = std::sqrt(a4 * sum_h2);
  return out;
}

CutoffAudit cutoff_energy_audit(const std::vector<std::pair<double, const LinkField *>> &snapshots,
                                const std::array<int, 4> &x0, double R, double N) {
  if (snapshots.size() < 2) throw std::invalid_argument("cutoff_energy_audit: need >= 2 snapshots");
  const Geometry &geo = snapshots.front().second->geo;
  for (auto &sn : snapshots)
    if (!(sn.second->geo == geo)) throw std::invalid_argument("cutoff_energy_audit: geometry mismatch");

  CutoffAudit audit;
  double a4 = a4_of(geo);
  std::vector<double> sup_p(snapshots.size()), en_ball(snapshots.size());
  for (size_t i = 0; i < snapshots.size(); ++i) {
    AdjTwoForm F = clover_two_form(*snapshots[i].second);
    std::vector<double> full, plus;
    densities(F, full, plus);
    double sp = 0.0, eb = 0.0, e_inner = 0.0;
    for (std::int64_t s = 0; s < geo.volume(); ++s) {
      double r = geo.torus_dist(s, x0);
      if (r <= R) {
        sp = std::max(sp, std::sqrt(plus[s]));
        eb += full[s];
      }
      if (r <= R / N) e_inner += full[s];
    }
    sup_p[i] = sp;
    en_ball[i] = a4 * eb;
    if (i == 0) audit.rhs_init = en_ball[i];
    if (i + 1 == snapshots.size()) audit.lhs = a4 * e_inner;
  }
  for (size_t i = 0; i + 1 < snapshots.size(); ++i) {
    double dt = snapshots[i + 1].first - snapshots[i].first;
    audit.integral_sup += 0.5 * dt * (sup_p[i] + sup_p[i + 1]);
    audit.integral_sup_en += 0.5 * dt * (sup_p[i] * en_ball[i] + sup_p[i + 1] * en_ball[i + 1]);
  }
  double sqlog = std::sqrt(std::log(N));
  double slack = audit.lhs - audit.rhs_init - audit.integral_sup_en / sqlog;
  audit.holds_with_zero = slack <= 0.0;
  audit.c_min = (slack <= 0.0 || audit.integral_sup <= 0.0)
                    ? 0.0
                    : slack * sqlog / audit.integral_sup;
  return audit;
}

DecayFit decay_fit(const std::vector<std::pair<double, double>> &series, double t_lo, double t_hi) {
  std::vector<std::pair<double, double>> pts;
  for (auto &[t, v] : series)
    if (t >= t_lo && t <= t_hi) {
      if (!(v > 0.0)) throw std::invalid_argument("decay_fit: nonpositive value in window");
      pts.emplace_back(t, std::log(v));
    }
  if (pts.size() < 4) throw std::invalid_argument("decay_fit: need >= 4 samples in window");
  double n = static_cast<double>(pts.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0, syy = 0.0;
  for (auto &[t, y] : pts) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    syy += y * y;
  }
  double vt = stt - st * st / n;
  double vy = syy - sy * sy / n;
  double cv = sty - st * sy / n;
  DecayFit fit;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  double slope = (vt > 0.0) ? cv / vt : 0.0;
  fit.rate = -slope;
  fit.intercept = (sy - slope * st) / n;
  fit.r_squared = (vt > 0.0 && vy > 0.0) ? (cv * cv) / (vt * vy) : 0.0;
  return fit;
}

ObservableSample sample_observables(const LinkField &U, double t, double scan_eps0,
                                    const std::vector<double> *scan_grid, int scan_stride) {
  ObservableSample out;
  out.t = t;
  AdjTwoForm F = clover_two_form(U);
  auto [f2, fp2, fm2] = ym_energies(F);
  out.F_norm2 = f2;
  out.Fp_norm2 = fp2;
  out.Fm_norm2 = fm2;
  out.Q = topological_charge(F);
  std::vector<double> full, plus;
  densities(F, full, plus);
  auto n = static_cast<std::int64_t>(full.size());
  out.max_density = parallel_max(n, [&](std::int64_t i) { return full[i]; });
  out.max_density_p = parallel_max(n, [&](std::int64_t i) { return plus[i]; });
  if (scan_grid && !scan_grid->empty() && scan_eps0 > 0.0) {
    auto res = concentration_scan(full, U.geo, scan_eps0, *scan_grid, scan_stride);
    if (res) out.conc_radius = res->radius;
  }
  std::vector<Algebra> Z;
  wilson_force_field(U, Z);
  double a4 = a4_of(U.geo);
  out.force_norm2 = a4 * parallel_sum(static_cast<std::int64_t>(Z.size()),
                                      [&](std::int64_t i) { return Z[i].norm2(); });
  return out;
}

}  // namespace ym
