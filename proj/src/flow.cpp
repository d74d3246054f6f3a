#include "ym/flow.h"

#include <cmath>
#include <stdexcept>

#include "ym/parallel.h"

namespace ym {

void FlowParams::validate(double a) const {
  if (!(step > 0.0)) throw std::invalid_argument("flow: step must be positive");
  if (!adapt && step > c_stab * a * a * (1.0 + 1e-12) && c_stab > 0.0)
    throw std::invalid_argument("flow: step exceeds c_stab * a^2 with adapt off");
  if (!(t_max >= 0.0)) throw std::invalid_argument("flow: t_max must be >= 0");
  if (!(sample_every > 0.0)) throw std::invalid_argument("flow: sample_every must be positive");
}

namespace {

void exp_update(LinkField &U, const std::vector<Algebra> &V, double scale) {
  parallel_for(U.geo.volume(), [&](std::int64_t s) {
    for (int mu = 0; mu < 4; ++mu)
      U(s, mu) = (su2_exp(V[4 * s + mu] * scale) * U(s, mu)).normalized();
  });
}

}  // namespace

LinkField flow_step_euler(const LinkField &U, double eps) {
  if (eps < 0.0) throw std::invalid_argument("flow_step_euler: eps must be >= 0");
  if (eps == 0.0) return U;
  LinkField V = U;
  std::vector<Algebra> Z;
  wilson_force_field(U, Z);
  exp_update(V, Z, eps);
  return V;
}

LinkField flow_step_rk3(const LinkField &U, double eps) {
  if (eps < 0.0) throw std::invalid_argument("flow_step_rk3: eps must be >= 0");
  if (eps == 0.0) return U;
  const std::int64_t n = 4 * U.geo.volume();
  std::vector<Algebra> z0, z1, z2, v(n);

  LinkField W = U;
  wilson_force_field(W, z0);
  exp_update(W, z0, 0.25 * eps);

  wilson_force_field(W, z1);
  parallel_for(n, [&](std::int64_t i) { v[i] = z1[i] * (8.0 / 9.0 * eps) - z0[i] * (17.0 / 36.0 * eps); });
  exp_update(W, v, 1.0);

  wilson_force_field(W, z2);
  parallel_for(n, [&](std::int64_t i) { v[i] = z2[i] * (0.75 * eps) - v[i]; });
  exp_update(W, v, 1.0);
  return W;
}

double adapt_step(const LinkField &U, const FlowParams &params) {
  double a2 = U.geo.a * U.geo.a;
  std::vector<Algebra> Z;
  wilson_force_field(U, Z);
  double zmax = parallel_max(static_cast<std::int64_t>(Z.size()),
                             [&](std::int64_t i) { return Z[i].norm(); });
  double eps = params.step;
  if (zmax > 0.0) eps = std::min(eps, params.c_stab / zmax);
  return std::min(std::max(eps, 1e-6 * a2), 0.1 * a2);
}

Trajectory run_flow(FlowState state, const FlowParams &params, const std::vector<Observer> &observers) {
  params.validate(state.U.geo.a);
  Trajectory traj;

  auto sample = [&](double t) -> const ObservableSample & {
    traj.samples.push_back(sample_observables(state.U, t, params.scan_eps0,
                                              params.scan_grid.empty() ? nullptr : &params.scan_grid,
                                              params.scan_stride));
    return traj.samples.back();
  };
  auto finite = [](const ObservableSample &s) {
    return std::isfinite(s.F_norm2) && std::isfinite(s.Q) && std::isfinite(s.force_norm2);
  };

  const ObservableSample *last = &sample(state.t);
  for (auto &obs : observers) obs(state, *last);
  double next_sample = state.t + params.sample_every;

  traj.reason = StopReason::t_max;
  while (state.t < params.t_max - 1e-12) {
    double eps = params.adapt ? adapt_step(state.U, params) : params.step;
    eps = std::min(eps, params.t_max - state.t);
    state.U = (params.scheme == FlowScheme::rk3) ? flow_step_rk3(state.U, eps)
                                                 : flow_step_euler(state.U, eps);
    state.t += eps;
    ++state.step_count;

    if (state.t + 1e-12 >= next_sample || state.t >= params.t_max - 1e-12) {
      last = &sample(state.t);
      for (auto &obs : observers) obs(state, *last);
      while (next_sample <= state.t + 1e-12) next_sample += params.sample_every;
      if (!finite(*last)) {
        traj.reason = StopReason::nan_abort;
        break;
      }
      if (params.stop_energy >= 0.0 && last->F_norm2 <= params.stop_energy) {
        traj.reason = StopReason::stop_energy;
        break;
      }
      if (params.alarm_enabled) {
        std::vector<double> grid{params.alarm_R};
        auto hit = concentration_scan(state.U, params.alarm_eps0, grid, params.scan_stride);
        if (hit) {
          traj.reason = StopReason::concentration_alarm;
          break;
        }
      }
    }
  }
  traj.t_final = state.t;
  traj.steps = state.step_count;
  return traj;
}

const char *stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::t_max: return "t_max";
    case StopReason::stop_energy: return "stop_energy";
    case StopReason::concentration_alarm: return "concentration_alarm";
    case StopReason::nan_abort: return "nan_abort";
  }
  return "unknown";
}

}  // namespace ym
