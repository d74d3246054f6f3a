#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ym/observables.h"

namespace ym {

enum class FlowScheme { euler, rk3 };

struct FlowParams {
  double step = 0.01;  // in units of a^2 when a = 1
  FlowScheme scheme = FlowScheme::rk3;
  double t_max = 1.0;
  bool adapt = false;
  double c_stab = 0.05;
  double sample_every = 0.1;
  double stop_energy = -1.0;  // < 0: disabled
  // concentration alarm: fires when some ball of radius alarm_R holds >= alarm_eps0
  bool alarm_enabled = false;
  double alarm_eps0 = 0.0;
  double alarm_R = 0.0;
  // per-sample scan settings for the conc_radius column (optional)
  double scan_eps0 = 0.0;
  std::vector<double> scan_grid;
  int scan_stride = 1;

  void validate(double a) const;
};

struct FlowState {
  LinkField U;
  double t = 0.0;
  std::int64_t step_count = 0;
};

enum class StopReason { t_max, stop_energy, concentration_alarm, nan_abort };

struct Trajectory {
  std::vector<ObservableSample> samples;
  StopReason reason = StopReason::t_max;
  double t_final = 0.0;
  std::int64_t steps = 0;
};

LinkField flow_step_euler(const LinkField &U, double eps);
LinkField flow_step_rk3(const LinkField &U, double eps);

// eps = min(params.step, c_stab / max|Z|), clamped to [1e-6 a^2, 0.1 a^2].
double adapt_step(const LinkField &U, const FlowParams &params);

using Observer = std::function<void(const FlowState &, const ObservableSample &)>;

Trajectory run_flow(FlowState state, const FlowParams &params,
                    const std::vector<Observer> &observers = {});

const char *stop_reason_name(StopReason r);

}  // namespace ym
