#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <iostream>
#include <vector>

#include "ym/io.h"
#include "ym/spectral.h"

namespace ym {

namespace {

constexpr int kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3;

std::string snapshot_path_at(const std::string &base, double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_t%.6f", t);
  size_t dot = base.rfind('.');
  size_t slash = base.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && slash > dot)) return base + buf;
  return base.substr(0, dot) + buf + base.substr(dot);
}

int cmd_seed(const std::string &config_path, const std::string &out_override) {
  RunConfig cfg = load_config(config_path);
  std::string out = out_override.empty() ? cfg.output_snapshot : out_override;
  if (out.empty()) throw std::runtime_error("config: output.snapshot is required by 'seed'");
  LinkField U = make_seed(cfg.geometry(), cfg.seed);
  write_snapshot(U, 0.0, out);
  std::cout << "wrote " << out << "\n";
  return kOk;
}

int cmd_flow(const std::string &config_path, const std::string &snapshot_path,
             const std::string &csv_override) {
  RunConfig cfg = load_config(config_path);
  FlowState state;
  if (!snapshot_path.empty()) {
    auto [U, t] = read_snapshot(snapshot_path);
    state.U = std::move(U);
    state.t = t;
  } else {
    state.U = make_seed(cfg.geometry(), cfg.seed);
  }
  std::string csv_path = csv_override.empty() ? cfg.output_csv : csv_override;

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
    csv << csv_header() << "\n" << std::flush;
  }
  double next_snap = cfg.snapshot_every > 0.0 ? state.t + cfg.snapshot_every : -1.0;
  std::vector<Observer> observers;
  observers.push_back([&](const FlowState &st, const ObservableSample &s) {
    if (csv.is_open()) csv << csv_row(s) << "\n" << std::flush;
    if (next_snap > 0.0 && st.t + 1e-12 >= next_snap && !cfg.output_snapshot.empty()) {
      write_snapshot(st.U, st.t, snapshot_path_at(cfg.output_snapshot, st.t));
      while (next_snap <= st.t + 1e-12) next_snap += cfg.snapshot_every;
    }
  });
  // run_flow consumes the state; keep a pointer to the final field via observer
  FlowState final_state;
  observers.push_back([&](const FlowState &st, const ObservableSample &) { final_state = st; });
  Trajectory traj = run_flow(std::move(state), cfg.flow, observers);
  if (!cfg.output_snapshot.empty()) write_snapshot(final_state.U, final_state.t, cfg.output_snapshot);
  std::cout << "flow: t_final=" << traj.t_final << " steps=" << traj.steps
            << " stop=" << stop_reason_name(traj.reason) << "\n";
  return traj.reason == StopReason::nan_abort ? kRuntime : kOk;
}

int cmd_analyze(const std::string &config_path, const std::vector<std::string> &snapshots,
                const std::string &decay_window, const std::string &out_path) {
  RunConfig cfg = load_config(config_path);
  if (!decay_window.empty()) {
    double lo, hi;
    if (std::sscanf(decay_window.c_str(), "%lf,%lf", &lo, &hi) != 2)
      throw std::runtime_error("--decay-window: expected 'lo,hi'");
    cfg.decay_t_lo = lo;
    cfg.decay_t_hi = hi;
  }
  if (snapshots.empty()) throw std::runtime_error("analyze: at least one snapshot is required");

  std::ostringstream rep;
  std::vector<std::pair<double, LinkField>> fields;
  std::vector<std::pair<double, double>> fp_series;
  for (const auto &p : snapshots) {
    auto [U, t] = read_snapshot(p);
    ObservableSample s = sample_observables(U, t, cfg.flow.scan_eps0,
                                            cfg.flow.scan_grid.empty() ? nullptr : &cfg.flow.scan_grid,
                                            cfg.flow.scan_stride);
    rep << "snapshot " << p << "\n";
    rep << "  t " << s.t << "\n";
    rep << "  F_norm2 " << s.F_norm2 << "\n";
    rep << "  Fp_norm2 " << s.Fp_norm2 << "\n";
    rep << "  Fm_norm2 " << s.Fm_norm2 << "\n";
    rep << "  Q " << s.Q << "\n";
    rep << "  energy_formula_residual " << energy_formula_audit(U) << "\n";
    rep << "  max_density " << s.max_density << "\n";
    rep << "  max_density_p " << s.max_density_p << "\n";
    rep << "  conc_radius " << (s.conc_radius ? std::to_string(*s.conc_radius) : "none") << "\n";
    fp_series.emplace_back(t, s.Fp_norm2);
    fields.emplace_back(t, std::move(U));
  }
  if (cfg.audit_R > 0.0 && fields.size() >= 2) {
    std::vector<std::pair<double, const LinkField *>> view;
    for (auto &[t, U] : fields) view.emplace_back(t, &U);
    CutoffAudit audit = cutoff_energy_audit(view, cfg.audit_x0, cfg.audit_R, cfg.audit_N);
    rep << "cutoff_audit\n";
    rep << "  lhs " << audit.lhs << "\n";
    rep << "  rhs_init " << audit.rhs_init << "\n";
    rep << "  integral_sup " << audit.integral_sup << "\n";
    rep << "  integral_sup_en " << audit.integral_sup_en << "\n";
    rep << "  c_min " << audit.c_min << "\n";
    rep << "  holds_with_zero " << (audit.holds_with_zero ? "true" : "false") << "\n";
  }
  if (cfg.decay_t_hi > cfg.decay_t_lo) {
    DecayFit fit = decay_fit(fp_series, cfg.decay_t_lo, cfg.decay_t_hi);
    rep << "decay_fit\n";
    rep << "  lambda " << fit.rate << "\n";
    rep << "  r_squared " << fit.r_squared << "\n";
    rep << "  window " << fit.t_lo << " " << fit.t_hi << "\n";
  }
  if (out_path.empty()) {
    std::cout << rep.str();
  } else {
    std::ofstream os(out_path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    os << rep.str();
  }
  return kOk;
}

int cmd_spectrum(const std::string &config_path, const std::string &snapshot_path) {
  RunConfig cfg = load_config(config_path);
  if (snapshot_path.empty()) throw std::runtime_error("spectrum: a snapshot is required");
  auto [U, t] = read_snapshot(snapshot_path);
  SpectralResult r = poincare_estimate(U, cfg.spectral_deflate, cfg.spectral_tol, cfg.spectral_max_iters);
  std::cout << "spectrum " << snapshot_path << "\n";
  std::cout << "  t " << t << "\n";
  std::cout << "  lambda_min " << r.lambda_min << "\n";
  std::cout << "  c_poincare " << r.c_poincare << "\n";
  std::cout << "  iterations " << r.iterations << "\n";
  std::cout << "  residual " << r.residual << "\n";
  std::cout << "  converged " << (r.converged ? "true" : "false") << "\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, char **argv) {
  CLI::App app{"SU(2) gradient-flow lattice laboratory"};
  app.require_subcommand(1);

  std::string config_path, snapshot, out, decay_window;
  std::vector<std::string> snapshots;

  auto *seed = app.add_subcommand("seed", "build a seed field and write a snapshot");
  seed->add_option("--config", config_path, "run config file")->required();
  seed->add_option("--out", out, "snapshot output path (overrides output.snapshot)");

  auto *flow = app.add_subcommand("flow", "run the gradient flow");
  flow->add_option("--config", config_path, "run config file")->required();
  flow->add_option("--snapshot", snapshot, "start from a snapshot instead of the configured seed");
  flow->add_option("--csv", out, "trajectory CSV path (overrides output.csv)");

  auto *analyze = app.add_subcommand("analyze", "audit one or more snapshots");
  analyze->add_option("--config", config_path, "run config file")->required();
  analyze->add_option("--snapshot", snapshots, "snapshot path(s)")->required();
  analyze->add_option("--decay-window", decay_window, "decay-fit window 'lo,hi'");
  analyze->add_option("--out", out, "report path (default stdout)");

  auto *spectrum = app.add_subcommand("spectrum", "Poincare-constant estimate for a snapshot");
  spectrum->add_option("--config", config_path, "run config file")->required();
  spectrum->add_option("--snapshot", snapshot, "snapshot path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (seed->parsed()) return cmd_seed(config_path, out);
    if (flow->parsed()) return cmd_flow(config_path, snapshot, out);
    if (analyze->parsed()) return cmd_analyze(config_path, snapshots, decay_window, out);
    if (spectrum->parsed()) return cmd_spectrum(config_path, snapshot);
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::runtime_error &e) {
    std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    bool validation = what.rfind("config", 0) == 0 || what.rfind("snapshot:", 0) == 0 ||
                      what.find("required") != std::string::npos;
    return validation ? kValidation : kRuntime;
  }
  return kUsage;
}

}  // namespace ym
