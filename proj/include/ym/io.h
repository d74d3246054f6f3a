#pragma once

#include <string>
#include <utility>

#include "ym/flow.h"
#include "ym/seeds.h"

namespace ym {

// Binary snapshot, format "YMF1" v1: magic, version u32, dims 4 x u32,
// spacing f64, flow_time f64, then per site (canonical order) per mu four f64
// (w,x,y,z).  Little-endian, write-then-read bitwise identical.
void write_snapshot(const LinkField &U, double flow_time, const std::string &path);
std::pair<LinkField, double> read_snapshot(const std::string &path);

struct RunConfig {
  std::array<int, 4> dims{8, 8, 8, 8};
  double spacing = 1.0;
  SeedSpec seed;
  FlowParams flow;
  // analyze settings
  std::array<int, 4> audit_x0{0, 0, 0, 0};
  double audit_R = 0.0;  // 0: no cutoff audit
  double audit_N = 4.0;
  double decay_t_lo = 0.0, decay_t_hi = 0.0;  // equal: no decay fit
  // spectral settings
  bool spectral_deflate = true;
  double spectral_tol = 1e-9;
  int spectral_max_iters = 2000;
  // outputs
  std::string output_csv;
  std::string output_snapshot;
  double snapshot_every = 0.0;  // flow-time interval, 0: final only

  Geometry geometry() const { return Geometry(dims, spacing); }
};

// Flat key = value text, '#' comments.  Unknown keys, duplicate keys and
// malformed values are errors that name the key and line.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);

std::string csv_header();
std::string csv_row(const ObservableSample &s);

// seed / flow / analyze / spectrum.  Exit 0 success, 1 usage, 2 validation,
// 3 runtime.
int run_cli(int argc, char **argv);

}  // namespace ym
