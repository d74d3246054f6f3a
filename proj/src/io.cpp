#include "ym/io.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ym {

namespace {

constexpr char kMagic[4] = {'Y', 'M', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream &os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char *>(b), 4);
}

void put_f64(std::ostream &os, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  os.write(reinterpret_cast<const char *>(b), 8);
}

std::uint32_t get_u32(std::istream &is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char *>(b), 4)) throw std::runtime_error("snapshot: truncated payload");
  return b[0] | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

double get_f64(std::istream &is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char *>(b), 8)) throw std::runtime_error("snapshot: truncated payload");
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace

void write_snapshot(const LinkField &U, double flow_time, const std::string &path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("snapshot: cannot open '" + path + "' for writing");
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  for (int mu = 0; mu < 4; ++mu) put_u32(os, static_cast<std::uint32_t>(U.geo.dims[mu]));
  put_f64(os, U.geo.a);
  put_f64(os, flow_time);
  for (const Group &g : U.links) {
    put_f64(os, g.w);
    put_f64(os, g.x);
    put_f64(os, g.y);
    put_f64(os, g.z);
  }
  os.flush();
  if (!os) throw std::runtime_error("snapshot: write failed for '" + path + "'");
}

std::pair<LinkField, double> read_snapshot(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open '" + path + "'");
  char magic[4];
  if (!is.read(magic, 4)) throw std::runtime_error("snapshot: truncated payload");
  if (std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("snapshot: magic mismatch");
  std::uint32_t version = get_u32(is);
  if (version != kVersion)
    throw std::runtime_error("snapshot: unsupported version " + std::to_string(version));
  std::array<int, 4> dims;
  for (int mu = 0; mu < 4; ++mu) dims[mu] = static_cast<int>(get_u32(is));
  double a = get_f64(is);
  double flow_time = get_f64(is);
  Geometry geo(dims, a);
  LinkField U(geo);
  for (Group &g : U.links) {
    g.w = get_f64(is);
    g.x = get_f64(is);
    g.y = get_f64(is);
    g.z = get_f64(is);
    if (std::abs(std::sqrt(g.norm2()) - 1.0) > 1e-9)
      throw std::runtime_error("snapshot: non-unit quaternion in payload");
  }
  if (is.peek() != std::ifstream::traits_type::eof())
    throw std::runtime_error("snapshot: trailing bytes after payload");
  return {std::move(U), flow_time};
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct ConfigReader {
  std::map<std::string, Entry> entries;

  [[noreturn]] static void fail(const std::string &key, int line, const std::string &what) {
    throw std::runtime_error("config line " + std::to_string(line) + ": key '" + key + "': " + what);
  }

  const Entry *find(const std::string &key) {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  template <typename F>
  void with(const std::string &key, F f) {
    if (const Entry *e = find(key)) f(*e);
  }

  static double parse_double(const std::string &key, const Entry &e) {
    try {
      size_t pos;
      double v = std::stod(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(key, e.line, "expected a number, got '" + e.value + "'");
    }
  }

  static long long parse_int(const std::string &key, const Entry &e) {
    try {
      size_t pos;
      long long v = std::stoll(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(key, e.line, "expected an integer, got '" + e.value + "'");
    }
  }

  static bool parse_bool(const std::string &key, const Entry &e) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail(key, e.line, "expected true/false, got '" + e.value + "'");
  }

  static std::array<int, 4> parse_int4(const std::string &key, const Entry &e) {
    std::istringstream ss(e.value);
    std::array<int, 4> v;
    if (!(ss >> v[0] >> v[1] >> v[2] >> v[3])) fail(key, e.line, "expected four integers");
    std::string rest;
    if (ss >> rest) fail(key, e.line, "expected exactly four integers");
    return v;
  }

  static std::vector<double> parse_doubles(const std::string &key, const Entry &e) {
    std::istringstream ss(e.value);
    std::vector<double> v;
    double x;
    while (ss >> x) v.push_back(x);
    if (!ss.eof()) fail(key, e.line, "expected a list of numbers");
    return v;
  }
};

std::string trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig parse_config(const std::string &text) {
  ConfigReader rd;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
    auto [it, inserted] = rd.entries.emplace(key, Entry{value, lineno, false});
    if (!inserted)
      throw std::runtime_error("config: duplicate key '" + key + "' (lines " +
                               std::to_string(it->second.line) + " and " + std::to_string(lineno) + ")");
  }

  RunConfig cfg;
  rd.with("dims", [&](const Entry &e) { cfg.dims = ConfigReader::parse_int4("dims", e); });
  rd.with("spacing", [&](const Entry &e) {
    cfg.spacing = ConfigReader::parse_double("spacing", e);
    if (!(cfg.spacing > 0.0)) ConfigReader::fail("spacing", e.line, "must be positive");
  });

  rd.with("seed.kind", [&](const Entry &e) {
    if (e.value == "flat") cfg.seed.kind = SeedKind::flat;
    else if (e.value == "random") cfg.seed.kind = SeedKind::random;
    else if (e.value == "bpst") cfg.seed.kind = SeedKind::bpst;
    else if (e.value == "grafted") cfg.seed.kind = SeedKind::grafted;
    else ConfigReader::fail("seed.kind", e.line, "expected flat|random|bpst|grafted");
  });
  rd.with("seed.amplitude", [&](const Entry &e) { cfg.seed.amplitude = ConfigReader::parse_double("seed.amplitude", e); });
  rd.with("seed.rng_seed", [&](const Entry &e) { cfg.seed.rng_seed = static_cast<std::uint64_t>(ConfigReader::parse_int("seed.rng_seed", e)); });
  rd.with("seed.center", [&](const Entry &e) { cfg.seed.center = ConfigReader::parse_int4("seed.center", e); });
  rd.with("seed.rho", [&](const Entry &e) { cfg.seed.rho = ConfigReader::parse_double("seed.rho", e); });
  rd.with("seed.taper_R", [&](const Entry &e) { cfg.seed.taper_R = ConfigReader::parse_double("seed.taper_R", e); });
  rd.with("seed.orientation", [&](const Entry &e) {
    if (e.value == "self_dual") cfg.seed.orientation = Orientation::self_dual;
    else if (e.value == "anti_self_dual") cfg.seed.orientation = Orientation::anti_self_dual;
    else ConfigReader::fail("seed.orientation", e.line, "expected self_dual|anti_self_dual");
  });

  rd.with("flow.scheme", [&](const Entry &e) {
    if (e.value == "euler") cfg.flow.scheme = FlowScheme::euler;
    else if (e.value == "rk3") cfg.flow.scheme = FlowScheme::rk3;
    else ConfigReader::fail("flow.scheme", e.line, "expected euler|rk3");
  });
  rd.with("flow.step", [&](const Entry &e) { cfg.flow.step = ConfigReader::parse_double("flow.step", e); });
  rd.with("flow.t_max", [&](const Entry &e) { cfg.flow.t_max = ConfigReader::parse_double("flow.t_max", e); });
  rd.with("flow.adapt", [&](const Entry &e) { cfg.flow.adapt = ConfigReader::parse_bool("flow.adapt", e); });
  rd.with("flow.c_stab", [&](const Entry &e) { cfg.flow.c_stab = ConfigReader::parse_double("flow.c_stab", e); });
  rd.with("flow.sample_every", [&](const Entry &e) { cfg.flow.sample_every = ConfigReader::parse_double("flow.sample_every", e); });
  rd.with("flow.stop_energy", [&](const Entry &e) { cfg.flow.stop_energy = ConfigReader::parse_double("flow.stop_energy", e); });
  rd.with("flow.alarm_enabled", [&](const Entry &e) { cfg.flow.alarm_enabled = ConfigReader::parse_bool("flow.alarm_enabled", e); });
  rd.with("flow.alarm_eps0", [&](const Entry &e) { cfg.flow.alarm_eps0 = ConfigReader::parse_double("flow.alarm_eps0", e); });
  rd.with("flow.alarm_R", [&](const Entry &e) { cfg.flow.alarm_R = ConfigReader::parse_double("flow.alarm_R", e); });
  rd.with("scan.eps0", [&](const Entry &e) { cfg.flow.scan_eps0 = ConfigReader::parse_double("scan.eps0", e); });
  rd.with("scan.grid", [&](const Entry &e) { cfg.flow.scan_grid = ConfigReader::parse_doubles("scan.grid", e); });
  rd.with("scan.stride", [&](const Entry &e) {
    cfg.flow.scan_stride = static_cast<int>(ConfigReader::parse_int("scan.stride", e));
    if (cfg.flow.scan_stride < 1) ConfigReader::fail("scan.stride", e.line, "must be >= 1");
  });

  rd.with("audit.x0", [&](const Entry &e) { cfg.audit_x0 = ConfigReader::parse_int4("audit.x0", e); });
  rd.with("audit.R", [&](const Entry &e) { cfg.audit_R = ConfigReader::parse_double("audit.R", e); });
  rd.with("audit.N", [&](const Entry &e) { cfg.audit_N = ConfigReader::parse_double("audit.N", e); });
  rd.with("decay.t_lo", [&](const Entry &e) { cfg.decay_t_lo = ConfigReader::parse_double("decay.t_lo", e); });
  rd.with("decay.t_hi", [&](const Entry &e) { cfg.decay_t_hi = ConfigReader::parse_double("decay.t_hi", e); });

  rd.with("spectral.deflate", [&](const Entry &e) { cfg.spectral_deflate = ConfigReader::parse_bool("spectral.deflate", e); });
  rd.with("spectral.tol", [&](const Entry &e) { cfg.spectral_tol = ConfigReader::parse_double("spectral.tol", e); });
  rd.with("spectral.max_iters", [&](const Entry &e) { cfg.spectral_max_iters = static_cast<int>(ConfigReader::parse_int("spectral.max_iters", e)); });

  rd.with("output.csv", [&](const Entry &e) { cfg.output_csv = e.value; });
  rd.with("output.snapshot", [&](const Entry &e) { cfg.output_snapshot = e.value; });
  rd.with("output.snapshot_every", [&](const Entry &e) { cfg.snapshot_every = ConfigReader::parse_double("output.snapshot_every", e); });

  for (const auto &[key, e] : rd.entries)
    if (!e.used)
      throw std::runtime_error("config line " + std::to_string(e.line) + ": unknown key '" + key + "'");

  Geometry geo = cfg.geometry();
  cfg.seed.validate(geo);
  cfg.flow.validate(geo.a);
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string csv_header() {
  return "t,F_norm2,Fp_norm2,Fm_norm2,Q,max_density,max_density_p,conc_radius,force_norm2";
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_row(const ObservableSample &s) {
  std::string row = num(s.t);
  for (double v : {s.F_norm2, s.Fp_norm2, s.Fm_norm2, s.Q, s.max_density, s.max_density_p})
    row += "," + num(v);
  row += ",";
  if (s.conc_radius) row += num(*s.conc_radius);
  row += "," + num(s.force_norm2);
  return row;
}

}  // namespace ym
