#include "ym/seeds.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ym/parallel.h"

namespace ym {

void SeedSpec::validate(const Geometry &geo) const {
  double a = geo.a;
  if (kind == SeedKind::random || kind == SeedKind::flat) {
    if (amplitude < 0.0) throw std::invalid_argument("seed: amplitude must be >= 0");
    return;
  }
  if (!(rho >= 2.0 * a)) throw std::invalid_argument("seed: rho >= 2a required");
  for (int mu = 0; mu < 4; ++mu)
    if (!(rho <= geo.extent(mu) / 4.0))
      throw std::invalid_argument("seed: rho <= extent/4 required");
  if (kind == SeedKind::grafted && !(taper_R >= 4.0 * rho))
    throw std::invalid_argument("seed: taper_R >= 4 rho required");
}

LinkField seed_flat(const Geometry &geo) {
  LinkField U(geo);
  for (auto &l : U.links) l = group_identity();
  return U;
}

namespace {

// splitmix64; keyed counter -> uniform doubles -> Box-Muller normals
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t key) {
  // 53-bit mantissa in (0,1]; never exactly zero so log() is safe
  return (static_cast<double>(mix64(key) >> 11) + 1.0) * 0x1.0p-53;
}

// Three standard normals for link (site, mu) under a seed.
Algebra gauss3(std::uint64_t seed, std::int64_t site, int mu) {
  std::uint64_t base = mix64(seed) ^ mix64(static_cast<std::uint64_t>(site) * 4ULL + mu);
  double u1 = uniform01(base ^ 0x1111111111111111ULL);
  double u2 = uniform01(base ^ 0x2222222222222222ULL);
  double u3 = uniform01(base ^ 0x3333333333333333ULL);
  double u4 = uniform01(base ^ 0x4444444444444444ULL);
  double r1 = std::sqrt(-2.0 * std::log(u1));
  double r2 = std::sqrt(-2.0 * std::log(u3));
  constexpr double two_pi = 6.283185307179586476925286766559;
  return {{r1 * std::cos(two_pi * u2), r1 * std::sin(two_pi * u2), r2 * std::cos(two_pi * u4)}};
}

// 't Hooft symbols eta^{(s)}_{a mu nu}: spatial part eps_{abc}, mixed part
// eta_{a,a,0} = s (rows 1..3), antisymmetric.  s = +1 is the anti-self-dual
// orientation in our component conventions (gives Q > 0).
struct Eta {
  double e[3][4][4] = {};
  explicit Eta(int s) {
    constexpr int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                  {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                  {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    for (int a = 0; a < 3; ++a) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e[a][i + 1][j + 1] = eps[a][i][j];
      e[a][a + 1][0] = s;
      e[a][0][a + 1] = -s;
    }
  }
};

// Radial profile f(r) for A = f(r) * g^-1 dg: BPST core f = r^2/(r^2+rho^2)
// up to the junction r1, then the energy-minimizing interpolation to f = 1 at
// r2 (the Euler-Lagrange orbit of the radial ansatz in t = log r, a kink
// equation f'' = 4 f (1-f)(1-2f) with conserved (f')^2/2 - 2 f^2 (1-f)^2 = c).
class MatchedProfile {
 public:
  MatchedProfile(double rho, double r1, double r2) : rho_(rho), r1_(r1), r2_(r2) {
    double f1 = r1 * r1 / (r1 * r1 + rho * rho);
    double T = std::log(r2 / r1);
    // bisection on c: travel time from f1 to 1 decreases in c
    double lo = 1e-14, hi = 16.0;
    while (travel_time(f1, lo) < T) lo *= 0.5;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (travel_time(f1, mid) > T ? lo : hi) = mid;
    }
    c_ = 0.5 * (lo + hi);
    // tabulate f over uniform t in [0, T]
    int n = 4096;
    tab_.resize(n + 1);
    tab_[0] = f1;
    double dt = T / n;
    for (int i = 1; i <= n; ++i) {
      // RK4 on f' = g(f)
      double f = tab_[i - 1];
      double k1 = speed(f);
      double k2 = speed(f + 0.5 * dt * k1);
      double k3 = speed(f + 0.5 * dt * k2);
      double k4 = speed(f + dt * k3);
      tab_[i] = std::min(1.0, f + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }
    tab_.back() = 1.0;
    T_ = T;
  }

  double operator()(double r) const {
    if (r <= r1_) return r * r / (r * r + rho_ * rho_);
    if (r >= r2_) return 1.0;
    double u = std::log(r / r1_) / T_ * (tab_.size() - 1);
    auto i = static_cast<size_t>(u);
    if (i + 1 >= tab_.size()) return 1.0;
    double w = u - i;
    return (1.0 - w) * tab_[i] + w * tab_[i + 1];
  }

 private:
  double speed(double f) const {
    double p = 2.0 * f * (1.0 - f);
    return std::sqrt(p * p + 2.0 * c_);
  }
  double travel_time(double f1, double c) const {
    // composite Simpson for int df / sqrt(4 f^2 (1-f)^2 + 2c)
    int n = 2000;
    double h = (1.0 - f1) / n;
    auto g = [c](double f) {
      double p = 2.0 * f * (1.0 - f);
      return 1.0 / std::sqrt(p * p + 2.0 * c);
    };
    double s = g(f1) + g(1.0);
    for (int i = 1; i < n; ++i) s += g(f1 + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  }

  double rho_, r1_, r2_, c_ = 0.0, T_ = 0.0;
  std::vector<double> tab_;
};

// Minimum-image displacement from center to (coords + half-offset in dir off_mu).
std::array<double, 4> displacement(const Geometry &geo, const std::array<int, 4> &x,
                                   const std::array<int, 4> &c, int off_mu) {
  std::array<double, 4> d;
  for (int mu = 0; mu < 4; ++mu) {
    double L = geo.dims[mu];
    double diff = x[mu] - c[mu] + (mu == off_mu ? 0.5 : 0.0);
    diff = std::fmod(diff + 2.0 * L, L);
    if (diff > 0.5 * L) diff -= L;
    d[mu] = diff * geo.a;
  }
  return d;
}

Group unit_direction(const Geometry &geo, std::int64_t s, const std::array<int, 4> &c) {
  auto d = geo.min_image(s, c);
  double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
  if (r == 0.0) return group_identity();
  return {d[0] / r, d[1] / r, d[2] / r, d[3] / r};
}

// Quintic smooth-step squeeze of the BPST profile to exactly 1 across
// [r1, r2]; steeper than the matched blend, used by the grafted seed so the
// spliced instanton is small enough to fall through the lattice under flow.
class SqueezedProfile {
 public:
  SqueezedProfile(double rho, double r1, double r2) : rho_(rho), r1_(r1), r2_(r2) {}
  double operator()(double r) const {
    double fb = r * r / (r * r + rho_ * rho_);
    if (r <= r1_) return fb;
    if (r >= r2_) return 1.0;
    double s = (r - r1_) / (r2_ - r1_);
    double phi = ((6.0 * s - 15.0) * s + 10.0) * s * s * s;
    return fb * (1.0 - phi) + phi;
  }

 private:
  double rho_, r1_, r2_;
};

// Shared builder: profile-f radial field in regular gauge with an exactly
// pure-gauge tail U = g(x)^-1 g(x+mu) wherever the profile has reached 1.
template <typename Profile>
LinkField build_radial(const Geometry &geo, const std::array<int, 4> &center, int sign,
                       const Profile &prof, double r2) {
  Eta eta(sign);
  LinkField U(geo);
  double a = geo.a;
  parallel_for(geo.volume(), [&](std::int64_t s) {
    auto x = geo.coords(s);
    double rx = geo.torus_dist(s, center);
    for (int mu = 0; mu < 4; ++mu) {
      std::int64_t sup = geo.up(s, mu);
      double ry = geo.torus_dist(sup, center);
      if (rx >= r2 && ry >= r2) {
        // pure-gauge tail U = g(x)^-1 g(x+mu); the gauge is ghat for one
        // orientation and its quaternion conjugate for the other
        Group gx = unit_direction(geo, s, center), gy = unit_direction(geo, sup, center);
        U(s, mu) = (sign > 0 ? gx.adj() * gy : gx * gy.adj()).normalized();
        continue;
      }
      auto d = displacement(geo, x, center, mu);
      double rr = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3];
      double f = prof(std::sqrt(rr));
      Algebra A;
      for (int aa = 0; aa < 3; ++aa) {
        double acc = 0.0;
        for (int nu = 0; nu < 4; ++nu) acc += eta.e[aa][mu][nu] * d[nu];
        A[aa] = 2.0 * f * acc / rr;
      }
      U(s, mu) = su2_exp(A * a);
    }
  });
  return U;
}

double blend_end(const Geometry &geo) {
  // the pure-gauge tail must be reached one spacing before the seam, where
  // minimum-image coordinates change branch
  return 0.5 * geo.min_extent() - geo.a;
}

}  // namespace

LinkField seed_random(const Geometry &geo, double amplitude, std::uint64_t rng_seed) {
  if (amplitude < 0.0) throw std::invalid_argument("seed_random: amplitude must be >= 0");
  LinkField U(geo);
  parallel_for(geo.volume(), [&](std::int64_t s) {
    for (int mu = 0; mu < 4; ++mu) U(s, mu) = su2_exp(gauss3(rng_seed, s, mu) * amplitude);
  });
  return U;
}

LinkField seed_bpst(const Geometry &geo, const std::array<int, 4> &center, double rho,
                    Orientation orientation) {
  SeedSpec spec;
  spec.kind = SeedKind::bpst;
  spec.rho = rho;
  spec.validate(geo);
  double r2 = blend_end(geo);
  double r1 = rho;  // junction at r = rho, where f = 1/2
  MatchedProfile prof(rho, r1, r2);
  int sign = (orientation == Orientation::anti_self_dual) ? +1 : -1;
  return build_radial(geo, center, sign, prof, r2);
}

LinkField seed_grafted(const Geometry &geo, const std::array<int, 4> &center, double rho,
                       double taper_R) {
  SeedSpec spec;
  spec.kind = SeedKind::grafted;
  spec.rho = rho;
  spec.taper_R = taper_R;
  spec.validate(geo);
  // squeeze across [3/8, 5/8] of the taper: narrow and early enough that the
  // spliced instanton shrinks and sheds its charge under flow, wide enough to
  // keep the seed charge near 1
  double r2 = std::min(0.625 * taper_R, blend_end(geo));
  double r1 = 0.375 * taper_R;
  if (!(r1 < r2)) throw std::invalid_argument("seed_grafted: taper does not fit the lattice");
  SqueezedProfile prof(rho, r1, r2);
  LinkField U = build_radial(geo, center, +1, prof, r2);
  // Rotate into the gauge where the tail is exactly flat: links with both ends
  // beyond the blend become identity, all invariants are unchanged.
  GaugeField g(geo);
  parallel_for(geo.volume(), [&](std::int64_t s) { g.g[s] = unit_direction(geo, s, center); });
  return gauge_transform(U, g);
}

LinkField perturb(const LinkField &U, double amplitude, std::uint64_t rng_seed) {
  if (amplitude < 0.0) throw std::invalid_argument("perturb: amplitude must be >= 0");
  if (amplitude == 0.0) return U;
  LinkField V = U;
  parallel_for(U.geo.volume(), [&](std::int64_t s) {
    for (int mu = 0; mu < 4; ++mu)
      V(s, mu) = (su2_exp(gauss3(rng_seed, s, mu) * amplitude) * U(s, mu)).normalized();
  });
  return V;
}

LinkField make_seed(const Geometry &geo, const SeedSpec &spec) {
  spec.validate(geo);
  switch (spec.kind) {
    case SeedKind::flat: return seed_flat(geo);
    case SeedKind::random: return seed_random(geo, spec.amplitude, spec.rng_seed);
    case SeedKind::bpst: return seed_bpst(geo, spec.center, spec.rho, spec.orientation);
    case SeedKind::grafted: return seed_grafted(geo, spec.center, spec.rho, spec.taper_R);
  }
  throw std::invalid_argument("make_seed: unknown kind");
}

}  // namespace ym
