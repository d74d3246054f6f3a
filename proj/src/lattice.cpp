#include "ym/lattice.h"

#include <cmath>
#include <stdexcept>

#include "ym/parallel.h"

namespace ym {

Geometry::Geometry(std::array<int, 4> d, double spacing) : dims(d), a(spacing) {
  for (int mu = 0; mu < 4; ++mu)
    if (dims[mu] < 4) throw std::invalid_argument("Geometry: each dim must be >= 4");
  if (!(a > 0.0)) throw std::invalid_argument("Geometry: spacing must be positive");
  build_tables();
}

void Geometry::build_tables() {
  vol_ = 1;
  for (int mu = 0; mu < 4; ++mu) vol_ *= dims[mu];
  nbr_up_.resize(4 * vol_);
  nbr_dn_.resize(4 * vol_);
  for (std::int64_t s = 0; s < vol_; ++s) {
    auto c = coords(s);
    for (int mu = 0; mu < 4; ++mu) {
      auto cu = c, cd = c;
      cu[mu] = (c[mu] + 1) % dims[mu];
      cd[mu] = (c[mu] - 1 + dims[mu]) % dims[mu];
      nbr_up_[4 * s + mu] = site(cu[0], cu[1], cu[2], cu[3]);
      nbr_dn_[4 * s + mu] = site(cd[0], cd[1], cd[2], cd[3]);
    }
  }
}

std::array<int, 4> Geometry::coords(std::int64_t s) const {
  std::array<int, 4> c;
  c[0] = static_cast<int>(s % dims[0]);
  s /= dims[0];
  c[1] = static_cast<int>(s % dims[1]);
  s /= dims[1];
  c[2] = static_cast<int>(s % dims[2]);
  s /= dims[2];
  c[3] = static_cast<int>(s);
  return c;
}

double Geometry::min_extent() const {
  double m = extent(0);
  for (int mu = 1; mu < 4; ++mu) m = std::min(m, extent(mu));
  return m;
}

std::array<double, 4> Geometry::min_image(std::int64_t s, const std::array<int, 4> &c) const {
  auto x = coords(s);
  std::array<double, 4> d;
  for (int mu = 0; mu < 4; ++mu) {
    double L = dims[mu];
    double diff = std::fmod(x[mu] - c[mu] + 2.0 * L, L);
    if (diff > 0.5 * L) diff -= L;
    d[mu] = diff * a;
  }
  return d;
}

double Geometry::torus_dist(std::int64_t s, const std::array<int, 4> &c) const {
  auto d = min_image(s, c);
  return std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
}

Group plaquette(const LinkField &U, std::int64_t s, int mu, int nu) {
  if (mu == nu) throw std::invalid_argument("plaquette: mu == nu");
  const Geometry &g = U.geo;
  std::int64_t smu = g.up(s, mu), snu = g.up(s, nu);
  return U(s, mu) * U(smu, nu) * U(snu, mu).adj() * U(s, nu).adj();
}

Algebra clover_field_strength(const LinkField &U, std::int64_t s, int mu, int nu) {
  if (mu == nu) throw std::invalid_argument("clover_field_strength: mu == nu");
  const Geometry &g = U.geo;
  std::int64_t xpm = g.up(s, mu), xpn = g.up(s, nu);
  std::int64_t xmm = g.down(s, mu), xmn = g.down(s, nu);
  std::int64_t xmm_pn = g.up(xmm, nu), xmm_mn = g.down(xmm, nu), xpm_mn = g.down(xpm, nu);
  // four leaves around x in the (mu,nu) plane, all based at x
  Group q1 = U(s, mu) * U(xpm, nu) * U(xpn, mu).adj() * U(s, nu).adj();
  Group q2 = U(s, nu) * U(xmm_pn, mu).adj() * U(xmm, nu).adj() * U(xmm, mu);
  Group q3 = U(xmm, mu).adj() * U(xmm_mn, nu).adj() * U(xmm_mn, mu) * U(xmn, nu);
  Group q4 = U(xmn, nu).adj() * U(xmn, mu) * U(xpm_mn, nu) * U(s, mu).adj();
  Group q = q1 + q2 + q3 + q4;
  double a2 = g.a * g.a;
  return su2_project(q - q.adj()) * (1.0 / (8.0 * a2));
}

LinkField gauge_transform(const LinkField &U, const GaugeField &gf) {
  if (!(U.geo == gf.geo)) throw std::invalid_argument("gauge_transform: geometry mismatch");
  LinkField V(U.geo);
  const Geometry &g = U.geo;
  parallel_for(g.volume(), [&](std::int64_t s) {
    for (int mu = 0; mu < 4; ++mu)
      V(s, mu) = (gf.g[s] * U(s, mu) * gf.g[g.up(s, mu)].adj()).normalized();
  });
  return V;
}

namespace {

// Sum over nu != mu of the "rest of plaquette" products R such that each
// plaquette containing U_mu(x) is U_mu(x) * R.  This equals S_mu(x)^dag in
// the standard staple convention P = U S^dag.
Group staple_rest(const LinkField &U, std::int64_t s, int mu) {
  const Geometry &g = U.geo;
  std::int64_t smu = g.up(s, mu);
  Group acc{0.0, 0.0, 0.0, 0.0};
  for (int nu = 0; nu < 4; ++nu) {
    if (nu == mu) continue;
    std::int64_t snu = g.up(s, nu);
    std::int64_t sdn = g.down(s, nu);
    std::int64_t smu_dn = g.down(smu, nu);
    acc += U(smu, nu) * U(snu, mu).adj() * U(s, nu).adj();
    acc += U(smu_dn, nu).adj() * U(sdn, mu).adj() * U(sdn, nu);
  }
  return acc;
}

}  // namespace

Algebra wilson_force(const LinkField &U, std::int64_t s, int mu) {
  double a2 = U.geo.a * U.geo.a;
  Group w = U(s, mu) * staple_rest(U, s, mu);
  return su2_project(w) * (-1.0 / a2);
}

void wilson_force_field(const LinkField &U, std::vector<Algebra> &Z) {
  const Geometry &g = U.geo;
  Z.resize(4 * g.volume());
  double a2 = g.a * g.a;
  parallel_for(g.volume(), [&](std::int64_t s) {
    for (int mu = 0; mu < 4; ++mu) {
      Group w = U(s, mu) * staple_rest(U, s, mu);
      Z[4 * s + mu] = su2_project(w) * (-1.0 / a2);
    }
  });
}

double wilson_action(const LinkField &U) {
  const Geometry &g = U.geo;
  return parallel_sum(g.volume(), [&](std::int64_t s) {
    double acc = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu)
        acc += 1.0 - 0.5 * plaquette(U, s, mu, nu).re_trace();
    return acc;
  });
}

}  // namespace ym
