#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ym/algebra.h"

namespace ym {

// 4D periodic lattice.  Canonical site order s = x0 + L0*(x1 + L1*(x2 + L2*x3)).
struct Geometry {
  std::array<int, 4> dims{4, 4, 4, 4};
  double a = 1.0;

  Geometry() { build_tables(); }
  Geometry(std::array<int, 4> d, double spacing);

  std::int64_t volume() const { return vol_; }
  std::int64_t site(int x0, int x1, int x2, int x3) const {
    return x0 + static_cast<std::int64_t>(dims[0]) * (x1 + static_cast<std::int64_t>(dims[1]) * (x2 + static_cast<std::int64_t>(dims[2]) * x3));
  }
  std::array<int, 4> coords(std::int64_t s) const;
  std::int64_t up(std::int64_t s, int mu) const { return nbr_up_[4 * s + mu]; }
  std::int64_t down(std::int64_t s, int mu) const { return nbr_dn_[4 * s + mu]; }

  double extent(int mu) const { return dims[mu] * a; }
  double min_extent() const;
  // Ball-radius cap: half the shortest torus extent.
  double r0() const { return 0.5 * min_extent(); }

  // Minimum-image displacement (in lattice units of a) from site c to site s.
  std::array<double, 4> min_image(std::int64_t s, const std::array<int, 4> &c) const;
  double torus_dist(std::int64_t s, const std::array<int, 4> &c) const;

  bool operator==(const Geometry &o) const { return dims == o.dims && a == o.a; }

 private:
  void build_tables();
  std::int64_t vol_ = 0;
  std::vector<std::int64_t> nbr_up_, nbr_dn_;
};

struct LinkField {
  Geometry geo;
  std::vector<Group> links;  // site-major: links[4*s + mu]

  LinkField() = default;
  explicit LinkField(const Geometry &g) : geo(g), links(4 * g.volume()) {}

  Group &operator()(std::int64_t s, int mu) { return links[4 * s + mu]; }
  const Group &operator()(std::int64_t s, int mu) const { return links[4 * s + mu]; }
};

struct GaugeField {
  Geometry geo;
  std::vector<Group> g;  // per site

  GaugeField() = default;
  explicit GaugeField(const Geometry &geom) : geo(geom), g(geom.volume()) {}
};

// U_mu(x) U_nu(x+mu) U_mu(x+nu)^-1 U_nu(x)^-1
Group plaquette(const LinkField &U, std::int64_t s, int mu, int nu);

// Four-leaf clover average, F_{munu}(x) = su2_project(Q - Q^dag)/(8 a^2).
Algebra clover_field_strength(const LinkField &U, std::int64_t s, int mu, int nu);

// U'_mu(x) = g(x) U_mu(x) g(x+mu)^-1
LinkField gauge_transform(const LinkField &U, const GaugeField &g);

// Negative Wilson-action gradient Z_mu(x) = -(1/a^2) su2_project(U_mu(x) S_mu(x)^dag),
// staple convention P = U S^dag; first-order update exp(eps Z) U descends S_W.
Algebra wilson_force(const LinkField &U, std::int64_t s, int mu);

// All forces at once (parallel over sites).
void wilson_force_field(const LinkField &U, std::vector<Algebra> &Z);

// S_W = sum_{x, mu<nu} (1 - (1/2) Re tr P_{munu}(x))
double wilson_action(const LinkField &U);

}  // namespace ym
