#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ym/lattice.h"
#include "ym/seeds.h"

using namespace ym;

namespace {

double group_dist(const Group &a, const Group &b) {
  Group d = a - b;
  return std::sqrt(d.norm2());
}

}  // namespace

TEST_CASE("geometry indexing and neighbors") {
  Geometry g({4, 6, 8, 4}, 0.5);
  CHECK(g.volume() == 4 * 6 * 8 * 4);
  for (std::int64_t s : {std::int64_t(0), std::int64_t(17), std::int64_t(511), g.volume() - 1}) {
    auto c = g.coords(s);
    CHECK(g.site(c[0], c[1], c[2], c[3]) == s);
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(g.down(g.up(s, mu), mu) == s);
      auto cu = g.coords(g.up(s, mu));
      CHECK(cu[mu] == (c[mu] + 1) % g.dims[mu]);
    }
  }
  CHECK(g.extent(1) == doctest::Approx(3.0));
  CHECK(g.min_extent() == doctest::Approx(2.0));
  CHECK(g.r0() == doctest::Approx(1.0));
  CHECK_THROWS(Geometry({2, 4, 4, 4}, 1.0));
  CHECK_THROWS(Geometry({4, 4, 4, 4}, 0.0));
}

TEST_CASE("minimum image stays in (-L/2, L/2] and wraps") {
  Geometry g({8, 8, 8, 8}, 1.0);
  std::array<int, 4> c{1, 1, 1, 1};
  for (std::int64_t s = 0; s < g.volume(); ++s) {
    auto d = g.min_image(s, c);
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(d[mu] > -4.0 - 1e-12);
      CHECK(d[mu] <= 4.0 + 1e-12);
    }
  }
  // wrap: site at coordinate 7 is distance 2 from coordinate 1, not 6
  CHECK(g.min_image(g.site(7, 1, 1, 1), c)[0] == doctest::Approx(-2.0));
  CHECK(g.torus_dist(g.site(7, 1, 1, 1), c) == doctest::Approx(2.0));
}

TEST_CASE("plaquette of the flat field is the identity") {
  Geometry g({4, 4, 4, 4}, 1.0);
  LinkField U = seed_flat(g);
  CHECK(group_dist(plaquette(U, 5, 0, 3), group_identity()) < 1e-15);
  CHECK_THROWS(plaquette(U, 0, 2, 2));
}

TEST_CASE("plaquette of a linear abelian field matches the direct product") {
  // U_0(x) = exp(c * x1 * a * T1), x1 physical; all other links identity
  Geometry g({8, 8, 8, 8}, 1.0);
  double c = 0.03;
  LinkField U = seed_flat(g);
  for (std::int64_t s = 0; s < g.volume(); ++s) {
    double x1 = g.coords(s)[1] * g.a;
    U(s, 0) = su2_exp({{c * x1 * g.a, 0.0, 0.0}});
  }
  std::int64_t s = g.site(3, 2, 4, 1);
  Group direct = U(s, 0) * U(g.up(s, 0), 1) * U(g.up(s, 1), 0).adj() * U(s, 1).adj();
  CHECK(group_dist(plaquette(U, s, 0, 1), direct) < 1e-15);
  CHECK(group_dist(direct, su2_exp({{-c * g.a * g.a, 0.0, 0.0}})) < 1e-14);

  // clover at an interior site recovers -c T1 to O(a^2)
  Algebra F = clover_field_strength(U, s, 0, 1);
  CHECK(std::abs(F[0] - (-c)) <= 0.01 * c);
  CHECK(std::abs(F[1]) < 1e-14);
  // antisymmetry
  Algebra Fr = clover_field_strength(U, s, 1, 0);
  CHECK((F + Fr).norm() < 1e-15);
  CHECK_THROWS(clover_field_strength(U, s, 1, 1));
}

TEST_CASE("clover of flat field vanishes") {
  Geometry g({4, 4, 4, 4}, 1.0);
  LinkField U = seed_flat(g);
  CHECK(clover_field_strength(U, 9, 1, 3).norm() == 0.0);
}

TEST_CASE("gauge covariance") {
  Geometry g({4, 4, 4, 4}, 1.0);
  LinkField U = seed_random(g, 0.5, 11);
  GaugeField gf(g);
  LinkField R = seed_random(g, 1.0, 23);
  for (std::int64_t s = 0; s < g.volume(); ++s) gf.g[s] = R(s, 0);
  LinkField V = gauge_transform(U, gf);

  for (auto &l : V.links) CHECK(std::abs(std::sqrt(l.norm2()) - 1.0) < 1e-12);

  std::int64_t s = 33;
  // plaquette conjugates by g(x)
  Group expect = gf.g[s] * plaquette(U, s, 0, 2) * gf.g[s].adj();
  CHECK(group_dist(plaquette(V, s, 0, 2), expect) < 1e-12);
  // action and field-strength norm are invariant
  CHECK(wilson_action(V) == doctest::Approx(wilson_action(U)).epsilon(1e-12));
  CHECK(clover_field_strength(V, s, 0, 1).norm() ==
        doctest::Approx(clover_field_strength(U, s, 0, 1).norm()).epsilon(1e-10));
}

TEST_CASE("wilson action of a single rotated link") {
  Geometry g({4, 4, 4, 4}, 1.0);
  LinkField U = seed_flat(g);
  double theta = 0.8;
  U(7, 2) = su2_exp({{theta, 0.0, 0.0}});
  // six plaquettes contain the link; each contributes 1 - cos(theta/2)
  CHECK(wilson_action(U) == doctest::Approx(6.0 * (1.0 - std::cos(0.5 * theta))).epsilon(1e-14));
}

TEST_CASE("wilson force is -(4/a^2) x the action derivative") {
  for (double a : {1.0, 0.5}) {
    Geometry g({4, 4, 4, 4}, a);
    LinkField U = seed_random(g, 0.4, 7);
    double h = 1e-4;
    for (int k = 0; k < 10; ++k) {
      std::int64_t s = (37 * k + 11) % g.volume();
      int mu = k % 4;
      Algebra Z = wilson_force(U, s, mu);
      for (int b = 0; b < 3; ++b) {
        Algebra e;
        e[b] = h;
        LinkField Up = U, Um = U;
        Up(s, mu) = (su2_exp(e) * U(s, mu)).normalized();
        Um(s, mu) = (su2_exp(-e) * U(s, mu)).normalized();
        double fd = -(wilson_action(Up) - wilson_action(Um)) / (2.0 * h) * 4.0 / (a * a);
        CHECK(Z[b] == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("wilson_force_field matches the per-link version") {
  Geometry g({4, 4, 4, 4}, 1.0);
  LinkField U = seed_random(g, 0.3, 3);
  std::vector<Algebra> Z;
  wilson_force_field(U, Z);
  for (std::int64_t s : {std::int64_t(0), std::int64_t(100), g.volume() - 1})
    for (int mu = 0; mu < 4; ++mu)
      CHECK((Z[4 * s + mu] - wilson_force(U, s, mu)).norm() < 1e-15);
  // force vanishes on the flat field
  LinkField flat = seed_flat(g);
  CHECK(wilson_force(flat, 5, 1).norm() == 0.0);
}
