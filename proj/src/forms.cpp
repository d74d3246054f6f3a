#include "ym/forms.h"

#include <stdexcept>

#include "ym/parallel.h"

namespace ym {

namespace {

// dual pair index and sign for the ordered-pair storage:
// *(01)=+23, *(02)=-13, *(03)=+12 and the involution back.
constexpr int kDual[6] = {5, 4, 3, 2, 1, 0};
constexpr double kDualSign[6] = {1.0, -1.0, 1.0, 1.0, -1.0, 1.0};

constexpr int kPairOf[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};

inline Algebra conj_by(const Group &g, const Algebra &x) {
  // Ad(g) x: rotate the coefficient vector by the unit quaternion.
  Group h{0.0, 0.5 * x.v[0], 0.5 * x.v[1], 0.5 * x.v[2]};
  Group r = g * h * g.adj();
  return {{2.0 * r.x, 2.0 * r.y, 2.0 * r.z}};
}

}  // namespace

int pair_index(int mu, int nu) {
  if (mu == nu || mu < 0 || nu < 0 || mu > 3 || nu > 3)
    throw std::invalid_argument("pair_index: bad plane");
  return kPairOf[mu < nu ? mu : nu][mu < nu ? nu : mu];
}

AdjTwoForm clover_two_form(const LinkField &U) {
  AdjTwoForm F(U.geo);
  parallel_for(U.geo.volume(), [&](std::int64_t s) {
    int p = 0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu) F(s, p++) = clover_field_strength(U, s, mu, nu);
  });
  return F;
}

AdjTwoForm hodge_star(const AdjTwoForm &F) {
  AdjTwoForm G(F.geo);
  parallel_for(F.geo.volume(), [&](std::int64_t s) {
    for (int p = 0; p < 6; ++p) G(s, p) = F(s, kDual[p]) * kDualSign[p];
  });
  return G;
}

std::pair<AdjTwoForm, AdjTwoForm> split_self_dual(const AdjTwoForm &F) {
  AdjTwoForm P(F.geo), M(F.geo);
  parallel_for(F.geo.volume(), [&](std::int64_t s) {
    for (int p = 0; p < 6; ++p) {
      Algebra star = F(s, kDual[p]) * kDualSign[p];
      P(s, p) = (F(s, p) + star) * 0.5;
      M(s, p) = (F(s, p) - star) * 0.5;
    }
  });
  return {std::move(P), std::move(M)};
}

AdjTwoForm self_dual_part(const AdjTwoForm &F) {
  AdjTwoForm P(F.geo);
  parallel_for(F.geo.volume(), [&](std::int64_t s) {
    for (int p = 0; p < 6; ++p) P(s, p) = (F(s, p) + F(s, kDual[p]) * kDualSign[p]) * 0.5;
  });
  return P;
}

namespace {

template <typename Form>
double inner_impl(const Form &x, const Form &y) {
  if (!(x.geo == y.geo)) throw std::invalid_argument("inner: geometry mismatch");
  double a4 = x.geo.a * x.geo.a;
  a4 *= a4;
  std::int64_t n = static_cast<std::int64_t>(x.c.size());
  return a4 * parallel_sum(n, [&](std::int64_t i) { return su2_inner(x.c[i], y.c[i]); });
}

}  // namespace

double inner(const AdjZeroForm &x, const AdjZeroForm &y) { return inner_impl(x, y); }
double inner(const AdjOneForm &x, const AdjOneForm &y) { return inner_impl(x, y); }
double inner(const AdjTwoForm &x, const AdjTwoForm &y) { return inner_impl(x, y); }

AdjOneForm covariant_d(const LinkField &U, const AdjZeroForm &w) {
  if (!(U.geo == w.geo)) throw std::invalid_argument("covariant_d: geometry mismatch");
  const Geometry &g = U.geo;
  AdjOneForm out(g);
  double inv_a = 1.0 / g.a;
  parallel_for(g.volume(), [&](std::int64_t s) {
    for (int mu = 0; mu < 4; ++mu)
      out(s, mu) = (conj_by(U(s, mu), w.c[g.up(s, mu)]) - w.c[s]) * inv_a;
  });
  return out;
}

AdjTwoForm covariant_d(const LinkField &U, const AdjOneForm &w) {
  if (!(U.geo == w.geo)) throw std::invalid_argument("covariant_d: geometry mismatch");
  const Geometry &g = U.geo;
  AdjTwoForm out(g);
  double inv_a = 1.0 / g.a;
  parallel_for(g.volume(), [&](std::int64_t s) {
    int p = 0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu) {
        Algebra dmu = conj_by(U(s, mu), w(g.up(s, mu), nu)) - w(s, nu);
        Algebra dnu = conj_by(U(s, nu), w(g.up(s, nu), mu)) - w(s, mu);
        out(s, p++) = (dmu - dnu) * inv_a;
      }
  });
  return out;
}

AdjZeroForm covariant_d_star(const LinkField &U, const AdjOneForm &e) {
  if (!(U.geo == e.geo)) throw std::invalid_argument("covariant_d_star: geometry mismatch");
  const Geometry &g = U.geo;
  AdjZeroForm out(g);
  double inv_a = 1.0 / g.a;
  parallel_for(g.volume(), [&](std::int64_t s) {
    Algebra acc{};
    for (int mu = 0; mu < 4; ++mu) {
      std::int64_t sd = g.down(s, mu);
      acc += conj_by(U(sd, mu).adj(), e(sd, mu)) - e(s, mu);
    }
    out.c[s] = acc * inv_a;
  });
  return out;
}

AdjOneForm covariant_d_star(const LinkField &U, const AdjTwoForm &e) {
  if (!(U.geo == e.geo)) throw std::invalid_argument("covariant_d_star: geometry mismatch");
  const Geometry &g = U.geo;
  AdjOneForm out(g);
  double inv_a = 1.0 / g.a;
  parallel_for(g.volume(), [&](std::int64_t s) {
    for (int nu = 0; nu < 4; ++nu) {
      Algebra acc{};
      for (int mu = 0; mu < 4; ++mu) {
        if (mu == nu) continue;
        int p = pair_index(mu, nu);
        double sgn = (mu < nu) ? 1.0 : -1.0;  // stored component is F_{min,max}
        std::int64_t sd = g.down(s, mu);
        Algebra em = conj_by(U(sd, mu).adj(), e(sd, p)) - e(s, p);
        acc += em * sgn;
      }
      out(s, nu) = acc * inv_a;
    }
  });
  return out;
}

}  // namespace ym
