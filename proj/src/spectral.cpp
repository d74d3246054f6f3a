#include "ym/spectral.h"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ym/parallel.h"

namespace ym {

namespace {

inline Algebra conj_by(const Group &g, const Algebra &x) {
  Group h{0.0, 0.5 * x.v[0], 0.5 * x.v[1], 0.5 * x.v[2]};
  Group r = g * h * g.adj();
  return {{2.0 * r.x, 2.0 * r.y, 2.0 * r.z}};
}

// Adjoint three-form: components for ordered triples
// (0,1,2),(0,1,3),(0,2,3),(1,2,3); triple index = 3 - (missing direction).
struct AdjThreeForm {
  Geometry geo;
  std::vector<Algebra> c;  // [4*s + t]
  explicit AdjThreeForm(const Geometry &g) : geo(g), c(4 * g.volume()) {}
  Algebra &operator()(std::int64_t s, int t) { return c[4 * s + t]; }
  const Algebra &operator()(std::int64_t s, int t) const { return c[4 * s + t]; }
};

// Exterior covariant derivative on two-forms, forward differences:
// (Dw)_{mu nu rho} = (d_mu w_{nu rho} - d_nu w_{mu rho} + d_rho w_{mu nu}) / a.
AdjThreeForm covariant_d_two(const LinkField &U, const AdjTwoForm &w) {
  const Geometry &g = U.geo;
  AdjThreeForm out(g);
  double inv_a = 1.0 / g.a;
  parallel_for(g.volume(), [&](std::int64_t s) {
    for (int miss = 0; miss < 4; ++miss) {
      int d[3], k = 0;
      for (int mu = 0; mu < 4; ++mu)
        if (mu != miss) d[k++] = mu;
      Algebra acc{};
      double sgn = 1.0;
      for (int j = 0; j < 3; ++j) {
        int mu = d[j];
        int p = pair_index(d[j == 0 ? 1 : 0], d[j == 2 ? 1 : 2]);
        acc += (conj_by(U(s, mu), w(g.up(s, mu), p)) - w(s, p)) * sgn;
        sgn = -sgn;
      }
      out(s, 3 - miss) = acc * inv_a;
    }
  });
  return out;
}

// Exact adjoint of covariant_d_two.
AdjTwoForm covariant_d_star_three(const LinkField &U, const AdjThreeForm &h) {
  const Geometry &g = U.geo;
  AdjTwoForm out(g);
  double inv_a = 1.0 / g.a;
  parallel_for(g.volume(), [&](std::int64_t s) {
    int p = 0;
    for (int al = 0; al < 4; ++al)
      for (int be = al + 1; be < 4; ++be, ++p) {
        Algebra acc{};
        for (int mu = 0; mu < 4; ++mu) {
          if (mu == al || mu == be) continue;
          int miss = 6 - mu - al - be;
          int t = 3 - miss;
          double sgn = (mu < al || mu > be) ? 1.0 : -1.0;
          std::int64_t sd = g.down(s, mu);
          acc += (conj_by(U(sd, mu).adj(), h(sd, t)) - h(s, t)) * sgn;
        }
        out(s, p) = acc * inv_a;
      }
  });
  return out;
}

double norm(const AdjTwoForm &x) { return std::sqrt(inner(x, x)); }

void scale(AdjTwoForm &x, double s) {
  parallel_for(static_cast<std::int64_t>(x.c.size()), [&](std::int64_t i) { x.c[i] = x.c[i] * s; });
}

// y += s * x
void axpy(AdjTwoForm &y, double s, const AdjTwoForm &x) {
  parallel_for(static_cast<std::int64_t>(x.c.size()), [&](std::int64_t i) { y.c[i] += x.c[i] * s; });
}

// Remove the constant self-dual components: span of (e01+e23), (e02-e13),
// (e03+e12) per algebra direction, constant over sites.
void deflate_constants_inplace(AdjTwoForm &x) {
  constexpr int p1[3] = {0, 1, 2}, p2[3] = {5, 4, 3};
  constexpr double sg[3] = {1.0, -1.0, 1.0};
  const std::int64_t V = x.geo.volume();
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 3; ++a) {
      double s = parallel_sum(V, [&](std::int64_t i) {
        return x(i, p1[k])[a] + sg[k] * x(i, p2[k])[a];
      });
      double alpha = s / (2.0 * V);
      parallel_for(V, [&](std::int64_t i) {
        x(i, p1[k])[a] -= alpha;
        x(i, p2[k])[a] -= sg[k] * alpha;
      });
    }
  }
}

struct Projector {
  bool deflate;
  void operator()(AdjTwoForm &x) const {
    x = self_dual_part(x);
    if (deflate) deflate_constants_inplace(x);
  }
};

}  // namespace

AdjTwoForm quad_form_apply(const LinkField &U, const AdjTwoForm &omega) {
  if (!(U.geo == omega.geo)) throw std::invalid_argument("quad_form_apply: geometry mismatch");
  auto [plus, minus] = split_self_dual(omega);
  double n = norm(omega), nm = norm(minus);
  if (nm > 1e-10 * n) throw std::invalid_argument("quad_form_apply: input is not self-dual");
  // ||D omega||^2 + ||D* omega||^2 realized as P+ (D3* D3 + D D*) omega.
  // Both terms are needed on the lattice: D* alone has nonconstant zero
  // modes on the self-dual subspace at finite momenta.
  AdjOneForm d = covariant_d_star(U, omega);
  AdjTwoForm out = covariant_d(U, d);
  AdjThreeForm h = covariant_d_two(U, omega);
  AdjTwoForm up = covariant_d_star_three(U, h);
  parallel_for(static_cast<std::int64_t>(out.c.size()),
               [&](std::int64_t i) { out.c[i] += up.c[i]; });
  return self_dual_part(out);
}

SpectralResult poincare_estimate(const LinkField &U, bool deflate_constants, double tol,
                                 int max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("poincare_estimate: tol must be positive");
  const Geometry &geo = U.geo;
  Projector project{deflate_constants};
  auto apply = [&](const AdjTwoForm &x) { return quad_form_apply(U, x); };

  // deterministic start vector: a fixed quasi-random fill, then projected
  AdjTwoForm x(geo);
  parallel_for(static_cast<std::int64_t>(x.c.size()), [&](std::int64_t i) {
    for (int a = 0; a < 3; ++a) {
      std::uint64_t h = static_cast<std::uint64_t>(3 * i + a) + 0x9e3779b97f4a7c15ULL;
      h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
      h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
      h ^= h >> 31;
      x.c[i][a] = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
    }
  });
  project(x);
  double nx = norm(x);
  if (!(nx > 0.0)) throw std::runtime_error("poincare_estimate: degenerate start vector");
  scale(x, 1.0 / nx);

  // crude operator-norm scale for the relative residual
  double op_scale = 0.0;
  {
    AdjTwoForm v = x;
    for (int it = 0; it < 15; ++it) {
      AdjTwoForm w = apply(v);
      project(w);
      double nw = norm(w);
      if (nw == 0.0) break;
      op_scale = std::max(op_scale, inner(v, w));
      scale(w, 1.0 / nw);
      v = std::move(w);
    }
    if (op_scale <= 0.0) op_scale = 1.0 / (geo.a * geo.a);
  }

  SpectralResult res;
  AdjTwoForm Ax = apply(x);
  double lam = inner(x, Ax);
  AdjTwoForm p(geo);  // zero
  bool have_p = false;

  for (int it = 0; it < max_iters; ++it) {
    res.iterations = it + 1;
    // residual
    AdjTwoForm r = Ax;
    axpy(r, -lam, x);
    project(r);
    double rn = norm(r);
    res.residual = rn / op_scale;
    if (res.residual <= tol) {
      res.converged = true;
      break;
    }
    scale(r, 1.0 / rn);

    // Rayleigh-Ritz over span{x, r, p}
    std::vector<const AdjTwoForm *> basis{&x, &r};
    if (have_p) basis.push_back(&p);
    int m = static_cast<int>(basis.size());
    std::vector<AdjTwoForm> Ab(m);
    for (int i = 0; i < m; ++i) {
      Ab[i] = apply(*basis[i]);
      project(Ab[i]);
    }
    Eigen::MatrixXd Ah(m, m), Bh(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Ah(i, j) = inner(*basis[i], Ab[j]);
        Bh(i, j) = inner(*basis[i], *basis[j]);
      }
    Ah = 0.5 * (Ah + Ah.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ah, Bh);
    if (es.info() != Eigen::Success) {
      // drop the p direction and retry with the 2d subspace
      have_p = false;
      continue;
    }
    Eigen::VectorXd y = es.eigenvectors().col(0);

    // new iterate and the implicit CG direction (the non-x part)
    AdjTwoForm xn(geo), pn(geo);
    axpy(pn, y(1), r);
    if (m == 3) axpy(pn, y(2), p);
    xn = pn;
    axpy(xn, y(0), x);
    project(xn);
    double nxn = norm(xn);
    if (!(nxn > 0.0)) break;
    scale(xn, 1.0 / nxn);
    double npn = norm(pn);
    if (npn > 1e-300) {
      scale(pn, 1.0 / npn);
      p = std::move(pn);
      have_p = true;
    } else {
      have_p = false;
    }
    x = std::move(xn);
    Ax = apply(x);
    lam = inner(x, Ax);
  }

  res.lambda_min = std::max(lam, 0.0);
  double a2 = geo.a * geo.a;
  res.c_poincare = (res.lambda_min <= 1e-10 / a2) ? std::numeric_limits<double>::infinity()
                                                  : 1.0 / res.lambda_min;
  res.minimizer = std::move(x);
  return res;
}

}  // namespace ym
