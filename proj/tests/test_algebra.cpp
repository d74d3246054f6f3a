#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ym/algebra.h"

using namespace ym;
using C = std::complex<double>;

namespace {

Mat2 matmul(const Mat2 &a, const Mat2 &b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 matsub(const Mat2 &a, const Mat2 &b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

double matdist(const Mat2 &a, const Mat2 &b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d += std::norm(a[i] - b[i]);
  return std::sqrt(d);
}

// series exponential, independent oracle for su2_exp
Mat2 mat_exp(const Mat2 &x) {
  Mat2 acc{C(1), C(0), C(0), C(1)};
  Mat2 term{C(1), C(0), C(0), C(1)};
  for (int k = 1; k < 40; ++k) {
    term = matmul(term, x);
    for (auto &t : term) t /= double(k);
    for (int i = 0; i < 4; ++i) acc[i] += term[i];
  }
  return acc;
}

C mat_trace(const Mat2 &a) { return a[0] + a[3]; }

}  // namespace

TEST_CASE("basis is orthonormal under <X,Y> = -2 tr(XY)") {
  for (int a = 0; a < 3; ++a) {
    Algebra Ta;
    Ta[a] = 1.0;
    for (int b = 0; b < 3; ++b) {
      Algebra Tb;
      Tb[b] = 1.0;
      C ip = -2.0 * mat_trace(matmul(to_matrix(Ta), to_matrix(Tb)));
      CHECK(ip.real() == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-14));
      CHECK(std::abs(ip.imag()) < 1e-14);
      CHECK(su2_inner(Ta, Tb) == (a == b ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("commutator matches dense [X,Y]") {
  Algebra X{{0.3, -1.2, 0.7}}, Y{{-0.5, 0.25, 2.0}};
  Mat2 mx = to_matrix(X), my = to_matrix(Y);
  Mat2 dense = matsub(matmul(mx, my), matmul(my, mx));
  CHECK(matdist(to_matrix(su2_commutator(X, Y)), dense) < 1e-14);
  // antisymmetry and Jacobi
  Algebra Z{{1.1, 0.4, -0.6}};
  Algebra j = su2_commutator(X, su2_commutator(Y, Z)) + su2_commutator(Y, su2_commutator(Z, X)) +
              su2_commutator(Z, su2_commutator(X, Y));
  CHECK(j.norm() < 1e-14);
  CHECK((su2_commutator(X, Y) + su2_commutator(Y, X)).norm() < 1e-14);
}

TEST_CASE("group product matches dense 2x2 product") {
  Group g1 = su2_exp({{0.4, -0.9, 1.3}});
  Group g2 = su2_exp({{-2.2, 0.1, 0.5}});
  CHECK(matdist(to_matrix(g1 * g2), matmul(to_matrix(g1), to_matrix(g2))) < 1e-14);
  // adjoint is conjugate transpose
  Mat2 m = to_matrix(g1);
  Mat2 mdag{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
  CHECK(matdist(to_matrix(g1.adj()), mdag) < 1e-14);
  CHECK(matdist(to_matrix(g1 * g1.adj()), to_matrix(group_identity())) < 1e-14);
}

TEST_CASE("su2_exp against the series exponential") {
  for (Algebra X : {Algebra{{0.7, 0.0, 0.0}}, Algebra{{0.2, -1.4, 2.2}}, Algebra{{-3.0, 0.3, 0.9}}}) {
    CHECK(matdist(to_matrix(su2_exp(X)), mat_exp(to_matrix(X))) < 1e-12);
    CHECK(su2_exp(X).norm2() == doctest::Approx(1.0).epsilon(1e-15));
  }
  // closed form for a single-axis rotation
  Group g = su2_exp({{1.0, 0.0, 0.0}});
  CHECK(g.w == doctest::Approx(std::cos(0.5)).epsilon(1e-15));
  CHECK(g.x == doctest::Approx(std::sin(0.5)).epsilon(1e-15));
  CHECK(g.y == 0.0);
  CHECK(g.z == 0.0);
}

TEST_CASE("su2_exp small-norm branch is smooth") {
  for (double eps : {1e-7, 1e-9, 1e-12, 0.0}) {
    Algebra X{{eps, 0.0, 0.0}};
    Group g = su2_exp(X);
    CHECK(std::abs(g.w - std::cos(0.5 * eps)) < 1e-16);
    CHECK(std::abs(g.x - std::sin(0.5 * eps)) < 1e-16);
  }
  CHECK_THROWS(su2_exp({{std::nan(""), 0.0, 0.0}}));
}

TEST_CASE("exp/project roundtrip") {
  Algebra X{{0.31, -0.12, 0.44}};
  // project of the algebra matrix recovers the coefficients
  CHECK((su2_project(to_matrix(X)) - X).norm() < 1e-15);
  // log via project: for small X, su2_project(exp(X)) ~ X
  Algebra Y = su2_project(su2_exp(X * 1e-4));
  CHECK((Y - X * 1e-4).norm() < 1e-9);
}

TEST_CASE("su2_project(Mat2) is the traceless anti-Hermitian part") {
  // arbitrary complex matrix, dense projection as the oracle
  Mat2 m{C(0.3, 1.1), C(-0.7, 0.2), C(0.9, -0.4), C(1.5, -0.8)};
  Mat2 mdag{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
  Mat2 anti = matsub(m, mdag);
  for (auto &x : anti) x *= 0.5;
  C tr = 0.5 * mat_trace(anti);
  anti[0] -= tr;
  anti[3] -= tr;
  CHECK(matdist(to_matrix(su2_project(m)), anti) < 1e-14);
}

TEST_CASE("quaternion-line sums match dense sums before projection") {
  Group g1 = su2_exp({{0.9, -0.2, 0.1}}), g2 = su2_exp({{-0.3, 0.8, -1.0}});
  Group s = g1 + g2;
  Mat2 dense = to_matrix(g1);
  Mat2 m2 = to_matrix(g2);
  for (int i = 0; i < 4; ++i) dense[i] += m2[i];
  CHECK(matdist(to_matrix(Group{s.w, 0, 0, 0}) , Mat2{C(s.w), C(0), C(0), C(s.w)}) < 1e-15);
  // projecting the sum agrees with projecting the dense sum
  CHECK((su2_project(s) - su2_project(dense)).norm() < 1e-14);
  CHECK(s.re_trace() == doctest::Approx(mat_trace(dense).real()).epsilon(1e-15));
}
