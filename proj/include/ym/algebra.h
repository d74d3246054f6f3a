#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace ym {

// su(2) element in the orthonormal basis T_a = -(i/2) sigma_a,
// <X,Y> = -2 tr(XY) = sum_a x_a y_a.
struct Algebra {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  double &operator[](int a) { return v[a]; }
  double operator[](int a) const { return v[a]; }

  Algebra operator+(const Algebra &o) const { return {{v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}}; }
  Algebra operator-(const Algebra &o) const { return {{v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}}; }
  Algebra operator-() const { return {{-v[0], -v[1], -v[2]}}; }
  Algebra operator*(double s) const { return {{s * v[0], s * v[1], s * v[2]}}; }
  Algebra &operator+=(const Algebra &o) {
    v[0] += o.v[0];
    v[1] += o.v[1];
    v[2] += o.v[2];
    return *this;
  }
  double norm2() const { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }
  double norm() const { return std::sqrt(norm2()); }
};

inline Algebra operator*(double s, const Algebra &x) { return x * s; }

inline double su2_inner(const Algebra &x, const Algebra &y) {
  return x.v[0] * y.v[0] + x.v[1] * y.v[1] + x.v[2] * y.v[2];
}

// [T_a,T_b] = eps_{abc} T_c: the bracket is the coefficient cross product.
inline Algebra su2_commutator(const Algebra &x, const Algebra &y) {
  return {{x.v[1] * y.v[2] - x.v[2] * y.v[1],
           x.v[2] * y.v[0] - x.v[0] * y.v[2],
           x.v[0] * y.v[1] - x.v[1] * y.v[0]}};
}

// SU(2) element stored as a unit quaternion:
// w*I + x*(-i s1) + y*(-i s2) + z*(-i s3).  Hamilton product = matrix product.
struct Group {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Group() = default;
  Group(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  Group operator*(const Group &o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  Group adj() const { return {w, -x, -y, -z}; }
  // Quaternion-line arithmetic: sums of group elements (staples, clovers)
  // stay in the real quaternion algebra and are projected later.
  Group operator+(const Group &o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  Group operator-(const Group &o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  Group &operator+=(const Group &o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  Group normalized() const {
    double n = std::sqrt(norm2());
    return {w / n, x / n, y / n, z / n};
  }
  double re_trace() const { return 2.0 * w; }  // Re tr of the 2x2 matrix
};

inline Group group_identity() { return {1.0, 0.0, 0.0, 0.0}; }

// exp(sum v_a T_a): rotation by |v| about v-hat, half angle in the quaternion.
inline Group su2_exp(const Algebra &X) {
  double n2 = X.norm2();
  if (!std::isfinite(n2)) throw std::invalid_argument("su2_exp: non-finite input");
  double n = std::sqrt(n2);
  double half = 0.5 * n;
  // sin(n/2)/n, analytic at n = 0
  double s = (n > 1e-8) ? std::sin(half) / n : 0.5 * (1.0 - half * half / 6.0);
  return {std::cos(half), s * X.v[0], s * X.v[1], s * X.v[2]};
}

// Projection of a quaternion-algebra value (not necessarily unit) onto su(2):
// keeps the imaginary part, returns coefficients in the T_a basis.
inline Algebra su2_project(const Group &m) {
  return {{2.0 * m.x, 2.0 * m.y, 2.0 * m.z}};
}

// Dense 2x2 complex matrices, used by tests and the general projection.
using Mat2 = std::array<std::complex<double>, 4>;  // row-major (00,01,10,11)

inline Mat2 to_matrix(const Group &g) {
  // w*I + x*(-i s1) + y*(-i s2) + z*(-i s3)
  using C = std::complex<double>;
  return {C(g.w, -g.z), C(-g.y, -g.x), C(g.y, -g.x), C(g.w, g.z)};
}

inline Mat2 to_matrix(const Algebra &X) {
  using C = std::complex<double>;
  // sum v_a T_a is half the unit-quaternion imaginary basis
  Group h{0.0, 0.5 * X.v[0], 0.5 * X.v[1], 0.5 * X.v[2]};
  return to_matrix(h);
}

// (M - M^dag)/2 - tr(M - M^dag)/4 * I, expressed in the T_a basis.
inline Algebra su2_project(const Mat2 &m) {
  using C = std::complex<double>;
  Mat2 a;
  a[0] = 0.5 * (m[0] - std::conj(m[0]));
  a[1] = 0.5 * (m[1] - std::conj(m[2]));
  a[2] = 0.5 * (m[2] - std::conj(m[1]));
  a[3] = 0.5 * (m[3] - std::conj(m[3]));
  C tr_half = 0.5 * (a[0] + a[3]);
  a[0] -= tr_half;
  a[3] -= tr_half;
  // v_a = <A, T_a> = -2 tr(A T_a);  T_a = -(i/2) sigma_a
  C i(0.0, 1.0);
  C v1 = i * (a[1] + a[2]);
  C v2 = (a[2] - a[1]);
  C v3 = i * (a[0] - a[3]);
  return {{v1.real(), v2.real(), v3.real()}};
}

}  // namespace ym
