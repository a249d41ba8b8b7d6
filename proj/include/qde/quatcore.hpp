#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include <Eigen/Core>

#include "qde/error.hpp"

namespace qde {

// q = q0 + i q1 + j q2 + k q3, Hamilton product.
template <typename Scalar>
struct Quaternion {
  Scalar q0{0}, q1{0}, q2{0}, q3{0};

  using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
  using Complex = std::complex<Scalar>;

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar w) : q0(w) {}
  constexpr Quaternion(Scalar w, Scalar x, Scalar y, Scalar z) : q0(w), q1(x), q2(y), q3(z) {}
  Quaternion(Scalar w, const Vec3& v) : q0(w), q1(v(0)), q2(v(1)), q3(v(2)) {}
  // complex numbers embed along the i axis
  Quaternion(const Complex& z) : q0(z.real()), q1(z.imag()) {}

  static Quaternion pure(const Vec3& v) { return Quaternion(Scalar(0), v); }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  Scalar real() const { return q0; }
  Vec3 vec() const { return Vec3(q1, q2, q3); }
  Complex complex_part() const { return {q0, q1}; }

  Scalar squaredNorm() const { return q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3; }
  Scalar norm() const {
    using std::abs;
    using std::sqrt;
    // scaled to avoid overflow/underflow in the squares
    Scalar m = std::max(std::max(abs(q0), abs(q1)), std::max(abs(q2), abs(q3)));
    if (m == Scalar(0)) return Scalar(0);
    Quaternion s = *this * (Scalar(1) / m);
    return m * sqrt(s.squaredNorm());
  }
  Quaternion conj() const { return {q0, -q1, -q2, -q3}; }
  Quaternion inverse() const {
    Scalar n2 = squaredNorm();
    return conj() * (Scalar(1) / n2);
  }
  bool allFinite() const {
    using std::isfinite;
    return isfinite(q0) && isfinite(q1) && isfinite(q2) && isfinite(q3);
  }

  Quaternion operator-() const { return {-q0, -q1, -q2, -q3}; }
  Quaternion& operator+=(const Quaternion& o) {
    q0 += o.q0; q1 += o.q1; q2 += o.q2; q3 += o.q3;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    q0 -= o.q0; q1 -= o.q1; q2 -= o.q2; q3 -= o.q3;
    return *this;
  }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0};
  }
  friend Quaternion operator*(const Quaternion& a, Scalar s) {
    return {a.q0 * s, a.q1 * s, a.q2 * s, a.q3 * s};
  }
  friend Quaternion operator*(Scalar s, const Quaternion& a) { return a * s; }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.q0 == b.q0 && a.q1 == b.q1 && a.q2 == b.q2 && a.q3 == b.q3;
  }

  template <typename NewScalar>
  Quaternion<NewScalar> cast() const {
    return {NewScalar(q0), NewScalar(q1), NewScalar(q2), NewScalar(q3)};
  }
};

using Quat = Quaternion<double>;
using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat2c = Eigen::Matrix2cd;

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const Quaternion<Scalar>& q) {
  return os << '(' << q.q0 << ", " << q.q1 << ", " << q.q2 << ", " << q.q3 << ')';
}

template <typename Scalar>
Quaternion<Scalar> conj(const Quaternion<Scalar>& q) { return q.conj(); }

template <typename Scalar>
Scalar norm(const Quaternion<Scalar>& q) { return q.norm(); }

template <typename Scalar>
Quaternion<Scalar> inverse(const Quaternion<Scalar>& q) { return q.inverse(); }

template <typename Scalar>
Quaternion<Scalar> mul(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) { return p * q; }

template <typename Scalar>
Scalar distance(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) { return (p - q).norm(); }

template <typename Scalar>
Quaternion<Scalar> exp(const Quaternion<Scalar>& q) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar v2 = q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
  const Scalar v = sqrt(v2);
  Scalar sinc;
  if (v < Scalar(1e-6))
    sinc = Scalar(1) - v2 / Scalar(6) + v2 * v2 / Scalar(120);
  else
    sinc = sin(v) / v;
  const Scalar e = std::exp(q.q0);
  return {e * cos(v), e * sinc * q.q1, e * sinc * q.q2, e * sinc * q.q3};
}

// q = z1 + j z2 with z1 = q0 + i q1, z2 = q2 - i q3.
template <typename Scalar>
struct SymplecticPair {
  std::complex<Scalar> z1, z2;
};

template <typename Scalar>
SymplecticPair<Scalar> to_pair(const Quaternion<Scalar>& q) {
  return {{q.q0, q.q1}, {q.q2, -q.q3}};
}

template <typename Scalar>
Quaternion<Scalar> from_pair(const std::complex<Scalar>& z1, const std::complex<Scalar>& z2) {
  return {z1.real(), z1.imag(), z2.real(), -z2.imag()};
}

template <typename Scalar>
Quaternion<Scalar> from_pair(const SymplecticPair<Scalar>& p) { return from_pair(p.z1, p.z2); }

// q * z for complex z, computed on the pair.
template <typename Scalar>
Quaternion<Scalar> right_mul(const Quaternion<Scalar>& q, const std::complex<Scalar>& z) {
  auto p = to_pair(q);
  return from_pair<Scalar>(p.z1 * z, p.z2 * z);
}

// Complex 2x2 matrix of psi -> q psi in (z1, z2) coordinates.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> counterpart(const Quaternion<Scalar>& q) {
  auto p = to_pair(q);
  Eigen::Matrix<std::complex<Scalar>, 2, 2> m;
  m << p.z1, -std::conj(p.z2), p.z2, std::conj(p.z1);
  return m;
}

// psi -> A psi + B psi i
template <typename Scalar>
struct RightLinearOp {
  Quaternion<Scalar> A{}, B{};

  static RightLinearOp left(const Quaternion<Scalar>& a) { return {a, Quaternion<Scalar>{}}; }
  static RightLinearOp right_i(const Quaternion<Scalar>& b) { return {Quaternion<Scalar>{}, b}; }

  Quaternion<Scalar> operator()(const Quaternion<Scalar>& psi) const {
    return A * psi + B * psi * Quaternion<Scalar>::i();
  }

  RightLinearOp operator-() const { return {-A, -B}; }
  friend RightLinearOp operator+(const RightLinearOp& x, const RightLinearOp& y) {
    return {x.A + y.A, x.B + y.B};
  }
  friend RightLinearOp operator-(const RightLinearOp& x, const RightLinearOp& y) {
    return {x.A - y.A, x.B - y.B};
  }
  // R_i commutes with left multiplication and squares to -1.
  friend RightLinearOp operator*(const RightLinearOp& x, const RightLinearOp& y) {
    return {x.A * y.A - x.B * y.B, x.A * y.B + x.B * y.A};
  }
};

using RightLinearScalarOp = RightLinearOp<double>;

template <typename Scalar>
Quaternion<Scalar> apply_right_linear(const RightLinearOp<Scalar>& op, const Quaternion<Scalar>& psi) {
  return op(psi);
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> counterpart(const RightLinearOp<Scalar>& op) {
  const std::complex<Scalar> I(0, 1);
  return counterpart(op.A) + I * counterpart(op.B);
}

// exp[h.alpha x] = exp[i alpha x] cPlus + exp[-i alpha x] cMinus
struct SphereRebase {
  double alpha;
  Quat cPlus, cMinus;
};

SphereRebase rebase_sphere_exponential(const Vec3& alphaVec);

// Right-hand side of the rebase identity evaluated at x.
Quat rebased_exponential(const SphereRebase& r, double x);

}  // namespace qde
