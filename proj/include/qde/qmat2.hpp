#pragma once

#include <array>
#include <utility>

#include <Eigen/Core>

#include "qde/quatcore.hpp"

namespace qde {

template <typename Scalar>
struct Vector2H {
  std::array<Quaternion<Scalar>, 2> v{};

  Quaternion<Scalar>& operator[](int r) { return v[r]; }
  const Quaternion<Scalar>& operator[](int r) const { return v[r]; }

  Scalar squaredNorm() const { return v[0].squaredNorm() + v[1].squaredNorm(); }
  Scalar norm() const { return std::sqrt(squaredNorm()); }

  friend Vector2H operator+(const Vector2H& a, const Vector2H& b) { return {{a[0] + b[0], a[1] + b[1]}}; }
  friend Vector2H operator-(const Vector2H& a, const Vector2H& b) { return {{a[0] - b[0], a[1] - b[1]}}; }
  // right scalar multiplication
  friend Vector2H operator*(const Vector2H& a, const Quaternion<Scalar>& q) { return {{a[0] * q, a[1] * q}}; }
};

template <typename Scalar>
struct Matrix2H {
  std::array<Quaternion<Scalar>, 4> m{};

  Matrix2H() = default;
  Matrix2H(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b, const Quaternion<Scalar>& c,
           const Quaternion<Scalar>& d)
      : m{a, b, c, d} {}

  static Matrix2H Identity() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(1)}; }
  static Matrix2H Zero() { return {}; }
  static Matrix2H from_columns(const Vector2H<Scalar>& c0, const Vector2H<Scalar>& c1) {
    return {c0[0], c1[0], c0[1], c1[1]};
  }

  Quaternion<Scalar>& operator()(int r, int c) { return m[2 * r + c]; }
  const Quaternion<Scalar>& operator()(int r, int c) const { return m[2 * r + c]; }
  Vector2H<Scalar> col(int c) const { return {{(*this)(0, c), (*this)(1, c)}}; }

  Matrix2H adjoint() const { return {m[0].conj(), m[2].conj(), m[1].conj(), m[3].conj()}; }

  Scalar squaredNorm() const {
    Scalar s = 0;
    for (const auto& q : m) s += q.squaredNorm();
    return s;
  }
  Scalar norm() const { return std::sqrt(squaredNorm()); }

  friend Matrix2H operator+(const Matrix2H& a, const Matrix2H& b) {
    return {a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]};
  }
  friend Matrix2H operator-(const Matrix2H& a, const Matrix2H& b) {
    return {a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]};
  }
  friend Matrix2H operator*(const Matrix2H& a, const Matrix2H& b) {
    Matrix2H r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
  }
  friend Vector2H<Scalar> operator*(const Matrix2H& a, const Vector2H<Scalar>& x) {
    return {{a(0, 0) * x[0] + a(0, 1) * x[1], a(1, 0) * x[0] + a(1, 1) * x[1]}};
  }
};

using Matrix2Hd = Matrix2H<double>;
using Vector2Hd = Vector2H<double>;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// 2x2 matrix of right-complex-linear scalar operators A + B R_i.
template <typename Scalar>
struct Matrix2CL {
  std::array<RightLinearOp<Scalar>, 4> m{};

  RightLinearOp<Scalar>& operator()(int r, int c) { return m[2 * r + c]; }
  const RightLinearOp<Scalar>& operator()(int r, int c) const { return m[2 * r + c]; }

  static Matrix2CL from_quaternionic(const Matrix2H<Scalar>& h) {
    Matrix2CL r;
    for (int n = 0; n < 4; ++n) r.m[n] = RightLinearOp<Scalar>::left(h.m[n]);
    return r;
  }

  Vector2H<Scalar> operator()(const Vector2H<Scalar>& x) const {
    const auto& s = *this;
    return {{s(0, 0)(x[0]) + s(0, 1)(x[1]), s(1, 0)(x[0]) + s(1, 1)(x[1])}};
  }
};

using Matrix2CLd = Matrix2CL<double>;

// Coordinates (x1, y1, x2, y2) with psi_r = x_r + j y_r.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 1> to_complex(const Vector2H<Scalar>& v) {
  auto a = to_pair(v[0]);
  auto b = to_pair(v[1]);
  return {a.z1, a.z2, b.z1, b.z2};
}

template <typename Scalar>
Vector2H<Scalar> from_complex(const Eigen::Matrix<std::complex<Scalar>, 4, 1>& c) {
  return {{from_pair<Scalar>(c(0), c(1)), from_pair<Scalar>(c(2), c(3))}};
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 4> complex_counterpart(const Matrix2H<Scalar>& M) {
  Eigen::Matrix<std::complex<Scalar>, 4, 4> C;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) C.template block<2, 2>(2 * r, 2 * c) = counterpart(M(r, c));
  return C;
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 4> complex_counterpart(const Matrix2CL<Scalar>& M) {
  Eigen::Matrix<std::complex<Scalar>, 4, 4> C;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) C.template block<2, 2>(2 * r, 2 * c) = counterpart(M(r, c));
  return C;
}

// Solve M x = y with quaternionic Gaussian elimination (largest-norm pivot,
// inverses applied from the left). Throws DegenerateBasis when singular.
Vector2Hd solve(const Matrix2Hd& M, const Vector2Hd& y);
Matrix2Hd inverse(const Matrix2Hd& M);

// Study/Dieudonne functional sqrt(det[M M^dagger]).
double dieudonne_det(const Matrix2Hd& M);

// The four Schur-complement factorizations
//   |m00| |m11 - m10 m00^-1 m01|, |m01| |m10 - m11 m01^-1 m00|,
//   |m10| |m01 - m00 m10^-1 m11|, |m11| |m00 - m01 m11^-1 m10|.
// Entries whose leading factor vanishes are NaN.
std::array<double, 4> dieudonne_factorizations(const Matrix2Hd& M);

struct EigenDecomposition {
  std::array<cplx, 2> eigenvalues{};
  std::array<Vector2Hd, 2> eigenvectors{};
  bool defective = false;
  bool jordan = false;
  // diagonalize: S = [Psi1 Psi2]; jordanize: S = J with M = J [[z,1],[0,z]] J^-1.
  Matrix2Hd S, Sinv;
};

// Canonical eigenvalues (Im z >= 0, sorted by (Im, Re)) and lifted eigenvectors.
// For a defective matrix eigenvectors[1] repeats eigenvectors[0] and defective is set.
EigenDecomposition right_eigenpairs(const Matrix2Hd& M);
EigenDecomposition diagonalize(const Matrix2Hd& M);
EigenDecomposition jordanize(const Matrix2Hd& M);

// phi'' + a phi' + b phi = 0 written as Phi' = [[0,1],[-b,-a]] Phi.
Matrix2Hd companion(const Quat& a, const Quat& b);

struct MatrixOdeSolution {
  bool jordan = false;
  std::array<cplx, 2> z{};
  Matrix2Hd S;
  Vector2Hd k;  // S^-1 Phi(0)

  // Exponents S_2n S_1n^-1 (diagonalizable) or J21 J11^-1 (Jordan).
  std::array<Quat, 2> exponents() const;
  // (phi(x), phi'(x))
  std::pair<Quat, Quat> operator()(double x) const;
};

MatrixOdeSolution solve_ode_via_matrix(const Quat& a, const Quat& b, const Quat& phi0, const Quat& dphi0);

struct SpectralDecomposition {
  std::array<double, 2> lambda{};
  std::array<Vector2Hd, 2> eigenvectors{};
  Matrix2Hd H;
};

// A = sum Psi lambda i Psi^dagger, H = sum Psi lambda Psi^dagger.
SpectralDecomposition spectral_decompose_antihermitian(const Matrix2Hd& A);

// Psi lambda Psi^dagger
Matrix2Hd outer(const Vector2Hd& psi, const Quat& lambda);

}  // namespace qde
