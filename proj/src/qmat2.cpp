#include "qde/qmat2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qde {

namespace {

constexpr double kClusterTol = 1e-7;
constexpr double kRankTol = 1e-9;
constexpr double kIndependenceTol = 1e-10;

Vector2Hd unit(const Vector2Hd& v) {
  const double n = v.norm();
  return n > 0 ? v * Quat(1.0 / n) : v;
}

double scale_of(const Matrix4c& C) { return std::max(1.0, C.norm()); }

bool canonical_before(const cplx& x, const cplx& y, double tol) {
  if (std::abs(x.imag() - y.imag()) > tol) return x.imag() < y.imag();
  return x.real() < y.real();
}

struct Spectrum {
  std::array<cplx, 2> z;
  bool doubled;
};

// Pairs the four counterpart eigenvalues into two canonical values.
Spectrum canonical_spectrum(const Matrix4c& C) {
  Eigen::ComplexEigenSolver<Matrix4c> es(C, false);
  std::vector<cplx> ev;
  for (int n = 0; n < 4; ++n) {
    cplx e = es.eigenvalues()(n);
    if (e.imag() < 0) e = std::conj(e);
    ev.push_back(e);
  }
  int partner = 1;
  for (int n = 2; n < 4; ++n)
    if (std::abs(ev[n] - ev[0]) < std::abs(ev[partner] - ev[0])) partner = n;
  std::vector<cplx> rest;
  for (int n = 1; n < 4; ++n)
    if (n != partner) rest.push_back(ev[n]);
  cplx z1 = 0.5 * (ev[0] + ev[partner]);
  cplx z2 = 0.5 * (rest[0] + rest[1]);
  const double sc = scale_of(C);
  if (canonical_before(z2, z1, 1e-12 * sc)) std::swap(z1, z2);
  if (std::abs(z1 - z2) <= kClusterTol * sc) {
    const cplx zm = 0.5 * (z1 + z2);
    return {{zm, zm}, true};
  }
  return {{z1, z2}, false};
}

// Right singular vectors of (C - zI) spanning its numerical null space
// (always at least one).
std::vector<Vector4c> null_space(const Matrix4c& C, cplx z) {
  Matrix4c A = C - z * Matrix4c::Identity();
  Eigen::JacobiSVD<Matrix4c> svd(A, Eigen::ComputeFullV);
  const double tol = kRankTol * scale_of(C);
  std::vector<Vector4c> out;
  for (int n = 3; n >= 0; --n) {
    if (n == 3 || svd.singularValues()(n) <= tol) out.push_back(svd.matrixV().col(n));
  }
  return out;
}

}  // namespace

Vector2Hd solve(const Matrix2Hd& M, const Vector2Hd& y) {
  int p = M(0, 0).norm() >= M(1, 0).norm() ? 0 : 1;
  const int o = 1 - p;
  const double scale = std::max(1e-300, M.norm());
  const Quat piv = M(p, 0);
  if (piv.norm() <= 1e-14 * scale) throw Error(ErrorCode::DegenerateBasis, "singular quaternionic 2x2 system");
  const Quat pinv = piv.inverse();
  const Quat f = M(o, 0) * pinv;
  const Quat m11 = M(o, 1) - f * M(p, 1);
  const Quat r1 = y[o] - f * y[p];
  if (m11.norm() <= 1e-14 * scale) throw Error(ErrorCode::DegenerateBasis, "singular quaternionic 2x2 system");
  Vector2Hd x;
  x[1] = m11.inverse() * r1;
  x[0] = pinv * (y[p] - M(p, 1) * x[1]);
  return x;
}

Matrix2Hd inverse(const Matrix2Hd& M) {
  const Vector2Hd e0{{Quat(1), Quat(0)}};
  const Vector2Hd e1{{Quat(0), Quat(1)}};
  return Matrix2Hd::from_columns(solve(M, e0), solve(M, e1));
}

std::array<double, 4> dieudonne_factorizations(const Matrix2Hd& M) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto form = [&](const Quat& lead, const Quat& other, const Quat& left, const Quat& right) {
    if (lead.norm() == 0.0) return nan;
    return lead.norm() * (other - left * lead.inverse() * right).norm();
  };
  return {form(M(0, 0), M(1, 1), M(1, 0), M(0, 1)), form(M(0, 1), M(1, 0), M(1, 1), M(0, 0)),
          form(M(1, 0), M(0, 1), M(0, 0), M(1, 1)), form(M(1, 1), M(0, 0), M(0, 1), M(1, 0))};
}

double dieudonne_det(const Matrix2Hd& M) {
  int best = 0;
  double lead = -1;
  for (int n = 0; n < 4; ++n) {
    if (M.m[n].norm() > lead) {
      lead = M.m[n].norm();
      best = n;
    }
  }
  if (lead == 0.0) return 0.0;
  // factorization n leads with M.m[n]
  return dieudonne_factorizations(M)[best];
}

EigenDecomposition right_eigenpairs(const Matrix2Hd& M) {
  const Matrix4c C = complex_counterpart(M);
  const Spectrum sp = canonical_spectrum(C);
  EigenDecomposition d;
  d.eigenvalues = sp.z;
  if (!sp.doubled) {
    for (int n = 0; n < 2; ++n) d.eigenvectors[n] = unit(from_complex(null_space(C, sp.z[n]).front()));
    return d;
  }
  const auto ns = null_space(C, sp.z[0]);
  std::vector<Vector2Hd> cand;
  for (const auto& v : ns) cand.push_back(unit(from_complex(v)));
  // Psi j carries the conjugate eigenvalue, so it only qualifies when z is real.
  double best = -1;
  std::pair<int, int> pick{0, 0};
  for (size_t a = 0; a < cand.size(); ++a)
    for (size_t b = a + 1; b < cand.size(); ++b) {
      const double det = dieudonne_det(Matrix2Hd::from_columns(cand[a], cand[b]));
      if (det > best) {
        best = det;
        pick = {int(a), int(b)};
      }
    }
  d.eigenvectors[0] = cand[pick.first];
  if (best > kIndependenceTol) {
    d.eigenvectors[1] = cand[pick.second];
  } else {
    d.eigenvectors[1] = cand[pick.first];
    d.defective = true;
  }
  return d;
}

EigenDecomposition diagonalize(const Matrix2Hd& M) {
  EigenDecomposition d = right_eigenpairs(M);
  if (d.defective) throw Error(ErrorCode::DefectiveMatrix, "matrix is defective; use jordanize");
  d.S = Matrix2Hd::from_columns(d.eigenvectors[0], d.eigenvectors[1]);
  d.Sinv = inverse(d.S);
  return d;
}

EigenDecomposition jordanize(const Matrix2Hd& M) {
  EigenDecomposition d = right_eigenpairs(M);
  if (!d.defective) throw Error(ErrorCode::Diagonalizable, "matrix is diagonalizable; use diagonalize");
  const Matrix4c C = complex_counterpart(M);
  const cplx z = d.eigenvalues[0];
  const Matrix4c A = C - z * Matrix4c::Identity();
  Eigen::JacobiSVD<Matrix4c> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  svd.setThreshold(kRankTol);
  Vector4c v1 = to_complex(d.eigenvectors[0]);
  Vector4c v2 = svd.solve(v1);

  // Gauge: complex part of J11 equal to 1 (or of J21 when J11 has none),
  // complex part of J12 equal to 0.
  const int ref = std::abs(v1(0)) > 1e-8 * v1.norm() ? 0 : 2;
  const cplx c = 1.0 / v1(ref);
  v1 *= c;
  v2 *= c;
  v2 -= v1 * (v2(ref) / v1(ref));

  d.jordan = true;
  d.eigenvectors[0] = from_complex(v1);
  d.eigenvectors[1] = d.eigenvectors[0];
  d.S = Matrix2Hd::from_columns(from_complex(v1), from_complex(v2));
  d.Sinv = inverse(d.S);
  return d;
}

Matrix2Hd companion(const Quat& a, const Quat& b) { return {Quat(0), Quat(1), -b, -a}; }

std::array<Quat, 2> MatrixOdeSolution::exponents() const {
  if (jordan) {
    const Quat q = S(1, 0) * S(0, 0).inverse();
    return {q, q};
  }
  return {S(1, 0) * S(0, 0).inverse(), S(1, 1) * S(0, 1).inverse()};
}

std::pair<Quat, Quat> MatrixOdeSolution::operator()(double x) const {
  if (jordan) {
    // J e^{Bx} k with e^{Bx} = e^{zx} [[1, x], [0, 1]]
    const Quat e = exp(Quat(z[0] * x));
    const Quat y0 = e * (k[0] + k[1] * Quat(x));
    const Quat y1 = e * k[1];
    return {S(0, 0) * y0 + S(0, 1) * y1, S(1, 0) * y0 + S(1, 1) * y1};
  }
  // exp[S_1n z_n S_1n^-1 x] S_1n k_n
  const auto q = exponents();
  Quat phi, dphi;
  for (int n = 0; n < 2; ++n) {
    const Quat term = exp(q[n] * x) * S(0, n) * k[n];
    phi += term;
    dphi += q[n] * term;
  }
  return {phi, dphi};
}

MatrixOdeSolution solve_ode_via_matrix(const Quat& a, const Quat& b, const Quat& phi0, const Quat& dphi0) {
  const Matrix2Hd M = companion(a, b);
  EigenDecomposition d = right_eigenpairs(M);
  if (d.defective)
    d = jordanize(M);
  else
    d = diagonalize(M);
  MatrixOdeSolution s;
  s.jordan = d.jordan;
  s.z = d.eigenvalues;
  s.S = d.S;
  s.k = d.Sinv * Vector2Hd{{phi0, dphi0}};
  return s;
}

Matrix2Hd outer(const Vector2Hd& psi, const Quat& lambda) {
  Matrix2Hd r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = psi[i] * lambda * psi[j].conj();
  return r;
}

SpectralDecomposition spectral_decompose_antihermitian(const Matrix2Hd& A) {
  const double sc = std::max(1.0, A.norm());
  if ((A + A.adjoint()).norm() > 1e-12 * sc)
    throw Error(ErrorCode::Precondition, "spectral_decompose_antihermitian: A + A^dagger != 0");
  const Matrix4c C = complex_counterpart(A);
  const cplx I(0, 1);
  const Matrix4c Hc = -I * C;
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (Hc + Hc.adjoint()));
  const auto& lam = es.eigenvalues();
  const auto& vec = es.eigenvectors();

  SpectralDecomposition s;
  s.lambda[0] = lam(3);
  s.eigenvectors[0] = unit(from_complex<double>(vec.col(3)));
  // Second eigenvector: quaternionic Gram-Schmidt over the eigenspace of lam(2).
  const double tol = 1e-9 * sc;
  double bestNorm = -1;
  for (int n = 2; n >= 0; --n) {
    if (std::abs(lam(n) - lam(2)) > tol) break;
    Vector2Hd v = from_complex<double>(vec.col(n));
    const Quat overlap = s.eigenvectors[0][0].conj() * v[0] + s.eigenvectors[0][1].conj() * v[1];
    v = v - s.eigenvectors[0] * overlap;
    if (v.norm() > bestNorm) {
      bestNorm = v.norm();
      s.eigenvectors[1] = unit(v);
    }
  }
  s.lambda[1] = lam(2);
  // order ascending like the counterpart spectrum
  std::swap(s.lambda[0], s.lambda[1]);
  std::swap(s.eigenvectors[0], s.eigenvectors[1]);
  s.H = outer(s.eigenvectors[0], Quat(s.lambda[0])) + outer(s.eigenvectors[1], Quat(s.lambda[1]));
  return s;
}

}  // namespace qde
