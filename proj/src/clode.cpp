#include "qde/clode.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace qde {

namespace {

constexpr double kClusterTol = 1e-7;
constexpr double kRankTol = 1e-9;

Quat first(const Vector4c& v) { return from_pair<double>(v(0), v(1)); }

}  // namespace

Quat CLBasisFunction::value(double x) const {
  const cplx e = std::exp(z * x);
  if (prefactor == Prefactor::Unit) return right_mul(u, e);
  return right_mul(u * x + uTilde, e);
}

Quat CLBasisFunction::derivative(double x) const {
  const cplx e = std::exp(z * x);
  if (prefactor == Prefactor::Unit) return right_mul(u, z * e);
  return right_mul(u, e) + right_mul(u * x + uTilde, z * e);
}

Quat CLBasisFunction::second_derivative(double x) const {
  const cplx e = std::exp(z * x);
  if (prefactor == Prefactor::Unit) return right_mul(u, z * z * e);
  return right_mul(u, 2.0 * z * e) + right_mul(u * x + uTilde, z * z * e);
}

Evaluation CLSolution::evaluate(double x) const {
  Evaluation out;
  for (int n = 0; n < 4; ++n) {
    out.phi += right_mul(basis[n].value(x), k[n]);
    out.dphi += right_mul(basis[n].derivative(x), k[n]);
    out.ddphi += right_mul(basis[n].second_derivative(x), k[n]);
  }
  return out;
}

Matrix2CLd cl_companion(const RightLinearScalarOp& P1, const RightLinearScalarOp& P0) {
  Matrix2CLd M;
  M(0, 0) = RightLinearScalarOp{};
  M(0, 1) = RightLinearScalarOp::left(Quat(1));
  M(1, 0) = -P0;
  M(1, 1) = -P1;
  return M;
}

CLSolution solve_clinear(const Matrix2CLd& M, const Quat& phi0, const Quat& dphi0) {
  const Matrix4c C = complex_counterpart(M);
  const double scale = std::max(1.0, C.norm());
  Eigen::ComplexEigenSolver<Matrix4c> es(C, false);
  const Vector4c ev = es.eigenvalues();

  // group eigenvalues closer than the cluster tolerance
  std::array<int, 4> group{0, 1, 2, 3};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (std::abs(ev(a) - ev(b)) <= kClusterTol * scale) {
        const int from = group[b], to = group[a];
        for (int& g : group)
          if (g == from) g = to;
      }

  CLSolution sol;
  Matrix4c V;
  int col = 0;
  int jordanBlocks = 0;
  for (int g = 0; g < 4; ++g) {
    std::vector<int> members;
    for (int n = 0; n < 4; ++n)
      if (group[n] == g) members.push_back(n);
    if (members.empty()) continue;
    cplx z = 0;
    for (int n : members) z += ev(n);
    z /= double(members.size());

    const Matrix4c A = C - z * Matrix4c::Identity();
    Eigen::JacobiSVD<Matrix4c> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    int nullity = 0;
    for (int n = 0; n < 4; ++n)
      if (svd.singularValues()(n) <= kRankTol * scale) ++nullity;
    const int mult = int(members.size());
    if (nullity >= mult) {
      for (int n = 0; n < mult; ++n) {
        const Vector4c v = svd.matrixV().col(3 - n);
        V.col(col) = v;
        sol.basis[col] = {CLBasisFunction::Prefactor::Unit, first(v), Quat(), z};
        ++col;
      }
      continue;
    }
    if (mult != 2 || nullity != 1 || ++jordanBlocks > 1)
      throw Error(ErrorCode::Unsupported, "solve_clinear: defective structure beyond one 2x2 Jordan block");
    const Vector4c v1 = svd.matrixV().col(3);
    svd.setThreshold(kRankTol);
    const Vector4c v2 = svd.solve(v1);
    V.col(col) = v1;
    sol.basis[col] = {CLBasisFunction::Prefactor::Unit, first(v1), Quat(), z};
    ++col;
    V.col(col) = v2;
    sol.basis[col] = {CLBasisFunction::Prefactor::Affine, first(v1), first(v2), z};
    ++col;
    sol.jordan = true;
  }

  Vector4c rhs;
  const auto p0 = to_pair(phi0), p1 = to_pair(dphi0);
  rhs << p0.z1, p0.z2, p1.z1, p1.z2;
  Eigen::FullPivLU<Matrix4c> lu(V);
  if (!lu.isInvertible() || std::abs(lu.rcond()) < 1e-14)
    throw Error(ErrorCode::DegenerateBasis, "solve_clinear: singular mode matrix");
  const Vector4c k = lu.solve(rhs);
  for (int n = 0; n < 4; ++n) sol.k[n] = k(n);
  return sol;
}

namespace {

SchrodingerModes mode_exponents(double E, double V, cplx W, double hbar, double m) {
  if (!(hbar > 0) || !(m > 0)) throw Error(ErrorCode::Precondition, "schrodinger_modes: hbar and m must be positive");
  SchrodingerModes s;
  s.E = E;
  s.V = V;
  s.W = W;
  s.hbar = hbar;
  s.m = m;
  s.kappa = std::sqrt(2.0 * m) / hbar;
  s.s = std::sqrt(cplx(E * E - std::norm(W)));
  s.zMinus = std::sqrt(V - s.s);
  s.zPlus = std::sqrt(V + s.s);
  return s;
}

}  // namespace

SchrodingerModes schrodinger_modes(double E, double V, cplx W, double hbar, double m) {
  SchrodingerModes s = mode_exponents(E, V, W, hbar, m);
  const cplx den = E + s.s;
  if (std::abs(den) <= 1e-14 * std::max({1.0, std::abs(E), std::abs(W)}))
    throw Error(ErrorCode::ModeSingularity, "schrodinger_modes: E + sqrt(E^2 - |W|^2) = 0");
  s.uMinus = from_pair<double>(1.0, W / den);
  s.uPlus = from_pair<double>(std::conj(W) / den, 1.0);
  return s;
}

SchrodingerModes schrodinger_modes_stable(double E, double V, cplx W, double hbar, double m) {
  SchrodingerModes s = mode_exponents(E, V, W, hbar, m);
  const cplx dp = E + s.s, dm = E - s.s;
  if (std::abs(dp) >= std::abs(dm)) {
    if (dp == 0.0) {
      s.uMinus = Quat(1);
      s.uPlus = Quat::j();
      return s;
    }
    s.uMinus = from_pair<double>(1.0, W / dp);
    s.uPlus = from_pair<double>(std::conj(W) / dp, 1.0);
  } else {
    s.uMinus = from_pair<double>(std::conj(W) / dm, 1.0);
    s.uPlus = from_pair<double>(1.0, W / dm);
  }
  return s;
}

Matrix2CLd schrodinger_matrix(double E, double V, cplx W, double hbar, double m) {
  const double f = 2.0 * m / (hbar * hbar);
  const RightLinearScalarOp b{(Quat(V) - Quat::j() * Quat(W)) * f, Quat(0, E * f, 0, 0)};
  return cl_companion(RightLinearScalarOp{}, -b);
}

Evaluation mode_evaluation(const Quat& u, cplx lambda, double x) {
  const cplx e = std::exp(lambda * x);
  return {right_mul(u, e), right_mul(u, lambda * e), right_mul(u, lambda * lambda * e)};
}

Quat time_reversal_factor(cplx W, double tol) {
  const double scale = std::max(1.0, std::abs(W));
  if (std::abs(W.imag()) <= tol * scale) return Quat::j();
  if (std::abs(W.real()) <= tol * scale) return Quat::k();
  throw Error(ErrorCode::TViolating, "time reversal: W is neither real nor imaginary");
}

SpaceTimeField time_reversal_map(const SpaceTimeField& phi, cplx W) {
  const Quat f = time_reversal_factor(W);
  return [phi, f](double x, double t) { return f * phi(x, -t); };
}

Quat stationary_phase(double E, double hbar, const Quat& zeta0, double t) {
  if (std::abs(zeta0.norm() - 1.0) > 1e-12) throw Error(ErrorCode::Precondition, "stationary_phase: zeta(0) must be a unit quaternion");
  return exp(Quat(0, -E * t / hbar, 0, 0)) * zeta0;
}

}  // namespace qde
