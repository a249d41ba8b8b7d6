#include "qde/hode.hpp"

#include <cmath>

namespace qde {

Quat BasisFunction::value(double x) const {
  const Quat e = exp(q * x);
  if (prefactor == Prefactor::Unit) return e;
  return (Quat(x) + kappa) * e;
}

Quat BasisFunction::derivative(double x) const {
  const Quat e = exp(q * x);
  if (prefactor == Prefactor::Unit) return q * e;
  return e + (Quat(x) + kappa) * q * e;
}

Quat BasisFunction::second_derivative(double x) const {
  const Quat e = exp(q * x);
  if (prefactor == Prefactor::Unit) return q * q * e;
  return 2.0 * q * e + (Quat(x) + kappa) * q * q * e;
}

GeneralSolution general_solution(const Quat& a, const Quat& b) {
  const QuadraticCoeffs qc = normalize(a, b);
  GeneralSolution sol;
  sol.a = a;
  sol.b = b;
  sol.tag = classify(qc);
  sol.a0shift = qc.shift();
  const Quat s(qc.shift());
  const RootSet roots = solve(qc);

  auto unit = [](const Quat& p) {
    BasisFunction f;
    f.q = p;
    return f;
  };

  if (auto* d = std::get_if<Distinct>(&roots)) {
    sol.basis = {unit(d->p1 + s), unit(d->p2 + s)};
  } else if (auto* r = std::get_if<RealPair>(&roots)) {
    sol.basis = {unit(Quat(r->r1) + s), unit(Quat(r->r2) + s)};
  } else if (auto* sp = std::get_if<Sphere>(&roots)) {
    sol.basis = {unit(Quat(0, sp->alpha, 0, 0)), unit(Quat(0, -sp->alpha, 0, 0))};
  } else {
    const Quat p = std::get<Repeated>(roots).p + s;
    BasisFunction eta = unit(p);
    eta.prefactor = BasisFunction::Prefactor::Affine;
    if (sol.tag == CaseTag::Orthogonal) eta.kappa = Quat::pure(qc.a / qc.a.squaredNorm());
    sol.basis = {unit(p), eta};
  }
  return sol;
}

Evaluation evaluate_basis(const GeneralSolution& sol, int n, double x) {
  const BasisFunction& f = sol.basis[n];
  const double s = sol.a0shift;
  const double g = std::exp(-s * x);
  const Quat v = f.value(x), dv = f.derivative(x), ddv = f.second_derivative(x);
  return {g * v, g * (dv - s * v), g * (ddv - 2.0 * s * dv + s * s * v)};
}

GeneralSolution solve_ivp(const Quat& a, const Quat& b, const Quat& phi0, const Quat& dphi0) {
  GeneralSolution sol = general_solution(a, b);
  const Evaluation e1 = evaluate_basis(sol, 0, 0.0);
  const Evaluation e2 = evaluate_basis(sol, 1, 0.0);
  const Matrix2Hd M(e1.phi, e2.phi, e1.dphi, e2.dphi);
  const Vector2Hd c = solve(M, Vector2Hd{{phi0, dphi0}});
  sol.coeffs = {c[0], c[1]};
  sol.hasCoefficients = true;
  return sol;
}

Evaluation evaluate(const GeneralSolution& sol, double x) {
  if (!sol.hasCoefficients) throw Error(ErrorCode::Precondition, "evaluate: coefficients not set");
  Evaluation out;
  for (int n = 0; n < 2; ++n) {
    const Evaluation e = evaluate_basis(sol, n, x);
    out.phi += e.phi * sol.coeffs[n];
    out.dphi += e.dphi * sol.coeffs[n];
    out.ddphi += e.ddphi * sol.coeffs[n];
  }
  return out;
}

double wronskian(const Quat& phi1, const Quat& phi2, const Quat& dphi1, const Quat& dphi2) {
  return dieudonne_det(Matrix2Hd(phi1, phi2, dphi1, dphi2));
}

double ode_residual(const Quat& a, const Quat& b, const Evaluation& e) {
  return (e.ddphi + a * e.dphi + b * e.phi).norm();
}

}  // namespace qde
