#pragma once

#include <array>

#include "qde/quadsolve.hpp"
#include "qde/qmat2.hpp"

namespace qde {

// prefactor(x) exp(q x) with prefactor 1 or (x + kappa)
struct BasisFunction {
  enum class Prefactor { Unit, Affine };
  Prefactor prefactor = Prefactor::Unit;
  Quat kappa;
  Quat q;

  Quat value(double x) const;
  Quat derivative(double x) const;
  Quat second_derivative(double x) const;
};

struct Evaluation {
  Quat phi, dphi, ddphi;
};

// phi(x) = exp(-a0shift x) [xi1(x) c1 + xi2(x) c2] for phi'' + a phi' + b phi = 0
struct GeneralSolution {
  Quat a, b;
  CaseTag tag = CaseTag::Generic;
  std::array<BasisFunction, 2> basis;
  std::array<Quat, 2> coeffs{};
  bool hasCoefficients = false;
  double a0shift = 0;  // a0 / 2
};

GeneralSolution general_solution(const Quat& a, const Quat& b);

GeneralSolution solve_ivp(const Quat& a, const Quat& b, const Quat& phi0, const Quat& dphi0);

// n-th basis function including the global real exponential
Evaluation evaluate_basis(const GeneralSolution& sol, int n, double x);

Evaluation evaluate(const GeneralSolution& sol, double x);

double wronskian(const Quat& phi1, const Quat& phi2, const Quat& dphi1, const Quat& dphi2);

// |phi'' + a phi' + b phi|
double ode_residual(const Quat& a, const Quat& b, const Evaluation& e);

}  // namespace qde
