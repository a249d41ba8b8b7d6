#pragma once

#include <array>
#include <functional>

#include "qde/hode.hpp"
#include "qde/qmat2.hpp"

namespace qde {

// prefactor * exp(z x), exp(z x) acting from the right; prefactor is u or (u x + uTilde)
struct CLBasisFunction {
  enum class Prefactor { Unit, Affine };
  Prefactor prefactor = Prefactor::Unit;
  Quat u;
  Quat uTilde;
  cplx z;

  Quat value(double x) const;
  Quat derivative(double x) const;
  Quat second_derivative(double x) const;
};

struct CLSolution {
  std::array<CLBasisFunction, 4> basis;
  std::array<cplx, 4> k{};
  bool jordan = false;

  Evaluation evaluate(double x) const;
};

// phi'' + P1 phi' + P0 phi = 0 as Phi' = [[0,1],[-P0,-P1]] Phi
Matrix2CLd cl_companion(const RightLinearScalarOp& P1, const RightLinearScalarOp& P0);

// Phi' = M Phi with Phi(0) = (phi0, dphi0); phi is the first component.
CLSolution solve_clinear(const Matrix2CLd& M, const Quat& phi0, const Quat& dphi0);

struct SchrodingerModes {
  double E = 0, V = 0, hbar = 1, m = 1;
  cplx W;
  cplx s;  // sqrt(E^2 - |W|^2)
  cplx zMinus, zPlus;
  Quat uMinus, uPlus;
  double kappa = 1;  // sqrt(2m)/hbar

  cplx lambdaMinus() const { return kappa * zMinus; }
  cplx lambdaPlus() const { return kappa * zPlus; }
};

// u- = 1 + j W/(E+s), u+ = conj(W)/(E+s) + j. Throws ModeSingularity when E + s = 0.
SchrodingerModes schrodinger_modes(double E, double V, cplx W, double hbar, double m);

// Same exponents; switches to u- = conj(W)/(E-s) + j, u+ = 1 + j W/(E-s) when
// |E - s| > |E + s|. The two gauges differ by a right complex factor.
SchrodingerModes schrodinger_modes_stable(double E, double V, cplx W, double hbar, double m);

// (hbar^2/2m) psi'' = (V - jW) psi + i E psi i
Matrix2CLd schrodinger_matrix(double E, double V, cplx W, double hbar, double m);

// u exp(lambda x) and its first two derivatives
Evaluation mode_evaluation(const Quat& u, cplx lambda, double x);

// Left factor of the T-invariance map: j for real W, k for imaginary W.
Quat time_reversal_factor(cplx W, double tol = 1e-14);

using SpaceTimeField = std::function<Quat(double x, double t)>;

// Phi_T(x, t) = f Phi(x, -t), f = time_reversal_factor(W)
SpaceTimeField time_reversal_map(const SpaceTimeField& phi, cplx W);

// exp(-i E t / hbar) zeta0
Quat stationary_phase(double E, double hbar, const Quat& zeta0, double t);

}  // namespace qde
