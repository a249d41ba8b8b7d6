#pragma once

#include <functional>
#include <vector>

#include "qde/hode.hpp"
#include "qde/qmat2.hpp"

namespace qde::oracle {

// (phi, phi') as 8 reals
using State = Eigen::Matrix<double, 8, 1>;
using Rhs = std::function<State(double x, const State& s)>;

State pack(const Quat& phi, const Quat& dphi);
std::pair<Quat, Quat> unpack(const State& s);

struct Trajectory {
  std::vector<double> xs;
  std::vector<std::pair<Quat, Quat>> values;
  double stepSize = 0;
};

// Classical RK4 with a uniform step. Throws Divergence on a non-finite state.
Trajectory rk4_integrate(const Rhs& rhs, const Quat& phi0, const Quat& dphi0, double x0, double x1, int steps);

// phi'' = -a phi' - b phi
Rhs quaternionic_rhs(const Quat& a, const Quat& b);
// Phi' = M Phi, right-i parts applied exactly
Rhs complex_linear_rhs(const Matrix2CLd& M);

using Evaluator = std::function<Evaluation(double)>;
using Operator = std::function<Quat(const Evaluation&)>;

double residual_max(const Evaluator& solution, const Operator& op, const std::vector<double>& xs);

// Roots of sum coeffs[n] z^(deg-n) (descending powers) from the balanced companion matrix.
std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs);

}  // namespace qde::oracle
