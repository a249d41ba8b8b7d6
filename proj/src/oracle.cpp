#include "qde/oracle.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qde::oracle {

State pack(const Quat& phi, const Quat& dphi) {
  State s;
  s << phi.q0, phi.q1, phi.q2, phi.q3, dphi.q0, dphi.q1, dphi.q2, dphi.q3;
  return s;
}

std::pair<Quat, Quat> unpack(const State& s) {
  return {Quat(s(0), s(1), s(2), s(3)), Quat(s(4), s(5), s(6), s(7))};
}

Trajectory rk4_integrate(const Rhs& rhs, const Quat& phi0, const Quat& dphi0, double x0, double x1, int steps) {
  if (steps < 16) throw Error(ErrorCode::Precondition, "rk4_integrate: steps must be >= 16");
  Trajectory t;
  t.stepSize = (x1 - x0) / steps;
  const double h = t.stepSize;
  State y = pack(phi0, dphi0);
  t.xs.reserve(steps + 1);
  t.values.reserve(steps + 1);
  t.xs.push_back(x0);
  t.values.push_back(unpack(y));
  for (int n = 0; n < steps; ++n) {
    const double x = x0 + n * h;
    const State k1 = rhs(x, y);
    const State k2 = rhs(x + h / 2, y + h / 2 * k1);
    const State k3 = rhs(x + h / 2, y + h / 2 * k2);
    const State k4 = rhs(x + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    const double xn = x0 + (n + 1) * h;
    if (!y.allFinite())
      throw Error(ErrorCode::Divergence, "rk4_integrate: non-finite state at x = " + std::to_string(xn));
    t.xs.push_back(xn);
    t.values.push_back(unpack(y));
  }
  return t;
}

Rhs quaternionic_rhs(const Quat& a, const Quat& b) {
  return [a, b](double, const State& s) {
    const auto [phi, dphi] = unpack(s);
    return pack(dphi, -(a * dphi) - b * phi);
  };
}

Rhs complex_linear_rhs(const Matrix2CLd& M) {
  return [M](double, const State& s) {
    const auto [phi, dphi] = unpack(s);
    const Vector2Hd d = M(Vector2Hd{{phi, dphi}});
    return pack(d[0], d[1]);
  };
}

double residual_max(const Evaluator& solution, const Operator& op, const std::vector<double>& xs) {
  double worst = 0;
  for (double x : xs) worst = std::max(worst, op(solution(x)).norm());
  return worst;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs) {
  if (coeffs.size() < 2) throw Error(ErrorCode::Precondition, "companion_roots: degree must be >= 1");
  if (coeffs.front() == cplx(0)) throw Error(ErrorCode::Precondition, "companion_roots: zero leading coefficient");
  const int n = int(coeffs.size()) - 1;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) C(0, k) = -coeffs[k + 1] / coeffs[0];
  for (int k = 1; k < n; ++k) C(k, k - 1) = 1.0;

  // Parlett-Reinsch balancing with powers of two
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int k = 0; k < n; ++k) {
      double c = 0, r = 0;
      for (int m = 0; m < n; ++m) {
        if (m == k) continue;
        c += std::abs(C(m, k));
        r += std::abs(C(k, m));
      }
      if (c == 0 || r == 0) continue;
      double f = 1;
      const double s = c + r;
      while (c < r / 2) {
        c *= 2;
        r /= 2;
        f *= 2;
      }
      while (c >= r * 2) {
        c /= 2;
        r *= 2;
        f /= 2;
      }
      if ((c + r) < 0.95 * s) {
        converged = false;
        C.row(k) /= f;
        C.col(k) *= f;
      }
    }
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

}  // namespace qde::oracle
