#include <chrono>
#include <cstdio>
#include <string>

#include <Eigen/Eigenvalues>

#include "golden.hpp"
#include "qde/clode.hpp"
#include "qde/hode.hpp"
#include "qde/oracle.hpp"
#include "qde/qmat2.hpp"
#include "qde/quadsolve.hpp"
#include "qde/scatter.hpp"
#include "support.hpp"

using namespace qde;
using namespace qde::testing;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void criterion1() {
  double worst = 0, slowest = 0;
  bool shapes = true;
  for (const auto& g : quad_goldens()) {
    const auto qc = normalize(g.a, g.b);
    const auto t0 = Clock::now();
    RootSet rs;
    const int reps = 200;
    for (int n = 0; n < reps; ++n) rs = solve(qc);
    slowest = std::max(slowest, seconds_since(t0) / reps);
    if (g.roots.size() == 1) {
      if (auto* r = std::get_if<Repeated>(&rs)) {
        worst = std::max(worst, dist(r->p, g.roots[0]));
      } else {
        shapes = false;
      }
    } else if (auto* d = std::get_if<Distinct>(&rs)) {
      worst = std::max(worst, pair_distance(d->p1, d->p2, g.roots[0], g.roots[1]));
    } else {
      shapes = false;
    }
  }
  const RootSet sphere = solve(normalize(Quat(0), Quat(1)));
  const auto* s = std::get_if<Sphere>(&sphere);
  const bool sphereOk = s && std::abs(s->alpha - 1) < 1e-12 && std::abs(s->center) < 1e-12;
  report(1, shapes && sphereOk && worst < 1e-12 && slowest < 1e-3, "quadratic golden roots",
         fmt("max root error %.3g", worst) + fmt(", slowest solve %.3g s", slowest) +
             (sphereOk ? ", p^2+1: sphere alpha=1" : ", p^2+1: wrong root set"));
}

void criterion2() {
  const double xs[] = {0, 0.25, 0.5, 1};
  double worstErr = 0, worstRes = 0;
  std::string where;
  for (const auto& g : ode_goldens()) {
    const GeneralSolution sol = solve_ivp(g.a, g.b, g.phi0, g.dphi0);
    for (double x : xs) {
      const Evaluation e = evaluate(sol, x);
      const double err = dist(e.phi, g.closed(x));
      if (err > worstErr) {
        worstErr = err;
        where = g.name + fmt(" at x=%g", x);
      }
      worstRes = std::max(worstRes, ode_residual(g.a, g.b, e));
    }
  }
  report(2, worstErr < 1e-11 && worstRes < 1e-10, "ODE golden IVPs",
         fmt("max error %.3g", worstErr) + " (" + where + ")" + fmt(", max residual %.3g", worstRes));
}

void criterion3() {
  const Quat i = Quat::i(), j = Quat::j(), k = Quat::k();
  const Quat a = k - i, b = -j, phi0 = k * 0.5, dphi0 = Quat(1) + j * 0.5;
  const GeneralSolution sol = solve_ivp(a, b, phi0, dphi0);
  const MatrixOdeSolution msol = solve_ode_via_matrix(a, b, phi0, dphi0);
  double errJ = 0, errM = 0;
  for (int n = 0; n < 8; ++n) {
    const double x = -1 + 2.0 * n / 7;
    errJ = std::max(errJ, dist(evaluate(sol, x).phi, jordan_closed(x)));
    errM = std::max(errM, dist(msol(x).first, jordan_closed(x)));
  }

  const Matrix2CLd M = cl_companion(RightLinearScalarOp{}, RightLinearScalarOp::right_i(-j));
  const CLSolution cl = solve_clinear(M, j, k);
  double errC = 0;
  for (int n = 0; n < 8; ++n) {
    const double x = -1 + 2.0 * n / 7;
    errC = std::max(errC, dist(cl.evaluate(x).phi, clinear_closed(x)));
  }
  report(3, errJ < 1e-11 && errM < 1e-11 && msol.jordan && errC < 1e-11, "Jordan and complex-linear examples",
         fmt("quaternionic %.3g", std::max(errJ, errM)) + fmt(", complex-linear %.3g", errC));
}

void criterion4() {
  const Quat i = Quat::i(), j = Quat::j(), k = Quat::k();
  const Matrix2Hd A(-i, j * 3, j * 3, i);
  const SpectralDecomposition s = spectral_decompose_antihermitian(A);
  const EigenDecomposition e = right_eigenpairs(A);
  double evErr = std::max(std::abs(s.lambda[0] - 2), std::abs(s.lambda[1] - 4));
  evErr = std::max(evErr, std::max(std::abs(e.eigenvalues[0] - cplx(0, 2)), std::abs(e.eigenvalues[1] - cplx(0, 4))));
  const Matrix2Hd H(Quat(3), k, -k, Quat(3));
  const double hErr = (s.H - H).norm();
  report(4, evErr < 1e-12 && hErr < 1e-12, "anti-hermitian example", fmt("eigenvalue error %.3g", evErr) +
                                                                          fmt(", H error %.3g", hErr));
}

void criterion5() {
  const double V = 1;
  double worstSqrt = 0, worstPrinted = 0, worstBelow = 0;
  int errors = 0;
  for (int n = 0; n < 20; ++n) {
    for (int m = 0; m < 10; ++m) {
      const double w = 0.1 * (m + 1);
      const cplx W = std::polar(w, 0.37 * m);
      const double E = threshold(V, W) * (1.02 + 0.25 * n);
      PhysicalParams p;
      p.E = E;
      p.V = V;
      p.W = W;
      try {
        const auto res = solve_step(p);
        const double s = std::sqrt(E * E - w * w);
        const double g = 1 - std::pow(w / (E + s), 2);
        const double t2 = std::norm(res.t), r2 = std::norm(res.r);
        worstSqrt = std::max(worstSqrt, std::abs(r2 + std::sqrt((s - V) / E) * g * t2 - 1));
        worstPrinted = std::max(worstPrinted, std::abs(r2 + (s - V) / E * g * t2 - 1));
        p.E = threshold(V, W) * (0.03 + 0.0485 * n);
        worstBelow = std::max(worstBelow, std::abs(std::norm(solve_step(p).r) - 1));
      } catch (const Error&) {
        ++errors;
      }
    }
  }
  report(5, errors == 0 && worstSqrt < 1e-10 && worstBelow < 1e-10, "step current relation",
         fmt("above threshold %.3g", worstSqrt) + fmt(", below threshold |r|^2-1 %.3g", worstBelow) +
             fmt(", solver errors %g", errors));
  std::printf("INFO 5 relation without the square root deviates by up to %.3g\n", worstPrinted);
}

void criterion6() {
  double worst = 0;
  int errors = 0;
  const double as[] = {0.5, 1, 2};
  for (int n = 0; n < 20; ++n)
    for (int m = 0; m < 10; ++m)
      for (double a : as) {
        PhysicalParams p;
        p.V = 1;
        p.E = 0.07 + 0.15 * n;
        p.W = std::polar(0.1 * (m + 1), 0.61 * m);
        p.a = a;
        try {
          const auto res = solve_barrier(p);
          worst = std::max(worst, std::abs(res.R + res.T - 1));
        } catch (const Error&) {
          ++errors;
        }
      }
  report(6, errors == 0 && worst < 1e-10, "barrier unitarity", fmt("max |R+T-1| %.3g", worst) +
                                                                    fmt(", solver errors %g", errors));
}

void criterion7() {
  double stepErr = 0, barrierErr = 0, wellErr = 0;
  bool counts = true;
  for (int n = 0; n < 40; ++n) {
    PhysicalParams p;
    p.V = 1;
    p.E = 1.05 + 0.1 * n;
    stepErr = std::max(stepErr, std::abs(solve_step(p).R - step_reflection_textbook(p.E, p.V)));
    for (double a : {0.5, 1.0, 3.0}) {
      p.a = a;
      p.E = 0.05 + 0.1 * n;
      barrierErr = std::max(barrierErr, std::abs(solve_barrier(p).T - barrier_transmission_textbook(p.E, p.V, a)));
    }
  }
  const double wells[][2] = {{5, 1}, {10, 2}, {1, 1}, {20, 1.5}, {50, 0.3}};
  for (const auto& w : wells) {
    PhysicalParams p;
    p.V = w[0];
    p.a = w[1];
    const auto found = find_bound_states(p).energies;
    const auto expected = square_well_bisection(w[0], w[1]);
    if (found.size() != expected.size()) {
      counts = false;
      continue;
    }
    for (size_t n = 0; n < found.size(); ++n) wellErr = std::max(wellErr, std::abs(found[n] - expected[n]));
  }
  report(7, stepErr < 1e-10 && barrierErr < 1e-9 && wellErr < 1e-9 && counts, "W=0 reduction",
         fmt("step R %.3g", stepErr) + fmt(", barrier T %.3g", barrierErr) + fmt(", well energies %.3g", wellErr) +
             (counts ? "" : ", state count mismatch"));
}

void criterion8() {
  Rng rng(8);
  double factor = 0;
  for (int n = 0; n < 1000; ++n) {
    const Matrix2Hd M(rng.quat(), rng.quat(), rng.quat(), rng.quat());
    const auto f = dieudonne_factorizations(M);
    const double ref = dieudonne_det(M);
    for (double v : f)
      if (!std::isnan(v)) factor = std::max(factor, std::abs(v - ref) / std::max(1.0, ref));
  }
  double wron = 0;
  int used = 0;
  while (used < 1000) {
    const Quat a = rng.quat(), b = rng.quat();
    const GeneralSolution sol = general_solution(a, b);
    if (sol.basis[0].prefactor != BasisFunction::Prefactor::Unit ||
        sol.basis[1].prefactor != BasisFunction::Prefactor::Unit)
      continue;
    ++used;
    const double x = rng.uniform(-1, 1);
    const Evaluation e1 = evaluate_basis(sol, 0, x), e2 = evaluate_basis(sol, 1, x);
    const Quat q1 = sol.basis[0].q, q2 = sol.basis[1].q;
    const double sh = -sol.a0shift;
    const double expect =
        dist(q1, q2) * exp_polar((q1 + Quat(sh)) * x).norm() * exp_polar((q2 + Quat(sh)) * x).norm();
    wron = std::max(wron, std::abs(wronskian(e1.phi, e2.phi, e1.dphi, e2.dphi) - expect) / expect);
  }
  report(8, factor < 1e-12 && wron < 1e-11, "Wronskian consistency",
         fmt("factorization spread %.3g", factor) + fmt(", exponential-basis relative error %.3g", wron));
}

void criterion9() {
  Rng rng(9);
  double worstH = 0, worstC = 0;
  for (int n = 0; n < 100; ++n) {
    const Quat a = rng.quat(), b = rng.quat(), phi0 = rng.quat(), dphi0 = rng.quat();
    const GeneralSolution sol = solve_ivp(a, b, phi0, dphi0);
    const auto traj = oracle::rk4_integrate(oracle::quaternionic_rhs(a, b), phi0, dphi0, 0, 1, 4096);
    for (size_t s = 0; s < traj.xs.size(); ++s)
      worstH = std::max(worstH, dist(traj.values[s].first, evaluate(sol, traj.xs[s]).phi));
  }
  for (int n = 0; n < 100; ++n) {
    const RightLinearScalarOp P1{rng.quat(), rng.quat()}, P0{rng.quat(), rng.quat()};
    const Quat phi0 = rng.quat(), dphi0 = rng.quat();
    const Matrix2CLd M = cl_companion(P1, P0);
    const CLSolution sol = solve_clinear(M, phi0, dphi0);
    const auto traj = oracle::rk4_integrate(oracle::complex_linear_rhs(M), phi0, dphi0, 0, 1, 4096);
    for (size_t s = 0; s < traj.xs.size(); ++s)
      worstC = std::max(worstC, dist(traj.values[s].first, sol.evaluate(traj.xs[s]).phi));
  }
  report(9, worstH < 1e-6 && worstC < 1e-6, "RK4 oracle agreement",
         fmt("quaternionic sup %.3g", worstH) + fmt(", complex-linear sup %.3g", worstC));
}

void criterion10() {
  Rng rng(10);
  const int N = 1000;
  int spectrum = 0, rebase = 0, current = 0, linear = 0;

  for (int n = 0; n < N; ++n) {
    const Matrix2Hd M(rng.quat(), rng.quat(), rng.quat(), rng.quat());
    const Eigen::Vector4cd ev = Eigen::ComplexEigenSolver<Matrix4c>(complex_counterpart(M)).eigenvalues();
    bool ok = true;
    for (int r = 0; r < 4; ++r) {
      double best = 1e300;
      for (int c = 0; c < 4; ++c) best = std::min(best, std::abs(ev(c) - std::conj(ev(r))));
      ok = ok && best < 1e-9;
    }
    const EigenDecomposition d = right_eigenpairs(M);
    for (int r = 0; r < 2; ++r) {
      const Vector2Hd lhs = M * d.eigenvectors[r], rhs = d.eigenvectors[r] * Quat(d.eigenvalues[r]);
      ok = ok && (lhs - rhs).norm() < 1e-9 * std::max(1.0, M.norm()) * d.eigenvectors[r].norm();
      double best = 1e300;
      for (int c = 0; c < 4; ++c) best = std::min(best, std::abs(ev(c) - d.eigenvalues[r]));
      ok = ok && best < 1e-7;
    }
    spectrum += ok;
  }

  for (int n = 0; n < N; ++n) {
    const Vec3 v = rng.vec(3);
    const SphereRebase r = rebase_sphere_exponential(v);
    const double x = rng.uniform(-2, 2);
    rebase += dist(rebased_exponential(r, x), exp_polar(Quat::pure(v) * x)) < 1e-12;
  }

  for (int n = 0; n < N; ++n) {
    PhysicalParams p;
    p.V = rng.uniform(0.2, 2);
    p.E = rng.uniform(0.05, 4);
    p.W = rng.complex(1.5);
    p.a = rng.uniform(0.2, 3);
    p.m = rng.uniform(0.5, 2);
    p.hbar = rng.uniform(0.5, 2);
    const bool barrier = n % 2;
    try {
      const auto res = barrier ? solve_barrier(p) : solve_step(p);
      const double jInc = p.hbar * std::sqrt(2 * p.m * p.E) / p.hbar / p.m;
      double lo = 1e300, hi = -1e300;
      for (int s = 0; s < 9; ++s) {
        const double x = -2 + 0.5 * s * (barrier ? p.a : 1) + 0.01;
        const Evaluation e = res.wave(x);
        const double J = probability_current(e.phi, e.dphi, p);
        lo = std::min(lo, J);
        hi = std::max(hi, J);
      }
      current += (hi - lo) / jInc < 1e-9 && res.currentResidual < 1e-9;
    } catch (const Error&) {
    }
  }

  for (int n = 0; n < N; ++n) {
    const RightLinearScalarOp P1{rng.quat(), rng.quat()}, P0{rng.quat(), rng.quat()};
    const Matrix2CLd M = cl_companion(P1, P0);
    const Quat u0 = rng.quat(), du0 = rng.quat(), v0 = rng.quat(), dv0 = rng.quat();
    const cplx z1 = rng.complex(), z2 = rng.complex();
    try {
      const CLSolution su = solve_clinear(M, u0, du0), sv = solve_clinear(M, v0, dv0);
      const CLSolution sw =
          solve_clinear(M, right_mul(u0, z1) + right_mul(v0, z2), right_mul(du0, z1) + right_mul(dv0, z2));
      const double x = rng.uniform(-1, 1);
      const Quat expect = right_mul(su.evaluate(x).phi, z1) + right_mul(sv.evaluate(x).phi, z2);
      linear += dist(sw.evaluate(x).phi, expect) < 1e-10 * std::max(1.0, expect.norm());
    } catch (const Error&) {
    }
  }

  report(10, spectrum == N && rebase == N && current == N && linear == N, "property suites",
         std::to_string(spectrum) + "/" + std::to_string(N) + " spectrum, " + std::to_string(rebase) + "/" +
             std::to_string(N) + " rebase, " + std::to_string(current) + "/" + std::to_string(N) + " current, " +
             std::to_string(linear) + "/" + std::to_string(N) + " linearity");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  void (*all[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                     criterion6, criterion7, criterion8, criterion9, criterion10};
  for (int n = 0; n < 10; ++n) {
    try {
      all[n]();
    } catch (const std::exception& e) {
      report(n + 1, false, "exception", e.what());
    }
  }
  std::printf("INFO total runtime %.2f s\n", seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
