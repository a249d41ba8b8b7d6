#include <gtest/gtest.h>

#include "golden.hpp"
#include "qde/clode.hpp"
#include "qde/oracle.hpp"

using namespace qde;
using namespace qde::testing;

namespace {

// (hbar^2/2m) psi'' - (V - jW) psi - i E psi i
Quat mode_residual(const Evaluation& e, double E, double V, cplx W, double hbar, double m) {
  return e.ddphi * (hbar * hbar / (2 * m)) - (Quat(V) - Quat::j() * Quat(W)) * e.phi - Quat::i() * e.phi * Quat::i() * E;
}

}  // namespace

TEST(Clode, ComplexLinearExample) {
  const Matrix2CLd M = cl_companion(RightLinearScalarOp{}, RightLinearScalarOp::right_i(-Quat::j()));
  const CLSolution sol = solve_clinear(M, Quat::j(), Quat::k());
  EXPECT_FALSE(sol.jordan);
  for (int n = 0; n < 8; ++n) {
    const double x = -1 + 0.3 * n;
    const Evaluation e = sol.evaluate(x);
    EXPECT_LT(dist(e.phi, clinear_closed(x)), 1e-11);
    EXPECT_LT(dist(e.ddphi, Quat::j() * e.phi * Quat::i()), 1e-11);
  }
  // exponents {+-1, +-i}
  std::vector<double> re, im;
  for (const auto& b : sol.basis) {
    re.push_back(std::abs(b.z.real()));
    im.push_back(std::abs(b.z.imag()));
  }
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(re[n] + im[n], 1, 1e-12);
}

TEST(Clode, LeftOnlyOperatorsReduceToQuaternionicSolver) {
  Rng rng(41);
  for (int n = 0; n < 300; ++n) {
    const Quat a = rng.quat(), b = rng.quat(), phi0 = rng.quat(), dphi0 = rng.quat();
    const CLSolution cl = solve_clinear(cl_companion(RightLinearScalarOp::left(a), RightLinearScalarOp::left(b)), phi0, dphi0);
    const GeneralSolution h = solve_ivp(a, b, phi0, dphi0);
    for (double x : {-0.5, 0.3, 1.0}) EXPECT_LT(dist(cl.evaluate(x).phi, evaluate(h, x).phi), 1e-9);
  }
}

TEST(Clode, RandomOperatorsAgreeWithRk4) {
  Rng rng(42);
  for (int n = 0; n < 50; ++n) {
    const RightLinearScalarOp P1{rng.quat(), rng.quat()}, P0{rng.quat(), rng.quat()};
    const Quat phi0 = rng.quat(), dphi0 = rng.quat();
    const Matrix2CLd M = cl_companion(P1, P0);
    const CLSolution sol = solve_clinear(M, phi0, dphi0);
    const auto traj = oracle::rk4_integrate(oracle::complex_linear_rhs(M), phi0, dphi0, 0, 1, 1024);
    for (size_t s = 0; s < traj.xs.size(); s += 64) EXPECT_LT(dist(traj.values[s].first, sol.evaluate(traj.xs[s]).phi), 1e-9);
    const Evaluation e = sol.evaluate(0.7);
    EXPECT_LT(dist(e.ddphi + P1(e.dphi) + P0(e.phi), Quat(0)), 1e-9);
  }
}

TEST(Clode, ComplexLinearity) {
  Rng rng(43);
  for (int n = 0; n < 1000; ++n) {
    const Matrix2CLd M = cl_companion({rng.quat(), rng.quat()}, {rng.quat(), rng.quat()});
    const Quat u0 = rng.quat(), du0 = rng.quat(), v0 = rng.quat(), dv0 = rng.quat();
    const cplx z1 = rng.complex(), z2 = rng.complex();
    const CLSolution su = solve_clinear(M, u0, du0), sv = solve_clinear(M, v0, dv0);
    const CLSolution sw = solve_clinear(M, right_mul(u0, z1) + right_mul(v0, z2), right_mul(du0, z1) + right_mul(dv0, z2));
    const double x = rng.uniform(-1, 1);
    const Quat expect = right_mul(su.evaluate(x).phi, z1) + right_mul(sv.evaluate(x).phi, z2);
    EXPECT_LT(dist(sw.evaluate(x).phi, expect), 1e-10 * std::max(1.0, expect.norm()));
  }
}

TEST(Clode, JordanBlockForRepeatedComplexExponent) {
  // phi'' - i phi' - phi' i - phi = 0: double exponent i on the z1 slice, +-1 on the z2 slice
  const Matrix2CLd M = cl_companion(RightLinearScalarOp{-Quat::i(), Quat(-1)}, RightLinearScalarOp::left(Quat(-1)));
  const Quat phi0(0.5, 1, -0.3, 0.2), dphi0(-1, 0.4, 0.9, 0.1);
  const CLSolution sol = solve_clinear(M, phi0, dphi0);
  EXPECT_TRUE(sol.jordan);
  const auto traj = oracle::rk4_integrate(oracle::complex_linear_rhs(M), phi0, dphi0, 0, 1, 1024);
  for (size_t s = 0; s < traj.xs.size(); s += 128) EXPECT_LT(dist(traj.values[s].first, sol.evaluate(traj.xs[s]).phi), 1e-8);
}

TEST(Clode, BasisDerivativesMatchFiniteDifferences) {
  CLBasisFunction f{CLBasisFunction::Prefactor::Affine, Quat(0.2, 1, 0, -1), Quat(0, 0.5, 0.5, 0), cplx(-0.3, 0.8)};
  const double h = 1e-5;
  for (double x : {-0.4, 0.0, 0.9}) {
    EXPECT_LT(dist((f.value(x + h) - f.value(x - h)) * (0.5 / h), f.derivative(x)), 1e-9);
    EXPECT_LT(dist((f.derivative(x + h) - f.derivative(x - h)) * (0.5 / h), f.second_derivative(x)), 1e-9);
  }
}

TEST(Schrodinger, ModesSolveStationaryEquation) {
  Rng rng(44);
  for (int n = 0; n < 1000; ++n) {
    const double E = rng.uniform(-3, 3), V = rng.uniform(-2, 2), hbar = rng.uniform(0.5, 2), m = rng.uniform(0.5, 2);
    const cplx W = rng.complex(1.5);
    const SchrodingerModes md = schrodinger_modes_stable(E, V, W, hbar, m);
    const double x = rng.uniform(-0.5, 0.5);
    for (cplx lam : {md.lambdaMinus(), -md.lambdaMinus()})
      EXPECT_LT(mode_residual(mode_evaluation(md.uMinus, lam, x), E, V, W, hbar, m).norm(), 1e-10 * (1 + std::abs(lam) * std::abs(lam)));
    for (cplx lam : {md.lambdaPlus(), -md.lambdaPlus()})
      EXPECT_LT(mode_residual(mode_evaluation(md.uPlus, lam, x), E, V, W, hbar, m).norm(), 1e-10 * (1 + std::abs(lam) * std::abs(lam)));
  }
}

TEST(Schrodinger, DefaultGaugeAndSingularity) {
  const cplx W(0.3, 0.4);
  const SchrodingerModes md = schrodinger_modes(2, 1, W, 1, 1);
  const double s = std::sqrt(4 - 0.25);
  EXPECT_NEAR(md.s.real(), s, 1e-15);
  EXPECT_LT(dist(md.uMinus, Quat(1) + Quat::j() * Quat(W / (2 + s))), 1e-15);
  EXPECT_LT(dist(md.uPlus, Quat(std::conj(W) / (2 + s)) + Quat::j()), 1e-15);
  EXPECT_NEAR(std::abs(md.lambdaMinus().imag()), std::sqrt(2.0) * std::sqrt(s - 1), 1e-12);
  try {
    schrodinger_modes(-1, 1, 0, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModeSingularity);
  }
  const SchrodingerModes st = schrodinger_modes_stable(-1, 1, 0, 1, 1);
  EXPECT_EQ(st.uMinus, Quat::j());
  EXPECT_EQ(st.uPlus, Quat(1));
  EXPECT_THROW(schrodinger_modes(1, 1, 0, 0, 1), Error);
}

TEST(Schrodinger, MatrixCarriesTheSameModes) {
  const double E = 1.7, V = 0.6, hbar = 0.8, m = 1.3;
  const cplx W(0.2, -0.5);
  const Matrix2CLd M = schrodinger_matrix(E, V, W, hbar, m);
  const SchrodingerModes md = schrodinger_modes_stable(E, V, W, hbar, m);
  const Evaluation e = mode_evaluation(md.uPlus, md.lambdaPlus(), 0.3);
  const Vector2Hd out = M(Vector2Hd{{e.phi, e.dphi}});
  EXPECT_LT(dist(out[0], e.dphi), 1e-13);
  EXPECT_LT(dist(out[1], e.ddphi), 1e-12);
}

TEST(TimeReversal, FactorSelection) {
  EXPECT_EQ(time_reversal_factor(cplx(0.7, 0)), Quat::j());
  EXPECT_EQ(time_reversal_factor(cplx(0, -0.7)), Quat::k());
  try {
    time_reversal_factor(cplx(0.3, 0.3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TViolating);
  }
}

TEST(TimeReversal, MappedFieldSolvesOriginalEquation) {
  const double E = 1.4, V = 0.5, hbar = 1, m = 1;
  for (cplx W : {cplx(0.6, 0), cplx(0, 0.6)}) {
    const SchrodingerModes md = schrodinger_modes_stable(E, V, W, hbar, m);
    const Quat u = md.uMinus;
    const cplx lam = md.lambdaMinus();
    const SpaceTimeField phi = [=](double x, double t) {
      return right_mul(mode_evaluation(u, lam, x).phi, std::exp(cplx(0, -E * t / hbar)));
    };
    const SpaceTimeField phiT = time_reversal_map(phi, W);
    // i hbar d_t Phi = -(hbar^2/2m) d_xx Phi + (V - jW) Phi, by central differences
    auto residual = [&](const SpaceTimeField& f, double x, double t) {
      const double h = 1e-4;
      const Quat dt = (f(x, t + h) - f(x, t - h)) * (0.5 / h);
      const Quat dxx = (f(x + h, t) - f(x, t) * 2.0 + f(x - h, t)) * (1 / (h * h));
      return (Quat::i() * dt * hbar + dxx * (hbar * hbar / (2 * m)) - (Quat(V) - Quat::j() * Quat(W)) * f(x, t)).norm();
    };
    EXPECT_LT(residual(phi, 0.3, 0.2), 1e-5);
    EXPECT_LT(residual(phiT, 0.3, 0.2), 1e-5);
    EXPECT_LT(dist(phiT(0.1, 0.4), time_reversal_factor(W) * phi(0.1, -0.4)), 1e-15);
  }
}

TEST(StationaryPhase, UnitModulusOnly) {
  const Quat z = stationary_phase(2, 1, Quat::j(), 0.5);
  EXPECT_LT(dist(z, exp_i(-1) * Quat::j()), 1e-15);
  EXPECT_THROW(stationary_phase(2, 1, Quat(2), 0.5), Error);
}
