#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qde/hode.hpp"
#include "qde/qmat2.hpp"
#include "support.hpp"

using namespace qde;
using namespace qde::testing;

namespace {

Matrix2Hd random_matrix(Rng& rng, double scale = 1) {
  return {rng.quat(scale), rng.quat(scale), rng.quat(scale), rng.quat(scale)};
}

// Independent determinant: |det C(M)| = Ddet(M)^2.
double counterpart_det_root(const Matrix2Hd& M) { return std::sqrt(std::abs(complex_counterpart(M).determinant())); }

}  // namespace

TEST(Matrix2H, ProductMatchesCounterpart) {
  Rng rng(21);
  for (int n = 0; n < 500; ++n) {
    const Matrix2Hd A = random_matrix(rng), B = random_matrix(rng);
    EXPECT_LT((complex_counterpart(A * B) - complex_counterpart(A) * complex_counterpart(B)).norm(), 1e-13);
    const Vector2Hd x{{rng.quat(), rng.quat()}};
    EXPECT_LT((to_complex(A * x) - complex_counterpart(A) * to_complex(x)).norm(), 1e-13);
    EXPECT_LT((from_complex(to_complex(x)) - x).norm(), 1e-15);
  }
}

TEST(Matrix2H, SolveAndInverseAgreeWithComplexLU) {
  Rng rng(22);
  for (int n = 0; n < 1000; ++n) {
    const Matrix2Hd M = random_matrix(rng);
    const Vector2Hd y{{rng.quat(), rng.quat()}};
    const Vector4c ref = complex_counterpart(M).fullPivLu().solve(to_complex(y));
    EXPECT_LT((to_complex(solve(M, y)) - ref).norm(), 1e-9 * (1 + ref.norm()));
    EXPECT_LT((inverse(M) * M - Matrix2Hd::Identity()).norm(), 1e-9);
  }
}

TEST(Matrix2H, SingularSystemIsReported) {
  const Matrix2Hd M(Quat::i(), Quat::j(), Quat::i() * 2, Quat::j() * 2);
  try {
    solve(M, Vector2Hd{{Quat(1), Quat(0)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateBasis);
  }
}

TEST(Dieudonne, FactorizationsAgreeWithCounterpartDeterminant) {
  Rng rng(23);
  for (int n = 0; n < 1000; ++n) {
    const Matrix2Hd M = random_matrix(rng);
    const double ref = counterpart_det_root(M);
    for (double f : dieudonne_factorizations(M)) EXPECT_NEAR(f, ref, 1e-12 * std::max(1.0, ref));
    EXPECT_NEAR(dieudonne_det(M), ref, 1e-12 * std::max(1.0, ref));
  }
}

TEST(Dieudonne, ZeroLeadingEntries) {
  const Matrix2Hd M(Quat(0), Quat::j(), Quat::k(), Quat(0));
  const auto f = dieudonne_factorizations(M);
  EXPECT_TRUE(std::isnan(f[0]));
  EXPECT_TRUE(std::isnan(f[3]));
  EXPECT_NEAR(f[1], 1, 1e-15);
  EXPECT_NEAR(dieudonne_det(M), 1, 1e-15);
  EXPECT_EQ(dieudonne_det(Matrix2Hd::Zero()), 0);
}

TEST(Eigen2H, RightEigenpairsOnRandomMatrices) {
  Rng rng(24);
  for (int n = 0; n < 1000; ++n) {
    const Matrix2Hd M = random_matrix(rng);
    const EigenDecomposition d = right_eigenpairs(M);
    ASSERT_FALSE(d.defective);
    for (int r = 0; r < 2; ++r) {
      EXPECT_GE(d.eigenvalues[r].imag(), 0);
      const Vector2Hd& v = d.eigenvectors[r];
      EXPECT_NEAR(v.norm(), 1, 1e-12);
      EXPECT_LT((M * v - v * Quat(d.eigenvalues[r])).norm(), 1e-9);
    }
    // counterpart spectrum is the two values and their conjugates
    const Eigen::Vector4cd ev = Eigen::ComplexEigenSolver<Matrix4c>(complex_counterpart(M)).eigenvalues();
    for (int c = 0; c < 4; ++c) {
      double best = 1e300;
      for (const cplx& z : d.eigenvalues) best = std::min({best, std::abs(ev(c) - z), std::abs(ev(c) - std::conj(z))});
      EXPECT_LT(best, 1e-9);
    }
    const EigenDecomposition g = diagonalize(M);
    const Matrix2Hd D(Quat(g.eigenvalues[0]), Quat(0), Quat(0), Quat(g.eigenvalues[1]));
    EXPECT_LT((g.S * D * g.Sinv - M).norm(), 1e-9 * std::max(1.0, M.norm()));
  }
}

TEST(Eigen2H, CanonicalOrderingAndSimilarityInvariance) {
  Rng rng(25);
  for (int n = 0; n < 300; ++n) {
    const Matrix2Hd M = random_matrix(rng);
    const Matrix2Hd P = random_matrix(rng);
    const EigenDecomposition a = right_eigenpairs(M), b = right_eigenpairs(P * M * inverse(P));
    for (int r = 0; r < 2; ++r) EXPECT_LT(std::abs(a.eigenvalues[r] - b.eigenvalues[r]), 1e-7);
    const cplx z0 = a.eigenvalues[0], z1 = a.eigenvalues[1];
    EXPECT_TRUE(z0.imag() < z1.imag() + 1e-12 || (std::abs(z0.imag() - z1.imag()) < 1e-12 && z0.real() <= z1.real()));
  }
}

TEST(Eigen2H, ScalarQuaternionMultipleIsDiagonalizable) {
  // q I with q non-real: double eigenvalue, two independent eigenvectors
  const Matrix2Hd M(Quat(1, 0, 2, 0), Quat(0), Quat(0), Quat(1, 0, 2, 0));
  const EigenDecomposition d = right_eigenpairs(M);
  EXPECT_FALSE(d.defective);
  EXPECT_LT(std::abs(d.eigenvalues[0] - cplx(1, 2)), 1e-12);
  EXPECT_LT(std::abs(d.eigenvalues[1] - cplx(1, 2)), 1e-12);
  for (int r = 0; r < 2; ++r)
    EXPECT_LT((M * d.eigenvectors[r] - d.eigenvectors[r] * Quat(d.eigenvalues[r])).norm(), 1e-10);
  EXPECT_GT(dieudonne_det(Matrix2Hd::from_columns(d.eigenvectors[0], d.eigenvectors[1])), 1e-3);
}

TEST(Jordan, CompanionOfJordanExample) {
  const Quat i = Quat::i(), j = Quat::j(), k = Quat::k();
  const Matrix2Hd M = companion(k - i, -j);
  EXPECT_EQ(M(1, 0), j);
  EXPECT_EQ(M(1, 1), i - k);
  const EigenDecomposition d = right_eigenpairs(M);
  ASSERT_TRUE(d.defective);
  EXPECT_LT(std::abs(d.eigenvalues[0] - cplx(0, 1)), 1e-7);
  try {
    diagonalize(M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DefectiveMatrix);
  }
  const EigenDecomposition J = jordanize(M);
  const Matrix2Hd B(i, Quat(1), Quat(0), i);
  EXPECT_LT((J.S * B * J.Sinv - M).norm(), 1e-7);
  // gauge: J11 = 1, J21 = i, and J12 has no complex part
  EXPECT_LT(dist(J.S(0, 0), Quat(1)), 1e-7);
  EXPECT_LT(dist(J.S(1, 0), i), 1e-7);
  EXPECT_LT(std::abs(J.S(0, 1).complex_part()), 1e-7);
  EXPECT_LT((J.S - Matrix2Hd(Quat(1), k * 0.5, i, Quat(1) + j * 0.5)).norm(), 1e-7);
  const Matrix2Hd Jinv(Quat(3, 0, 1, 0) * 0.25, (i + k) * -0.25, (i + k) * -0.5, Quat(1, 0, -1, 0) * 0.5);
  EXPECT_LT((J.Sinv - Jinv).norm(), 1e-7);
}

TEST(Jordan, RejectsDiagonalizable) {
  try {
    jordanize(Matrix2Hd(Quat(1), Quat(2), Quat(3), Quat(4)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Diagonalizable);
  }
}

TEST(MatrixOde, AgreesWithClosedFormSolver) {
  Rng rng(26);
  for (int n = 0; n < 300; ++n) {
    const Quat a = rng.quat(), b = rng.quat(), phi0 = rng.quat(), dphi0 = rng.quat();
    const MatrixOdeSolution m = solve_ode_via_matrix(a, b, phi0, dphi0);
    const GeneralSolution g = solve_ivp(a, b, phi0, dphi0);
    for (double x : {-0.7, 0.0, 0.4, 1.0}) {
      const auto [phi, dphi] = m(x);
      const Evaluation e = evaluate(g, x);
      EXPECT_LT(dist(phi, e.phi), 1e-9 * (1 + e.phi.norm()));
      EXPECT_LT(dist(dphi, e.dphi), 1e-9 * (1 + e.dphi.norm()));
    }
  }
}

TEST(Spectral, AntiHermitianExample) {
  const Quat i = Quat::i(), j = Quat::j(), k = Quat::k();
  const Matrix2Hd A(-i, j * 3, j * 3, i);
  const SpectralDecomposition s = spectral_decompose_antihermitian(A);
  EXPECT_NEAR(s.lambda[0], 2, 1e-12);
  EXPECT_NEAR(s.lambda[1], 4, 1e-12);
  EXPECT_LT((s.H - Matrix2Hd(Quat(3), k, -k, Quat(3))).norm(), 1e-12);
  for (int n = 0; n < 2; ++n) {
    const Vector2Hd& v = s.eigenvectors[n];
    EXPECT_LT((A * v - v * Quat(0, s.lambda[n], 0, 0)).norm(), 1e-12);
  }
  // published eigenvectors up to a right phase
  const Vector2Hd p1{{i * (1 / std::sqrt(2.0)), j * (1 / std::sqrt(2.0))}};
  const Quat overlap = s.eigenvectors[0][0].conj() * p1[0] + s.eigenvectors[0][1].conj() * p1[1];
  EXPECT_NEAR(overlap.norm(), 1, 1e-12);
}

TEST(Spectral, RandomAntiHermitian) {
  Rng rng(27);
  for (int n = 0; n < 500; ++n) {
    const Quat a = Quat::pure(rng.vec()), d = Quat::pure(rng.vec()), b = rng.quat();
    const Matrix2Hd A(a, b, -b.conj(), d);
    const SpectralDecomposition s = spectral_decompose_antihermitian(A);
    EXPECT_LE(s.lambda[0], s.lambda[1] + 1e-12);
    EXPECT_LT((s.H - s.H.adjoint()).norm(), 1e-10);
    for (int r = 0; r < 2; ++r) {
      const Vector2Hd& v = s.eigenvectors[r];
      EXPECT_LT((A * v - v * Quat(0, s.lambda[r], 0, 0)).norm(), 1e-9);
      EXPECT_LT((s.H * v - v * Quat(s.lambda[r])).norm(), 1e-9);
    }
  }
}

TEST(Spectral, RejectsNonAntiHermitian) {
  try {
    spectral_decompose_antihermitian(Matrix2Hd::Identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Precondition);
  }
}

TEST(Outer, ProjectorShape) {
  const Vector2Hd v{{Quat(0, 1, 0, 0), Quat(0)}};
  EXPECT_LT((outer(v, Quat(2)) - Matrix2Hd(Quat(2), Quat(0), Quat(0), Quat(0))).norm(), 1e-15);
}

TEST(ComplexLinearMatrix, CounterpartActsOnPairs) {
  Rng rng(28);
  for (int n = 0; n < 300; ++n) {
    Matrix2CLd M;
    for (auto& op : M.m) op = {rng.quat(), rng.quat()};
    const Vector2Hd x{{rng.quat(), rng.quat()}};
    EXPECT_LT((to_complex(M(x)) - complex_counterpart(M) * to_complex(x)).norm(), 1e-13);
  }
}
