#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ringopto/linalg.hpp"
#include "test_support.hpp"

namespace ringopto {
namespace {

using Eigen::MatrixXd;

TEST(Stability, NegativeIdentity) {
  const StabilityReport r = stability(MatrixXd(-MatrixXd::Identity(8, 8)));
  EXPECT_TRUE(r.stable);
  EXPECT_DOUBLE_EQ(r.max_real_part, -1.0);
  EXPECT_EQ(r.eigenvalues.size(), 8u);
}

TEST(Stability, OneGrowingMode) {
  MatrixXd a = -MatrixXd::Identity(8, 8);
  a(0, 0) = 1.0;
  const StabilityReport r = stability(a);
  EXPECT_FALSE(r.stable);
  EXPECT_DOUBLE_EQ(r.max_real_part, 1.0);
}

TEST(Stability, MarginIsRelative) {
  MatrixXd a = -1e7 * MatrixXd::Identity(4, 4);
  a(0, 0) = -1.0;  // decays, but within 1e-6 * max|a| of the axis
  EXPECT_FALSE(stability(a).stable);
}

TEST(Stability, RejectsNonFinite) {
  MatrixXd a = -MatrixXd::Identity(8, 8);
  a(2, 3) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(stability(a), InvalidParameter);
}

TEST(Stability, ReferencePointIsStable) {
  const auto m = testing::build_model(reference_parameters());
  const StabilityReport r = stability(m.drift);
  EXPECT_TRUE(r.stable);
  EXPECT_LT(r.max_real_part, -r.threshold);
}

TEST(Lyapunov, IsotropicFixedPoint) {
  const CovarianceMatrix v = solve_lyapunov(MatrixXd(-MatrixXd::Identity(8, 8)),
                                            MatrixXd(2.0 * MatrixXd::Identity(8, 8)));
  EXPECT_LE((v.matrix() - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
}

// A V + V A^T = (n + 1/2)(A + A^T) = -D for V = (n + 1/2) I: the
// antisymmetric oscillator part cancels and only the damping survives.
TEST(Lyapunov, ThermalOscillator) {
  const double omega = 2.0 * std::numbers::pi * 1e7;
  const double gamma = 2.0 * std::numbers::pi * 1e2;
  for (double n : {0.0, 0.3, 4.2}) {
    MatrixXd a(2, 2);
    a << 0.0, omega, -omega, -gamma;
    MatrixXd d = MatrixXd::Zero(2, 2);
    d(1, 1) = gamma * (2.0 * n + 1.0);
    const CovarianceMatrix v = solve_lyapunov(a, d);
    EXPECT_LE((v.matrix() - (n + 0.5) * MatrixXd::Identity(2, 2)).norm(), 1e-9 * (n + 0.5)) << n;
  }
}

TEST(Lyapunov, ReferencePointIsPhysical) {
  const auto m = testing::build_model(reference_parameters());
  const CovarianceMatrix v = solve_lyapunov(m.drift, m.diffusion);
  EXPECT_LE(lyapunov_residual(m.drift.matrix(), v.matrix(), m.diffusion.matrix()), 1e-9);
  EXPECT_GE(min_symplectic_eigenvalue(v), 0.5 - 1e-9);
}

TEST(Lyapunov, RejectsUnstableDrift) {
  MatrixXd a = -MatrixXd::Identity(8, 8);
  a(3, 3) = 0.5;
  EXPECT_THROW(solve_lyapunov(a, MatrixXd::Identity(8, 8)), UnstableSystem);
}

TEST(Lyapunov, SingularOperatorDetected) {
  MatrixXd a(2, 2);
  a << 0.0, 1.0, -1.0, 0.0;  // eigenvalues +-i: lambda_i + lambda_j = 0
  EXPECT_THROW(solve_lyapunov_kronecker(a, MatrixXd::Identity(2, 2)), SingularSystem);
}

TEST(Lyapunov, ResidualBoundOnRandomHurwitzMatrices) {
  testing::Rng rng(211);
  for (int n = 0; n < 1000; ++n) {
    const MatrixXd a = testing::random_hurwitz(rng, 8, testing::log_uniform(rng, 1e-2, 2.0));
    const MatrixXd d = testing::random_psd(rng, 8);
    const CovarianceMatrix v = solve_lyapunov(a, d);
    ASSERT_LE(lyapunov_residual(a, v.matrix(), d), 1e-9) << "instance " << n;
  }
}

TEST(Oracle, IsotropicFixedPoint) {
  const CovarianceMatrix v = integrate_oracle(MatrixXd(-MatrixXd::Identity(8, 8)),
                                              MatrixXd(2.0 * MatrixXd::Identity(8, 8)), 50.0, 0.0);
  EXPECT_LE((v.matrix() - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Oracle, PureDecay) {
  testing::Rng rng(223);
  const MatrixXd a = testing::random_hurwitz(rng, 8, 0.5);
  const CovarianceMatrix v = integrate_oracle(a, MatrixXd::Zero(8, 8), 0.0, 0.0);
  EXPECT_LE(v.matrix().norm(), 1e-6);
}

TEST(Oracle, AgreesWithKroneckerSolveOnRandomInstances) {
  testing::Rng rng(227);
  for (int n = 0; n < 20; ++n) {
    const MatrixXd a = testing::random_hurwitz(rng, 8, testing::uniform(rng, 0.2, 2.0));
    const MatrixXd d = testing::random_psd(rng, 8);
    const MatrixXd exact = solve_lyapunov(a, d).matrix();
    const MatrixXd approx = integrate_oracle(a, d, 0.0, 0.0).matrix();
    EXPECT_LE((exact - approx).norm() / exact.norm(), 1e-6) << "instance " << n;
  }
}

TEST(Oracle, AgreesWithKroneckerSolveOnDampedMirrors) {
  PhysicalParams p = reference_parameters();
  p.gamma_m = 2.0 * std::numbers::pi * 1e5;
  p.squeeze_r = 0.3;
  p.temperature = 1e-4;
  const auto m = testing::build_model(p);
  const MatrixXd exact = solve_lyapunov(m.drift, m.diffusion).matrix();
  const MatrixXd approx = integrate_oracle(m.drift, m.diffusion, 0.0, 0.0).matrix();
  EXPECT_LE((exact - approx).norm() / exact.norm(), 1e-6);
}

TEST(Oracle, CoarseStepIsRejected) {
  testing::Rng rng(229);
  const MatrixXd a = testing::random_hurwitz(rng, 8, 0.5);
  const double fastest = Eigen::EigenSolver<MatrixXd>(a, false).eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_THROW(integrate_oracle(a, MatrixXd::Identity(8, 8), 0.0, 10.0 / fastest), StepSizeRejected);
}

TEST(Oracle, RejectsUnstableDrift) {
  EXPECT_THROW(integrate_oracle(MatrixXd(MatrixXd::Identity(4, 4)), MatrixXd::Identity(4, 4), 1.0, 0.01),
               UnstableSystem);
}

TEST(Covariance, ShapeAndSymmetryChecks) {
  EXPECT_THROW(CovarianceMatrix(MatrixXd::Identity(3, 3)), OddDimension);
  EXPECT_THROW(CovarianceMatrix(MatrixXd::Identity(2, 4)), OddDimension);
  MatrixXd v = MatrixXd::Identity(4, 4);
  v(0, 1) = 0.1;
  EXPECT_THROW(CovarianceMatrix{v}, NonSymmetric);
  v(1, 0) = 0.1 + 1e-13;
  const CovarianceMatrix ok(v);
  EXPECT_EQ(ok(0, 1), ok(1, 0));
}

TEST(Symplectic, Vacuum) {
  for (int n = 1; n <= 4; ++n) {
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(0.5 * MatrixXd::Identity(2 * n, 2 * n)));
    ASSERT_EQ(nu.size(), static_cast<std::size_t>(n));
    for (double x : nu) EXPECT_NEAR(x, 0.5, 1e-15);
  }
}

TEST(Symplectic, PureSqueezedMode) {
  for (double a : {0.01, 0.5, 3.0, 40.0}) {
    MatrixXd v = MatrixXd::Zero(2, 2);
    v(0, 0) = a;
    v(1, 1) = 1.0 / (4.0 * a);
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(v));
    EXPECT_NEAR(nu[0], 0.5, 1e-13) << a;
  }
}

TEST(Symplectic, TwoModeSqueezedVacuumIsPure) {
  for (double s : {0.1, 0.5, 1.0, 2.0}) {
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(testing::two_mode_squeezed(s)));
    ASSERT_EQ(nu.size(), 2u);
    EXPECT_NEAR(nu[0], 0.5, 1e-9) << s;
    EXPECT_NEAR(nu[1], 0.5, 1e-9) << s;
  }
}

TEST(Symplectic, ThermalSpectrumIsSorted) {
  Eigen::VectorXd diag(6);
  diag << 3.0, 3.0, 0.5, 0.5, 1.25, 1.25;
  const auto nu = symplectic_eigenvalues(CovarianceMatrix(MatrixXd(diag.asDiagonal())));
  EXPECT_NEAR(nu[0], 0.5, 1e-14);
  EXPECT_NEAR(nu[1], 1.25, 1e-14);
  EXPECT_NEAR(nu[2], 3.0, 1e-14);
}

TEST(Symplectic, InvariantUnderSymplecticCongruence) {
  testing::Rng rng(233);
  for (int n = 0; n < 300; ++n) {
    const int modes = 1 + n % 4;
    const MatrixXd v = testing::random_physical_covariance(rng, modes);
    const MatrixXd s = testing::random_symplectic(rng, modes);
    const auto before = symplectic_eigenvalues(CovarianceMatrix(v));
    MatrixXd w = s * v * s.transpose();
    w = 0.5 * (w + w.transpose()).eval();
    const auto after = symplectic_eigenvalues(CovarianceMatrix(w));
    for (std::size_t k = 0; k < before.size(); ++k)
      ASSERT_NEAR(after[k], before[k], 1e-8 * before[k]) << "instance " << n;
  }
}

TEST(Symplectic, RandomSymplecticPreservesForm) {
  testing::Rng rng(239);
  const MatrixXd omega = symplectic_form(4);
  for (int n = 0; n < 50; ++n) {
    const MatrixXd s = testing::random_symplectic(rng, 4);
    EXPECT_LE((s * omega * s.transpose() - omega).norm(), 1e-10);
  }
}

}  // namespace
}  // namespace ringopto
