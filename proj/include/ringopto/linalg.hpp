#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "ringopto/errors.hpp"
#include "ringopto/model.hpp"

namespace ringopto {

/// Real symmetric 2n x 2n matrix of quadrature second moments, vacuum = I/2.
/// Construction checks squareness, even dimension and symmetry to 1e-10
/// relative, then symmetrizes exactly.
class CovarianceMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-10;

  CovarianceMatrix() = default;

  template <typename Derived>
  explicit CovarianceMatrix(const Eigen::MatrixBase<Derived>& v) : v_(v) {
    if (v_.rows() != v_.cols()) throw OddDimension("covariance matrix must be square");
    if (v_.rows() % 2 != 0) throw OddDimension("covariance matrix needs an even dimension");
    const double scale = v_.cwiseAbs().maxCoeff();
    const double asym = (v_ - v_.transpose()).cwiseAbs().maxCoeff();
    if (!std::isfinite(scale) || asym > kSymmetryTolerance * std::max(scale, 1e-300))
      throw NonSymmetric("covariance matrix is not symmetric");
    v_ = 0.5 * (v_ + v_.transpose()).eval();
  }

  const Eigen::MatrixXd& matrix() const { return v_; }
  Eigen::Index dim() const { return v_.rows(); }
  Eigen::Index modes() const { return v_.rows() / 2; }
  double operator()(Eigen::Index r, Eigen::Index c) const { return v_(r, c); }

 private:
  Eigen::MatrixXd v_;
};

struct StabilityReport {
  bool stable = false;
  double max_real_part = 0.0;
  double threshold = 0.0;  // stable iff max_real_part < -threshold
  std::vector<std::complex<double>> eigenvalues;
};

/// Relative margin: a matrix is stable when every eigenvalue has real part
/// below -kStabilityMargin * max|a_ij|.
inline constexpr double kStabilityMargin = 1e-6;

template <typename Derived>
StabilityReport stability(const Eigen::MatrixBase<Derived>& a) {
  if (!a.allFinite()) throw InvalidParameter("drift", "matrix has non-finite entries");
  const Eigen::MatrixXd m = a;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Error("eigenvalue computation did not converge");

  StabilityReport r;
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  r.max_real_part = -std::numeric_limits<double>::infinity();
  for (const auto& ev : r.eigenvalues) r.max_real_part = std::max(r.max_real_part, ev.real());
  r.threshold = kStabilityMargin * m.cwiseAbs().maxCoeff();
  r.stable = r.max_real_part < -r.threshold;
  return r;
}

inline StabilityReport stability(const DriftMatrix& a) { return stability(a.matrix()); }

/// ||A V + V A^T + D||_F / max(||D||_F, 1).
template <typename DA, typename DV, typename DD>
double lyapunov_residual(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DV>& v,
                         const Eigen::MatrixBase<DD>& d) {
  const Eigen::MatrixXd res = a * v + v * a.transpose() + d;
  return res.norm() / std::max(d.norm(), 1.0);
}

/// Solves A V + V A^T = -D through (I (x) A + A (x) I) vec(V) = -vec(D)
/// with two rounds of iterative refinement. No stability check; throws
/// SingularSystem when the Kronecker operator is rank deficient.
template <typename DA, typename DD>
Eigen::MatrixXd solve_lyapunov_kronecker(const Eigen::MatrixBase<DA>& a,
                                         const Eigen::MatrixBase<DD>& d) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || d.rows() != n || d.cols() != n)
    throw InvalidParameter("drift", "Lyapunov operands must be square and equally sized");
  const Eigen::MatrixXd am = a;
  const Eigen::Index nn = n * n;

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nn, nn);
  // vec is column-major: vec(V)[i + n*j] = V(i, j).
  for (Eigen::Index j = 0; j < n; ++j) {
    k.block(j * n, j * n, n, n) += am;  // I (x) A
    for (Eigen::Index l = 0; l < n; ++l) {
      if (am(j, l) != 0.0)
        k.block(j * n, l * n, n, n).diagonal().array() += am(j, l);  // A (x) I
    }
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
  if (lu.rank() < nn) throw SingularSystem("Lyapunov operator is singular");

  const Eigen::MatrixXd dm = d;
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(dm.data(), nn);
  Eigen::VectorXd x = lu.solve(rhs);
  for (int it = 0; it < 2; ++it) x += lu.solve(rhs - k * x);
  if (!x.allFinite()) throw SingularSystem("Lyapunov solution is not finite");

  Eigen::MatrixXd v = Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
  return 0.5 * (v + v.transpose());
}

/// Steady-state covariance of a stable linear system: A V + V A^T = -D.
template <typename DA, typename DD>
CovarianceMatrix solve_lyapunov(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DD>& d) {
  if (!stability(a).stable) throw UnstableSystem("drift matrix is not Hurwitz stable");
  return CovarianceMatrix(solve_lyapunov_kronecker(a, d));
}

inline CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d) {
  return solve_lyapunov(a.matrix(), d.matrix());
}

namespace detail {

template <typename Mat>
Mat integrate_moments(const Mat& a, const Mat& d, double horizon, double dt) {
  const auto steps = static_cast<long long>(std::ceil(horizon / dt));
  const double h = horizon / static_cast<double>(steps);
  const Eigen::Index n = a.rows();

  // V stays symmetric, so A V + V A^T = A V + (A V)^T.
  auto rhs = [&](const Mat& v, Mat& out) {
    out.noalias() = a * v;
    out = out + out.transpose().eval() + d;
  };

  Mat v = 0.5 * Mat::Identity(n, n);
  const double limit = 1e12 * (v.norm() + d.norm() * horizon);
  Mat k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
  for (long long s = 0; s < steps; ++s) {
    rhs(v, k1);
    tmp = v + (0.5 * h) * k1;
    rhs(tmp, k2);
    tmp = v + (0.5 * h) * k2;
    rhs(tmp, k3);
    tmp = v + h * k3;
    rhs(tmp, k4);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((s & 0x3ff) == 0 || s + 1 == steps) {
      const double nv = v.norm();
      if (!std::isfinite(nv) || nv > limit)
        throw StepSizeRejected("moment integration diverged; reduce dt");
    }
  }
  return v;
}

}  // namespace detail

/// Integrates dV/dt = A V + V A^T + D from V(0) = I/2 with classic RK4.
///
/// Test oracle for solve_lyapunov. The horizon is extended to at least
/// 20 / |max Re eig(A)| so the transient has decayed by e^-40. A
/// non-positive `dt` selects 0.1 / max|eig(A)|. Throws StepSizeRejected
/// if the iterate blows up, which happens when dt is too coarse.
template <typename DA, typename DD>
CovarianceMatrix integrate_oracle(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DD>& d,
                                  double t_end, double dt) {
  const StabilityReport st = stability(a);
  if (!st.stable) throw UnstableSystem("drift matrix is not Hurwitz stable");

  double fastest = 0.0;
  for (const auto& ev : st.eigenvalues) fastest = std::max(fastest, std::abs(ev));
  if (!(dt > 0.0)) dt = 0.1 / fastest;
  const double horizon = std::max(t_end, 20.0 / std::abs(st.max_real_part));

  if (a.rows() == 8) {
    const Matrix8 v = detail::integrate_moments<Matrix8>(a, d, horizon, dt);
    return CovarianceMatrix(v);
  }
  const Eigen::MatrixXd v = detail::integrate_moments<Eigen::MatrixXd>(a, d, horizon, dt);
  return CovarianceMatrix(v);
}

inline CovarianceMatrix integrate_oracle(const DriftMatrix& a, const DiffusionMatrix& d,
                                         double t_end, double dt) {
  return integrate_oracle(a.matrix(), d.matrix(), t_end, dt);
}

/// Direct sum of n copies of [[0, 1], [-1, 0]].
inline Eigen::MatrixXd symplectic_form(Eigen::Index modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (Eigen::Index j = 0; j < modes; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

inline constexpr double kPairingTolerance = 1e-8;

/// The n symplectic eigenvalues of V, ascending: moduli of the eigenvalues
/// of i Omega V, which come in +- pairs. Throws PairingFailure when the
/// sorted moduli do not pair up within 1e-8 relative.
inline std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
  const Eigen::Index n = v.modes();
  const Eigen::MatrixXd m = symplectic_form(n) * v.matrix();
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw Error("eigenvalue computation did not converge");

  std::vector<double> moduli(static_cast<std::size_t>(2 * n));
  for (Eigen::Index i = 0; i < 2 * n; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end());

  std::vector<double> out(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double lo = moduli[2 * k];
    const double hi = moduli[2 * k + 1];
    if (hi - lo > kPairingTolerance * hi)
      throw PairingFailure("symplectic spectrum does not pair up");
    out[k] = 0.5 * (lo + hi);
  }
  return out;
}

inline double min_symplectic_eigenvalue(const CovarianceMatrix& v) {
  return symplectic_eigenvalues(v).front();
}

}  // namespace ringopto
