#pragma once

#include <complex>

#include <Eigen/Core>

#include "ringopto/params.hpp"

namespace ringopto {

using Matrix8 = Eigen::Matrix<double, 8, 8>;

/// Positions in the fluctuation vector (dq1, dp1, dq2, dp2, dX, dY, dx, dy).
namespace quad {
inline constexpr int q1 = 0, p1 = 1, q2 = 2, p2 = 3;
inline constexpr int X = 4, Y = 5;  // cavity field
inline constexpr int x = 6, y = 7;  // atomic polarization
}  // namespace quad

/// Linear generator of the fluctuation dynamics, entries in rad/s.
class DriftMatrix {
 public:
  DriftMatrix() : a_(Matrix8::Zero()) {}
  explicit DriftMatrix(const Matrix8& a) : a_(a) {}
  const Matrix8& matrix() const { return a_; }
  double operator()(int row, int col) const { return a_(row, col); }

 private:
  Matrix8 a_;
};

/// Noise correlation matrix of the Lyapunov equation, entries in rad/s.
class DiffusionMatrix {
 public:
  DiffusionMatrix() : d_(Matrix8::Zero()) {}
  explicit DiffusionMatrix(const Matrix8& d) : d_(d) {}
  const Matrix8& matrix() const { return d_; }
  double operator()(int row, int col) const { return d_(row, col); }

 private:
  Matrix8 d_;
};

inline DriftMatrix build_drift(const PhysicalParams& p, const DerivedParams& d) {
  using namespace quad;
  const double g = d.effective_coupling();
  Matrix8 a = Matrix8::Zero();

  a(q1, p1) = p.omega_m;
  a(p1, q1) = -p.omega_m;
  a(p1, p1) = -p.gamma_m;
  a(p1, X) = -g;

  a(q2, p2) = p.omega_m;
  a(p2, q2) = -p.omega_m;
  a(p2, p2) = -p.gamma_m;
  a(p2, X) = g;

  a(X, X) = -p.kappa;
  a(X, Y) = p.delta;
  a(X, y) = p.g_a;

  a(Y, q1) = -g;
  a(Y, q2) = g;
  a(Y, X) = -p.delta;
  a(Y, Y) = -p.kappa;
  a(Y, x) = -p.g_a;

  a(x, Y) = p.g_a;
  a(x, x) = -p.gamma_a;
  a(x, y) = p.delta_a;

  a(y, X) = -p.g_a;
  a(y, x) = -p.delta_a;
  a(y, y) = -p.gamma_a;
  return DriftMatrix(a);
}

/// Mechanical Brownian noise on the momenta, squeezed vacuum on the field,
/// vacuum on the atoms. The squeezed correlators are taken in the rotating
/// frame, without their e^{+-i omega_m (t + t')} factors.
inline DiffusionMatrix build_diffusion(const PhysicalParams& p, const DerivedParams& d) {
  using namespace quad;
  Matrix8 m = Matrix8::Zero();
  const double mech = p.gamma_m * (2.0 * d.n_thermal + 1.0);
  m(p1, p1) = mech;
  m(p2, p2) = mech;

  const double two_kappa = 2.0 * p.kappa;
  const double n = d.squeeze_n;
  m(X, X) = two_kappa * (d.squeeze_m.real() + n + 0.5);
  m(Y, Y) = two_kappa * (-d.squeeze_m.real() + n + 0.5);
  m(X, Y) = two_kappa * d.squeeze_m.imag();
  m(Y, X) = m(X, Y);

  m(x, x) = p.gamma_a;
  m(y, y) = p.gamma_a;
  return DiffusionMatrix(m);
}

/// Classical steady-state values about which the dynamics is linearized.
struct SteadyStateReport {
  double q1 = 0.0;
  double q2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  std::complex<double> atoms;   // c_s
  std::complex<double> field;   // a_s
};

inline SteadyStateReport steady_state(const PhysicalParams& p, const DerivedParams& d) {
  SteadyStateReport s;
  s.field = d.amplitude;
  const double displacement = d.g0 * d.cos2 * std::norm(d.amplitude) / p.omega_m;
  s.q1 = -displacement;
  s.q2 = displacement;
  s.atoms = std::complex<double>(0.0, -p.g_a) * d.amplitude /
            std::complex<double>(p.gamma_a, p.delta_a);
  return s;
}

}  // namespace ringopto
