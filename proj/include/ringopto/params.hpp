#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ringopto/errors.hpp"

namespace ringopto {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K
inline constexpr double speed_of_light = 2.99792458e8;  // m / s
}  // namespace constants

/// Laboratory inputs, SI units throughout. Every frequency is an angular
/// frequency in rad/s. Both mirrors share mass, frequency and damping.
struct PhysicalParams {
  double power = 0.0;        // W
  double wavelength = 0.0;   // m
  double mass = 0.0;         // kg
  double omega_m = 0.0;      // rad/s
  double kappa = 0.0;        // rad/s, cavity amplitude decay
  double gamma_m = 0.0;      // rad/s
  double gamma_a = 0.0;      // rad/s
  double g_a = 0.0;          // rad/s, collective atom-cavity coupling
  double theta = 0.0;        // rad, incidence angle on the movable mirrors
  double length = 0.0;       // m
  double temperature = 0.0;  // K
  double squeeze_r = 0.0;
  double squeeze_phi = 0.0;  // rad
  double delta = 0.0;        // rad/s, effective cavity detuning
  double delta_a = 0.0;      // rad/s, atomic detuning

  bool operator==(const PhysicalParams&) const = default;
};

/// Working point used throughout the entanglement study: P = 35 mW,
/// lambda = 1064 nm, m = 10 ng, L = 1 mm, theta = pi/3, Delta = omega_m,
/// Delta_a = -omega_m, near-zero temperature and no squeezing.
inline PhysicalParams reference_parameters() {
  constexpr double pi = std::numbers::pi;
  PhysicalParams p;
  p.power = 35e-3;
  p.wavelength = 1064e-9;
  p.mass = 10e-12;
  p.omega_m = 2.0 * pi * 1e7;
  p.kappa = pi * 1e7;
  p.gamma_m = 2.0 * pi * 1e2;
  p.gamma_a = pi * 1e7;
  p.g_a = 12.0 * pi * 1e6;
  p.theta = pi / 3.0;
  p.length = 1e-3;
  p.temperature = 1e-6;
  p.squeeze_r = 0.0;
  p.squeeze_phi = 0.0;
  p.delta = p.omega_m;
  p.delta_a = -p.omega_m;
  return p;
}

namespace detail {

inline void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw InvalidParameter(field, "must be finite");
}
inline void require_positive(double v, const char* field) {
  require_finite(v, field);
  if (!(v > 0.0)) throw InvalidParameter(field, "must be > 0");
}
inline void require_nonnegative(double v, const char* field) {
  require_finite(v, field);
  if (v < 0.0) throw InvalidParameter(field, "must be >= 0");
}

}  // namespace detail

/// Throws InvalidParameter naming the first field that violates its domain.
inline void validate(const PhysicalParams& p) {
  using namespace detail;
  require_nonnegative(p.power, "power");
  require_positive(p.wavelength, "wavelength");
  require_positive(p.mass, "mass");
  require_positive(p.omega_m, "omega_m");
  require_positive(p.kappa, "kappa");
  require_positive(p.gamma_m, "gamma_m");
  require_positive(p.gamma_a, "gamma_a");
  require_nonnegative(p.g_a, "g_a");
  require_nonnegative(p.theta, "theta");
  if (p.theta >= std::numbers::pi) throw InvalidParameter("theta", "must be < pi");
  require_positive(p.length, "length");
  require_nonnegative(p.temperature, "temperature");
  require_nonnegative(p.squeeze_r, "squeeze_r");
  require_finite(p.squeeze_phi, "squeeze_phi");
  require_finite(p.delta, "delta");
  require_finite(p.delta_a, "delta_a");
}

struct DerivedParams {
  double omega_laser = 0.0;     // rad/s
  double omega_cavity = 0.0;    // rad/s, taken equal to omega_laser
  double drive = 0.0;           // E_L, rad/s
  double g0 = 0.0;              // single-photon optomechanical coupling, rad/s
  double cos2 = 0.0;            // cos^2(theta/2)
  std::complex<double> amplitude;  // steady intracavity amplitude a_s
  double coupling = 0.0;        // G = sqrt(2) g0 |a_s|, rad/s
  double n_thermal = 0.0;
  double squeeze_n = 0.0;       // N = sinh^2 r
  std::complex<double> squeeze_m;  // M = sinh r cosh r e^{i phi}

  /// Optomechanical entry of the drift matrix, G cos^2(theta/2).
  double effective_coupling() const { return coupling * cos2; }

  bool operator==(const DerivedParams&) const = default;
};

/// Mean phonon number of a bath at `temperature`. Zero temperature is the
/// limit, not an evaluation of the divergent exponential.
inline double thermal_occupancy(double omega, double temperature) {
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

inline DerivedParams derive(const PhysicalParams& p) {
  validate(p);
  using namespace std::complex_literals;
  DerivedParams d;
  d.omega_laser = 2.0 * std::numbers::pi * constants::speed_of_light / p.wavelength;
  d.omega_cavity = d.omega_laser;
  d.drive = std::sqrt(p.kappa * p.power / (constants::hbar * d.omega_laser));
  d.g0 = (d.omega_cavity / p.length) * std::sqrt(constants::hbar / (p.mass * p.omega_m));
  const double c = std::cos(0.5 * p.theta);
  d.cos2 = c * c;

  const std::complex<double> atomic_load =
      p.g_a * p.g_a / std::complex<double>(p.gamma_a, p.delta_a);
  d.amplitude = d.drive / (std::complex<double>(p.kappa, p.delta) + atomic_load);
  d.coupling = std::numbers::sqrt2 * d.g0 * std::abs(d.amplitude);

  d.n_thermal = thermal_occupancy(p.omega_m, p.temperature);
  const double sh = std::sinh(p.squeeze_r);
  const double ch = std::cosh(p.squeeze_r);
  d.squeeze_n = sh * sh;
  d.squeeze_m = sh * ch * std::exp(1i * p.squeeze_phi);
  return d;
}

}  // namespace ringopto
