#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ringopto/entanglement.hpp"
#include "ringopto/linalg.hpp"
#include "ringopto/model.hpp"
#include "ringopto/params.hpp"

namespace ringopto {

/// One requested output column.
///
/// Labels: `E_<x>_<y>` for a pair, `T_<x><y><z>` for the tripartite measure
/// and `B_<x>_<y><z>` for the split x | y z.
struct Quantity {
  enum class Kind { pair, split, triple };
  Kind kind = Kind::pair;
  ModePartition partition;
  std::string label;
};

namespace detail {

// Greedy tokenization of concatenated mode names such as "am1op".
inline std::optional<std::vector<Mode>> split_mode_names(std::string_view s) {
  std::vector<Mode> out;
  while (!s.empty()) {
    bool matched = false;
    for (std::string_view name : {"m1", "m2", "op", "a"}) {
      if (s.starts_with(name)) {
        out.push_back(*parse_mode(name));
        s.remove_prefix(name.size());
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return out;
}

inline std::string join_mode_names(const std::vector<Mode>& modes, std::size_t from = 0) {
  std::string s;
  for (std::size_t i = from; i < modes.size(); ++i) s += mode_name(modes[i]);
  return s;
}

}  // namespace detail

inline Quantity pair_quantity(Mode x, Mode y) {
  Quantity q{Quantity::Kind::pair, ModePartition::pair(x, y), {}};
  q.label = "E_" + std::string(mode_name(x)) + "_" + std::string(mode_name(y));
  return q;
}

inline Quantity triple_quantity(Mode x, Mode y, Mode z) {
  Quantity q{Quantity::Kind::triple, ModePartition::triple(x, y, z), {}};
  q.label = "T_" + detail::join_mode_names(q.partition.modes);
  return q;
}

inline Quantity split_quantity(Mode single, Mode y, Mode z) {
  Quantity q{Quantity::Kind::split, ModePartition::split(single, y, z), {}};
  q.label = "B_" + std::string(mode_name(single)) + "_" + detail::join_mode_names(q.partition.modes, 1);
  return q;
}

/// Throws InvalidSweep for anything that is not a well-formed label.
inline Quantity parse_quantity(std::string_view label) {
  const auto fail = [&] { return InvalidSweep("unknown quantity label '" + std::string(label) + "'"); };
  if (label.size() < 3 || label[1] != '_') throw fail();
  const char kind = label[0];
  std::string_view body = label.substr(2);

  Quantity q;
  try {
    if (kind == 'E') {
      const auto us = body.find('_');
      if (us == std::string_view::npos) throw fail();
      const auto x = parse_mode(body.substr(0, us));
      const auto y = parse_mode(body.substr(us + 1));
      if (!x || !y) throw fail();
      q = pair_quantity(*x, *y);
    } else if (kind == 'T') {
      const auto modes = detail::split_mode_names(body);
      if (!modes || modes->size() != 3) throw fail();
      q = triple_quantity((*modes)[0], (*modes)[1], (*modes)[2]);
    } else if (kind == 'B') {
      const auto us = body.find('_');
      if (us == std::string_view::npos) throw fail();
      const auto single = parse_mode(body.substr(0, us));
      const auto rest = detail::split_mode_names(body.substr(us + 1));
      if (!single || !rest || rest->size() != 2) throw fail();
      q = split_quantity(*single, (*rest)[0], (*rest)[1]);
    } else {
      throw fail();
    }
    validate(q.partition);
  } catch (const InvalidPartition&) {
    throw fail();
  }
  return q;
}

/// The six pairs and four triples written by default, in column order.
inline std::vector<Quantity> standard_quantities() {
  using M = Mode;
  return {pair_quantity(M::m1, M::m2),         pair_quantity(M::m1, M::op),
          pair_quantity(M::m2, M::op),         pair_quantity(M::m1, M::a),
          pair_quantity(M::m2, M::a),          pair_quantity(M::op, M::a),
          triple_quantity(M::m1, M::m2, M::a), triple_quantity(M::a, M::m1, M::op),
          triple_quantity(M::a, M::m2, M::op), triple_quantity(M::m1, M::m2, M::op)};
}

inline double evaluate(const CovarianceMatrix& v, const Quantity& q) {
  switch (q.kind) {
    case Quantity::Kind::pair: return log_negativity_pair(v, q.partition).value;
    case Quantity::Kind::split: return log_negativity_one_vs_two(v, q.partition).value;
    case Quantity::Kind::triple: return tripartite_negativity(v, q.partition).value;
  }
  return 0.0;
}

/// Entanglement values this close to zero are reported as exactly zero.
inline constexpr double kZeroClip = 1e-12;

inline double clip_zero(double v) { return std::abs(v) < kZeroClip ? 0.0 : v; }

/// Everything known about one parameter set.
struct PointReport {
  PhysicalParams params;
  DerivedParams derived;
  DriftMatrix drift;
  DiffusionMatrix diffusion;
  StabilityReport stability;
  std::optional<CovarianceMatrix> covariance;  // present iff stable
  double residual = 0.0;
  double min_symplectic = 0.0;
  std::vector<double> values;  // aligned with the requested quantities
};

inline PointReport evaluate_point(const PhysicalParams& p, const std::vector<Quantity>& quantities) {
  PointReport r;
  r.params = p;
  r.derived = derive(p);
  r.drift = build_drift(p, r.derived);
  r.diffusion = build_diffusion(p, r.derived);
  r.stability = stability(r.drift);
  if (!r.stability.stable) return r;

  r.covariance = solve_lyapunov(r.drift, r.diffusion);
  r.residual = lyapunov_residual(r.drift.matrix(), r.covariance->matrix(), r.diffusion.matrix());
  r.min_symplectic = min_symplectic_eigenvalue(*r.covariance);
  r.values.reserve(quantities.size());
  for (const Quantity& q : quantities) r.values.push_back(clip_zero(evaluate(*r.covariance, q)));
  return r;
}

enum class Axis { T, r, P, Delta_a, G_a, Delta, theta, phi };
enum class Scale { linear, logarithmic };

inline std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::T: return "T";
    case Axis::r: return "r";
    case Axis::P: return "P";
    case Axis::Delta_a: return "Delta_a";
    case Axis::G_a: return "G_a";
    case Axis::Delta: return "Delta";
    case Axis::theta: return "theta";
    case Axis::phi: return "phi";
  }
  return "?";
}

inline Axis parse_axis(std::string_view s) {
  for (Axis a : {Axis::T, Axis::r, Axis::P, Axis::Delta_a, Axis::G_a, Axis::Delta, Axis::theta, Axis::phi})
    if (axis_name(a) == s) return a;
  throw InvalidSweep("unknown sweep axis '" + std::string(s) + "'");
}

inline std::string_view scale_name(Scale s) { return s == Scale::linear ? "linear" : "log"; }

inline Scale parse_scale(std::string_view s) {
  if (s == "linear") return Scale::linear;
  if (s == "log" || s == "logarithmic") return Scale::logarithmic;
  throw InvalidSweep("unknown sweep scale '" + std::string(s) + "'");
}

/// A one-dimensional grid over a base parameter set. Bounds are in the
/// axis's SI unit (K, W, rad/s, rad), except that with `normalize_axis`
/// the Delta_a axis is in units of omega_m.
struct SweepSpec {
  PhysicalParams base;
  Axis axis = Axis::T;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Scale scale = Scale::linear;
  bool normalize_axis = false;
  std::vector<Quantity> quantities;
};

struct SweepRow {
  double axis_value = 0.0;
  bool stable = false;
  std::vector<double> values;  // empty iff unstable
  double min_symplectic = 0.0;
  double residual = 0.0;
};

inline void validate(const SweepSpec& s) {
  if (!std::isfinite(s.min) || !std::isfinite(s.max)) throw InvalidSweep("sweep bounds must be finite");
  if (!(s.min < s.max)) throw InvalidSweep("sweep needs min < max");
  if (s.count < 2) throw InvalidSweep("sweep needs at least two points");
  if (s.scale == Scale::logarithmic && !(s.min > 0.0))
    throw InvalidSweep("logarithmic sweep needs min > 0");
}

/// k-th grid value, computed in closed form; the last point is `max` exactly.
inline double grid_value(const SweepSpec& s, int k) {
  if (k == 0) return s.min;
  if (k == s.count - 1) return s.max;
  const double t = static_cast<double>(k) / static_cast<double>(s.count - 1);
  if (s.scale == Scale::linear) return s.min + static_cast<double>(k) * (s.max - s.min) / (s.count - 1);
  return s.min * std::pow(s.max / s.min, t);
}

inline PhysicalParams apply_axis(PhysicalParams p, Axis axis, double value, bool normalize_axis) {
  switch (axis) {
    case Axis::T: p.temperature = value; break;
    case Axis::r: p.squeeze_r = value; break;
    case Axis::P: p.power = value; break;
    case Axis::Delta_a: p.delta_a = normalize_axis ? value * p.omega_m : value; break;
    case Axis::G_a: p.g_a = value; break;
    case Axis::Delta: p.delta = value; break;
    case Axis::theta: p.theta = value; break;
    case Axis::phi: p.squeeze_phi = value; break;
  }
  return p;
}

/// Evaluates every grid point; rows come back in grid order whatever
/// `threads` is. Unstable points yield flagged rows without values.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 1) {
  validate(spec);
  const auto n = static_cast<std::size_t>(spec.count);
  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> errors(n);

  auto work = [&](std::size_t k) {
    const double x = grid_value(spec, static_cast<int>(k));
    SweepRow& row = rows[k];
    row.axis_value = x;
    try {
      const PointReport pr =
          evaluate_point(apply_axis(spec.base, spec.axis, x, spec.normalize_axis), spec.quantities);
      row.stable = pr.stability.stable;
      row.values = pr.values;
      row.min_symplectic = pr.min_symplectic;
      row.residual = pr.residual;
    } catch (const std::exception& e) {
      errors[k] = std::make_exception_ptr(SweepPointError(x, e.what()));
    }
  };

  threads = std::clamp(threads, 1u, static_cast<unsigned>(n));
  if (threads == 1) {
    for (std::size_t k = 0; k < n; ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < n; k = next++) work(k);
      });
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace ringopto
