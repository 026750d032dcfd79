#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ringopto/errors.hpp"
#include "ringopto/linalg.hpp"

namespace ringopto {

/// The four bosonic modes, in the order they occupy the 8x8 covariance matrix.
enum class Mode { m1 = 0, m2 = 1, op = 2, a = 3 };

inline constexpr std::array<Mode, 4> kAllModes{Mode::m1, Mode::m2, Mode::op, Mode::a};

inline std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::m1: return "m1";
    case Mode::m2: return "m2";
    case Mode::op: return "op";
    case Mode::a: return "a";
  }
  return "?";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : kAllModes)
    if (mode_name(m) == s) return m;
  return std::nullopt;
}

/// First quadrature row of `m` in the full covariance matrix.
constexpr int mode_offset(Mode m) { return 2 * static_cast<int>(m); }

/// Two or three distinct modes. For a triple, `transposed` picks the mode
/// that is partially transposed in a one-vs-two split; it is empty when the
/// partition stands for the full tripartite measure.
struct ModePartition {
  std::vector<Mode> modes;
  std::optional<std::size_t> transposed;

  static ModePartition pair(Mode x, Mode y) { return ModePartition{{x, y}, std::nullopt}; }
  static ModePartition triple(Mode x, Mode y, Mode z) {
    return ModePartition{{x, y, z}, std::nullopt};
  }
  /// `single` versus the other two, with the modes ordered (single, rest...).
  static ModePartition split(Mode single, Mode y, Mode z) {
    return ModePartition{{single, y, z}, std::size_t{0}};
  }

  bool operator==(const ModePartition&) const = default;
};

inline void validate(const ModePartition& part) {
  const std::size_t k = part.modes.size();
  if (k != 2 && k != 3) throw InvalidPartition("a partition holds two or three modes");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (part.modes[i] == part.modes[j]) throw InvalidPartition("partition modes must be distinct");
  if (part.transposed && *part.transposed >= k)
    throw InvalidPartition("transposed mode index out of range");
}

struct EntanglementResult {
  double value = 0.0;  // logarithmic negativity, natural log
  double eta = 0.0;    // smallest symplectic eigenvalue after partial transposition
  ModePartition partition;
};

/// Keeps the rows and columns of the selected modes, in partition order.
inline CovarianceMatrix extract_submatrix(const CovarianceMatrix& v, const ModePartition& part) {
  validate(part);
  if (v.dim() != 8) throw InvalidPartition("mode extraction needs the full 8x8 covariance matrix");
  std::vector<int> idx;
  for (Mode m : part.modes) {
    idx.push_back(mode_offset(m));
    idx.push_back(mode_offset(m) + 1);
  }
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd s(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) s(r, c) = v(idx[r], idx[c]);
  return CovarianceMatrix(s);
}

/// Physicality tolerance on the uncertainty bound nu >= 1/2.
inline constexpr double kPhysicalTolerance = 1e-9;

inline double log_negativity_from_eta(double eta) {
  return std::max(0.0, -std::log(2.0 * eta));
}

/// Logarithmic negativity of `v` (2n x 2n, any n) across the bipartition
/// "mode `transposed` versus the rest". Rejects unphysical input.
inline EntanglementResult transposed_negativity(const CovarianceMatrix& v, std::size_t transposed) {
  if (static_cast<Eigen::Index>(transposed) >= v.modes())
    throw InvalidPartition("transposed mode index out of range");
  if (min_symplectic_eigenvalue(v) < 0.5 - kPhysicalTolerance)
    throw UnphysicalState("covariance matrix violates the uncertainty principle");

  Eigen::MatrixXd pt = v.matrix();
  const auto p = static_cast<Eigen::Index>(2 * transposed + 1);
  pt.row(p) *= -1.0;
  pt.col(p) *= -1.0;
  EntanglementResult r;
  r.eta = min_symplectic_eigenvalue(CovarianceMatrix(pt));
  r.value = log_negativity_from_eta(r.eta);
  return r;
}

/// Two-mode logarithmic negativity. `v` is either the 8x8 matrix or an
/// already reduced 4x4 one; the partition then only labels the result.
inline EntanglementResult log_negativity_pair(const CovarianceMatrix& v, const ModePartition& pair) {
  validate(pair);
  if (pair.modes.size() != 2) throw InvalidPartition("bipartite negativity needs two modes");
  const CovarianceMatrix s = v.dim() == 4 ? v : extract_submatrix(v, pair);
  EntanglementResult r = transposed_negativity(s, 0);
  r.partition = pair;
  return r;
}

/// Closed-form smallest PPT symplectic eigenvalue of a 4x4 covariance
/// [[A, C], [C^T, B]]: 2^-1/2 [S - (S^2 - 4 det V)^1/2]^1/2 with
/// S = det A + det B - 2 det C.
inline double two_mode_ppt_eta(const CovarianceMatrix& v) {
  if (v.dim() != 4) throw InvalidPartition("closed form applies to two modes only");
  const Eigen::MatrixXd& m = v.matrix();
  const double det_a = m.block<2, 2>(0, 0).determinant();
  const double det_b = m.block<2, 2>(2, 2).determinant();
  const double det_c = m.block<2, 2>(0, 2).determinant();
  const double det_v = m.determinant();
  const double sigma = det_a + det_b - 2.0 * det_c;
  const double disc = std::max(0.0, sigma * sigma - 4.0 * det_v);
  return std::sqrt(std::max(0.0, sigma - std::sqrt(disc))) / std::numbers::sqrt2;
}

/// One mode versus the other two of a triple.
inline EntanglementResult log_negativity_one_vs_two(const CovarianceMatrix& v,
                                                    const ModePartition& triple) {
  validate(triple);
  if (triple.modes.size() != 3 || !triple.transposed)
    throw InvalidPartition("one-vs-two negativity needs three modes and a transposed mode");
  const CovarianceMatrix s = v.dim() == 6 ? v : extract_submatrix(v, triple);
  EntanglementResult r = transposed_negativity(s, *triple.transposed);
  r.partition = triple;
  return r;
}

/// Geometric mean of the three one-vs-two negativities; zero when any is.
/// `eta` reports the smallest of the three transposed eigenvalues.
inline EntanglementResult tripartite_negativity(const CovarianceMatrix& v, const ModePartition& triple) {
  validate(triple);
  if (triple.modes.size() != 3) throw InvalidPartition("tripartite negativity needs three modes");
  const CovarianceMatrix s = v.dim() == 6 ? v : extract_submatrix(v, triple);

  double product = 1.0;
  double eta = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 3; ++k) {
    const EntanglementResult e = transposed_negativity(s, k);
    product *= e.value;
    eta = std::min(eta, e.eta);
  }
  EntanglementResult r;
  r.value = product > 0.0 ? std::cbrt(product) : 0.0;
  r.eta = eta;
  r.partition = ModePartition{triple.modes, std::nullopt};
  return r;
}

}  // namespace ringopto
