#pragma once

// Separability of pure multipartite states.
//
// Partite i is separable from the rest iff its reduced state is pure, i.e.
// iff its coherence vector reaches the squared norm 2 (1 - 1/r_i). The
// equivalent algebraic form is that every 2x2 minor of the amplitudes,
// reshaped with partite i as the row index, vanishes. Both are exposed and
// cross-checked by check().

#include <cstddef>
#include <span>
#include <vector>

#include "puresep/tensor_state.hpp"

namespace puresep {

inline constexpr double kDefaultTolerance = 1e-8;

/// A partite whose norm deficit is at most this multiple of tol, and on
/// which the norm and minor tests disagree, is reported as borderline.
inline constexpr double kBorderlineFactor = 10.0;

enum class Criterion { Norm, Combined };

struct PartiteVerdict {
  std::size_t partite = 0;       ///< 0-based
  double norm_squared = 0.0;     ///< |xi_i|^2
  double target = 0.0;           ///< 2 (1 - 1/r_i)
  double deficit = 0.0;          ///< target - norm_squared
  double minor_maximum = 0.0;    ///< largest |minor| / max|amp|^2; 0 for Norm
  bool norm_separable = false;   ///< deficit <= tol
  bool minor_separable = false;  ///< minor_maximum <= tol; mirrors norm for Norm
  bool borderline = false;
  bool separable = false;        ///< hard verdict; false when borderline
};

struct SeparabilityReport {
  std::vector<PartiteVerdict> per_partite;
  bool fully_separable = false;
  std::vector<std::size_t> separable_partites;  ///< 0-based, ascending
  double tolerance = kDefaultTolerance;
  Criterion criterion = Criterion::Norm;

  bool any_borderline() const;
};

/// Norm criterion alone: partite i separable iff 2(1-1/r_i) - |xi_i|^2 <= tol.
SeparabilityReport check_norm_criterion(const PureState& state,
                                        double tol = kDefaultTolerance);

/// Largest 2x2 minor modulus of the `rows` x rest reshaping, divided by the
/// largest amplitude-pair product max|amp|^2.
double max_scaled_minor(const PureState& state,
                        std::span<const std::size_t> rows);

/// Every 2x2 minor of the partite-i reshaping is at most tol * max|amp|^2.
bool check_minor_criterion(const PureState& state, std::size_t partite,
                           double tol = kDefaultTolerance);

/// Norm and minor criteria together. Throws CriterionDisagreementError when
/// they disagree on a partite whose deficit exceeds kBorderlineFactor * tol.
SeparabilityReport check(const PureState& state,
                         double tol = kDefaultTolerance);

struct Factorization {
  std::vector<PureState> factors;  ///< one normalized state per partite
  double residual_fidelity = 0.0;  ///< |<product|input>|^2

  PureState product() const;
};

/// Builds single-partite factors from slices through the largest-modulus
/// amplitude. Each factor is real and nonnegative at its pivot component;
/// the global phase of the input is carried by the first factor. Throws
/// NotSeparableError if any partite fails the norm criterion.
Factorization factorize(const PureState& state, double tol = kDefaultTolerance);

/// Product across the cut subset | rest, decided by the 2x2 minors of the
/// reshaped amplitude matrix. Throws BadSubset unless the subset is proper
/// and nonempty.
bool bipartition_separable(const PureState& state,
                           std::span<const std::size_t> subset,
                           double tol = kDefaultTolerance);

}  // namespace puresep
