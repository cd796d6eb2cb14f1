#pragma once

// Randomized cross-check of the per-partite norm criterion against the
// minor test and the Schmidt-rank oracle, and of full separability against
// the product-fidelity oracle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "puresep/separability.hpp"
#include "puresep/tensor_state.hpp"

namespace puresep {

struct StressConfig {
  std::vector<std::size_t> dims;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::size_t workers = 0;  ///< 0 picks hardware concurrency
};

struct StressReport {
  std::size_t samples = 0;
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
  std::size_t per_partite_disagreements = 0;  ///< norm vs minor vs Schmidt
  std::size_t full_disagreements = 0;         ///< norm vs product fidelity

  // Margins around the threshold. The criterion is well separated when the
  // separable side stays far below tol and the entangled side far above.
  double max_separable_deficit = 0.0;
  double min_entangled_deficit = 0.0;
  double max_separable_minor = 0.0;
  double min_entangled_minor = 0.0;

  std::size_t partially_separable_samples = 0;
  std::size_t fully_separable_samples = 0;

  std::optional<std::size_t> counterexample_index;
  std::optional<PureState> counterexample;
};

/// Sample k is drawn from seed + k and cycles through HaarLike, Product and
/// a random group-vs-rest product of two HaarLike blocks. Output does not
/// depend on the worker count. Throws BadSpec when samples == 0.
StressReport run_stress(const StressConfig& config);

}  // namespace puresep
