#pragma once

// Entanglement measures built from the coherence-vector norms of the
// single-partite reductions. Every partite contributes
//   D_i  = 2 (1 - 1/r_i) - |xi_i|^2    (norm deficit, 0 iff separable)
//   SL_i = 1 - Tr(rho_i^2)             (linear entropy, equals D_i / 2)
//   S_i  = -sum eig log2 eig           (von Neumann entropy in bits)

#include <cstddef>
#include <vector>

#include "puresep/tensor_state.hpp"

namespace puresep {

struct PartiteMeasure {
  std::size_t partite = 0;
  double deficit = 0.0;
  double linear_entropy = 0.0;
  double von_neumann_bits = 0.0;
};

struct MeasureReport {
  std::vector<PartiteMeasure> per_partite;
  double mean_deficit = 0.0;
  double max_deficit = 0.0;
  double mean_von_neumann_bits = 0.0;
};

MeasureReport measure(const PureState& state);

/// -sum p log2 p over the eigenvalues of rho, with 0 log 0 = 0.
double von_neumann_entropy_bits(const DensityMatrix& rho);

}  // namespace puresep
