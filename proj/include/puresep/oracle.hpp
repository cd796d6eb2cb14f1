#pragma once

// Ground truth that does not go through coherence vectors or minors:
// singular values across cuts, directly computed purities, and seeded state
// generators for property tests.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "puresep/tensor_state.hpp"

namespace puresep::oracle {

inline constexpr double kDefaultRankTolerance = 1e-8;

struct SchmidtData {
  std::vector<std::size_t> cut;          ///< 0-based, ascending
  std::vector<double> singular_values;   ///< nonincreasing
  std::size_t rank_at_tol = 0;           ///< count of values > tol
};

/// Singular values of the (prod_{i in cut} r_i) x (rest) reshaping.
SchmidtData schmidt(const PureState& state, std::span<const std::size_t> cut,
                    double tol = kDefaultRankTolerance);

enum class StateKind { HaarLike, Product, GHZ, W, Bell, NearProduct };

std::string_view to_string(StateKind kind) noexcept;
/// Accepts the CLI spellings: haar, product, ghz, w, bell, near-product.
StateKind parse_state_kind(std::string_view name);

struct RandomSpec {
  Dims dims;
  StateKind kind = StateKind::HaarLike;
  std::uint64_t seed = 0;
  double epsilon = 1e-6;  ///< noise scale, NearProduct only
};

/// Deterministic in (dims, kind, seed, epsilon).
///   HaarLike     i.i.d. complex Gaussians, normalized
///   Product      tensor product of per-partite HaarLike factors
///   NearProduct  Product plus epsilon-scaled complex Gaussian noise
///   GHZ          sum_k |k...k> / sqrt(r); needs n >= 2 equal dims
///   W            sum_i |0..1_i..0> / sqrt(n); needs n >= 2
///   Bell         (|00> + |11>) / sqrt(2); needs dims (2,2)
/// Throws BadSpec when the dims do not suit the kind.
PureState generate(const RandomSpec& spec);

/// Tr(rho_i^2) from the reduced matrix of partite i.
double purity_oracle(const PureState& state, std::size_t partite);

/// Fidelity between the state and the tensor product of the dominant
/// single-partite Schmidt vectors. Equals 1 iff the state is fully product.
double product_fidelity_oracle(const PureState& state);

}  // namespace puresep::oracle
