#pragma once

// Generalized Gell-Mann bases of su(r) and the real expansion coefficients
// (coherence vectors, correlation tensors) of states in those bases.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "puresep/tensor_state.hpp"

namespace puresep {

/// Choice of the identity element lambda^0 in tensor expansions.
enum class IdentityNormalization {
  TraceUniform,  ///< lambda^0 = sqrt(2/r) I, so Tr(lambda^0 lambda^0) = 2
  PaperFactor,   ///< lambda^0 = (2/r) I
};

/// r^2 - 1 Hermitian traceless generators with Tr(l_a l_b) = 2 delta_ab.
///
/// r = 2 gives the Pauli matrices and r = 3 the Gell-Mann matrices in their
/// conventional order. For r >= 4 the order is: symmetric off-diagonal pairs
/// (j<k, lexicographic), antisymmetric pairs in the same order, then the
/// r - 1 diagonal generators of growing support.
class GeneratorBasis {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const Eigen::MatrixXcd& operator[](std::size_t m) const {
    return generators_.at(m);
  }
  const std::vector<Eigen::MatrixXcd>& generators() const noexcept {
    return generators_;
  }

  /// lambda^0 under the given normalization.
  Eigen::MatrixXcd identity(IdentityNormalization norm) const;
  /// lambda^mu with mu = 0 the identity element and mu >= 1 generator mu-1.
  Eigen::MatrixXcd element(std::size_t mu, IdentityNormalization norm) const;

 private:
  friend GeneratorBasis make_basis(std::size_t r);
  GeneratorBasis(std::size_t dim, std::vector<Eigen::MatrixXcd> gens)
      : dim_(dim), generators_(std::move(gens)) {}

  std::size_t dim_;
  std::vector<Eigen::MatrixXcd> generators_;
};

/// Throws BadDimension for r < 2.
GeneratorBasis make_basis(std::size_t r);

/// Memoized make_basis; safe to call concurrently.
std::shared_ptr<const GeneratorBasis> shared_basis(std::size_t r);

/// xi_m = Tr(rho lambda_m) for one partite's reduced state.
struct CoherenceVector {
  std::size_t partite = 0;
  std::vector<double> values;
};

/// 2 (1 - 1/r): the squared norm attained exactly by pure states.
double coherence_norm_target(std::size_t r);

CoherenceVector coherence_vector(const DensityMatrix& rho,
                                 const GeneratorBasis& basis,
                                 std::size_t partite = 0);

/// Partial trace onto partite i followed by coherence_vector.
CoherenceVector coherence_vector(const PureState& state, std::size_t partite);

double norm_squared(const CoherenceVector& xi);

/// I/r + 1/2 sum_m xi_m lambda_m.
Eigen::MatrixXcd reconstruct_density(const CoherenceVector& xi,
                                     const GeneratorBasis& basis);

/// Real coefficients a over multi-indices mu (mu_i in 0..r_i^2-1), stored
/// row-major with the last partite fastest, such that
///   rho = 2^-n sum_mu a_mu lambda^mu_1 (x) ... (x) lambda^mu_n.
class CorrelationTensor {
 public:
  CorrelationTensor(Dims dims, IdentityNormalization norm,
                    std::vector<double> entries);

  const Dims& dims() const noexcept { return dims_; }
  IdentityNormalization normalization() const noexcept { return norm_; }
  const std::vector<double>& entries() const noexcept { return entries_; }
  double at(std::span<const std::size_t> mu) const;

  /// Flat index of mu in entries().
  std::size_t flat_index(std::span<const std::size_t> mu) const;

 private:
  Dims dims_;
  IdentityNormalization norm_;
  std::vector<double> entries_;
};

CorrelationTensor correlation_tensor(
    const PureState& state, std::span<const GeneratorBasis> bases,
    IdentityNormalization norm = IdentityNormalization::TraceUniform);

/// Uses shared_basis for every partite.
CorrelationTensor correlation_tensor(
    const PureState& state,
    IdentityNormalization norm = IdentityNormalization::TraceUniform);

/// Inverse of correlation_tensor.
Eigen::MatrixXcd reconstruct_density(const CorrelationTensor& tensor,
                                     std::span<const GeneratorBasis> bases);

/// Factor f with xi^m_i = f * a_{0..m..0} (m at position i).
double coherence_slice_factor(const Dims& dims, std::size_t partite,
                              IdentityNormalization norm);

}  // namespace puresep
