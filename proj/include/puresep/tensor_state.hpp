#pragma once

// Pure states and density matrices over arbitrary multipartite dimension
// vectors. Amplitudes are stored row-major with the last partite's index
// varying fastest, so |00>,|01>,|10>,|11> map to flat indices 0..3.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace puresep {

using Complex = std::complex<double>;

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kEigenvalueSlack = 1e-10;

/// Ordered list of local dimensions r_1..r_n, each at least 2.
class Dims {
 public:
  explicit Dims(std::vector<std::size_t> dims);

  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  std::size_t total() const noexcept { return total_; }
  std::span<const std::size_t> values() const noexcept { return dims_; }

  /// Product of the local dimensions over `partites`.
  std::size_t product(std::span<const std::size_t> partites) const;

  /// Multi-index of a flat amplitude index.
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const std::size_t> multi) const;

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

class PureState {
 public:
  /// Stores amplitudes as given; does not normalize.
  PureState(Dims dims, Eigen::VectorXcd amplitudes);
  PureState(Dims dims, std::vector<Complex> amplitudes);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t num_partites() const noexcept { return dims_.size(); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::span<const std::size_t> multi) const {
    return amps_[static_cast<Eigen::Index>(dims_.flatten(multi))];
  }

  double norm_squared() const { return amps_.squaredNorm(); }
  bool is_normalized(double tol = kNormalizationTolerance) const;

 private:
  Dims dims_;
  Eigen::VectorXcd amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates every invariant; throws Error otherwise.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  /// Skips validation. For matrices built as M M^dagger from a normalized
  /// state, which satisfy the invariants by construction.
  static DensityMatrix from_trusted(Eigen::MatrixXcd entries);

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(m_.rows());
  }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t j, std::size_t k) const {
    return m_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  }

  double trace() const { return m_.trace().real(); }
  /// Tr(rho^2).
  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(Eigen::MatrixXcd entries, Trusted) : m_(std::move(entries)) {}

  Eigen::MatrixXcd m_;
};

/// Bijection on partite indices. Applying it moves old partite perm[k] to
/// position k.
class SubsystemPermutation {
 public:
  explicit SubsystemPermutation(std::vector<std::size_t> perm);

  static SubsystemPermutation identity(std::size_t n);
  /// Exchange of partites i and j.
  static SubsystemPermutation swap(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const noexcept { return perm_.size(); }
  std::size_t operator[](std::size_t k) const { return perm_.at(k); }
  std::span<const std::size_t> values() const noexcept { return perm_; }
  SubsystemPermutation inverse() const;

 private:
  std::vector<std::size_t> perm_;
};

/// Sorted, duplicate-free list of 0-based partite indices; throws BadIndex
/// when an index is out of range for `n` partites.
std::vector<std::size_t> make_partite_set(std::span<const std::size_t> indices,
                                          std::size_t n);

PureState normalize(const PureState& state);

DensityMatrix density_of(const PureState& state);

/// Reduced density matrix on the kept partites (0-based indices).
DensityMatrix partial_trace(const PureState& state,
                            std::span<const std::size_t> keep);

PureState permute_subsystems(const PureState& state,
                             const SubsystemPermutation& perm);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// Kronecker product of single- or multi-partite states, in order.
PureState tensor_product(std::span<const PureState> factors);

/// Amplitudes reshaped to a (prod_{i in rows} r_i) x (rest) matrix. Row and
/// column multi-indices keep the original partite order.
Eigen::MatrixXcd cut_matrix(const PureState& state,
                            std::span<const std::size_t> rows);

}  // namespace puresep
