#include "puresep/tensor_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "puresep/error.hpp"

namespace puresep {

namespace {

// Looser than kNormalizationTolerance: states that went through arithmetic
// (permutation, products, file round trips) accumulate O(N eps) drift.
constexpr double kNormalizedPrecondition = 1e-9;

void require_normalized(const PureState& state, const char* op) {
  if (std::abs(state.norm_squared() - 1.0) > kNormalizedPrecondition) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(op) + ": state is not normalized (norm^2 = " +
                    std::to_string(state.norm_squared()) + ")");
  }
}

}  // namespace

Dims::Dims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw Error(ErrorCode::BadDimension, "dims: at least one partite required");
  }
  for (std::size_t r : dims_) {
    if (r < 2) {
      throw Error(ErrorCode::BadDimension,
                  "dims: local dimension " + std::to_string(r) + " < 2");
    }
    if (total_ > std::numeric_limits<std::size_t>::max() / r) {
      throw Error(ErrorCode::BadDimension, "dims: total dimension overflows");
    }
    total_ *= r;
  }
}

std::size_t Dims::product(std::span<const std::size_t> partites) const {
  std::size_t p = 1;
  for (std::size_t i : partites) p *= dims_.at(i);
  return p;
}

std::vector<std::size_t> Dims::unflatten(std::size_t flat) const {
  std::vector<std::size_t> multi(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    multi[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return multi;
}

std::size_t Dims::flatten(std::span<const std::size_t> multi) const {
  if (multi.size() != dims_.size()) {
    throw Error(ErrorCode::DimMismatch, "multi-index has wrong length");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (multi[k] >= dims_[k]) {
      throw Error(ErrorCode::BadIndex, "multi-index component out of range");
    }
    flat = flat * dims_[k] + multi[k];
  }
  return flat;
}

PureState::PureState(Dims dims, Eigen::VectorXcd amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != dims_.total()) {
    throw Error(ErrorCode::DimMismatch,
                "amplitudes: length " + std::to_string(amps_.size()) +
                    " does not match product of dims " +
                    std::to_string(dims_.total()));
  }
}

PureState::PureState(Dims dims, std::vector<Complex> amplitudes)
    : PureState(std::move(dims),
                Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(
                    amplitudes.data(),
                    static_cast<Eigen::Index>(amplitudes.size())))) {}

bool PureState::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw Error(ErrorCode::DimMismatch, "density matrix must be square");
  }
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTolerance) {
    throw Error(ErrorCode::InvalidArgument, "density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > kNormalizationTolerance) {
    throw Error(ErrorCode::InvalidArgument, "density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m_,
                                                      Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kEigenvalueSlack) {
    throw Error(ErrorCode::InvalidArgument,
                "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_trusted(Eigen::MatrixXcd entries) {
  return DensityMatrix(std::move(entries), Trusted{});
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_jk|^2 for Hermitian rho.
  return m_.cwiseAbs2().sum();
}

SubsystemPermutation::SubsystemPermutation(std::vector<std::size_t> perm)
    : perm_(std::move(perm)) {
  std::vector<bool> seen(perm_.size(), false);
  for (std::size_t p : perm_) {
    if (p >= perm_.size() || seen[p]) {
      throw Error(ErrorCode::BadPermutation,
                  "permutation is not a bijection on partite indices");
    }
    seen[p] = true;
  }
}

SubsystemPermutation SubsystemPermutation::identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return SubsystemPermutation(std::move(p));
}

SubsystemPermutation SubsystemPermutation::swap(std::size_t n, std::size_t i,
                                                std::size_t j) {
  if (i >= n || j >= n) {
    throw Error(ErrorCode::BadPermutation, "swap index out of range");
  }
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::swap(p[i], p[j]);
  return SubsystemPermutation(std::move(p));
}

SubsystemPermutation SubsystemPermutation::inverse() const {
  std::vector<std::size_t> inv(perm_.size());
  for (std::size_t k = 0; k < perm_.size(); ++k) inv[perm_[k]] = k;
  return SubsystemPermutation(std::move(inv));
}

std::vector<std::size_t> make_partite_set(std::span<const std::size_t> indices,
                                          std::size_t n) {
  std::vector<std::size_t> set(indices.begin(), indices.end());
  for (std::size_t i : set) {
    if (i >= n) {
      throw Error(ErrorCode::BadIndex, "partite index " + std::to_string(i + 1) +
                                           " out of range 1.." +
                                           std::to_string(n));
    }
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

PureState normalize(const PureState& state) {
  const double n2 = state.norm_squared();
  if (!(n2 > 0.0)) {
    throw Error(ErrorCode::ZeroState, "cannot normalize the zero vector");
  }
  return PureState(state.dims(), Eigen::VectorXcd(state.amplitudes() /
                                                  std::sqrt(n2)));
}

Eigen::MatrixXcd cut_matrix(const PureState& state,
                            std::span<const std::size_t> rows) {
  const Dims& dims = state.dims();
  const std::size_t n = dims.size();
  const auto row_set = make_partite_set(rows, n);

  std::vector<bool> is_row(n, false);
  for (std::size_t i : row_set) is_row[i] = true;

  // Strides of each partite inside the row space and the column space.
  std::vector<std::size_t> stride(n, 0);
  std::size_t row_dim = 1;
  std::size_t col_dim = 1;
  for (std::size_t k = n; k-- > 0;) {
    if (is_row[k]) {
      stride[k] = row_dim;
      row_dim *= dims[k];
    } else {
      stride[k] = col_dim;
      col_dim *= dims[k];
    }
  }

  Eigen::MatrixXcd m(static_cast<Eigen::Index>(row_dim),
                     static_cast<Eigen::Index>(col_dim));
  std::vector<std::size_t> multi(n, 0);
  const auto& amps = state.amplitudes();
  for (Eigen::Index flat = 0; flat < amps.size(); ++flat) {
    std::size_t r = 0;
    std::size_t c = 0;
    for (std::size_t k = 0; k < n; ++k) {
      (is_row[k] ? r : c) += multi[k] * stride[k];
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amps[flat];
    for (std::size_t k = n; k-- > 0;) {
      if (++multi[k] < dims[k]) break;
      multi[k] = 0;
    }
  }
  return m;
}

namespace {

DensityMatrix gram(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd rho = m * m.adjoint();
  // Exact Hermiticity regardless of the GEMM summation order.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix::from_trusted(std::move(rho));
}

}  // namespace

DensityMatrix density_of(const PureState& state) {
  require_normalized(state, "density_of");
  return gram(state.amplitudes());
}

DensityMatrix partial_trace(const PureState& state,
                            std::span<const std::size_t> keep) {
  if (keep.empty()) {
    throw Error(ErrorCode::BadIndex, "partial_trace: keep set is empty");
  }
  require_normalized(state, "partial_trace");
  const auto set = make_partite_set(keep, state.num_partites());
  if (set.size() == state.num_partites()) return density_of(state);
  return gram(cut_matrix(state, set));
}

PureState permute_subsystems(const PureState& state,
                             const SubsystemPermutation& perm) {
  const Dims& dims = state.dims();
  const std::size_t n = dims.size();
  if (perm.size() != n) {
    throw Error(ErrorCode::BadPermutation,
                "permutation size does not match the number of partites");
  }
  std::vector<std::size_t> new_dims(n);
  for (std::size_t k = 0; k < n; ++k) new_dims[k] = dims[perm[k]];
  Dims out_dims(new_dims);

  // Stride in the output layout of each original partite.
  std::vector<std::size_t> out_stride_of_old(n);
  std::size_t s = 1;
  for (std::size_t k = n; k-- > 0;) {
    out_stride_of_old[perm[k]] = s;
    s *= new_dims[k];
  }

  Eigen::VectorXcd out(state.amplitudes().size());
  std::vector<std::size_t> multi(n, 0);
  const auto& amps = state.amplitudes();
  for (Eigen::Index flat = 0; flat < amps.size(); ++flat) {
    std::size_t target = 0;
    for (std::size_t i = 0; i < n; ++i) target += multi[i] * out_stride_of_old[i];
    out[static_cast<Eigen::Index>(target)] = amps[flat];
    for (std::size_t k = n; k-- > 0;) {
      if (++multi[k] < dims[k]) break;
      multi[k] = 0;
    }
  }
  return PureState(std::move(out_dims), std::move(out));
}

double fidelity(const PureState& a, const PureState& b) {
  if (!(a.dims() == b.dims())) {
    throw Error(ErrorCode::DimMismatch, "fidelity: dimension vectors differ");
  }
  const Complex overlap = a.amplitudes().dot(b.amplitudes());
  return std::min(1.0, std::norm(overlap));
}

PureState tensor_product(std::span<const PureState> factors) {
  if (factors.empty()) {
    throw Error(ErrorCode::InvalidArgument, "tensor_product: no factors");
  }
  std::vector<std::size_t> dims;
  Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
  for (const PureState& f : factors) {
    const auto d = f.dims().values();
    dims.insert(dims.end(), d.begin(), d.end());
    const auto& v = f.amplitudes();
    Eigen::VectorXcd next(acc.size() * v.size());
    for (Eigen::Index j = 0; j < acc.size(); ++j) {
      next.segment(j * v.size(), v.size()) = acc[j] * v;
    }
    acc = std::move(next);
  }
  return PureState(Dims(std::move(dims)), std::move(acc));
}

}  // namespace puresep
