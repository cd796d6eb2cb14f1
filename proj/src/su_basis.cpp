#include "puresep/su_basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "puresep/error.hpp"

namespace puresep {

namespace {

using Index = Eigen::Index;

constexpr double kRealResidue = 1e-10;

Eigen::MatrixXcd symmetric(std::size_t r, std::size_t j, std::size_t k) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Index>(r),
                                              static_cast<Index>(r));
  m(static_cast<Index>(j), static_cast<Index>(k)) = 1.0;
  m(static_cast<Index>(k), static_cast<Index>(j)) = 1.0;
  return m;
}

Eigen::MatrixXcd antisymmetric(std::size_t r, std::size_t j, std::size_t k) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Index>(r),
                                              static_cast<Index>(r));
  m(static_cast<Index>(j), static_cast<Index>(k)) = Complex(0.0, -1.0);
  m(static_cast<Index>(k), static_cast<Index>(j)) = Complex(0.0, 1.0);
  return m;
}

// sqrt(2 / (l (l+1))) diag(1, ..., 1, -l, 0, ..., 0) with l ones.
Eigen::MatrixXcd diagonal(std::size_t r, std::size_t l) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Index>(r),
                                              static_cast<Index>(r));
  const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
  for (std::size_t t = 0; t < l; ++t) {
    m(static_cast<Index>(t), static_cast<Index>(t)) = scale;
  }
  m(static_cast<Index>(l), static_cast<Index>(l)) =
      -scale * static_cast<double>(l);
  return m;
}

double identity_scale(std::size_t r, IdentityNormalization norm) {
  const double rd = static_cast<double>(r);
  return norm == IdentityNormalization::TraceUniform ? std::sqrt(2.0 / rd)
                                                     : 2.0 / rd;
}

}  // namespace

Eigen::MatrixXcd GeneratorBasis::identity(IdentityNormalization norm) const {
  return identity_scale(dim_, norm) *
         Eigen::MatrixXcd::Identity(static_cast<Index>(dim_),
                                    static_cast<Index>(dim_));
}

Eigen::MatrixXcd GeneratorBasis::element(std::size_t mu,
                                         IdentityNormalization norm) const {
  return mu == 0 ? identity(norm) : generators_.at(mu - 1);
}

GeneratorBasis make_basis(std::size_t r) {
  if (r < 2) {
    throw Error(ErrorCode::BadDimension,
                "generator basis needs r >= 2, got " + std::to_string(r));
  }
  std::vector<Eigen::MatrixXcd> g;
  g.reserve(r * r - 1);
  if (r == 2) {
    g = {symmetric(2, 0, 1), antisymmetric(2, 0, 1), diagonal(2, 1)};
  } else if (r == 3) {
    g = {symmetric(3, 0, 1), antisymmetric(3, 0, 1), diagonal(3, 1),
         symmetric(3, 0, 2), antisymmetric(3, 0, 2), symmetric(3, 1, 2),
         antisymmetric(3, 1, 2), diagonal(3, 2)};
  } else {
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = j + 1; k < r; ++k) g.push_back(symmetric(r, j, k));
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = j + 1; k < r; ++k)
        g.push_back(antisymmetric(r, j, k));
    for (std::size_t l = 1; l < r; ++l) g.push_back(diagonal(r, l));
  }
  return GeneratorBasis(r, std::move(g));
}

std::shared_ptr<const GeneratorBasis> shared_basis(std::size_t r) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const GeneratorBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[r];
  if (!slot) slot = std::make_shared<const GeneratorBasis>(make_basis(r));
  return slot;
}

double coherence_norm_target(std::size_t r) {
  return 2.0 * (1.0 - 1.0 / static_cast<double>(r));
}

CoherenceVector coherence_vector(const DensityMatrix& rho,
                                 const GeneratorBasis& basis,
                                 std::size_t partite) {
  if (rho.dim() != basis.dim()) {
    throw Error(ErrorCode::DimMismatch,
                "coherence_vector: density matrix dimension " +
                    std::to_string(rho.dim()) + " vs basis dimension " +
                    std::to_string(basis.dim()));
  }
  CoherenceVector xi{partite, {}};
  xi.values.reserve(basis.size());
  for (const auto& lambda : basis.generators()) {
    // Tr(rho lambda) without forming the product.
    const Complex t = (rho.matrix().transpose().cwiseProduct(lambda)).sum();
    if (std::abs(t.imag()) > kRealResidue) {
      throw Error(ErrorCode::InvalidArgument,
                  "coherence_vector: Tr(rho lambda) has imaginary residue");
    }
    xi.values.push_back(t.real());
  }
  return xi;
}

CoherenceVector coherence_vector(const PureState& state, std::size_t partite) {
  if (partite >= state.num_partites()) {
    throw Error(ErrorCode::BadIndex, "partite index " +
                                         std::to_string(partite + 1) +
                                         " out of range 1.." +
                                         std::to_string(state.num_partites()));
  }
  const std::size_t keep[] = {partite};
  const DensityMatrix rho = partial_trace(state, keep);
  return coherence_vector(rho, *shared_basis(state.dims()[partite]), partite);
}

double norm_squared(const CoherenceVector& xi) {
  double s = 0.0;
  for (double v : xi.values) s += v * v;
  return s;
}

Eigen::MatrixXcd reconstruct_density(const CoherenceVector& xi,
                                     const GeneratorBasis& basis) {
  if (xi.values.size() != basis.size()) {
    throw Error(ErrorCode::DimMismatch,
                "reconstruct_density: vector length does not match basis");
  }
  const auto r = static_cast<Index>(basis.dim());
  Eigen::MatrixXcd rho =
      Eigen::MatrixXcd::Identity(r, r) / static_cast<double>(basis.dim());
  for (std::size_t m = 0; m < xi.values.size(); ++m) {
    rho += 0.5 * xi.values[m] * basis[m];
  }
  return rho;
}

CorrelationTensor::CorrelationTensor(Dims dims, IdentityNormalization norm,
                                     std::vector<double> entries)
    : dims_(std::move(dims)), norm_(norm), entries_(std::move(entries)) {
  std::size_t expected = 1;
  for (std::size_t r : dims_.values()) expected *= r * r;
  if (entries_.size() != expected) {
    throw Error(ErrorCode::DimMismatch,
                "correlation tensor has the wrong number of entries");
  }
}

std::size_t CorrelationTensor::flat_index(
    std::span<const std::size_t> mu) const {
  if (mu.size() != dims_.size()) {
    throw Error(ErrorCode::DimMismatch, "tensor index has wrong length");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const std::size_t extent = dims_[k] * dims_[k];
    if (mu[k] >= extent) {
      throw Error(ErrorCode::BadIndex, "tensor index out of range");
    }
    flat = flat * extent + mu[k];
  }
  return flat;
}

double CorrelationTensor::at(std::span<const std::size_t> mu) const {
  return entries_[flat_index(mu)];
}

namespace {

void check_bases(const Dims& dims, std::span<const GeneratorBasis> bases) {
  if (bases.size() != dims.size()) {
    throw Error(ErrorCode::DimMismatch,
                "one generator basis per partite is required");
  }
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (bases[k].dim() != dims[k]) {
      throw Error(ErrorCode::DimMismatch,
                  "generator basis " + std::to_string(k + 1) +
                      " does not match the local dimension");
    }
  }
}

// Per partite: the r^2 elements lambda^mu under the chosen normalization,
// and Tr((lambda^mu)^2).
struct LocalOperators {
  std::vector<Eigen::MatrixXcd> ops;
  std::vector<double> norms;
};

std::vector<LocalOperators> local_operators(
    std::span<const GeneratorBasis> bases, IdentityNormalization norm) {
  std::vector<LocalOperators> out;
  for (const auto& b : bases) {
    LocalOperators lo;
    for (std::size_t mu = 0; mu < b.size() + 1; ++mu) {
      lo.ops.push_back(b.element(mu, norm));
      lo.norms.push_back((lo.ops.back() * lo.ops.back()).trace().real());
    }
    out.push_back(std::move(lo));
  }
  return out;
}

bool next_multi_index(std::vector<std::size_t>& multi, std::span<const std::size_t> ext) {
  for (std::size_t k = multi.size(); k-- > 0;) {
    if (++multi[k] < ext[k]) return true;
    multi[k] = 0;
  }
  return false;
}

}  // namespace

CorrelationTensor correlation_tensor(const PureState& state,
                                     std::span<const GeneratorBasis> bases,
                                     IdentityNormalization norm) {
  const Dims& dims = state.dims();
  check_bases(dims, bases);
  const std::size_t n = dims.size();
  const auto locals = local_operators(bases, norm);
  const auto& psi = state.amplitudes();
  const auto N = static_cast<Index>(dims.total());

  std::vector<std::size_t> extents(n);
  for (std::size_t k = 0; k < n; ++k) extents[k] = dims[k] * dims[k];
  std::vector<std::size_t> mu(n, 0);

  // Multi-indices of every basis state, computed once.
  std::vector<std::vector<std::size_t>> basis_index(dims.total());
  for (std::size_t f = 0; f < dims.total(); ++f) basis_index[f] = dims.unflatten(f);

  const double two_n = std::ldexp(1.0, static_cast<int>(n));
  std::vector<double> entries;
  do {
    // <psi| lambda^mu_1 (x) ... (x) lambda^mu_n |psi>
    Complex expectation = 0.0;
    for (Index j = 0; j < N; ++j) {
      if (psi[j] == Complex(0.0)) continue;
      const auto& bj = basis_index[static_cast<std::size_t>(j)];
      for (Index k = 0; k < N; ++k) {
        if (psi[k] == Complex(0.0)) continue;
        const auto& bk = basis_index[static_cast<std::size_t>(k)];
        Complex element = 1.0;
        for (std::size_t p = 0; p < n && element != Complex(0.0); ++p) {
          element *= locals[p].ops[mu[p]](static_cast<Index>(bj[p]),
                                          static_cast<Index>(bk[p]));
        }
        expectation += std::conj(psi[j]) * element * psi[k];
      }
    }
    double denom = 1.0;
    for (std::size_t p = 0; p < n; ++p) denom *= locals[p].norms[mu[p]];
    entries.push_back(two_n * expectation.real() / denom);
  } while (next_multi_index(mu, extents));

  return CorrelationTensor(dims, norm, std::move(entries));
}

CorrelationTensor correlation_tensor(const PureState& state,
                                     IdentityNormalization norm) {
  std::vector<GeneratorBasis> bases;
  for (std::size_t r : state.dims().values()) bases.push_back(*shared_basis(r));
  return correlation_tensor(state, bases, norm);
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::MatrixXcd reconstruct_density(const CorrelationTensor& tensor,
                                     std::span<const GeneratorBasis> bases) {
  const Dims& dims = tensor.dims();
  check_bases(dims, bases);
  const std::size_t n = dims.size();
  const auto locals = local_operators(bases, tensor.normalization());
  std::vector<std::size_t> extents(n);
  for (std::size_t k = 0; k < n; ++k) extents[k] = dims[k] * dims[k];

  const auto N = static_cast<Index>(dims.total());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(N, N);
  std::vector<std::size_t> mu(n, 0);
  std::size_t flat = 0;
  do {
    const double a = tensor.entries()[flat++];
    if (a != 0.0) {
      Eigen::MatrixXcd term = locals[0].ops[mu[0]];
      for (std::size_t p = 1; p < n; ++p) term = kron(term, locals[p].ops[mu[p]]);
      rho += a * term;
    }
  } while (next_multi_index(mu, extents));
  return rho / std::ldexp(1.0, static_cast<int>(n));
}

double coherence_slice_factor(const Dims& dims, std::size_t partite,
                              IdentityNormalization norm) {
  if (partite >= dims.size()) {
    throw Error(ErrorCode::BadIndex, "partite index out of range");
  }
  // a_{0..m..0} = 2^(n-1) xi^m prod_{j != i} 1 / (c_j r_j), c_j = lambda^0 scale.
  double f = 1.0;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (j == partite) continue;
    f *= identity_scale(dims[j], norm) * static_cast<double>(dims[j]) / 2.0;
  }
  return f;
}

}  // namespace puresep
