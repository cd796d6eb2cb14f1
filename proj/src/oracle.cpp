#include "puresep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "puresep/error.hpp"

namespace puresep::oracle {

namespace {

using Index = Eigen::Index;

// Reshape with its own index arithmetic so the oracle does not share code
// with the minor criterion: walk the cut multi-index, then the rest.
Eigen::MatrixXcd reshape(const PureState& state,
                         const std::vector<std::size_t>& cut) {
  const Dims& dims = state.dims();
  const std::size_t n = dims.size();
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::binary_search(cut.begin(), cut.end(), i)) rest.push_back(i);
  }
  const std::size_t rows = dims.product(cut);
  const std::size_t cols = rest.empty() ? 1 : dims.product(rest);

  Eigen::MatrixXcd m(static_cast<Index>(rows), static_cast<Index>(cols));
  std::vector<std::size_t> multi(n);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rr = r;
    for (std::size_t k = cut.size(); k-- > 0;) {
      multi[cut[k]] = rr % dims[cut[k]];
      rr /= dims[cut[k]];
    }
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t cc = c;
      for (std::size_t k = rest.size(); k-- > 0;) {
        multi[rest[k]] = cc % dims[rest[k]];
        cc /= dims[rest[k]];
      }
      m(static_cast<Index>(r), static_cast<Index>(c)) = state.amplitude(multi);
    }
  }
  return m;
}

std::vector<std::size_t> checked_cut(const PureState& state,
                                     std::span<const std::size_t> cut) {
  for (std::size_t i : cut) {
    if (i >= state.num_partites()) {
      throw Error(ErrorCode::BadSubset, "cut index " + std::to_string(i + 1) +
                                            " out of range");
    }
  }
  std::vector<std::size_t> set(cut.begin(), cut.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.empty() || set.size() == state.num_partites()) {
    throw Error(ErrorCode::BadSubset, "cut must be proper and nonempty");
  }
  return set;
}

Eigen::VectorXcd gaussian_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(static_cast<Index>(n));
  for (Index k = 0; k < v.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[k] = Complex(re, im);
  }
  return v;
}

Eigen::VectorXcd product_amplitudes(std::mt19937_64& rng, const Dims& dims) {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
  for (std::size_t r : dims.values()) {
    Eigen::VectorXcd f = gaussian_vector(rng, r);
    f.normalize();
    Eigen::VectorXcd next(acc.size() * f.size());
    for (Index j = 0; j < acc.size(); ++j) {
      next.segment(j * f.size(), f.size()) = acc[j] * f;
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

SchmidtData schmidt(const PureState& state, std::span<const std::size_t> cut,
                    double tol) {
  SchmidtData out;
  out.cut = checked_cut(state, cut);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshape(state, out.cut));
  const auto& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  out.rank_at_tol = static_cast<std::size_t>(
      std::count_if(out.singular_values.begin(), out.singular_values.end(),
                    [tol](double s) { return s > tol; }));
  return out;
}

std::string_view to_string(StateKind kind) noexcept {
  switch (kind) {
    case StateKind::HaarLike: return "haar";
    case StateKind::Product: return "product";
    case StateKind::GHZ: return "ghz";
    case StateKind::W: return "w";
    case StateKind::Bell: return "bell";
    case StateKind::NearProduct: return "near-product";
  }
  return "unknown";
}

StateKind parse_state_kind(std::string_view name) {
  for (StateKind k : {StateKind::HaarLike, StateKind::Product, StateKind::GHZ,
                      StateKind::W, StateKind::Bell, StateKind::NearProduct}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::BadSpec, "unknown state kind '" + std::string(name) +
                                      "'");
}

PureState generate(const RandomSpec& spec) {
  const Dims& dims = spec.dims;
  const std::size_t n = dims.size();
  const auto N = static_cast<Index>(dims.total());
  std::mt19937_64 rng(spec.seed);

  switch (spec.kind) {
    case StateKind::HaarLike: {
      Eigen::VectorXcd v = gaussian_vector(rng, dims.total());
      v.normalize();
      return PureState(dims, std::move(v));
    }
    case StateKind::Product:
      return PureState(dims, product_amplitudes(rng, dims));
    case StateKind::NearProduct: {
      if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) {
        throw Error(ErrorCode::BadSpec, "eps must be finite and nonnegative");
      }
      Eigen::VectorXcd v = product_amplitudes(rng, dims);
      v += spec.epsilon * gaussian_vector(rng, dims.total());
      v.normalize();
      return PureState(dims, std::move(v));
    }
    case StateKind::GHZ: {
      const auto d = dims.values();
      if (n < 2 || !std::all_of(d.begin(), d.end(),
                                [&](std::size_t r) { return r == d[0]; })) {
        throw Error(ErrorCode::BadSpec,
                    "ghz needs at least two partites of equal dimension");
      }
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N);
      const double a = 1.0 / std::sqrt(static_cast<double>(d[0]));
      for (std::size_t k = 0; k < d[0]; ++k) {
        const std::vector<std::size_t> multi(n, k);
        v[static_cast<Index>(dims.flatten(multi))] = a;
      }
      return PureState(dims, std::move(v));
    }
    case StateKind::W: {
      if (n < 2) throw Error(ErrorCode::BadSpec, "w needs at least two partites");
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N);
      const double a = 1.0 / std::sqrt(static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> multi(n, 0);
        multi[i] = 1;
        v[static_cast<Index>(dims.flatten(multi))] = a;
      }
      return PureState(dims, std::move(v));
    }
    case StateKind::Bell: {
      if (n != 2 || dims[0] != 2 || dims[1] != 2) {
        throw Error(ErrorCode::BadSpec, "bell needs dims 2,2");
      }
      const double a = 1.0 / std::sqrt(2.0);
      return PureState(dims, std::vector<Complex>{a, 0.0, 0.0, a});
    }
  }
  throw Error(ErrorCode::BadSpec, "unknown state kind");
}

double purity_oracle(const PureState& state, std::size_t partite) {
  if (partite >= state.num_partites()) {
    throw Error(ErrorCode::BadIndex, "partite index out of range");
  }
  if (state.num_partites() == 1) {
    const double n2 = state.norm_squared();
    return n2 * n2;
  }
  const Eigen::MatrixXcd m = reshape(state, {partite});
  const Eigen::MatrixXcd rho = m * m.adjoint();
  return (rho * rho).trace().real();
}

double product_fidelity_oracle(const PureState& state) {
  const std::size_t n = state.num_partites();
  if (n == 1) return 1.0;
  Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshape(state, {i}),
                                           Eigen::ComputeThinU);
    const Eigen::VectorXcd u = svd.matrixU().col(0);
    Eigen::VectorXcd next(acc.size() * u.size());
    for (Index j = 0; j < acc.size(); ++j) {
      next.segment(j * u.size(), u.size()) = acc[j] * u;
    }
    acc = std::move(next);
  }
  return std::norm(acc.dot(state.amplitudes()));
}

}  // namespace puresep::oracle
