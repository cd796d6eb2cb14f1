#include "puresep/separability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "puresep/error.hpp"
#include "puresep/su_basis.hpp"

namespace puresep {

namespace {

using Index = Eigen::Index;

double max_minor_modulus(const Eigen::MatrixXcd& m) {
  double best = 0.0;
  for (Index a = 0; a < m.rows(); ++a) {
    for (Index b = a + 1; b < m.rows(); ++b) {
      for (Index c = 0; c < m.cols(); ++c) {
        const Complex ac = m(a, c);
        const Complex bc = m(b, c);
        for (Index d = c + 1; d < m.cols(); ++d) {
          best = std::max(best, std::abs(ac * m(b, d) - m(a, d) * bc));
        }
      }
    }
  }
  return best;
}

double scaled_minor_of(const PureState& state, const Eigen::MatrixXcd& cut) {
  const double scale = state.amplitudes().cwiseAbs2().maxCoeff();
  if (!(scale > 0.0)) throw Error(ErrorCode::ZeroState, "zero state");
  return max_minor_modulus(cut) / scale;
}

void require_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
}

std::string one_based_list(const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    os << (k ? ", " : "") << idx[k] + 1;
  }
  return os.str();
}

void finish(SeparabilityReport& report) {
  report.fully_separable = true;
  report.separable_partites.clear();
  for (const auto& v : report.per_partite) {
    if (v.separable) {
      report.separable_partites.push_back(v.partite);
    } else {
      report.fully_separable = false;
    }
  }
}

}  // namespace

bool SeparabilityReport::any_borderline() const {
  return std::any_of(per_partite.begin(), per_partite.end(),
                     [](const PartiteVerdict& v) { return v.borderline; });
}

SeparabilityReport check_norm_criterion(const PureState& state, double tol) {
  require_tolerance(tol);
  SeparabilityReport report;
  report.tolerance = tol;
  report.criterion = Criterion::Norm;
  for (std::size_t i = 0; i < state.num_partites(); ++i) {
    PartiteVerdict v;
    v.partite = i;
    v.norm_squared = norm_squared(coherence_vector(state, i));
    v.target = coherence_norm_target(state.dims()[i]);
    v.deficit = v.target - v.norm_squared;
    v.norm_separable = v.deficit <= tol;
    v.minor_separable = v.norm_separable;
    v.separable = v.norm_separable;
    report.per_partite.push_back(v);
  }
  finish(report);
  return report;
}

double max_scaled_minor(const PureState& state,
                        std::span<const std::size_t> rows) {
  return scaled_minor_of(state, cut_matrix(state, rows));
}

bool check_minor_criterion(const PureState& state, std::size_t partite,
                           double tol) {
  require_tolerance(tol);
  if (partite >= state.num_partites()) {
    throw Error(ErrorCode::BadIndex,
                "partite index " + std::to_string(partite + 1) +
                    " out of range 1.." + std::to_string(state.num_partites()));
  }
  const std::size_t rows[] = {partite};
  return max_scaled_minor(state, rows) <= tol;
}

SeparabilityReport check(const PureState& state, double tol) {
  SeparabilityReport report = check_norm_criterion(state, tol);
  report.criterion = Criterion::Combined;
  for (auto& v : report.per_partite) {
    const std::size_t rows[] = {v.partite};
    v.minor_maximum = max_scaled_minor(state, rows);
    v.minor_separable = v.minor_maximum <= tol;
    if (v.minor_separable == v.norm_separable) {
      v.separable = v.norm_separable;
      continue;
    }
    if (v.deficit > kBorderlineFactor * tol) {
      std::ostringstream os;
      os << "norm and minor criteria disagree on partite " << v.partite + 1
         << ": deficit " << v.deficit << ", scaled minor maximum "
         << v.minor_maximum << ", tol " << tol;
      throw CriterionDisagreementError(v.partite, v.deficit, v.minor_maximum,
                                       os.str());
    }
    v.borderline = true;
    v.separable = false;
  }
  finish(report);
  return report;
}

PureState Factorization::product() const { return tensor_product(factors); }

Factorization factorize(const PureState& state, double tol) {
  const SeparabilityReport report = check_norm_criterion(state, tol);
  if (!report.fully_separable) {
    std::vector<std::size_t> failing;
    for (const auto& v : report.per_partite) {
      if (!v.separable) failing.push_back(v.partite);
    }
    throw NotSeparableError(failing, "state is not fully separable; partites " +
                                         one_based_list(failing) +
                                         " fail the norm criterion");
  }

  const auto& amps = state.amplitudes();
  Index pivot_flat = 0;
  // maxCoeff returns the first maximum, i.e. the lowest multi-index.
  amps.cwiseAbs2().maxCoeff(&pivot_flat);
  const auto pivot = state.dims().unflatten(static_cast<std::size_t>(pivot_flat));

  Factorization out;
  for (std::size_t i = 0; i < state.num_partites(); ++i) {
    const std::size_t r = state.dims()[i];
    Eigen::VectorXcd slice(static_cast<Index>(r));
    auto multi = pivot;
    for (std::size_t k = 0; k < r; ++k) {
      multi[i] = k;
      slice[static_cast<Index>(k)] = state.amplitude(multi);
    }
    // Gauge: real and nonnegative at the pivot component.
    const Complex at_pivot = slice[static_cast<Index>(pivot[i])];
    slice *= std::conj(at_pivot) / std::abs(at_pivot);
    slice /= slice.norm();
    out.factors.emplace_back(Dims({r}), std::move(slice));
  }

  const Complex phase = amps[pivot_flat] / std::abs(amps[pivot_flat]);
  out.factors.front() =
      PureState(out.factors.front().dims(),
                Eigen::VectorXcd(out.factors.front().amplitudes() * phase));
  out.residual_fidelity = fidelity(out.product(), state);
  return out;
}

bool bipartition_separable(const PureState& state,
                           std::span<const std::size_t> subset, double tol) {
  require_tolerance(tol);
  for (std::size_t i : subset) {
    if (i >= state.num_partites()) {
      throw Error(ErrorCode::BadSubset, "bipartition subset index " +
                                            std::to_string(i + 1) +
                                            " out of range");
    }
  }
  const auto set = make_partite_set(subset, state.num_partites());
  if (set.empty() || set.size() == state.num_partites()) {
    throw Error(ErrorCode::BadSubset,
                "bipartition subset must be proper and nonempty");
  }
  return max_scaled_minor(state, set) <= tol;
}

}  // namespace puresep
