#include "puresep/measures.hpp"

#include <algorithm>
#include <cmath>

#include "puresep/su_basis.hpp"

namespace puresep {

double von_neumann_entropy_bits(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.matrix(),
                                                      Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    const double p = eig.eigenvalues()[k];
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::max(0.0, s);
}

MeasureReport measure(const PureState& state) {
  MeasureReport report;
  const auto& basis_dims = state.dims();
  for (std::size_t i = 0; i < state.num_partites(); ++i) {
    const std::size_t keep[] = {i};
    const DensityMatrix rho = partial_trace(state, keep);
    const auto xi = coherence_vector(rho, *shared_basis(basis_dims[i]), i);

    PartiteMeasure m;
    m.partite = i;
    m.deficit = coherence_norm_target(basis_dims[i]) - norm_squared(xi);
    m.linear_entropy = 1.0 - rho.purity();
    m.von_neumann_bits = von_neumann_entropy_bits(rho);
    report.per_partite.push_back(m);
  }
  const double n = static_cast<double>(report.per_partite.size());
  report.max_deficit = report.per_partite.front().deficit;
  for (const auto& m : report.per_partite) {
    report.mean_deficit += m.deficit / n;
    report.mean_von_neumann_bits += m.von_neumann_bits / n;
    report.max_deficit = std::max(report.max_deficit, m.deficit);
  }
  return report;
}

}  // namespace puresep
