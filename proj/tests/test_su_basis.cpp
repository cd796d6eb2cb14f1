#include <doctest.h>

#include <cmath>

#include "puresep/error.hpp"
#include "puresep/oracle.hpp"
#include "puresep/su_basis.hpp"
#include "support/closed_forms.hpp"

using namespace puresep;
using puresep::testing::make_state;
using C = std::complex<double>;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd mat2(C a, C b, C c, C d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("qubit basis is the Pauli matrices") {
  const auto b = make_basis(2);
  REQUIRE(b.size() == 3);
  const C i(0, 1);
  CHECK(b[0] == mat2(0, 1, 1, 0));
  CHECK(b[1] == mat2(0, -i, i, 0));
  CHECK(b[2] == mat2(1, 0, 0, -1));
}

TEST_CASE("qutrit basis is the Gell-Mann matrices in conventional order") {
  const auto b = make_basis(3);
  REQUIRE(b.size() == 8);
  const C i(0, 1);
  Eigen::MatrixXcd l(3, 3);
  l << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  CHECK(b[0] == l);
  l << 0, -i, 0, i, 0, 0, 0, 0, 0;
  CHECK(b[1] == l);
  l << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  CHECK(max_abs(b[2] - l) < 1e-15);
  l << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  CHECK(b[3] == l);
  l << 0, 0, -i, 0, 0, 0, i, 0, 0;
  CHECK(b[4] == l);
  l << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  CHECK(b[5] == l);
  l << 0, 0, 0, 0, 0, -i, 0, i, 0;
  CHECK(b[6] == l);
  l << 1, 0, 0, 0, 1, 0, 0, 0, -2;
  CHECK(max_abs(b[7] - l / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("generator bases are Hermitian, traceless and orthogonal") {
  for (std::size_t r = 2; r <= 6; ++r) {
    CAPTURE(r);
    const auto b = make_basis(r);
    REQUIRE(b.size() == r * r - 1);
    for (std::size_t a = 0; a < b.size(); ++a) {
      CHECK(max_abs(b[a] - b[a].adjoint()) < 1e-12);
      CHECK(std::abs(b[a].trace()) < 1e-12);
      for (std::size_t c = 0; c < b.size(); ++c) {
        const C t = (b[a] * b[c]).trace();
        CHECK(std::abs(t - (a == c ? 2.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("make_basis rejects r < 2") {
  try {
    make_basis(1);
    FAIL("expected BadDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadDimension);
  }
}

TEST_CASE("coherence_vector examples") {
  const auto b2 = make_basis(2);
  SUBCASE("maximally mixed") {
    const DensityMatrix rho(0.5 * Eigen::MatrixXcd::Identity(2, 2));
    const auto xi = coherence_vector(rho, b2);
    for (double v : xi.values) CHECK(std::abs(v) < 1e-15);
  }
  SUBCASE("|0><0|") {
    const DensityMatrix rho(mat2(1, 0, 0, 0));
    const auto xi = coherence_vector(rho, b2);
    CHECK(xi.values == std::vector<double>{0, 0, 1});
    CHECK(norm_squared(xi) == 1.0);
  }
  SUBCASE("diag(2/3, 1/3)") {
    const DensityMatrix rho(mat2(2.0 / 3.0, 0, 0, 1.0 / 3.0));
    const auto xi = coherence_vector(rho, b2);
    CHECK(std::abs(xi.values[2] - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(norm_squared(xi) - 1.0 / 9.0) < 1e-15);
  }
  SUBCASE("dimension mismatch") {
    const DensityMatrix rho(Eigen::MatrixXcd::Identity(3, 3) / 3.0);
    try {
      coherence_vector(rho, b2);
      FAIL("expected DimMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimMismatch);
    }
  }
}

TEST_CASE("norm_squared examples") {
  const double r2 = 1.0 / std::sqrt(2.0);
  const auto product = make_state({2, 2}, {r2, r2, 0, 0});
  CHECK(std::abs(norm_squared(coherence_vector(product, 0)) - 1.0) < 1e-12);

  const auto qutrit_product = make_state({3, 3}, {0, 0, 0, 1, 0, 0, 0, 0, 0});
  CHECK(std::abs(norm_squared(coherence_vector(qutrit_product, 0)) - 4.0 / 3.0) <
        1e-12);

  const auto bell = make_state({2, 2}, {r2, 0, 0, r2});
  CHECK(std::abs(norm_squared(coherence_vector(bell, 0))) < 1e-12);
}

TEST_CASE("purity identity and reconstruction over random reductions") {
  const std::vector<std::vector<std::size_t>> suites = {
      {2, 2}, {2, 3}, {3, 3}, {4, 2}, {2, 2, 2}, {3, 3, 3}, {5, 2}};
  std::uint64_t seed = 1;
  for (const auto& d : suites) {
    for (int rep = 0; rep < 25; ++rep) {
      const auto s = oracle::generate({Dims(d), oracle::StateKind::HaarLike, seed++});
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::size_t keep[] = {i};
        const auto rho = partial_trace(s, keep);
        const auto basis = make_basis(d[i]);
        const auto xi = coherence_vector(rho, basis, i);
        const double r = static_cast<double>(d[i]);
        CHECK(std::abs(norm_squared(xi) - 2.0 * (rho.purity() - 1.0 / r)) < 1e-10);
        CHECK(norm_squared(xi) <= coherence_norm_target(d[i]) + 1e-9);
        CHECK(max_abs(reconstruct_density(xi, basis) - rho.matrix()) < 1e-10);
      }
    }
  }
}

TEST_CASE("correlation tensor of a single qubit is (1, xi)") {
  const auto s = make_state({2}, {1, 0});
  const auto t = correlation_tensor(s);
  // a_0 = Tr(rho sqrt(2/2) I) = 1 under TraceUniform
  CHECK(std::abs(t.entries()[0] - 1.0) < 1e-15);
  CHECK(std::abs(t.entries()[1]) < 1e-15);
  CHECK(std::abs(t.entries()[2]) < 1e-15);
  CHECK(std::abs(t.entries()[3] - 1.0) < 1e-15);
}

TEST_CASE("Bell correlation tensor against hand-built Pauli products") {
  const double r2 = 1.0 / std::sqrt(2.0);
  const auto bell = make_state({2, 2}, {r2, 0, 0, r2});
  const C i(0, 1);
  const Eigen::MatrixXcd paulis[] = {mat2(1, 0, 0, 1), mat2(0, 1, 1, 0),
                                     mat2(0, -i, i, 0), mat2(1, 0, 0, -1)};
  const auto rho = density_of(bell).matrix();
  const auto t = correlation_tensor(bell, IdentityNormalization::PaperFactor);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      Eigen::MatrixXcd k(4, 4);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          k.block(2 * p, 2 * q, 2, 2) = paulis[a](p, q) * paulis[b];
      // lambda^0 = (2/2) I = sigma_0 for qubits, Tr(sigma^2) = 2.
      const double expected = 4.0 * (rho * k).trace().real() / 4.0;
      const std::size_t mu[] = {a, b};
      CHECK(std::abs(t.at(mu) - expected) < 1e-12);
    }
  }
  // Known Bell correlations: <XX> = 1, <YY> = -1, <ZZ> = 1.
  const std::size_t xx[] = {1, 1}, yy[] = {2, 2}, zz[] = {3, 3};
  CHECK(std::abs(t.at(xx) - 1.0) < 1e-12);
  CHECK(std::abs(t.at(yy) + 1.0) < 1e-12);
  CHECK(std::abs(t.at(zz) - 1.0) < 1e-12);
}

TEST_CASE("correlation tensor reconstructs the density matrix") {
  const std::vector<std::vector<std::size_t>> suites = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}};
  std::uint64_t seed = 40;
  for (auto norm : {IdentityNormalization::TraceUniform, IdentityNormalization::PaperFactor}) {
    for (const auto& d : suites) {
      const auto s = oracle::generate({Dims(d), oracle::StateKind::HaarLike, seed++});
      std::vector<GeneratorBasis> bases;
      for (std::size_t r : d) bases.push_back(make_basis(r));
      const auto t = correlation_tensor(s, bases, norm);
      CHECK(max_abs(reconstruct_density(t, bases) - density_of(s).matrix()) < 1e-9);
    }
  }
}

TEST_CASE("single-axis slices are scaled coherence vectors") {
  SUBCASE("all-qutrit TraceUniform uses (sqrt6/2)^(n-1)") {
    for (std::size_t n : {2u, 3u}) {
      const Dims dims(std::vector<std::size_t>(n, 3));
      const auto s = oracle::generate({dims, oracle::StateKind::HaarLike, 77 + n});
      const auto t = correlation_tensor(s);
      const double factor = std::pow(std::sqrt(6.0) / 2.0, static_cast<double>(n - 1));
      CHECK(std::abs(coherence_slice_factor(dims, 0, IdentityNormalization::TraceUniform) -
                     factor) < 1e-14);
      for (std::size_t i = 0; i < n; ++i) {
        const auto xi = coherence_vector(s, i);
        for (std::size_t m = 1; m < 9; ++m) {
          std::vector<std::size_t> mu(n, 0);
          mu[i] = m;
          CHECK(std::abs(factor * t.at(mu) - xi.values[m - 1]) < 1e-10);
        }
      }
    }
  }
  SUBCASE("mixed dims, both normalizations") {
    const Dims dims({2, 3, 2});
    const auto s = oracle::generate({dims, oracle::StateKind::HaarLike, 5});
    for (auto norm : {IdentityNormalization::TraceUniform, IdentityNormalization::PaperFactor}) {
      const auto t = correlation_tensor(s, norm);
      for (std::size_t i = 0; i < 3; ++i) {
        const auto xi = coherence_vector(s, i);
        const double f = coherence_slice_factor(dims, i, norm);
        for (std::size_t m = 1; m < dims[i] * dims[i]; ++m) {
          std::vector<std::size_t> mu(3, 0);
          mu[i] = m;
          CHECK(std::abs(f * t.at(mu) - xi.values[m - 1]) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("product state tensors factorize") {
  const Dims dims({2, 3});
  const PureState parts[] = {
      oracle::generate({Dims({2}), oracle::StateKind::HaarLike, 1}),
      oracle::generate({Dims({3}), oracle::StateKind::HaarLike, 2})};
  const auto s = tensor_product(parts);
  const auto t = correlation_tensor(s);
  const auto t1 = correlation_tensor(parts[0]);
  const auto t2 = correlation_tensor(parts[1]);
  // Under TraceUniform, a_{mu nu} = a_mu a_nu (the 2^n factors cancel).
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 9; ++b) {
      const std::size_t mu[] = {a, b};
      CHECK(std::abs(t.at(mu) - t1.entries()[a] * t2.entries()[b]) < 1e-9);
    }
  }
}

TEST_CASE("shared_basis returns one instance per dimension") {
  CHECK(shared_basis(4).get() == shared_basis(4).get());
  CHECK(shared_basis(4)->size() == 15);
}
