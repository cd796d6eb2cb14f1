#include <doctest.h>

#include <cmath>

#include "puresep/error.hpp"
#include "puresep/oracle.hpp"
#include "puresep/separability.hpp"
#include "puresep/su_basis.hpp"
#include "support/closed_forms.hpp"

using namespace puresep;
using puresep::testing::make_state;

namespace {
const double kR2 = 1.0 / std::sqrt(2.0);
const double kR3 = 1.0 / std::sqrt(3.0);
}  // namespace

TEST_CASE("schmidt examples") {
  const std::size_t one[] = {0};
  const auto bell = oracle::schmidt(make_state({2, 2}, {kR2, 0, 0, kR2}), one);
  CHECK(bell.rank_at_tol == 2);
  CHECK(std::abs(bell.singular_values[0] - kR2) < 1e-15);
  CHECK(std::abs(bell.singular_values[1] - kR2) < 1e-15);

  const auto p = oracle::generate({Dims({2, 3, 2}), oracle::StateKind::Product, 3});
  for (unsigned mask = 1; mask < 7; ++mask) {
    std::vector<std::size_t> cut;
    for (std::size_t k = 0; k < 3; ++k)
      if ((mask >> k) & 1U) cut.push_back(k);
    CHECK(oracle::schmidt(p, cut).rank_at_tol == 1);
  }

  const auto w = oracle::schmidt(make_state({2, 2, 2}, {0, kR3, kR3, 0, kR3, 0, 0, 0}), one);
  CHECK(w.rank_at_tol == 2);
  CHECK(std::abs(w.singular_values[0] - std::sqrt(2.0 / 3.0)) < 1e-15);
  CHECK(std::abs(w.singular_values[1] - std::sqrt(1.0 / 3.0)) < 1e-15);
}

TEST_CASE("schmidt rejects improper cuts") {
  const auto s = make_state({2, 2}, {1, 0, 0, 0});
  const std::size_t both[] = {0, 1}, bad[] = {5};
  for (auto cut : {std::span<const std::size_t>(both), std::span<const std::size_t>(),
                   std::span<const std::size_t>(bad)}) {
    try {
      oracle::schmidt(s, cut);
      FAIL("expected BadSubset");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadSubset);
    }
  }
}

TEST_CASE("singular values square-sum to one and match purities") {
  std::uint64_t seed = 0;
  for (const auto& d : std::vector<std::vector<std::size_t>>{{2, 3, 2}, {3, 3, 3}, {2, 2, 2, 2}}) {
    for (int rep = 0; rep < 30; ++rep) {
      const auto s = oracle::generate({Dims(d), oracle::StateKind::HaarLike, seed++});
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::size_t cut[] = {i};
        const auto data = oracle::schmidt(s, cut);
        double sum2 = 0, sum4 = 0;
        for (double v : data.singular_values) {
          sum2 += v * v;
          sum4 += v * v * v * v;
        }
        CHECK(std::abs(sum2 - 1.0) < 1e-10);
        CHECK(std::is_sorted(data.singular_values.rbegin(), data.singular_values.rend()));
        CHECK(std::abs(sum4 - oracle::purity_oracle(s, i)) < 1e-12);
        // Master cross-module identity.
        const double xi2 = norm_squared(coherence_vector(s, i));
        CHECK(std::abs(xi2 - 2.0 * (oracle::purity_oracle(s, i) - 1.0 / d[i])) < 1e-10);
      }
    }
  }
}

TEST_CASE("rank one iff unit purity") {
  std::uint64_t seed = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto kind = rep % 2 ? oracle::StateKind::Product : oracle::StateKind::HaarLike;
    const auto s = oracle::generate({Dims({2, 3, 2}), kind, seed++});
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t cut[] = {i};
      const bool rank1 = oracle::schmidt(s, cut).rank_at_tol == 1;
      CHECK(rank1 == (std::abs(oracle::purity_oracle(s, i) - 1.0) < 1e-9));
    }
  }
}

TEST_CASE("generate fixed states") {
  const auto bell = oracle::generate({Dims({2, 2}), oracle::StateKind::Bell, 99});
  CHECK(bell.amplitudes()[0] == std::complex<double>(kR2));
  CHECK(bell.amplitudes()[3] == std::complex<double>(kR2));
  CHECK(bell.amplitudes()[1] == std::complex<double>(0));

  const auto ghz = oracle::generate({Dims({2, 2, 2}), oracle::StateKind::GHZ, 0});
  CHECK(ghz.amplitudes()[0] == std::complex<double>(kR2));
  CHECK(ghz.amplitudes()[7] == std::complex<double>(kR2));
  CHECK(ghz.amplitudes().cwiseAbs2().sum() == doctest::Approx(1.0));

  const auto w = oracle::generate({Dims({2, 2, 2}), oracle::StateKind::W, 0});
  for (int k : {1, 2, 4}) CHECK(std::abs(w.amplitudes()[k] - kR3) < 1e-15);

  const auto qm = oracle::generate({Dims({3, 3}), oracle::StateKind::GHZ, 0});
  for (int k : {0, 4, 8}) CHECK(std::abs(qm.amplitudes()[k] - kR3) < 1e-15);
}

TEST_CASE("generate rejects impossible requests") {
  auto expect_bad = [](std::vector<std::size_t> d, oracle::StateKind k, double eps = 1e-6) {
    try {
      oracle::generate({Dims(std::move(d)), k, 0, eps});
      FAIL("expected BadSpec");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadSpec);
    }
  };
  expect_bad({2, 3}, oracle::StateKind::Bell);
  expect_bad({2, 2, 2}, oracle::StateKind::Bell);
  expect_bad({2, 3}, oracle::StateKind::GHZ);
  expect_bad({2}, oracle::StateKind::W);
  expect_bad({2, 2}, oracle::StateKind::NearProduct, -1.0);
  CHECK_THROWS_AS(oracle::parse_state_kind("cat"), Error);
  CHECK(oracle::parse_state_kind("near-product") == oracle::StateKind::NearProduct);
}

TEST_CASE("generate is deterministic in the seed") {
  for (auto kind : {oracle::StateKind::HaarLike, oracle::StateKind::Product,
                    oracle::StateKind::NearProduct}) {
    const auto a = oracle::generate({Dims({2, 3}), kind, 7});
    const auto b = oracle::generate({Dims({2, 3}), kind, 7});
    const auto c = oracle::generate({Dims({2, 3}), kind, 8});
    CHECK(a.amplitudes() == b.amplitudes());
    CHECK(a.amplitudes() != c.amplitudes());
    CHECK(a.is_normalized(1e-12));
  }
  const auto p = oracle::generate({Dims({2, 2}), oracle::StateKind::Product, 11});
  const auto& v = p.amplitudes();
  CHECK(std::abs(v[0] * v[3] - v[1] * v[2]) <= 1e-12);
}

TEST_CASE("purity oracle examples") {
  CHECK(std::abs(oracle::purity_oracle(make_state({2, 2}, {1, 0, 0, 0}), 1) - 1.0) < 1e-15);
  CHECK(std::abs(oracle::purity_oracle(make_state({2, 2}, {kR2, 0, 0, kR2}), 0) - 0.5) < 1e-15);
  CHECK(std::abs(oracle::purity_oracle(make_state({2, 2, 2}, {0, kR3, kR3, 0, kR3, 0, 0, 0}), 2) -
                 5.0 / 9.0) < 1e-15);
  CHECK_THROWS_AS(oracle::purity_oracle(make_state({2, 2}, {1, 0, 0, 0}), 2), Error);
}

TEST_CASE("product fidelity oracle") {
  const auto p = oracle::generate({Dims({3, 2, 2}), oracle::StateKind::Product, 1});
  CHECK(oracle::product_fidelity_oracle(p) > 1 - 1e-12);
  const auto ghz = oracle::generate({Dims({2, 2, 2}), oracle::StateKind::GHZ, 0});
  CHECK(oracle::product_fidelity_oracle(ghz) == doctest::Approx(0.5));
}

TEST_CASE("generated product states pass the norm criterion") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto p = oracle::generate({Dims({2, 3, 3}), oracle::StateKind::Product, seed});
    for (const auto& v : check_norm_criterion(p).per_partite) CHECK(v.deficit <= 1e-9);
  }
}
