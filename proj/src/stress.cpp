#include "puresep/stress.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "puresep/error.hpp"
#include "puresep/oracle.hpp"

namespace puresep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// HaarLike block on a random nonempty proper subset, tensored with a
// HaarLike block on the rest, with partites restored to their order.
PureState group_product(const Dims& dims, std::uint64_t seed) {
  const std::size_t n = dims.size();
  if (n < 2) {
    return oracle::generate({dims, oracle::StateKind::HaarLike, seed});
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, (1ULL << n) - 2);
  const std::uint64_t mask = pick(rng);

  std::vector<std::size_t> group;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    ((mask >> i) & 1U ? group : rest).push_back(i);
  }
  auto sub_dims = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> d;
    for (std::size_t i : idx) d.push_back(dims[i]);
    return Dims(std::move(d));
  };
  const PureState blocks[] = {
      oracle::generate({sub_dims(group), oracle::StateKind::HaarLike, rng()}),
      oracle::generate({sub_dims(rest), oracle::StateKind::HaarLike, rng()})};
  const PureState joined = tensor_product(blocks);

  // Position of original partite p inside `joined`.
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < group.size(); ++k) perm[group[k]] = k;
  for (std::size_t k = 0; k < rest.size(); ++k) perm[rest[k]] = group.size() + k;
  return permute_subsystems(joined, SubsystemPermutation(std::move(perm)));
}

PureState draw(const Dims& dims, std::uint64_t seed, std::size_t k) {
  switch (k % 3) {
    case 0: return oracle::generate({dims, oracle::StateKind::HaarLike, seed});
    case 1: return oracle::generate({dims, oracle::StateKind::Product, seed});
    default: return group_product(dims, seed);
  }
}

StressReport empty_report() {
  StressReport r;
  r.max_separable_deficit = -kInf;
  r.min_entangled_deficit = kInf;
  r.max_separable_minor = -kInf;
  r.min_entangled_minor = kInf;
  return r;
}

void run_range(const StressConfig& cfg, const Dims& dims, std::size_t begin,
               std::size_t end, StressReport& out) {
  const std::size_t n = dims.size();
  for (std::size_t k = begin; k < end; ++k) {
    const PureState state = draw(dims, cfg.seed + k, k);
    const SeparabilityReport norm = check_norm_criterion(state, cfg.tol);

    bool per_partite_ok = true;
    std::size_t separable_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = norm.per_partite[i];
      const std::size_t cut[] = {i};
      const double minor = max_scaled_minor(state, cut);
      const bool by_minor = n > 1 ? bipartition_separable(state, cut, cfg.tol)
                                  : true;
      const bool by_rank =
          n > 1 ? oracle::schmidt(state, cut, cfg.tol).rank_at_tol == 1 : true;
      if (v.norm_separable != by_minor || v.norm_separable != by_rank) {
        per_partite_ok = false;
      }
      if (v.norm_separable) {
        ++separable_count;
        out.max_separable_deficit = std::max(out.max_separable_deficit, v.deficit);
        out.max_separable_minor = std::max(out.max_separable_minor, minor);
      } else {
        out.min_entangled_deficit = std::min(out.min_entangled_deficit, v.deficit);
        out.min_entangled_minor = std::min(out.min_entangled_minor, minor);
      }
    }
    const bool fully_by_oracle =
        oracle::product_fidelity_oracle(state) >= 1.0 - cfg.tol;
    const bool full_ok = norm.fully_separable == fully_by_oracle;

    if (norm.fully_separable) {
      ++out.fully_separable_samples;
    } else if (separable_count > 0) {
      ++out.partially_separable_samples;
    }
    if (!per_partite_ok) ++out.per_partite_disagreements;
    if (!full_ok) ++out.full_disagreements;
    if (per_partite_ok && full_ok) {
      ++out.agreements;
    } else {
      ++out.disagreements;
      if (!out.counterexample_index) {
        out.counterexample_index = k;
        out.counterexample = state;
      }
    }
    ++out.samples;
  }
}

void merge(StressReport& into, StressReport&& part) {
  into.samples += part.samples;
  into.agreements += part.agreements;
  into.disagreements += part.disagreements;
  into.per_partite_disagreements += part.per_partite_disagreements;
  into.full_disagreements += part.full_disagreements;
  into.partially_separable_samples += part.partially_separable_samples;
  into.fully_separable_samples += part.fully_separable_samples;
  into.max_separable_deficit =
      std::max(into.max_separable_deficit, part.max_separable_deficit);
  into.min_entangled_deficit =
      std::min(into.min_entangled_deficit, part.min_entangled_deficit);
  into.max_separable_minor =
      std::max(into.max_separable_minor, part.max_separable_minor);
  into.min_entangled_minor =
      std::min(into.min_entangled_minor, part.min_entangled_minor);
  // Parts arrive in index order, so the first counterexample wins.
  if (!into.counterexample_index && part.counterexample_index) {
    into.counterexample_index = part.counterexample_index;
    into.counterexample = std::move(part.counterexample);
  }
}

}  // namespace

StressReport run_stress(const StressConfig& config) {
  if (config.samples == 0) {
    throw Error(ErrorCode::BadSpec, "samples must be positive");
  }
  if (!(config.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
  const Dims dims(config.dims);

  std::size_t workers = config.workers;
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, config.samples);

  std::vector<StressReport> parts(workers, empty_report());
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (config.samples + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(config.samples, w * chunk);
      const std::size_t end = std::min(config.samples, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(config, dims, begin, end, parts[w]);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  StressReport report = empty_report();
  for (auto& p : parts) merge(report, std::move(p));
  return report;
}

}  // namespace puresep
