#include "puresep/puresep.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "puresep/error.hpp"
#include "puresep/measures.hpp"
#include "puresep/oracle.hpp"
#include "puresep/separability.hpp"
#include "puresep/state_file.hpp"
#include "puresep/stress.hpp"
#include "puresep/su_basis.hpp"

struct psep_state {
  puresep::PureState state;
  std::optional<std::string> label;
};

struct psep_report {
  puresep::SeparabilityReport report;
};

struct psep_factorization {
  std::vector<psep_state> factors;
  double fidelity;
};

struct psep_measures {
  puresep::MeasureReport report;
};

struct psep_stress_report {
  puresep::StressReport report;
  std::optional<psep_state> counterexample;
};

namespace {

using namespace puresep;

thread_local std::string g_last_error;

psep_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return PSEP_ERR_INVALID_ARGUMENT;
    case ErrorCode::ZeroState: return PSEP_ERR_ZERO_STATE;
    case ErrorCode::BadIndex: return PSEP_ERR_BAD_INDEX;
    case ErrorCode::BadPermutation: return PSEP_ERR_BAD_PERMUTATION;
    case ErrorCode::DimMismatch: return PSEP_ERR_DIM_MISMATCH;
    case ErrorCode::BadDimension: return PSEP_ERR_BAD_DIMENSION;
    case ErrorCode::BadSubset: return PSEP_ERR_BAD_SUBSET;
    case ErrorCode::BadSpec: return PSEP_ERR_BAD_SPEC;
    case ErrorCode::Parse: return PSEP_ERR_PARSE;
    case ErrorCode::NotSeparable: return PSEP_ERR_NOT_SEPARABLE;
    case ErrorCode::CriterionDisagreement:
      return PSEP_ERR_CRITERION_DISAGREEMENT;
  }
  return PSEP_ERR_INTERNAL;
}

psep_status fail(psep_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
psep_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PSEP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PSEP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PSEP_ERR_INTERNAL, "unknown exception");
  }
}

#define PSEP_REQUIRE(cond, msg)                                   \
  do {                                                            \
    if (!(cond)) return fail(PSEP_ERR_INVALID_ARGUMENT, (msg));   \
  } while (0)

std::vector<std::size_t> as_vector(const size_t* p, size_t n) {
  return std::vector<std::size_t>(p, p + n);
}

psep_status copy_complex(const Eigen::MatrixXcd& m, double* out, size_t cap) {
  const auto count = static_cast<size_t>(m.size());
  if (cap < 2 * count) {
    return fail(PSEP_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  }
  // Row-major, interleaved.
  size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out[k++] = m(r, c).real();
      out[k++] = m(r, c).imag();
    }
  }
  return PSEP_OK;
}

psep_partite_verdict to_c(const PartiteVerdict& v) {
  return psep_partite_verdict{v.partite,          v.norm_squared,
                              v.target,           v.deficit,
                              v.minor_maximum,    v.norm_separable ? 1 : 0,
                              v.minor_separable ? 1 : 0, v.borderline ? 1 : 0,
                              v.separable ? 1 : 0};
}

}  // namespace

extern "C" {

const char* psep_version(void) { return "0.1.0"; }

const char* psep_status_name(psep_status status) {
  switch (status) {
    case PSEP_OK: return "OK";
    case PSEP_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PSEP_ERR_ZERO_STATE: return "ZeroState";
    case PSEP_ERR_BAD_INDEX: return "BadIndex";
    case PSEP_ERR_BAD_PERMUTATION: return "BadPermutation";
    case PSEP_ERR_DIM_MISMATCH: return "DimMismatch";
    case PSEP_ERR_BAD_DIMENSION: return "BadDimension";
    case PSEP_ERR_BAD_SUBSET: return "BadSubset";
    case PSEP_ERR_BAD_SPEC: return "BadSpec";
    case PSEP_ERR_PARSE: return "Parse";
    case PSEP_ERR_NOT_SEPARABLE: return "NotSeparable";
    case PSEP_ERR_CRITERION_DISAGREEMENT: return "CriterionDisagreement";
    case PSEP_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case PSEP_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* psep_last_error(void) { return g_last_error.c_str(); }

psep_status psep_state_create(const size_t* dims, size_t n,
                              const double* amps_re_im, size_t n_amps,
                              int normalize_flag, psep_state** out) {
  return guarded([&] {
    PSEP_REQUIRE(out && dims && (amps_re_im || n_amps == 0), "null argument");
    *out = nullptr;
    std::vector<Complex> amps(n_amps);
    for (size_t k = 0; k < n_amps; ++k) {
      amps[k] = Complex(amps_re_im[2 * k], amps_re_im[2 * k + 1]);
    }
    PureState s(Dims(as_vector(dims, n)), std::move(amps));
    if (normalize_flag) s = normalize(s);
    *out = new psep_state{std::move(s), std::nullopt};
    return PSEP_OK;
  });
}

psep_status psep_state_parse(const char* text, psep_state** out,
                             int* normalized_on_load) {
  return guarded([&] {
    PSEP_REQUIRE(text && out, "null argument");
    *out = nullptr;
    StateFile f = read_state_file(text);
    if (normalized_on_load) *normalized_on_load = f.normalized_on_load ? 1 : 0;
    *out = new psep_state{std::move(f.state), std::move(f.label)};
    return PSEP_OK;
  });
}

psep_status psep_state_generate(psep_kind kind, const size_t* dims, size_t n,
                                uint64_t seed, double eps, psep_state** out) {
  return guarded([&] {
    PSEP_REQUIRE(out && dims, "null argument");
    *out = nullptr;
    oracle::StateKind k{};
    switch (kind) {
      case PSEP_KIND_HAAR: k = oracle::StateKind::HaarLike; break;
      case PSEP_KIND_PRODUCT: k = oracle::StateKind::Product; break;
      case PSEP_KIND_GHZ: k = oracle::StateKind::GHZ; break;
      case PSEP_KIND_W: k = oracle::StateKind::W; break;
      case PSEP_KIND_BELL: k = oracle::StateKind::Bell; break;
      case PSEP_KIND_NEAR_PRODUCT: k = oracle::StateKind::NearProduct; break;
      default: return fail(PSEP_ERR_BAD_SPEC, "unknown state kind");
    }
    PureState s = oracle::generate({Dims(as_vector(dims, n)), k, seed, eps});
    *out = new psep_state{std::move(s), std::nullopt};
    return PSEP_OK;
  });
}

psep_status psep_kind_from_name(const char* name, psep_kind* out) {
  return guarded([&] {
    PSEP_REQUIRE(name && out, "null argument");
    switch (oracle::parse_state_kind(name)) {
      case oracle::StateKind::HaarLike: *out = PSEP_KIND_HAAR; break;
      case oracle::StateKind::Product: *out = PSEP_KIND_PRODUCT; break;
      case oracle::StateKind::GHZ: *out = PSEP_KIND_GHZ; break;
      case oracle::StateKind::W: *out = PSEP_KIND_W; break;
      case oracle::StateKind::Bell: *out = PSEP_KIND_BELL; break;
      case oracle::StateKind::NearProduct: *out = PSEP_KIND_NEAR_PRODUCT; break;
    }
    return PSEP_OK;
  });
}

psep_state* psep_state_clone(const psep_state* state) {
  if (!state) return nullptr;
  try {
    return new psep_state(*state);
  } catch (...) {
    g_last_error = "out of memory";
    return nullptr;
  }
}

void psep_state_destroy(psep_state* state) { delete state; }

size_t psep_state_num_partites(const psep_state* state) {
  return state ? state->state.num_partites() : 0;
}

size_t psep_state_dim(const psep_state* state, size_t partite) {
  if (!state || partite >= state->state.num_partites()) return 0;
  return state->state.dims()[partite];
}

size_t psep_state_size(const psep_state* state) {
  return state ? state->state.dims().total() : 0;
}

psep_status psep_state_amplitudes(const psep_state* state, double* out_re_im,
                                  size_t cap) {
  return guarded([&] {
    PSEP_REQUIRE(state && out_re_im, "null argument");
    return copy_complex(state->state.amplitudes(), out_re_im, cap);
  });
}

const char* psep_state_label(const psep_state* state) {
  return state && state->label ? state->label->c_str() : nullptr;
}

psep_status psep_state_set_label(psep_state* state, const char* label) {
  return guarded([&] {
    PSEP_REQUIRE(state, "null argument");
    if (label) {
      state->label = label;
    } else {
      state->label.reset();
    }
    return PSEP_OK;
  });
}

psep_status psep_state_serialize(const psep_state* state, int inline_form,
                                  char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    PSEP_REQUIRE(state, "null argument");
    const std::string text = inline_form
                                 ? write_state_inline(state->state)
                                 : write_state_file(state->state, state->label);
    if (needed) *needed = text.size() + 1;
    if (cap == 0) return PSEP_OK;
    PSEP_REQUIRE(buf, "null buffer");
    if (cap < text.size() + 1) {
      return fail(PSEP_ERR_BUFFER_TOO_SMALL, "output buffer too small");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return PSEP_OK;
  });
}

psep_status psep_permute(const psep_state* state, const size_t* perm, size_t n,
                         psep_state** out) {
  return guarded([&] {
    PSEP_REQUIRE(state && perm && out, "null argument");
    *out = nullptr;
    PureState s = permute_subsystems(state->state,
                                     SubsystemPermutation(as_vector(perm, n)));
    *out = new psep_state{std::move(s), state->label};
    return PSEP_OK;
  });
}

psep_status psep_fidelity(const psep_state* a, const psep_state* b,
                          double* out) {
  return guarded([&] {
    PSEP_REQUIRE(a && b && out, "null argument");
    *out = fidelity(a->state, b->state);
    return PSEP_OK;
  });
}

psep_status psep_partial_trace(const psep_state* state, const size_t* keep,
                               size_t n_keep, double* out_re_im, size_t cap,
                               size_t* dim) {
  return guarded([&] {
    PSEP_REQUIRE(state && (keep || n_keep == 0), "null argument");
    const DensityMatrix rho =
        partial_trace(state->state, std::span<const size_t>(keep, n_keep));
    if (dim) *dim = rho.dim();
    if (cap == 0 && !out_re_im) return PSEP_OK;
    PSEP_REQUIRE(out_re_im, "null buffer");
    return copy_complex(rho.matrix(), out_re_im, cap);
  });
}

psep_status psep_coherence_vector(const psep_state* state, size_t partite,
                                  double* out, size_t cap, size_t* len) {
  return guarded([&] {
    PSEP_REQUIRE(state, "null argument");
    const CoherenceVector xi = coherence_vector(state->state, partite);
    if (len) *len = xi.values.size();
    if (cap == 0 && !out) return PSEP_OK;
    PSEP_REQUIRE(out, "null buffer");
    if (cap < xi.values.size()) {
      return fail(PSEP_ERR_BUFFER_TOO_SMALL, "output buffer too small");
    }
    std::copy(xi.values.begin(), xi.values.end(), out);
    return PSEP_OK;
  });
}

psep_status psep_check(const psep_state* state, double tol,
                       psep_report** out) {
  return guarded([&] {
    PSEP_REQUIRE(state && out, "null argument");
    *out = nullptr;
    *out = new psep_report{check(state->state, tol)};
    return PSEP_OK;
  });
}

psep_status psep_check_norm(const psep_state* state, double tol,
                            psep_report** out) {
  return guarded([&] {
    PSEP_REQUIRE(state && out, "null argument");
    *out = nullptr;
    *out = new psep_report{check_norm_criterion(state->state, tol)};
    return PSEP_OK;
  });
}

void psep_report_destroy(psep_report* report) { delete report; }

size_t psep_report_num_partites(const psep_report* report) {
  return report ? report->report.per_partite.size() : 0;
}

psep_status psep_report_partite(const psep_report* report, size_t i,
                                psep_partite_verdict* out) {
  return guarded([&] {
    PSEP_REQUIRE(report && out, "null argument");
    if (i >= report->report.per_partite.size()) {
      return fail(PSEP_ERR_BAD_INDEX, "partite index out of range");
    }
    *out = to_c(report->report.per_partite[i]);
    return PSEP_OK;
  });
}

int psep_report_fully_separable(const psep_report* report) {
  return report && report->report.fully_separable ? 1 : 0;
}

int psep_report_any_borderline(const psep_report* report) {
  return report && report->report.any_borderline() ? 1 : 0;
}

double psep_report_tolerance(const psep_report* report) {
  return report ? report->report.tolerance : 0.0;
}

psep_status psep_minor_criterion(const psep_state* state, size_t partite,
                                 double tol, int* out) {
  return guarded([&] {
    PSEP_REQUIRE(state && out, "null argument");
    *out = check_minor_criterion(state->state, partite, tol) ? 1 : 0;
    return PSEP_OK;
  });
}

psep_status psep_bipartition_separable(const psep_state* state,
                                       const size_t* subset, size_t n_subset,
                                       double tol, int* out) {
  return guarded([&] {
    PSEP_REQUIRE(state && out && (subset || n_subset == 0), "null argument");
    *out = bipartition_separable(state->state,
                                 std::span<const size_t>(subset, n_subset), tol)
               ? 1
               : 0;
    return PSEP_OK;
  });
}

psep_status psep_factorize(const psep_state* state, double tol,
                           psep_factorization** out) {
  return guarded([&] {
    PSEP_REQUIRE(state && out, "null argument");
    *out = nullptr;
    Factorization f = factorize(state->state, tol);
    auto* result = new psep_factorization{{}, f.residual_fidelity};
    for (auto& factor : f.factors) {
      result->factors.push_back(psep_state{std::move(factor), std::nullopt});
    }
    *out = result;
    return PSEP_OK;
  });
}

void psep_factorization_destroy(psep_factorization* f) { delete f; }

size_t psep_factorization_count(const psep_factorization* f) {
  return f ? f->factors.size() : 0;
}

const psep_state* psep_factorization_factor(const psep_factorization* f,
                                            size_t i) {
  return f && i < f->factors.size() ? &f->factors[i] : nullptr;
}

double psep_factorization_fidelity(const psep_factorization* f) {
  return f ? f->fidelity : 0.0;
}

psep_status psep_schmidt(const psep_state* state, const size_t* cut,
                         size_t n_cut, double tol, double* out_values,
                         size_t cap, size_t* len, size_t* rank) {
  return guarded([&] {
    PSEP_REQUIRE(state && (cut || n_cut == 0), "null argument");
    const auto data =
        oracle::schmidt(state->state, std::span<const size_t>(cut, n_cut), tol);
    if (len) *len = data.singular_values.size();
    if (rank) *rank = data.rank_at_tol;
    if (cap == 0 && !out_values) return PSEP_OK;
    PSEP_REQUIRE(out_values, "null buffer");
    if (cap < data.singular_values.size()) {
      return fail(PSEP_ERR_BUFFER_TOO_SMALL, "output buffer too small");
    }
    std::copy(data.singular_values.begin(), data.singular_values.end(),
              out_values);
    return PSEP_OK;
  });
}

psep_status psep_purity(const psep_state* state, size_t partite, double* out) {
  return guarded([&] {
    PSEP_REQUIRE(state && out, "null argument");
    *out = oracle::purity_oracle(state->state, partite);
    return PSEP_OK;
  });
}

psep_status psep_measure(const psep_state* state, psep_measures** out) {
  return guarded([&] {
    PSEP_REQUIRE(state && out, "null argument");
    *out = nullptr;
    *out = new psep_measures{measure(state->state)};
    return PSEP_OK;
  });
}

void psep_measures_destroy(psep_measures* m) { delete m; }

size_t psep_measures_num_partites(const psep_measures* m) {
  return m ? m->report.per_partite.size() : 0;
}

psep_status psep_measures_partite(const psep_measures* m, size_t i,
                                  psep_partite_measure* out) {
  return guarded([&] {
    PSEP_REQUIRE(m && out, "null argument");
    if (i >= m->report.per_partite.size()) {
      return fail(PSEP_ERR_BAD_INDEX, "partite index out of range");
    }
    const auto& p = m->report.per_partite[i];
    *out = psep_partite_measure{p.partite, p.deficit, p.linear_entropy,
                                p.von_neumann_bits};
    return PSEP_OK;
  });
}

double psep_measures_mean_deficit(const psep_measures* m) {
  return m ? m->report.mean_deficit : 0.0;
}

double psep_measures_max_deficit(const psep_measures* m) {
  return m ? m->report.max_deficit : 0.0;
}

double psep_measures_mean_entropy(const psep_measures* m) {
  return m ? m->report.mean_von_neumann_bits : 0.0;
}

psep_status psep_stress(const size_t* dims, size_t n, size_t samples,
                        uint64_t seed, double tol, size_t workers,
                        psep_stress_report** out) {
  return guarded([&] {
    PSEP_REQUIRE(dims && out, "null argument");
    *out = nullptr;
    StressConfig cfg{as_vector(dims, n), samples, seed, tol, workers};
    StressReport r = run_stress(cfg);
    auto* result = new psep_stress_report{std::move(r), std::nullopt};
    if (result->report.counterexample) {
      result->counterexample =
          psep_state{*result->report.counterexample, std::nullopt};
    }
    *out = result;
    return PSEP_OK;
  });
}

void psep_stress_destroy(psep_stress_report* r) { delete r; }

psep_status psep_stress_get_summary(const psep_stress_report* r,
                                    psep_stress_summary* out) {
  return guarded([&] {
    PSEP_REQUIRE(r && out, "null argument");
    const auto& s = r->report;
    *out = psep_stress_summary{s.samples,
                               s.agreements,
                               s.disagreements,
                               s.per_partite_disagreements,
                               s.full_disagreements,
                               s.partially_separable_samples,
                               s.fully_separable_samples,
                               s.max_separable_deficit,
                               s.min_entangled_deficit,
                               s.max_separable_minor,
                               s.min_entangled_minor,
                               s.counterexample_index ? 1 : 0,
                               s.counterexample_index.value_or(0)};
    return PSEP_OK;
  });
}

const psep_state* psep_stress_counterexample(const psep_stress_report* r) {
  return r && r->counterexample ? &*r->counterexample : nullptr;
}

}  // extern "C"
