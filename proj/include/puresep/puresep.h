/*
 * C interface to puresep: separability of pure multipartite states.
 *
 * All objects are opaque handles created by a psep_*_create / psep_* call
 * and released with the matching psep_*_destroy. Every fallible call returns
 * a psep_status; on failure psep_last_error() holds a message for the
 * calling thread. Partite indices are 0-based. Complex numbers are passed as
 * interleaved (re, im) doubles.
 */
#ifndef PURESEP_H
#define PURESEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PURESEP_BUILDING)
#    define PURESEP_API __declspec(dllexport)
#  else
#    define PURESEP_API __declspec(dllimport)
#  endif
#else
#  define PURESEP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psep_status {
  PSEP_OK = 0,
  PSEP_ERR_INVALID_ARGUMENT = 1,
  PSEP_ERR_ZERO_STATE = 2,
  PSEP_ERR_BAD_INDEX = 3,
  PSEP_ERR_BAD_PERMUTATION = 4,
  PSEP_ERR_DIM_MISMATCH = 5,
  PSEP_ERR_BAD_DIMENSION = 6,
  PSEP_ERR_BAD_SUBSET = 7,
  PSEP_ERR_BAD_SPEC = 8,
  PSEP_ERR_PARSE = 9,
  PSEP_ERR_NOT_SEPARABLE = 10,
  PSEP_ERR_CRITERION_DISAGREEMENT = 11,
  PSEP_ERR_BUFFER_TOO_SMALL = 12,
  PSEP_ERR_INTERNAL = 13
} psep_status;

typedef enum psep_kind {
  PSEP_KIND_HAAR = 0,
  PSEP_KIND_PRODUCT = 1,
  PSEP_KIND_GHZ = 2,
  PSEP_KIND_W = 3,
  PSEP_KIND_BELL = 4,
  PSEP_KIND_NEAR_PRODUCT = 5
} psep_kind;

#define PSEP_DEFAULT_TOLERANCE 1e-8

PURESEP_API const char* psep_version(void);
PURESEP_API const char* psep_status_name(psep_status status);
/* Message of the last failed call on this thread; "" if none. */
PURESEP_API const char* psep_last_error(void);

/* ---- states -------------------------------------------------------- */

typedef struct psep_state psep_state;

/* n_amps complex amplitudes in amps_re_im[2*n_amps]. When normalize is
 * nonzero the amplitudes are rescaled to unit norm. */
PURESEP_API psep_status psep_state_create(const size_t* dims, size_t n,
                                          const double* amps_re_im,
                                          size_t n_amps, int normalize,
                                          psep_state** out);
/* Parses a state file. *normalized_on_load (optional) reports whether the
 * input had to be rescaled. */
PURESEP_API psep_status psep_state_parse(const char* text, psep_state** out,
                                         int* normalized_on_load);
PURESEP_API psep_status psep_state_generate(psep_kind kind, const size_t* dims,
                                            size_t n, uint64_t seed,
                                            double eps, psep_state** out);
PURESEP_API psep_status psep_kind_from_name(const char* name, psep_kind* out);
PURESEP_API psep_state* psep_state_clone(const psep_state* state);
PURESEP_API void psep_state_destroy(psep_state* state);

PURESEP_API size_t psep_state_num_partites(const psep_state* state);
PURESEP_API size_t psep_state_dim(const psep_state* state, size_t partite);
PURESEP_API size_t psep_state_size(const psep_state* state);
/* Copies 2*psep_state_size() doubles. */
PURESEP_API psep_status psep_state_amplitudes(const psep_state* state,
                                              double* out_re_im, size_t cap);
/* NULL when the state has no label. */
PURESEP_API const char* psep_state_label(const psep_state* state);
PURESEP_API psep_status psep_state_set_label(psep_state* state,
                                             const char* label);

/* Writes the state file text (NUL terminated) into buf. *needed receives
 * the required size including the terminator; call with cap 0 to query.
 * inline_form selects the single-line fragment without label. */
PURESEP_API psep_status psep_state_serialize(const psep_state* state,
                                             int inline_form, char* buf,
                                             size_t cap, size_t* needed);

PURESEP_API psep_status psep_permute(const psep_state* state,
                                     const size_t* perm, size_t n,
                                     psep_state** out);
PURESEP_API psep_status psep_fidelity(const psep_state* a, const psep_state* b,
                                      double* out);
/* Reduced density matrix on the kept partites, row-major, interleaved.
 * *dim receives its dimension; cap counts doubles. */
PURESEP_API psep_status psep_partial_trace(const psep_state* state,
                                           const size_t* keep, size_t n_keep,
                                           double* out_re_im, size_t cap,
                                           size_t* dim);
/* Coherence vector of one partite; *len receives r^2 - 1. */
PURESEP_API psep_status psep_coherence_vector(const psep_state* state,
                                              size_t partite, double* out,
                                              size_t cap, size_t* len);

/* ---- separability -------------------------------------------------- */

typedef struct psep_partite_verdict {
  size_t partite;
  double norm_squared;
  double target;
  double deficit;
  double minor_maximum;
  int norm_separable;
  int minor_separable;
  int borderline;
  int separable;
} psep_partite_verdict;

typedef struct psep_report psep_report;

/* Combined norm and minor check. On PSEP_ERR_CRITERION_DISAGREEMENT no
 * report is produced. */
PURESEP_API psep_status psep_check(const psep_state* state, double tol,
                                   psep_report** out);
/* Norm criterion only. */
PURESEP_API psep_status psep_check_norm(const psep_state* state, double tol,
                                        psep_report** out);
PURESEP_API void psep_report_destroy(psep_report* report);
PURESEP_API size_t psep_report_num_partites(const psep_report* report);
PURESEP_API psep_status psep_report_partite(const psep_report* report,
                                            size_t i,
                                            psep_partite_verdict* out);
PURESEP_API int psep_report_fully_separable(const psep_report* report);
PURESEP_API int psep_report_any_borderline(const psep_report* report);
PURESEP_API double psep_report_tolerance(const psep_report* report);

PURESEP_API psep_status psep_minor_criterion(const psep_state* state,
                                             size_t partite, double tol,
                                             int* out);
PURESEP_API psep_status psep_bipartition_separable(const psep_state* state,
                                                   const size_t* subset,
                                                   size_t n_subset, double tol,
                                                   int* out);

typedef struct psep_factorization psep_factorization;

/* On PSEP_ERR_NOT_SEPARABLE the failing partites are named in
 * psep_last_error(). */
PURESEP_API psep_status psep_factorize(const psep_state* state, double tol,
                                       psep_factorization** out);
PURESEP_API void psep_factorization_destroy(psep_factorization* f);
PURESEP_API size_t psep_factorization_count(const psep_factorization* f);
/* Borrowed; valid until the factorization is destroyed. */
PURESEP_API const psep_state* psep_factorization_factor(
    const psep_factorization* f, size_t i);
PURESEP_API double psep_factorization_fidelity(const psep_factorization* f);

/* ---- oracle -------------------------------------------------------- */

/* Singular values across cut | rest, nonincreasing. */
PURESEP_API psep_status psep_schmidt(const psep_state* state,
                                     const size_t* cut, size_t n_cut,
                                     double tol, double* out_values,
                                     size_t cap, size_t* len, size_t* rank);
PURESEP_API psep_status psep_purity(const psep_state* state, size_t partite,
                                    double* out);

/* ---- measures ------------------------------------------------------ */

typedef struct psep_partite_measure {
  size_t partite;
  double deficit;
  double linear_entropy;
  double von_neumann_bits;
} psep_partite_measure;

typedef struct psep_measures psep_measures;

PURESEP_API psep_status psep_measure(const psep_state* state,
                                     psep_measures** out);
PURESEP_API void psep_measures_destroy(psep_measures* m);
PURESEP_API size_t psep_measures_num_partites(const psep_measures* m);
PURESEP_API psep_status psep_measures_partite(const psep_measures* m, size_t i,
                                              psep_partite_measure* out);
PURESEP_API double psep_measures_mean_deficit(const psep_measures* m);
PURESEP_API double psep_measures_max_deficit(const psep_measures* m);
PURESEP_API double psep_measures_mean_entropy(const psep_measures* m);

/* ---- stress -------------------------------------------------------- */

typedef struct psep_stress_summary {
  size_t samples;
  size_t agreements;
  size_t disagreements;
  size_t per_partite_disagreements;
  size_t full_disagreements;
  size_t partially_separable_samples;
  size_t fully_separable_samples;
  /* +-infinity when the corresponding side never occurred. */
  double max_separable_deficit;
  double min_entangled_deficit;
  double max_separable_minor;
  double min_entangled_minor;
  int has_counterexample;
  size_t counterexample_index;
} psep_stress_summary;

typedef struct psep_stress_report psep_stress_report;

/* workers = 0 uses the hardware concurrency; results do not depend on it. */
PURESEP_API psep_status psep_stress(const size_t* dims, size_t n,
                                    size_t samples, uint64_t seed, double tol,
                                    size_t workers, psep_stress_report** out);
PURESEP_API void psep_stress_destroy(psep_stress_report* r);
PURESEP_API psep_status psep_stress_get_summary(const psep_stress_report* r,
                                                psep_stress_summary* out);
/* Borrowed; NULL when there is no counterexample. */
PURESEP_API const psep_state* psep_stress_counterexample(
    const psep_stress_report* r);

#ifdef __cplusplus
}
#endif

#endif /* PURESEP_H */
