/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "puresep/puresep.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: EXPECT(%s) failed; last error: %s\n",    \
              __FILE__, __LINE__, #cond, psep_last_error());           \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

#define EXPECT_STATUS(call, want) EXPECT((call) == (want))

static psep_state* bell(void) {
  const size_t dims[] = {2, 2};
  const double r = 1.0 / sqrt(2.0);
  const double amps[] = {r, 0, 0, 0, 0, 0, r, 0};
  psep_state* s = NULL;
  EXPECT_STATUS(psep_state_create(dims, 2, amps, 4, 0, &s), PSEP_OK);
  return s;
}

static void test_create_and_inspect(void) {
  const size_t dims[] = {2, 3};
  const double amps[] = {3, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0};
  psep_state* s = NULL;
  EXPECT_STATUS(psep_state_create(dims, 2, amps, 5, 1, &s), PSEP_ERR_DIM_MISMATCH);
  EXPECT(s == NULL);
  EXPECT(strstr(psep_last_error(), "") != NULL);
  EXPECT_STATUS(psep_state_create(dims, 2, amps, 6, 0, &s), PSEP_OK);
  psep_report* unnormalized = NULL;
  EXPECT_STATUS(psep_check(s, PSEP_DEFAULT_TOLERANCE, &unnormalized), PSEP_ERR_INVALID_ARGUMENT);
  psep_state_destroy(s);
  EXPECT_STATUS(psep_state_create(dims, 2, amps, 6, 1, &s), PSEP_OK);
  EXPECT(psep_state_num_partites(s) == 2);
  EXPECT(psep_state_dim(s, 1) == 3);
  EXPECT(psep_state_size(s) == 6);
  double out[12];
  EXPECT_STATUS(psep_state_amplitudes(s, out, 4), PSEP_ERR_BUFFER_TOO_SMALL);
  EXPECT_STATUS(psep_state_amplitudes(s, out, 12), PSEP_OK);
  EXPECT(fabs(out[0] - 0.6) < 1e-15);
  EXPECT(fabs(out[7] - 0.8) < 1e-15);
  EXPECT(psep_state_label(s) == NULL);
  EXPECT_STATUS(psep_state_set_label(s, "demo"), PSEP_OK);
  EXPECT(strcmp(psep_state_label(s), "demo") == 0);

  psep_state* c = psep_state_clone(s);
  double f = 0;
  EXPECT_STATUS(psep_fidelity(s, c, &f), PSEP_OK);
  EXPECT(fabs(f - 1.0) < 1e-15);
  psep_state_destroy(c);
  psep_state_destroy(s);

  const double zero[] = {0, 0, 0, 0};
  const size_t one[] = {2};
  EXPECT_STATUS(psep_state_create(one, 1, zero, 2, 1, &s), PSEP_ERR_ZERO_STATE);
  EXPECT(strlen(psep_last_error()) > 0);
  EXPECT(strcmp(psep_status_name(PSEP_ERR_ZERO_STATE), "ZeroState") == 0 ||
         strlen(psep_status_name(PSEP_ERR_ZERO_STATE)) > 0);
  EXPECT(strlen(psep_version()) > 0);
}

static void test_serialize_round_trip(void) {
  const size_t dims[] = {2, 3, 2};
  psep_state* s = NULL;
  EXPECT_STATUS(psep_state_generate(PSEP_KIND_HAAR, dims, 3, 42, 0.0, &s), PSEP_OK);
  EXPECT_STATUS(psep_state_set_label(s, "haar"), PSEP_OK);
  size_t needed = 0;
  EXPECT_STATUS(psep_state_serialize(s, 0, NULL, 0, &needed), PSEP_OK);
  char tiny[4];
  EXPECT_STATUS(psep_state_serialize(s, 0, tiny, sizeof tiny, NULL), PSEP_ERR_BUFFER_TOO_SMALL);
  char* buf = malloc(needed);
  EXPECT_STATUS(psep_state_serialize(s, 0, buf, needed, &needed), PSEP_OK);
  psep_state* back = NULL;
  int renormalized = -1;
  EXPECT_STATUS(psep_state_parse(buf, &back, &renormalized), PSEP_OK);
  EXPECT(renormalized == 0);
  EXPECT(strcmp(psep_state_label(back), "haar") == 0);
  double a[24], b[24];
  psep_state_amplitudes(s, a, 24);
  psep_state_amplitudes(back, b, 24);
  EXPECT(memcmp(a, b, sizeof a) == 0);
  free(buf);
  psep_state_destroy(back);
  psep_state_destroy(s);

  EXPECT_STATUS(psep_state_parse("{\"dims\": [2, 1]}", &back, NULL), PSEP_ERR_PARSE);
  EXPECT(strstr(psep_last_error(), "dims") != NULL);
  psep_kind k;
  EXPECT_STATUS(psep_kind_from_name("near-product", &k), PSEP_OK);
  EXPECT(k == PSEP_KIND_NEAR_PRODUCT);
  EXPECT_STATUS(psep_kind_from_name("cat", &k), PSEP_ERR_BAD_SPEC);
  const size_t bad[] = {2, 3};
  EXPECT_STATUS(psep_state_generate(PSEP_KIND_BELL, bad, 2, 0, 0.0, &s), PSEP_ERR_BAD_SPEC);
}

static void test_check(void) {
  psep_state* s = bell();
  psep_report* r = NULL;
  EXPECT_STATUS(psep_check(s, PSEP_DEFAULT_TOLERANCE, &r), PSEP_OK);
  EXPECT(psep_report_num_partites(r) == 2);
  EXPECT(!psep_report_fully_separable(r));
  EXPECT(!psep_report_any_borderline(r));
  EXPECT(psep_report_tolerance(r) == PSEP_DEFAULT_TOLERANCE);
  psep_partite_verdict v;
  EXPECT_STATUS(psep_report_partite(r, 1, &v), PSEP_OK);
  EXPECT(v.partite == 1);
  EXPECT(fabs(v.deficit - 1.0) < 1e-12);
  EXPECT(fabs(v.target - 1.0) < 1e-15);
  EXPECT(!v.separable && !v.norm_separable && !v.minor_separable);
  EXPECT_STATUS(psep_report_partite(r, 2, &v), PSEP_ERR_BAD_INDEX);
  psep_report_destroy(r);

  EXPECT_STATUS(psep_check_norm(s, 0.0, &r), PSEP_ERR_INVALID_ARGUMENT);

  int ok = -1;
  EXPECT_STATUS(psep_minor_criterion(s, 0, PSEP_DEFAULT_TOLERANCE, &ok), PSEP_OK);
  EXPECT(ok == 0);
  const size_t cut[] = {0};
  EXPECT_STATUS(psep_bipartition_separable(s, cut, 1, PSEP_DEFAULT_TOLERANCE, &ok), PSEP_OK);
  EXPECT(ok == 0);
  const size_t all[] = {0, 1};
  EXPECT_STATUS(psep_bipartition_separable(s, all, 2, PSEP_DEFAULT_TOLERANCE, &ok),
                PSEP_ERR_BAD_SUBSET);

  double xi[3];
  size_t len = 0;
  EXPECT_STATUS(psep_coherence_vector(s, 0, xi, 3, &len), PSEP_OK);
  EXPECT(len == 3);
  EXPECT(fabs(xi[0]) + fabs(xi[1]) + fabs(xi[2]) < 1e-15);
  EXPECT_STATUS(psep_coherence_vector(s, 5, xi, 3, &len), PSEP_ERR_BAD_INDEX);

  double rho[8];
  size_t dim = 0;
  EXPECT_STATUS(psep_partial_trace(s, cut, 1, rho, 8, &dim), PSEP_OK);
  EXPECT(dim == 2);
  EXPECT(fabs(rho[0] - 0.5) < 1e-15 && fabs(rho[6] - 0.5) < 1e-15);

  double sv[2];
  size_t rank = 0;
  EXPECT_STATUS(psep_schmidt(s, cut, 1, 1e-8, sv, 2, &len, &rank), PSEP_OK);
  EXPECT(rank == 2 && len == 2);
  double p = 0;
  EXPECT_STATUS(psep_purity(s, 1, &p), PSEP_OK);
  EXPECT(fabs(p - 0.5) < 1e-15);

  const size_t swap[] = {1, 0};
  const size_t dup[] = {0, 0};
  psep_state* t = NULL;
  EXPECT_STATUS(psep_permute(s, swap, 2, &t), PSEP_OK);
  psep_state_destroy(t);
  EXPECT_STATUS(psep_permute(s, dup, 2, &t), PSEP_ERR_BAD_PERMUTATION);
  psep_state_destroy(s);
}

static void test_factorize(void) {
  const size_t dims[] = {2, 2};
  const double r = 1.0 / sqrt(2.0);
  const double amps[] = {0.6 * r, 0, 0.6 * r, 0, 0.8 * r, 0, 0.8 * r, 0};
  psep_state* s = NULL;
  EXPECT_STATUS(psep_state_create(dims, 2, amps, 4, 0, &s), PSEP_OK);
  psep_factorization* f = NULL;
  EXPECT_STATUS(psep_factorize(s, PSEP_DEFAULT_TOLERANCE, &f), PSEP_OK);
  EXPECT(psep_factorization_count(f) == 2);
  EXPECT(psep_factorization_fidelity(f) >= 1 - 1e-10);
  double v[4];
  psep_state_amplitudes(psep_factorization_factor(f, 0), v, 4);
  EXPECT(fabs(v[0] - 0.6) < 1e-15 && fabs(v[2] - 0.8) < 1e-15);
  EXPECT(psep_factorization_factor(f, 2) == NULL);
  psep_factorization_destroy(f);
  psep_state_destroy(s);

  s = bell();
  EXPECT_STATUS(psep_factorize(s, PSEP_DEFAULT_TOLERANCE, &f), PSEP_ERR_NOT_SEPARABLE);
  EXPECT(f == NULL);
  psep_state_destroy(s);
}

static void test_measure_and_stress(void) {
  const size_t dims[] = {2, 2, 2};
  psep_state* w = NULL;
  EXPECT_STATUS(psep_state_generate(PSEP_KIND_W, dims, 3, 0, 0.0, &w), PSEP_OK);
  psep_measures* m = NULL;
  EXPECT_STATUS(psep_measure(w, &m), PSEP_OK);
  EXPECT(psep_measures_num_partites(m) == 3);
  psep_partite_measure pm;
  EXPECT_STATUS(psep_measures_partite(m, 2, &pm), PSEP_OK);
  EXPECT(fabs(pm.deficit - 8.0 / 9.0) < 1e-12);
  EXPECT(fabs(pm.von_neumann_bits - 0.9183) < 1e-3);
  EXPECT(fabs(psep_measures_mean_entropy(m) - pm.von_neumann_bits) < 1e-12);
  EXPECT(fabs(psep_measures_max_deficit(m) - 8.0 / 9.0) < 1e-12);
  EXPECT(fabs(psep_measures_mean_deficit(m) - 8.0 / 9.0) < 1e-12);
  psep_measures_destroy(m);
  psep_state_destroy(w);

  psep_stress_report* r = NULL;
  EXPECT_STATUS(psep_stress(dims, 3, 0, 1, 1e-8, 0, &r), PSEP_ERR_BAD_SPEC);
  EXPECT_STATUS(psep_stress(dims, 3, 500, 1, 1e-8, 2, &r), PSEP_OK);
  psep_stress_summary sum;
  EXPECT_STATUS(psep_stress_get_summary(r, &sum), PSEP_OK);
  EXPECT(sum.samples == 500 && sum.agreements == 500 && sum.disagreements == 0);
  EXPECT(!sum.has_counterexample);
  EXPECT(psep_stress_counterexample(r) == NULL);
  psep_stress_destroy(r);
}

static void test_null_arguments(void) {
  EXPECT_STATUS(psep_state_create(NULL, 0, NULL, 0, 0, NULL), PSEP_ERR_INVALID_ARGUMENT);
  EXPECT_STATUS(psep_check(NULL, 1e-8, NULL), PSEP_ERR_INVALID_ARGUMENT);
  psep_state_destroy(NULL);
  psep_report_destroy(NULL);
  psep_factorization_destroy(NULL);
  psep_measures_destroy(NULL);
  psep_stress_destroy(NULL);
}

int main(void) {
  test_create_and_inspect();
  test_serialize_round_trip();
  test_check();
  test_factorize();
  test_measure_and_stress();
  test_null_arguments();
  if (failures) {
    fprintf(stderr, "%d expectation(s) failed\n", failures);
    return 1;
  }
  printf("capi: all expectations passed\n");
  return 0;
}
