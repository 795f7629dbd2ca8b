#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "edo/edo.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

#define EXPECT_OK(call) EXPECT((call) == EDO_OK)

static void test_instances(void) {
  edo_instance* q = NULL;
  EXPECT_OK(edo_instance_synthetic_qap(6, 3, &q));
  EXPECT(edo_instance_size(q) == 6);
  EXPECT(edo_instance_problem(q) == EDO_QAP);
  double opt = 0;
  EXPECT(edo_instance_optimum(q, &opt) == 0);
  int perm[6] = {0, 1, 2, 3, 4, 5};
  double c = -1;
  EXPECT_OK(edo_instance_cost(q, perm, 6, &c));
  EXPECT(c >= 0);
  int bad[6] = {0, 0, 2, 3, 4, 5};
  EXPECT(edo_instance_cost(q, bad, 6, &c) == EDO_E_INVALID_ARGUMENT);
  EXPECT(strlen(edo_last_error()) > 0);
  EXPECT(edo_instance_cost(q, perm, 5, &c) != EDO_OK);
  edo_instance_free(q);

  edo_instance* t = NULL;
  EXPECT_OK(edo_instance_synthetic_tsp(7, 0, 1, &t));
  EXPECT(edo_instance_problem(t) == EDO_ATSP);
  edo_instance_free(t);

  edo_instance* missing = NULL;
  EXPECT(edo_instance_load_qaplib("/nonexistent/x.dat", NULL, &missing) == EDO_E_IO);
  EXPECT(missing == NULL);
  EXPECT(edo_instance_synthetic_qap(0, 1, &missing) == EDO_E_INVALID_ARGUMENT);
  EXPECT(edo_instance_synthetic_qap(4, 1, NULL) == EDO_E_INVALID_ARGUMENT);
  edo_instance_free(NULL);
}

static void test_populations(void) {
  const int values[] = {0, 1, 2, 3, 1, 2, 3, 0, 0, 1, 2, 3};
  edo_population* p = NULL;
  EXPECT_OK(edo_population_create(EDO_QAP, 4, 3, values, &p));
  EXPECT(edo_population_mu(p) == 3);
  EXPECT(edo_population_size(p) == 4);
  int member[4];
  EXPECT_OK(edo_population_member(p, 1, member));
  EXPECT(member[0] == 1 && member[3] == 0);
  EXPECT(edo_population_member(p, 3, member) == EDO_E_OUT_OF_RANGE);
  edo_population_summary s;
  EXPECT_OK(edo_population_summarize(p, &s));
  EXPECT(s.d_p == 2);
  EXPECT(s.c_p == 4);
  /* Ordered pairs: 0-1 and 1-2 differ fully, 0-2 are equal. */
  EXPECT(s.d1 == 16);
  EXPECT(s.d2 == 4);

  char path[] = "/tmp/edo_capi_popXXXXXX";
  int fd = mkstemp(path);
  EXPECT(fd >= 0);
  EXPECT_OK(edo_population_write(p, path));
  edo_population* back = NULL;
  EXPECT_OK(edo_population_read(path, &back));
  EXPECT(edo_population_mu(back) == 3);
  EXPECT_OK(edo_population_member(back, 1, member));
  EXPECT(member[0] == 1);
  remove(path);
  edo_population_free(back);
  edo_population_free(p);

  const int dup[] = {0, 0, 1, 2};
  EXPECT(edo_population_create(EDO_QAP, 4, 1, dup, &p) == EDO_E_INVALID_ARGUMENT);
}

static void test_construct_verify(void) {
  edo_population* trap = NULL;
  EXPECT_OK(edo_construct("qap-trap", 7, 0, &trap));
  EXPECT(edo_population_mu(trap) == 5);
  edo_verify_report report;
  EXPECT_OK(edo_verify(trap, "2opt", EDO_MEASURE_N, 0, &report, NULL));
  EXPECT(report.improvement_found == 0);
  EXPECT(report.candidates_checked == 5 * 5 * 21);
  edo_population_free(trap);

  const int dup[] = {0, 1, 2, 3, 4, 0, 1, 2, 3, 4};
  edo_population* d = NULL;
  EXPECT_OK(edo_population_create(EDO_QAP, 5, 2, dup, &d));
  int witness[5];
  EXPECT_OK(edo_verify(d, "2opt", EDO_MEASURE_D, 0, &report, witness));
  EXPECT(report.improvement_found == 1);
  EXPECT(memcmp(witness, dup, sizeof witness) != 0);
  EXPECT(edo_verify(d, "2opt", EDO_MEASURE_N, 5, &report, NULL) == EDO_E_CAP_EXCEEDED);
  EXPECT(edo_verify(d, "insertion", EDO_MEASURE_N, 0, &report, NULL) != EDO_OK);
  edo_population_free(d);

  edo_population* m = NULL;
  EXPECT_OK(edo_construct("stsp-max", 9, 4, &m));
  edo_population_summary s;
  EXPECT_OK(edo_population_summarize(m, &s));
  EXPECT(s.d_p == 1);
  EXPECT(fabs(s.d1_norm - 1.0) < 1e-12);
  edo_population_free(m);
  EXPECT(edo_construct("stsp-max", 9, 5, &m) == EDO_E_OUT_OF_RANGE);
  EXPECT(edo_construct("nonsense", 9, 2, &m) == EDO_E_INVALID_ARGUMENT);
}

static void test_runs(void) {
  edo_instance* q = NULL;
  EXPECT_OK(edo_instance_synthetic_qap(8, 2, &q));
  edo_run_config config;
  edo_run_config_init(&config);
  config.mu = 4;
  config.op = "2opt";
  config.seed = 99;
  config.checkpoint_count = 8;
  edo_run_record* a = NULL;
  edo_run_record* b = NULL;
  EXPECT_OK(edo_run(q, &config, &a));
  EXPECT_OK(edo_run(q, &config, &b));
  EXPECT(edo_run_seed(a) == 99);
  EXPECT(edo_run_evaluations(a) == edo_run_evaluations(b));
  EXPECT(edo_run_evaluations(a) <= 4 * 64);
  size_t count = edo_run_checkpoint_count(a);
  EXPECT(count > 0 && count == edo_run_checkpoint_count(b));
  for (size_t i = 0; i < count; ++i) {
    edo_checkpoint x, y;
    EXPECT_OK(edo_run_checkpoint(a, i, &x));
    EXPECT_OK(edo_run_checkpoint(b, i, &y));
    EXPECT(x.iteration == y.iteration && x.d1_norm == y.d1_norm && x.d_p == y.d_p);
  }
  edo_checkpoint none;
  EXPECT(edo_run_checkpoint(a, count, &none) == EDO_E_OUT_OF_RANGE);
  int64_t at = 0;
  if (edo_run_termination(a, &at)) {
    edo_population* final_population = NULL;
    EXPECT_OK(edo_run_final_population(a, &final_population));
    edo_population_summary s;
    EXPECT_OK(edo_population_summarize(final_population, &s));
    EXPECT(s.d_p == 1);
    edo_population_free(final_population);
  }
  edo_run_record_free(a);
  edo_run_record_free(b);

  config.has_alpha = 1;
  config.alpha = 0.1;
  EXPECT(edo_run(q, &config, &a) == EDO_E_INVALID_ARGUMENT);
  edo_run_config_init(&config);
  config.op = "exchange";
  EXPECT(edo_run(q, &config, &a) != EDO_OK);
  edo_instance_free(q);
}

static void test_bounds(void) {
  int mu = 0;
  EXPECT_OK(edo_mu_guarantee_bound(EDO_QAP, "2opt", 10, &mu));
  EXPECT(mu == 6);
  EXPECT(edo_mu_guarantee_bound(EDO_STSP, "insertion", 10, &mu) == EDO_E_UNSUPPORTED);
  edo_bound b;
  EXPECT_OK(edo_improvement_bound(EDO_STSP, "2opt", 10, 3, 2, &b));
  EXPECT(b.exact == 1);
  EXPECT(strcmp(b.text, "1/105") == 0);
  EXPECT(fabs(b.value - 1.0 / 105) < 1e-15);
  EXPECT_OK(edo_improvement_bound(EDO_ATSP, "4opt", 12, 3, 2, &b));
  EXPECT(b.exact == 0);
  EXPECT(strlen(b.text) > 0);
  EXPECT_OK(edo_runtime_bound(EDO_STSP, "2opt", 10, 2, &b));
  EXPECT(fabs(b.value - 700.0) < 1e-9);

  const int dup[] = {0, 1, 2, 3, 4, 5, 6, 7, 0, 1, 2, 3, 4, 5, 6, 7, 0, 1, 2, 3, 4, 5, 6, 7};
  edo_population* p = NULL;
  EXPECT_OK(edo_population_create(EDO_QAP, 8, 3, dup, &p));
  edo_estimate e;
  EXPECT_OK(edo_estimate_improvement(p, "2opt", EDO_MEASURE_N, 5000, 3, &e));
  EXPECT(e.trials == 5000);
  EXPECT(e.successes > 0);
  EXPECT(e.wilson_low <= e.frequency && e.frequency <= e.wilson_high);
  edo_population_free(p);
}

static void test_experiment(const char* dir) {
  const int ns[] = {6};
  const int mus[] = {3, 6};
  const char* ops[] = {"2opt"};
  edo_heatmap_spec spec;
  memset(&spec, 0, sizeof spec);
  spec.ns = ns;
  spec.n_count = 1;
  spec.mus = mus;
  spec.mu_count = 2;
  spec.ops = ops;
  spec.op_count = 1;
  spec.reps = 2;
  spec.seed = 1;
  spec.threads = 1;
  EXPECT_OK(edo_experiment_heatmap(&spec, dir));
  char path[512];
  snprintf(path, sizeof path, "%s/heatmap.csv", dir);
  FILE* f = fopen(path, "r");
  EXPECT(f != NULL);
  if (f) fclose(f);
  spec.reps = 0;
  EXPECT(edo_experiment_heatmap(&spec, dir) == EDO_E_INVALID_ARGUMENT);
}

int main(int argc, char** argv) {
  EXPECT(strlen(edo_version()) > 0);
  test_instances();
  test_populations();
  test_construct_verify();
  test_runs();
  test_bounds();
  test_experiment(argc > 1 ? argv[1] : "/tmp");
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  puts("c api: all checks passed");
  return 0;
}
