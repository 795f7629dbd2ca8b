/* C interface to the diversity-optimization library. */
#ifndef EDO_EDO_H
#define EDO_EDO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EDO_BUILDING_LIBRARY)
#    define EDO_API __declspec(dllexport)
#  else
#    define EDO_API __declspec(dllimport)
#  endif
#else
#  define EDO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum edo_status {
  EDO_OK = 0,
  EDO_E_INVALID_ARGUMENT = 1,
  EDO_E_OUT_OF_RANGE = 2,
  EDO_E_PARSE = 3,
  EDO_E_IO = 4,
  EDO_E_CAP_EXCEEDED = 5,
  EDO_E_UNSUPPORTED = 6,
  EDO_E_INTERNAL = 7,
  EDO_E_UNKNOWN = 99
} edo_status;

typedef enum edo_problem { EDO_STSP = 0, EDO_ATSP = 1, EDO_QAP = 2 } edo_problem;
typedef enum edo_measure { EDO_MEASURE_N = 0, EDO_MEASURE_D = 1 } edo_measure;
typedef enum edo_tie_break { EDO_TIE_RANDOM = 0, EDO_TIE_FIRST = 1 } edo_tie_break;
typedef enum edo_init_mode {
  EDO_INIT_DUPLICATE_RANDOM = 0,
  EDO_INIT_DUPLICATE_OPT = 1,
  EDO_INIT_GIVEN = 2
} edo_init_mode;

typedef struct edo_instance edo_instance;
typedef struct edo_population edo_population;
typedef struct edo_run_record edo_run_record;

/* Message of the last failed call on this thread; never NULL. */
EDO_API const char* edo_last_error(void);
EDO_API const char* edo_version(void);

/* Instances ---------------------------------------------------------------- */

/* `sln_path` may be NULL. */
EDO_API edo_status edo_instance_load_qaplib(const char* dat_path, const char* sln_path,
                                            edo_instance** out);
EDO_API edo_status edo_instance_synthetic_qap(int n, uint64_t seed, edo_instance** out);
EDO_API edo_status edo_instance_synthetic_tsp(int n, int symmetric, uint64_t seed,
                                              edo_instance** out);
EDO_API void edo_instance_free(edo_instance* instance);
EDO_API int edo_instance_size(const edo_instance* instance);
EDO_API edo_problem edo_instance_problem(const edo_instance* instance);
EDO_API const char* edo_instance_name(const edo_instance* instance);
/* Returns 1 and writes the optimum when known, else 0. */
EDO_API int edo_instance_optimum(const edo_instance* instance, double* value);
/* `perm` holds n 0-based values. */
EDO_API edo_status edo_instance_cost(const edo_instance* instance, const int* perm, int n,
                                     double* out);

/* Populations -------------------------------------------------------------- */

/* `values` holds mu rows of n 0-based entries. */
EDO_API edo_status edo_population_create(edo_problem problem, int n, int mu, const int* values,
                                         edo_population** out);
EDO_API edo_status edo_population_read(const char* path, edo_population** out);
EDO_API edo_status edo_population_write(const edo_population* population, const char* path);
EDO_API void edo_population_free(edo_population* population);
EDO_API int edo_population_size(const edo_population* population);
EDO_API int edo_population_mu(const edo_population* population);
EDO_API edo_problem edo_population_problem(const edo_population* population);
/* Copies member `index` (n values, 0-based) into `out`. */
EDO_API edo_status edo_population_member(const edo_population* population, int index, int* out);

typedef struct edo_population_summary {
  int d_p;
  int64_t c_p;
  int min_count;
  double unique_fraction;
  int64_t d1;
  double d1_norm;
  int64_t d2;
  double d2_norm;
} edo_population_summary;

EDO_API edo_status edo_population_summarize(const edo_population* population,
                                            edo_population_summary* out);

/* `kind` is one of "qap-max", "stsp-max", "atsp-max", "qap-trap", "stsp-trap".
   `mu` is ignored by the trap builders. */
EDO_API edo_status edo_construct(const char* kind, int n, int mu, edo_population** out);

typedef struct edo_verify_report {
  int improvement_found;
  int64_t candidates_checked;
  int mutated;
  int removed;
} edo_verify_report;

/* `op` is an operator token (2opt, insertion, exchange, 3opt, 4opt, kopt:K).
   `cap` <= 0 selects the default. When a witness exists and `witness` is not
   NULL, the neighbor is written there (n values). */
EDO_API edo_status edo_verify(const edo_population* population, const char* op,
                              edo_measure measure, int64_t cap, edo_verify_report* report,
                              int* witness);

/* Runs --------------------------------------------------------------------- */

typedef struct edo_run_config {
  int mu;
  int64_t budget; /* <= 0: mu * n^2 */
  edo_measure measure;
  const char* op;
  double threshold; /* used when has_alpha == 0 */
  int has_alpha;
  double alpha;
  edo_init_mode init_mode;
  const edo_population* initial; /* EDO_INIT_GIVEN */
  uint64_t seed;
  int checkpoint_count;
  edo_tie_break tie_break;
  int early_stop;
} edo_run_config;

/* Defaults: infinite threshold, duplicate-random start, 1000 checkpoints,
   random ties, early stop on. */
EDO_API void edo_run_config_init(edo_run_config* config);

typedef struct edo_checkpoint {
  int64_t iteration;
  double d1_norm;
  double d2_norm;
  int d_p;
  int64_t c_p;
  double unique_fraction;
} edo_checkpoint;

EDO_API edo_status edo_run(const edo_instance* instance, const edo_run_config* config,
                           edo_run_record** out);
EDO_API void edo_run_record_free(edo_run_record* record);
EDO_API size_t edo_run_checkpoint_count(const edo_run_record* record);
EDO_API edo_status edo_run_checkpoint(const edo_run_record* record, size_t index,
                                      edo_checkpoint* out);
/* Returns 1 and writes the iteration when the run stopped early, else 0. */
EDO_API int edo_run_termination(const edo_run_record* record, int64_t* iteration);
EDO_API int64_t edo_run_evaluations(const edo_run_record* record);
EDO_API uint64_t edo_run_seed(const edo_run_record* record);
EDO_API edo_status edo_run_final_population(const edo_run_record* record, edo_population** out);
/* Either path may be NULL. */
EDO_API edo_status edo_run_write_csv(const edo_run_record* record, const char* trajectory_path,
                                     const char* summary_path);

/* Experiments -------------------------------------------------------------- */

typedef struct edo_unconstrained_spec {
  const edo_instance* const* instances;
  const char* const* labels;
  size_t instance_count;
  const int* mus;
  size_t mu_count;
  const edo_measure* measures;
  size_t measure_count;
  const char* op;
  int reps;
  uint64_t seed;
  int64_t budget; /* <= 0: mu * n^2 */
  int checkpoint_count;
  edo_tie_break tie_break;
  int threads; /* <= 0: hardware concurrency */
} edo_unconstrained_spec;

typedef struct edo_heatmap_spec {
  const int* ns;
  size_t n_count;
  const int* mus;
  size_t mu_count;
  const char* const* ops;
  size_t op_count;
  int reps;
  uint64_t seed;
  edo_tie_break tie_break;
  int threads;
} edo_heatmap_spec;

typedef struct edo_constrained_spec {
  const edo_instance* const* instances;
  const char* const* labels;
  size_t instance_count;
  const int* mus;
  size_t mu_count;
  const double* alphas;
  size_t alpha_count;
  const edo_measure* measures;
  size_t measure_count;
  const char* op;
  int reps;
  uint64_t seed;
  int64_t budget;
  edo_tie_break tie_break;
  int threads;
} edo_constrained_spec;

/* Each writes its CSV files into `out_dir`, creating it if needed. */
EDO_API edo_status edo_experiment_unconstrained(const edo_unconstrained_spec* spec,
                                                const char* out_dir);
EDO_API edo_status edo_experiment_heatmap(const edo_heatmap_spec* spec, const char* out_dir);
EDO_API edo_status edo_experiment_constrained(const edo_constrained_spec* spec,
                                              const char* out_dir);

/* Bounds ------------------------------------------------------------------- */

EDO_API edo_status edo_mu_guarantee_bound(edo_problem problem, const char* op, int n, int* out);

typedef struct edo_bound {
  int exact;       /* 0: only an asymptotic class is known */
  double value;
  char text[128];  /* exact fraction or asymptotic class */
} edo_bound;

EDO_API edo_status edo_improvement_bound(edo_problem problem, const char* op, int n, int mu,
                                         int d_p, edo_bound* out);
EDO_API edo_status edo_runtime_bound(edo_problem problem, const char* op, int n, int mu,
                                     edo_bound* out);

typedef struct edo_estimate {
  int64_t trials;
  int64_t successes;
  double frequency;
  double standard_error;
  double wilson_low;
  double wilson_high;
} edo_estimate;

EDO_API edo_status edo_estimate_improvement(const edo_population* population, const char* op,
                                            edo_measure measure, int64_t trials, uint64_t seed,
                                            edo_estimate* out);

#ifdef __cplusplus
}
#endif

#endif
