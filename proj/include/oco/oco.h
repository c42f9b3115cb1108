/*
 * oco - online convex optimization under stochastic sub-gradient
 * observation failures.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * and a per-thread error message. All functions returning oco_status set the
 * message retrievable via oco_last_error() on failure.
 */
#ifndef OCO_OCO_H
#define OCO_OCO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OCO_API __declspec(dllexport)
#else
#define OCO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oco_status {
  OCO_OK = 0,
  OCO_ERR_INVALID_ARGUMENT = 1,
  OCO_ERR_CONFIG = 2,
  OCO_ERR_IO = 3,
  OCO_ERR_BOUND_VIOLATION = 4,
  OCO_ERR_INTERNAL = 5
} oco_status;

OCO_API const char* oco_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
OCO_API const char* oco_last_error(void);

/* ---- mixture prior and posterior observation probability ---- */

typedef struct oco_prior oco_prior;

OCO_API oco_prior* oco_prior_new(void);
OCO_API void oco_prior_free(oco_prior* prior);
OCO_API oco_status oco_prior_add_beta(oco_prior* prior, double alpha, double beta, double weight);
OCO_API oco_status oco_prior_add_mass(oco_prior* prior, double p, double weight);
/* Validates the accumulated components (weights must sum to 1). Must be
 * called before the prior is used. */
OCO_API oco_status oco_prior_finalize(oco_prior* prior);

/* Extract the prior block of a config file into a fresh handle (already
 * finalized). For scheduled priors this is the first entry. */
OCO_API oco_status oco_prior_from_config(const char* config_path, oco_prior** out);

/* (gap, p, lower_bound) CSV for gaps 1..max_gap. out_path "-" writes to
 * stdout. */
OCO_API oco_status oco_prior_demo_csv(const oco_prior* prior, long max_gap, const char* out_path);

typedef struct oco_posterior oco_posterior;

OCO_API oco_status oco_posterior_new(const oco_prior* prior, oco_posterior** out);
OCO_API void oco_posterior_free(oco_posterior* post);
OCO_API oco_status oco_posterior_reset(oco_posterior* post);
OCO_API oco_status oco_posterior_advance(oco_posterior* post);
OCO_API oco_status oco_posterior_p(const oco_posterior* post, double* out);
OCO_API oco_status oco_posterior_lower_bound(const oco_posterior* post, double* out);

/* ---- empirical gap histogram ---- */

typedef struct oco_gap_hist oco_gap_hist;

OCO_API oco_gap_hist* oco_gap_hist_new(int exclude_current);
OCO_API void oco_gap_hist_free(oco_gap_hist* hist);
OCO_API oco_status oco_gap_hist_advance_round(oco_gap_hist* hist);
OCO_API oco_status oco_gap_hist_record(oco_gap_hist* hist, long gap, double* p_hat_out);
OCO_API oco_status oco_gap_hist_cdf(const oco_gap_hist* hist, long d, double* out);
OCO_API oco_status oco_gap_hist_dump_csv(const oco_gap_hist* hist, const char* out_path);

/* ---- projected sub-gradient descent ---- */

typedef struct oco_optimizer oco_optimizer;

OCO_API oco_status oco_optimizer_new_ball(const double* center, size_t dim, double radius,
                                          oco_optimizer** out);
OCO_API oco_status oco_optimizer_new_box(const double* lower, const double* upper, size_t dim,
                                         oco_optimizer** out);
OCO_API void oco_optimizer_free(oco_optimizer* opt);
/* Adaptive-step update with a substitute gradient; the zero vector leaves
 * the state untouched. */
OCO_API oco_status oco_optimizer_step(oco_optimizer* opt, const double* g_tilde, size_t dim);
OCO_API oco_status oco_optimizer_step_fixed(oco_optimizer* opt, const double* g_tilde, size_t dim,
                                            double eta);
OCO_API oco_status oco_optimizer_decision(const oco_optimizer* opt, double* out, size_t dim);
OCO_API oco_status oco_optimizer_normalizer_sq(const oco_optimizer* opt, double* out);
OCO_API oco_status oco_optimizer_diameter(const oco_optimizer* opt, double* out);

/* ---- experiments ---- */

typedef struct oco_experiment oco_experiment;

OCO_API oco_status oco_experiment_load(const char* config_path, oco_experiment** out);
OCO_API oco_status oco_experiment_load_string(const char* config_json, oco_experiment** out);
OCO_API void oco_experiment_free(oco_experiment* exp);

OCO_API oco_status oco_experiment_set_seed(oco_experiment* exp, uint64_t seed);
OCO_API oco_status oco_experiment_set_trials(oco_experiment* exp, long trials);
OCO_API oco_status oco_experiment_set_rounds(oco_experiment* exp, long rounds);
/* Comma-separated subset of: ignore, with_known, with_prior, uniform, gml,
 * empirical_ep. */
OCO_API oco_status oco_experiment_set_variants(oco_experiment* exp, const char* csv_list);
OCO_API oco_status oco_experiment_set_out_dir(oco_experiment* exp, const char* dir);

OCO_API oco_status oco_experiment_validate(const oco_experiment* exp);

/* "synthetic", "regression" or "classification"; NULL for a null handle. */
OCO_API const char* oco_experiment_env_kind(const oco_experiment* exp);

/* Runs all (variant, trial) pairs and writes traces.csv + summary.json under
 * the configured output directory. Returns OCO_ERR_BOUND_VIOLATION when an
 * enabled bound check failed. */
OCO_API oco_status oco_experiment_run(const oco_experiment* exp);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OCO_OCO_H */
