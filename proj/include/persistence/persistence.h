/*
 * persistence — a two-slot stream-buffer observation toolkit.
 *
 * A stream of valued items passes through two buffer slots, one step per
 * slot. A single observer moves synchronously with the stream: following an
 * item from the entry slot to the exit slot earns its value twice but skips
 * the item behind it. The library simulates observation policies on such
 * streams, computes the offline optimum, evaluates the exact and asymptotic
 * closed forms for random-permutation and iid stream models, and
 * cross-validates the closed forms against exhaustive enumeration.
 *
 * Conventions:
 *   - All values, probabilities and results are exact rationals passed as
 *     strings: "7", "-3/4" or "0.25" on input, canonical "num/den" on output.
 *   - Output strings are allocated by the library; release them with
 *     persist_string_free().
 *   - Every fallible call returns persist_status; on failure
 *     persist_last_error() describes the problem (thread-local).
 */

#ifndef PERSISTENCE_H
#define PERSISTENCE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PERSIST_API __declspec(dllexport)
#else
#define PERSIST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum persist_status {
  PERSIST_OK = 0,
  PERSIST_ERR_USAGE = 1,  /* null handle, malformed rational, bad argument */
  PERSIST_ERR_GUARD = 2,  /* an enumeration size guard refused the request */
  PERSIST_ERR_DOMAIN = 3, /* parameter outside the documented domain */
  PERSIST_ERR_INTERNAL = 4
} persist_status;

/* How many steps a run covers: the stream length n, or n+1 so the final item
 * can still be observed in the exit slot. */
typedef enum persist_horizon {
  PERSIST_HORIZON_N = 0,
  PERSIST_HORIZON_N_PLUS_ONE = 1
} persist_horizon;

typedef struct persist_stream persist_stream; /* ordered rational values */
typedef struct persist_policy persist_policy;
typedef struct persist_trace persist_trace;
typedef struct persist_model persist_model; /* permutation or iid stream model */

PERSIST_API const char* persist_version(void);

/* Message for the most recent failing call on this thread. */
PERSIST_API const char* persist_last_error(void);

PERSIST_API void persist_string_free(char* s);

/* ------------------------------------------------------------------------ */
/* Streams and value lists. A persist_stream is a plain ordered sequence of
 * rationals; several functions reuse it as a value multiset and say so. */

PERSIST_API persist_status persist_stream_from_strings(const char* const* items, size_t count,
                                                       persist_stream** out);

/* One rational per line; '#' starts a comment. */
PERSIST_API persist_status persist_stream_from_file(const char* path, persist_stream** out);

/* lo,hi,lo,hi,... of the given length; needs lo < hi and length >= 2. */
PERSIST_API persist_status persist_stream_alternating(const char* lo, const char* hi,
                                                      uint64_t length, persist_stream** out);

/* Draws one instance from a model (see persist_model_* below). */
PERSIST_API persist_status persist_stream_sample(const persist_model* model, uint64_t seed,
                                                 persist_stream** out);

PERSIST_API persist_status persist_stream_length(const persist_stream* s, uint64_t* out);
PERSIST_API persist_status persist_stream_value(const persist_stream* s, uint64_t index,
                                                char** out);
PERSIST_API void persist_stream_free(persist_stream* s);

/* Slot contents at step t (1 <= t <= n+1). A slot outside the boundary is
 * reported as absent, never as a zero value. */
PERSIST_API persist_status persist_buffer_at(const persist_stream* s, uint64_t t,
                                             int* slot0_present, char** slot0, int* slot1_present,
                                             char** slot1);

/* ------------------------------------------------------------------------ */
/* Policies. */

PERSIST_API persist_status persist_policy_naive(persist_policy** out);
PERSIST_API persist_status persist_policy_threshold(const char* threshold, persist_policy** out);

/* Threshold fixed to the k-th largest / median value of the multiset. */
PERSIST_API persist_status persist_policy_rank(const persist_stream* values, uint64_t k,
                                               persist_policy** out);
PERSIST_API persist_status persist_policy_median(const persist_stream* values,
                                                 persist_policy** out);
PERSIST_API void persist_policy_free(persist_policy* p);

PERSIST_API persist_status persist_median_threshold(const persist_stream* values, char** out);
PERSIST_API persist_status persist_rank_threshold(const persist_stream* values, uint64_t k,
                                                  char** out);

/* ------------------------------------------------------------------------ */
/* Engine. */

PERSIST_API persist_status persist_simulate(const persist_stream* s, const persist_policy* p,
                                            persist_horizon horizon, persist_trace** out);

PERSIST_API persist_status persist_trace_total(const persist_trace* t, char** out);
/* total divided by the number of steps of the configured horizon */
PERSIST_API persist_status persist_trace_relative(const persist_trace* t, char** out);
PERSIST_API persist_status persist_trace_step_count(const persist_trace* t, uint64_t* out);
/* position: 0 = entry slot, 1 = exit slot. observed = 0 marks an empty slot
 * (payoff "0/1" and *value set to NULL). */
PERSIST_API persist_status persist_trace_step(const persist_trace* t, uint64_t index,
                                              uint64_t* time, int* position, int* observed,
                                              char** value);
/* 0, 1 or 2 observations of one item (0-based). */
PERSIST_API persist_status persist_trace_observation_count(const persist_trace* t, uint64_t item,
                                                           int* out);
PERSIST_API void persist_trace_free(persist_trace* t);

PERSIST_API persist_status persist_offline_payoff(const persist_stream* s, persist_horizon horizon,
                                                  char** total, char** relative);

/* Independent dynamic-program validator; schedule is a string of '0'/'1'
 * slot digits, one per step. */
PERSIST_API persist_status persist_offline_dp(const persist_stream* s, persist_horizon horizon,
                                              char** value, char** schedule);

/* ------------------------------------------------------------------------ */
/* Stream models. */

/* Uniformly random arrangement of the given distinct values. */
PERSIST_API persist_status persist_model_permutation(const persist_stream* values,
                                                     persist_model** out);

/* length independent draws: value i with probability probs[i]; values must
 * be strictly increasing and the probabilities must sum to exactly 1. */
PERSIST_API persist_status persist_model_iid(const persist_stream* values,
                                             const persist_stream* probs, uint64_t length,
                                             persist_model** out);
PERSIST_API void persist_model_free(persist_model* m);

/* ------------------------------------------------------------------------ */
/* Density of a value multiset. */

PERSIST_API persist_status persist_measure_density(const persist_stream* values, char** c,
                                                   uint64_t* top_count, char** lhs, char** rhs,
                                                   char** residual);

/* t-element multiset that is exactly c-dense, c in (0, 1/2]. */
PERSIST_API persist_status persist_synth_c_dense(const char* c, uint64_t t, persist_stream** out);

/* ------------------------------------------------------------------------ */
/* Closed forms. Rational in, rational out; see the library documentation
 * for the defining expressions. */

PERSIST_API persist_status persist_f_tnk(uint64_t t, uint64_t n, uint64_t k, char** out);
PERSIST_API persist_status persist_identity_sum_f_a(uint64_t n, uint64_t k, char** lhs,
                                                    char** rhs);
PERSIST_API persist_status persist_identity_sum_f_b(uint64_t n, uint64_t k, char** lhs,
                                                    char** rhs);
PERSIST_API persist_status persist_asymptotic_coefficient(uint64_t n, uint64_t k, char** out);

/* values: multiset handle (order ignored) */
PERSIST_API persist_status persist_perm_opt_relative(const persist_stream* values, char** out);
PERSIST_API persist_status persist_perm_opt_total(const persist_stream* values,
                                                  persist_horizon horizon, char** out);
PERSIST_API persist_status persist_perm_threshold_total(const persist_stream* values, uint64_t k,
                                                        char** out);
PERSIST_API persist_status persist_perm_threshold_relative_asymptotic(const char* total_weight,
                                                                      const char* top_weight,
                                                                      uint64_t n, const char* c,
                                                                      char** out);

PERSIST_API persist_status persist_iid_opt_relative(const persist_stream* values,
                                                    const persist_stream* probs, char** out);
PERSIST_API persist_status persist_iid_threshold_relative(const persist_stream* values,
                                                          const persist_stream* probs, uint64_t r,
                                                          char** out);
PERSIST_API persist_status persist_iid_threshold_total(const persist_stream* values,
                                                       const persist_stream* probs, uint64_t r,
                                                       uint64_t n, char** out);

/* Probability that the observer sits at the entry slot: recurrence
 * iteration, its closed form, and the one-off variant kept for comparison. */
PERSIST_API persist_status persist_q_recurrence(uint64_t i, const char* p, char** out);
PERSIST_API persist_status persist_q_closed_form(uint64_t i, const char* p, char** out);
PERSIST_API persist_status persist_q_printed_form(uint64_t i, const char* p, char** out);

/* Competitive-ratio spectrum (1/2)(2-c)/((1-c)(1+c)^2), c in (0, 1/2]. */
PERSIST_API persist_status persist_rho(const char* c, char** out);
PERSIST_API persist_status persist_competitive_bound_perm(const char* total_weight,
                                                          const char* top_weight, const char* c,
                                                          char** out);

/* Flat JSON object with every closed form for (model, policy). policy may be
 * NULL for an offline-only record; threshold policies fill the alg fields. */
PERSIST_API persist_status persist_forecast_json(const persist_model* model,
                                                 const persist_policy* policy, char** json_out);

/* ------------------------------------------------------------------------ */
/* Ground truth. policy == NULL measures the offline optimum. */

/* Exhaustive expectation; refuses oversized state spaces with
 * PERSIST_ERR_GUARD (n > 9 for permutations, k^n > 10^6 for iid). */
PERSIST_API persist_status persist_enumerate(const persist_model* model,
                                             const persist_policy* policy,
                                             persist_horizon horizon, char** mean,
                                             char** mean_relative, uint64_t* outcomes);

/* Seeded Monte Carlo; trial i uses a pure counter mix of (base_seed, i), so
 * any worker count gives bit-identical results. relative != 0 averages
 * per-step payoffs instead of totals. */
PERSIST_API persist_status persist_monte_carlo(const persist_model* model,
                                               const persist_policy* policy,
                                               persist_horizon horizon, uint64_t trials,
                                               uint64_t base_seed, int relative, unsigned workers,
                                               char** mean, double* mean_value, double* std_error);

/* ------------------------------------------------------------------------ */
/* Cross-validation suite. Writes a JSON report (array of {name, summary,
 * passed, detail}) and sets *all_passed accordingly. */
PERSIST_API persist_status persist_verify_run(char** json_report, int* all_passed);

/* ------------------------------------------------------------------------ */
/* Report rows used by the sweep front end. Each call writes one flat JSON
 * object. The density row is flagged "feasible": false instead of failing
 * when the requested density cannot be synthesized. */
PERSIST_API persist_status persist_sweep_cdense_row(const char* c, uint64_t t, char** json_row);
PERSIST_API persist_status persist_sweep_adversarial_row(const char* lo, const char* hi,
                                                         uint64_t length, char** json_row);

#ifdef __cplusplus
}
#endif

#endif /* PERSISTENCE_H */
