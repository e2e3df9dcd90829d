/* sigcore: system-signature and relative-quality computations for
 * semicoherent systems, behind a C ABI.
 *
 * Conventions:
 *   - Components are numbered 1..n at the JSON boundary; subset arguments
 *     are bitmasks with bit i set for component i+1.
 *   - Every function returns a sigcore_status; output parameters are only
 *     written on SIGCORE_OK. sigcore_last_error() describes the most
 *     recent failure on the calling thread.
 *   - Handles are created by sigcore_*_create/from_json functions and
 *     released with the matching sigcore_*_free. Handles are immutable
 *     and safe to share across threads.
 */
#ifndef SIGCORE_H
#define SIGCORE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SIGCORE_API __declspec(dllexport)
#else
#define SIGCORE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sigcore_status {
  SIGCORE_OK = 0,
  SIGCORE_ERROR_PARSE = 1,    /* malformed or invalid input file/text */
  SIGCORE_ERROR_DOMAIN = 2,   /* parameter out of range, cap exceeded */
  SIGCORE_ERROR_MISMATCH = 3, /* arity or model/route incompatibility */
  SIGCORE_ERROR_NUMERIC = 4,  /* non-convergence or inconsistent tables */
  SIGCORE_ERROR_NULL = 5,     /* required pointer argument was NULL */
  SIGCORE_ERROR_INTERNAL = 6
} sigcore_status;

typedef enum sigcore_route {
  SIGCORE_ROUTE_AUTO = 0,
  SIGCORE_ROUTE_EXCHANGEABLE = 1,
  SIGCORE_ROUTE_ORDER_PROBS = 2,
  SIGCORE_ROUTE_QUADRATURE = 3,
  SIGCORE_ROUTE_WEIBULL_CLOSED_FORM = 4,
  SIGCORE_ROUTE_WEIBULL_DIFFERENCE = 5
} sigcore_route;

typedef struct sigcore_structure sigcore_structure; /* opaque */
typedef struct sigcore_model sigcore_model;         /* opaque */
typedef struct sigcore_quality sigcore_quality;     /* opaque */

SIGCORE_API const char* sigcore_version(void);
SIGCORE_API const char* sigcore_status_name(sigcore_status status);
/* Message for the last failing call on this thread; empty string if none. */
SIGCORE_API const char* sigcore_last_error(void);
/* Stable name for a route ("exchangeable", "quadrature", ...). */
SIGCORE_API const char* sigcore_route_name(sigcore_route route);

/* ---- structures ------------------------------------------------------ */

/* Parses {"n":..., "structure":{...}}; see the file-format documentation. */
SIGCORE_API sigcore_status sigcore_structure_from_json(const char* json_text,
                                                       sigcore_structure** out);
SIGCORE_API sigcore_status sigcore_structure_series(int n, sigcore_structure** out);
SIGCORE_API sigcore_status sigcore_structure_parallel(int n, sigcore_structure** out);
SIGCORE_API sigcore_status sigcore_structure_k_out_of_n(int n, int k,
                                                        sigcore_structure** out);
/* Builds from minimal path sets given as bitmasks (antichain required). */
SIGCORE_API sigcore_status sigcore_structure_from_paths(int n, const uint32_t* paths,
                                                        size_t n_paths,
                                                        sigcore_structure** out);
SIGCORE_API void sigcore_structure_free(sigcore_structure* s);

SIGCORE_API int sigcore_structure_n(const sigcore_structure* s);
SIGCORE_API sigcore_status sigcore_structure_evaluate(const sigcore_structure* s,
                                                      uint32_t subset, int* out_state);
/* Copies the full truth table (2^n entries, index = subset mask). */
SIGCORE_API sigcore_status sigcore_structure_table(const sigcore_structure* s,
                                                   uint8_t* out_table);
/* out_flag = 1 when semicoherent; otherwise the first violation is
 * written (NUL-terminated, truncated to report_size). */
SIGCORE_API sigcore_status sigcore_structure_is_semicoherent(const sigcore_structure* s,
                                                             int* out_flag, char* report,
                                                             size_t report_size);
/* Writes up to `capacity` minimal path masks; *out_count is the total. */
SIGCORE_API sigcore_status sigcore_structure_minimal_path_sets(const sigcore_structure* s,
                                                               uint32_t* out_paths,
                                                               size_t capacity,
                                                               size_t* out_count);

/* ---- lifetime models ------------------------------------------------- */

SIGCORE_API sigcore_status sigcore_model_from_json(const char* json_text,
                                                   sigcore_model** out);
SIGCORE_API void sigcore_model_free(sigcore_model* m);
/* 0 when the model does not pin a component count (iid/exchangeable). */
SIGCORE_API int sigcore_model_n(const sigcore_model* m);
SIGCORE_API int sigcore_model_is_samplable(const sigcore_model* m);
/* "iid", "exchangeable", "independent", "weibull" or "order_probs". */
SIGCORE_API const char* sigcore_model_kind(const sigcore_model* m);

/* ---- relative quality ------------------------------------------------ */

/* Computes q by the requested route; AUTO picks exchangeable for
 * iid/exchangeable, the closed form for weibull, quadrature for
 * independent marginals and the permutation sum for order_probs.
 * `n` supplies the component count for models that do not carry one
 * (pass 0 to take it from the model). `tol` is the per-subset absolute
 * quadrature tolerance (pass 0 for the 1e-9 default). */
SIGCORE_API sigcore_status sigcore_quality_compute(const sigcore_model* m, int n,
                                                   sigcore_route route, double tol,
                                                   sigcore_quality** out);
/* Wraps an externally supplied dense table (2^n values, index = mask). */
SIGCORE_API sigcore_status sigcore_quality_from_values(int n, const double* values,
                                                       sigcore_quality** out);
SIGCORE_API void sigcore_quality_free(sigcore_quality* q);

SIGCORE_API int sigcore_quality_n(const sigcore_quality* q);
SIGCORE_API sigcore_route sigcore_quality_get_route(const sigcore_quality* q);
SIGCORE_API sigcore_status sigcore_quality_values(const sigcore_quality* q, double* out);
/* Level sums for cardinalities 0..n (n+1 entries). */
SIGCORE_API sigcore_status sigcore_quality_level_sums(const sigcore_quality* q, double* out);
/* Per-level rescaling so each cardinality sums to exactly 1. */
SIGCORE_API sigcore_status sigcore_quality_normalize_levels(const sigcore_quality* q,
                                                            sigcore_quality** out);
/* Level-size-scaled table: value(S) * C(n, |S|). */
SIGCORE_API sigcore_status sigcore_quality_tilde(const sigcore_quality* q, double* out);

/* Tests whether q could come from independent common-shape Weibull
 * lifetimes. When compatible, out_rates (n entries, optional) receives
 * the recovered normalized rates. `reason` (optional) receives the
 * violated condition otherwise. tol <= 0 selects the 1e-8 default. */
SIGCORE_API sigcore_status sigcore_check_weibull(const sigcore_quality* q, double tol,
                                                 int* out_compatible, double* out_rates,
                                                 char* reason, size_t reason_size);

/* Probability that the shortest-lived component lies in `subset`, for a
 * weibull model. */
SIGCORE_API sigcore_status sigcore_shortest_lifetime_in_set(const sigcore_model* m,
                                                            uint32_t subset, double* out);

/* ---- signatures ------------------------------------------------------ */

/* Design-only signature under i.i.d. lifetimes; out_p has n entries. */
SIGCORE_API sigcore_status sigcore_boland_signature(const sigcore_structure* s,
                                                    double* out_p);
/* Generalized signature for a given quality table. out_p: n entries.
 * out_tails (optional): n+1 entries, survival tails t_1..t_{n+1}. */
SIGCORE_API sigcore_status sigcore_signature_from_quality(const sigcore_structure* s,
                                                          const sigcore_quality* q,
                                                          double* out_p, double* out_tails);
/* Same value as a single weighted full-table sum (cross-check path). */
SIGCORE_API sigcore_status sigcore_signature_via_rk(const sigcore_structure* s,
                                                    const sigcore_quality* q, double* out_p);

/* Weighted least-squares projection of a real table onto symmetric
 * functions. f and w have 2^n entries; out_c has n entries.
 * out_residual (optional) receives the worst orthogonality defect. */
SIGCORE_API sigcore_status sigcore_symmetric_projection(int n, const double* f,
                                                        const double* w,
                                                        double* out_constant, double* out_c,
                                                        double* out_residual);

/* ---- oracles --------------------------------------------------------- */

/* Exact signature by failure-ordering enumeration; pass NULL for
 * equiprobable orderings, or an order_probs model. */
SIGCORE_API sigcore_status sigcore_permutation_signature(const sigcore_structure* s,
                                                         const sigcore_model* m_or_null,
                                                         double* out_p);
/* Monte Carlo signature estimate; out_p_hat and out_se have n entries. */
SIGCORE_API sigcore_status sigcore_monte_carlo_signature(const sigcore_structure* s,
                                                         const sigcore_model* m,
                                                         uint64_t samples, uint64_t seed,
                                                         double* out_p_hat, double* out_se);
/* Empirical quality table (2^n entries each for q_hat and se). `n` may
 * be 0 when the model pins the component count. */
SIGCORE_API sigcore_status sigcore_monte_carlo_quality(const sigcore_model* m, int n,
                                                       uint64_t samples, uint64_t seed,
                                                       double* out_q_hat, double* out_se);

#ifdef __cplusplus
}
#endif

#endif /* SIGCORE_H */
