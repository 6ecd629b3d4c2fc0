#ifndef ENTNORM_ENTNORM_H
#define ENTNORM_ENTNORM_H

/*
 * C interface to the entropy/norm bounds library.
 *
 * Every function returns an entnorm_status; results go through out-pointers.
 * On failure entnorm_last_error() describes the problem (thread-local, valid
 * until the next call on the same thread). Orders alpha may be INFINITY where
 * the max norm makes sense. Entropies are in nats.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ENTNORM_API __declspec(dllexport)
#else
#define ENTNORM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum entnorm_status {
  ENTNORM_OK = 0,
  /* An argument lies outside the mathematical domain of the operation. */
  ENTNORM_ERR_DOMAIN = 1,
  /* The upper envelope is not established for this (n, alpha). */
  ENTNORM_ERR_UNSUPPORTED_ORDER = 2,
  /* A root finder failed to bracket or converge. */
  ENTNORM_ERR_NUMERICAL = 3,
  /* Null pointer, empty buffer or mismatched dimensions. */
  ENTNORM_ERR_INVALID_ARGUMENT = 4,
  ENTNORM_ERR_OUT_OF_MEMORY = 5,
  ENTNORM_ERR_INTERNAL = 6
} entnorm_status;

ENTNORM_API const char* entnorm_last_error(void);
ENTNORM_API const char* entnorm_status_name(entnorm_status status);

/* Closed interval whose ends may be missing (has_lo / has_hi = 0). */
typedef struct entnorm_interval {
  double lo;
  double hi;
  int has_lo;
  int has_hi;
} entnorm_interval;

typedef struct entnorm_tangent {
  double p_star;
  double h_star;
  double norm_star;
  /* Inflection of the v-curve; has_inflection = 0 for n = 2. */
  int has_inflection;
  double chi;
  double pi_p;
} entnorm_tangent;

typedef struct entnorm_verify_report {
  long long samples;
  long long violations_lower;
  long long violations_upper;
  double max_excess;
  uint64_t seed;
  int n;
  double alpha;
  int y_size;
  int upper_checked;
} entnorm_verify_report;

/* ---- handles ---------------------------------------------------------- */

/* Joint distribution: P_Y (y_size entries) and y_size rows of length n. */
typedef struct entnorm_joint entnorm_joint;
/* Channel: n_in rows of length n_out, row x is P_{Y|X}(.|x). */
typedef struct entnorm_channel entnorm_channel;

/* rows is row-major, y_size * n entries. */
ENTNORM_API entnorm_status entnorm_joint_create(const double* p_y, size_t y_size,
                                                const double* rows, size_t n,
                                                entnorm_joint** out);
ENTNORM_API void entnorm_joint_destroy(entnorm_joint* joint);
ENTNORM_API entnorm_status entnorm_joint_dims(const entnorm_joint* joint, size_t* n,
                                              size_t* y_size);
/* Copies into caller buffers of y_size and y_size * n entries. Either may be NULL. */
ENTNORM_API entnorm_status entnorm_joint_get(const entnorm_joint* joint, double* p_y,
                                             double* rows);

ENTNORM_API entnorm_status entnorm_channel_create(const double* transitions, size_t n_in,
                                                  size_t n_out, entnorm_channel** out);
ENTNORM_API void entnorm_channel_destroy(entnorm_channel* channel);
ENTNORM_API entnorm_status entnorm_channel_dims(const entnorm_channel* channel, size_t* n_in,
                                                size_t* n_out);
ENTNORM_API entnorm_status entnorm_channel_get(const entnorm_channel* channel,
                                               double* transitions);

/* ---- probability vectors ---------------------------------------------- */

ENTNORM_API entnorm_status entnorm_shannon_entropy(const double* p, size_t n, double* out);
ENTNORM_API entnorm_status entnorm_alpha_norm(const double* p, size_t n, double alpha,
                                              double* out);
ENTNORM_API entnorm_status entnorm_alpha_log(double alpha, double x, double* out);
/* Write n entries into out. */
ENTNORM_API entnorm_status entnorm_make_uniform(int n, double* out);
ENTNORM_API entnorm_status entnorm_make_v(int n, double p, double* out);
ENTNORM_API entnorm_status entnorm_make_w(int n, double p, double* out);

/* ---- extremal curves -------------------------------------------------- */

ENTNORM_API entnorm_status entnorm_entropy_v(int n, double p, double* out);
ENTNORM_API entnorm_status entnorm_entropy_w(int n, double p, double* out);
ENTNORM_API entnorm_status entnorm_inv_entropy_v(int n, double h, double* out);
ENTNORM_API entnorm_status entnorm_inv_entropy_w(int n, double h, double* out);
ENTNORM_API entnorm_status entnorm_norm_v(int n, double p, double alpha, double* out);
ENTNORM_API entnorm_status entnorm_norm_w(int n, double p, double alpha, double* out);
ENTNORM_API entnorm_status entnorm_dnorm_dh_v(int n, double p, double alpha, double* out);
ENTNORM_API entnorm_status entnorm_g_sign(int n, double p, double alpha, double* out);
ENTNORM_API entnorm_status entnorm_g_zero(int n, double alpha, double lo, double hi,
                                          double* out);
ENTNORM_API entnorm_status entnorm_inflection(int n, double alpha, double* chi, double* pi_p);
ENTNORM_API entnorm_status entnorm_tangent_point(int n, double alpha, entnorm_tangent* out);
/* Tangent point through the numerical solver even where a closed form exists. */
ENTNORM_API entnorm_status entnorm_tangent_generic(int n, double alpha, entnorm_tangent* out);
ENTNORM_API entnorm_status entnorm_tangent_residual(int n, double p, double alpha,
                                                    double* out);

/* ---- bounds ----------------------------------------------------------- */

ENTNORM_API entnorm_status entnorm_l_min(int n, double alpha, double h, double* out);
ENTNORM_API entnorm_status entnorm_l_max(int n, double alpha, double h, double* out);
ENTNORM_API entnorm_status entnorm_l_max_half(int n, double h, double* out);
/* lo = L_min, hi = L_max when available. */
ENTNORM_API entnorm_status entnorm_envelope(int n, double alpha, double h,
                                            entnorm_interval* out);
ENTNORM_API entnorm_status entnorm_upper_available(int n, double alpha, int* out);
ENTNORM_API entnorm_status entnorm_unconditional_sandwich(const double* p, size_t n,
                                                          double alpha, double* lower_w,
                                                          double* upper_v);
ENTNORM_API entnorm_status entnorm_entropy_bounds_given_norm(int n, double alpha, double norm,
                                                             entnorm_interval* out);
ENTNORM_API entnorm_status entnorm_entropy_bounds_given_norm_unconditional(
    int n, double alpha, double norm, entnorm_interval* out);

/* ---- information measures --------------------------------------------- */

ENTNORM_API entnorm_status entnorm_cond_shannon(const entnorm_joint* joint, double* out);
ENTNORM_API entnorm_status entnorm_expected_alpha_norm(const entnorm_joint* joint, double alpha,
                                                       double* out);
ENTNORM_API entnorm_status entnorm_cond_renyi(const entnorm_joint* joint, double alpha,
                                              double* out);
ENTNORM_API entnorm_status entnorm_cond_rnorm(const entnorm_joint* joint, double r,
                                              double* out);
ENTNORM_API entnorm_status entnorm_joint_from_channel_uniform(const entnorm_channel* channel,
                                                              entnorm_joint** out);
ENTNORM_API entnorm_status entnorm_arimoto_mutual_uniform(const entnorm_channel* channel,
                                                          double alpha, double* out);
ENTNORM_API entnorm_status entnorm_gallager_e0_uniform(const entnorm_channel* channel,
                                                       double rho, double* out);
ENTNORM_API entnorm_status entnorm_renyi_from_norm(double alpha, double norm, double* out);
ENTNORM_API entnorm_status entnorm_rnorm_from_norm(double r, double norm, double* out);
ENTNORM_API entnorm_status entnorm_renyi_bounds_given_h(int n, double alpha, double h,
                                                        entnorm_interval* out);
ENTNORM_API entnorm_status entnorm_rnorm_bounds_given_h(int n, double r, double h,
                                                        entnorm_interval* out);
ENTNORM_API entnorm_status entnorm_mutual_bounds_given_i(int n, double alpha, double i,
                                                         entnorm_interval* out);
ENTNORM_API entnorm_status entnorm_e0_bounds_given_i(int n, double rho, double i,
                                                     entnorm_interval* out);

/* ---- witnesses and oracles -------------------------------------------- */

ENTNORM_API entnorm_status entnorm_witness_min(int n, double h, entnorm_joint** out);
ENTNORM_API entnorm_status entnorm_witness_max(int n, double alpha, double h,
                                               entnorm_joint** out);
ENTNORM_API entnorm_status entnorm_random_joint(int n, int y_size, uint64_t seed,
                                                entnorm_joint** out);
/* workers = 0 uses the hardware concurrency; the report does not depend on it. */
ENTNORM_API entnorm_status entnorm_verify_envelope(int n, double alpha, long long samples,
                                                   uint64_t seed, int y_size, unsigned workers,
                                                   entnorm_verify_report* out);
ENTNORM_API entnorm_status entnorm_brute_force_upper(int n, double alpha, double h,
                                                     int grid_size, double* out);
ENTNORM_API entnorm_status entnorm_brute_force_lower(int n, double alpha, double h,
                                                     int grid_size, double* out);

#ifdef __cplusplus
}
#endif

#endif /* ENTNORM_ENTNORM_H */
