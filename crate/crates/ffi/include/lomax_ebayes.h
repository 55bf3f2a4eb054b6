#ifndef LOMAX_EBAYES_H
#define LOMAX_EBAYES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum LomaxStatus {
  LOMAX_STATUS_OK = 0,
  LOMAX_STATUS_NULL_POINTER = 1,
  LOMAX_STATUS_INVALID_PARAMETER = 2,
  LOMAX_STATUS_DOMAIN = 3,
  LOMAX_STATUS_MOMENT_UNDEFINED = 4,
  LOMAX_STATUS_EMPTY_SAMPLE = 5,
  LOMAX_STATUS_INVALID_ENUM = 6,
  LOMAX_STATUS_OUT_OF_RANGE = 7,
  LOMAX_STATUS_PANIC = 99,
} LomaxStatus;

// Loss function selector.
typedef enum LomaxLoss {
  LOMAX_LOSS_SEL = 0,
  LOMAX_LOSS_KL = 1,
  LOMAX_LOSS_EL = 2,
} LomaxLoss;

// How `α` is fitted before a K-S test.
typedef enum LomaxFit {
  LOMAX_FIT_MLE = 0,
  LOMAX_FIT_MIN_DISTANCE = 1,
} LomaxFit;

// Opaque validated sample.
typedef struct LomaxSample LomaxSample;

// Opaque simulation table.
typedef struct LomaxSimTable LomaxSimTable;

// Estimates for one `c`; arrays are indexed by [`LomaxLoss`].
typedef struct LomaxEstimate {
  size_t n;
  double t_stat;
  double c;
  double mle;
  double eb[3];
  double emse[3];
} LomaxEstimate;

typedef struct LomaxKsResult {
  double d_stat;
  double p_value;
  size_t n;
  double alpha;
  double lambda;
} LomaxKsResult;

// One simulated `(c, n)` cell; arrays are indexed by [`LomaxLoss`].
typedef struct LomaxSimCell {
  size_t n;
  double c;
  uint64_t seed;
  double eb_mean[3];
  double emse_mean[3];
  double eb_stderr[3];
  double emse_stderr[3];
} LomaxSimCell;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null.
//
// The pointer stays valid until the next failing call on the same thread.
const char *lomax_last_error(void);

// Library version as a static NUL-terminated string.
const char *lomax_version(void);

enum LomaxStatus lomax_pdf(double alpha, double lambda, double x, double *out);

enum LomaxStatus lomax_cdf(double alpha, double lambda, double x, double *out);

enum LomaxStatus lomax_reliability(double alpha, double lambda, double t, double *out);

enum LomaxStatus lomax_hazard(double alpha, double lambda, double t, double *out);

// Quantile at `u ∈ [0, 1)`.
enum LomaxStatus lomax_sample_inverse(double alpha, double lambda, double u, double *out);

enum LomaxStatus lomax_mean(double alpha, double lambda, double *out);

enum LomaxStatus lomax_variance(double alpha, double lambda, double *out);

enum LomaxStatus lomax_sufficient_t(const double *values, size_t len, double lambda, double *out);

enum LomaxStatus lomax_mle(size_t n, double t_stat, double *out);

enum LomaxStatus lomax_bayes(int32_t loss_kind,
                             double a,
                             double b,
                             size_t n,
                             double t_stat,
                             double *out);

enum LomaxStatus lomax_bayes_mse(int32_t loss_kind,
                                 double a,
                                 double b,
                                 size_t n,
                                 double t_stat,
                                 double *out);

enum LomaxStatus lomax_ebayes(int32_t loss_kind, double c, size_t n, double t_stat, double *out);

enum LomaxStatus lomax_emse(int32_t loss_kind, double c, size_t n, double t_stat, double *out);

enum LomaxStatus lomax_kl_integral(size_t n, double *out);

enum LomaxStatus lomax_kl_mse_integral(size_t n, double *out);

// Copies `values` into a new sample handle. Free with
// [`lomax_sample_free`].
enum LomaxStatus lomax_sample_new(const double *values,
                                  size_t len,
                                  double lambda,
                                  struct LomaxSample **out);

// Releases a sample handle. Null is ignored.
void lomax_sample_free(struct LomaxSample *sample);

enum LomaxStatus lomax_sample_len(const struct LomaxSample *sample, size_t *out);

enum LomaxStatus lomax_sample_t_stat(const struct LomaxSample *sample, double *out);

enum LomaxStatus lomax_sample_estimate(const struct LomaxSample *sample,
                                       double c,
                                       struct LomaxEstimate *out);

// K-S test against a fully specified `Lomax(α, λ)`.
enum LomaxStatus lomax_ks_test(const double *values,
                               size_t len,
                               double alpha,
                               double lambda,
                               struct LomaxKsResult *out);

// K-S test after fitting `α` by `fit_method` ([`LomaxFit`]) at `λ`.
enum LomaxStatus lomax_ks_test_fitted(const double *values,
                                      size_t len,
                                      double lambda,
                                      int32_t fit_method,
                                      struct LomaxKsResult *out);

enum LomaxStatus lomax_ks_p_value(double d, size_t n, double *out);

// Runs every `(c, n)` cell, `c` outer and `n` inner. Free the table with
// [`lomax_sim_table_free`].
enum LomaxStatus lomax_sim_table_run(double alpha,
                                     double lambda,
                                     const double *c_values,
                                     size_t c_len,
                                     const size_t *n_values,
                                     size_t n_len,
                                     size_t reps,
                                     uint64_t seed,
                                     struct LomaxSimTable **out);

enum LomaxStatus lomax_sim_table_len(const struct LomaxSimTable *table, size_t *out);

enum LomaxStatus lomax_sim_table_get(const struct LomaxSimTable *table,
                                     size_t index,
                                     struct LomaxSimCell *out);

// Releases a table handle. Null is ignored.
void lomax_sim_table_free(struct LomaxSimTable *table);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOMAX_EBAYES_H */
