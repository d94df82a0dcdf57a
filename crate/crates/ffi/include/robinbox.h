#ifndef ROBINBOX_H
#define ROBINBOX_H

#include <stddef.h>

typedef enum RbStatus {
  RB_STATUS_OK = 0,
  RB_STATUS_NULL_POINTER = 1,
  RB_STATUS_INVALID_ARGUMENT = 2,
  RB_STATUS_NUMERICAL_FAILURE = 3,
  RB_STATUS_ALPHA_ZERO = 4,
  RB_STATUS_INCONSISTENT = 5,
  RB_STATUS_PANIC = 6,
} RbStatus;

/**
 * A rectangular box `(-w_1, w_1) × … × (-w_n, w_n)`.
 */
typedef struct RbBox RbBox;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *rb_status_message(enum RbStatus status);

/**
 * Message of the last failure on this thread, empty if none. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *rb_last_error_message(void);

/**
 * Creates a box from `n` positive half-widths.
 *
 * # Safety
 * `half_widths` must point to `n` readable doubles; `out` must be writable.
 */
enum RbStatus rb_box_new(const double *half_widths, size_t n, struct RbBox **out);

/**
 * Releases a box. Null is ignored.
 *
 * # Safety
 * `b` must come from [`rb_box_new`] and not have been freed.
 */
void rb_box_free(struct RbBox *b);

/**
 * # Safety
 * `b` must be a live handle or null; `out` must be writable.
 */
enum RbStatus rb_box_dim(const struct RbBox *b, size_t *out);

/**
 * First Robin eigenvalue.
 *
 * # Safety
 * `b` must be a live handle or null; `out` must be writable.
 */
enum RbStatus rb_box_lambda1(const struct RbBox *b, double alpha, double *out);

/**
 * Second Robin eigenvalue.
 *
 * # Safety
 * `b` must be a live handle or null; `out` must be writable.
 */
enum RbStatus rb_box_lambda2(const struct RbBox *b, double alpha, double *out);

/**
 * `λ₂ - λ₁`.
 *
 * # Safety
 * `b` must be a live handle or null; `out` must be writable.
 */
enum RbStatus rb_box_gap(const struct RbBox *b, double alpha, double *out);

/**
 * `λ₂/|λ₁|`; `RB_STATUS_ALPHA_ZERO` at `alpha = 0`.
 *
 * # Safety
 * `b` must be a live handle or null; `out` must be writable.
 */
enum RbStatus rb_box_ratio(const struct RbBox *b, double alpha, double *out);

/**
 * First nonzero Steklov eigenvalue.
 *
 * # Safety
 * `b` must be a live handle or null; `out` must be writable.
 */
enum RbStatus rb_box_steklov(const struct RbBox *b, double *out);

/**
 * The `k` lowest eigenvalues in increasing order, written to `out[0..k]`.
 *
 * # Safety
 * `b` must be a live handle or null; `out` must have room for `k` doubles.
 */
enum RbStatus rb_box_spectrum(const struct RbBox *b, double alpha, size_t k, double *out);

/**
 * First eigenvalue of `(-t, t)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RbStatus rb_interval_lambda1(double t, double alpha, double *out);

/**
 * Second eigenvalue of `(-t, t)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RbStatus rb_interval_lambda2(double t, double alpha, double *out);

/**
 * Gap of `(-t, t)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RbStatus rb_interval_gap(double t, double alpha, double *out);

/**
 * The critical parameter `α₊ ≈ 33.2054`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RbStatus rb_alpha_plus(double *out);

/**
 * The critical parameter `α₋ ≈ -9.3885`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RbStatus rb_alpha_minus(double *out);

/**
 * Recovers the half-widths `t >= s` of the rectangle whose first two
 * eigenvalues at `alpha` are `lambda1`, `lambda2`. `residual` may be null.
 *
 * # Safety
 * `t_out` and `s_out` must be writable; `residual` writable or null.
 */
enum RbStatus rb_hear_rectangle(double lambda1,
                                double lambda2,
                                double alpha,
                                double *t_out,
                                double *s_out,
                                double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROBINBOX_H */
