#ifndef QRS_H
#define QRS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum QrsStatus {
  QrsStatus_Ok = 0,
  QrsStatus_NullPointer = 1,
  QrsStatus_DomainError = 2,
  QrsStatus_BracketError = 3,
  QrsStatus_ConvergenceError = 4,
  QrsStatus_DegenerateState = 5,
  QrsStatus_IoError = 6,
} QrsStatus;

/**
 * Dephasing spectrum selector.
 */
typedef enum QrsNoiseKind {
  QrsNoiseKind_White = 0,
  QrsNoiseKind_LowFrequency = 1,
} QrsNoiseKind;

/**
 * Readout accounting family: fixed repetition count or fixed time budget.
 */
typedef enum QrsRegimeFamily {
  QrsRegimeFamily_Slow = 0,
  QrsRegimeFamily_Fast = 1,
} QrsRegimeFamily;

/**
 * Quantity minimized over the interaction time.
 */
typedef enum QrsOptimizationTarget {
  QrsOptimizationTarget_Uncertainty = 0,
  QrsOptimizationTarget_Ratio = 1,
} QrsOptimizationTarget;

/**
 * Opaque deterministic random stream.
 */
typedef struct QrsRngStream QrsRngStream;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Principal branch of the Lambert W function at `x`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_lambert_w0(double x, double *out);

/**
 * Decoherence exponent g(t) for the given spectrum and T2.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_decoherence_exponent(enum QrsNoiseKind kind, double t, double t2, double *out);

/**
 * Worst-case client uncertainty bound T2 * dw at time t (units of T2).
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_client_uncertainty_upper(double t,
                                            double m,
                                            double epsilon,
                                            double g,
                                            double *out);

/**
 * Best-case eavesdropper uncertainty at time t; infinite when epsilon = 0.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_eve_uncertainty_lower(double t, double m, double epsilon, double *out);

/**
 * Privacy ratio of the client bound to the eavesdropper bound at time t.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_uncertainty_ratio(double t, double m, double epsilon, double g, double *out);

/**
 * Slow-readout optimal interaction time over T2.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_optimal_time_slow(double m, double epsilon, enum QrsNoiseKind kind, double *out);

/**
 * Client uncertainty bound at the slow-readout optimal time.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_optimized_uncertainty_slow(double m,
                                              double epsilon,
                                              enum QrsNoiseKind kind,
                                              double *out);

/**
 * Privacy ratio at the slow-readout optimal time.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_optimized_ratio_slow(double m,
                                        double epsilon,
                                        enum QrsNoiseKind kind,
                                        double *out);

/**
 * Fast-readout time minimizing the client uncertainty for budget N = T/T2.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_optimal_time_fast_uncertainty(double n,
                                                 double epsilon,
                                                 enum QrsNoiseKind kind,
                                                 double *out);

/**
 * Fast-readout time minimizing the privacy ratio; needs epsilon in (0, 1).
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_optimal_time_fast_ratio(double n,
                                           double epsilon,
                                           enum QrsNoiseKind kind,
                                           double *out);

/**
 * Fast-readout client uncertainty bound at time t for budget N.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_fast_uncertainty(double t,
                                    double n,
                                    double epsilon,
                                    enum QrsNoiseKind kind,
                                    double *out);

/**
 * Fast-readout privacy ratio at time t for budget N.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_fast_ratio(double t,
                              double n,
                              double epsilon,
                              enum QrsNoiseKind kind,
                              double *out);

/**
 * Repetition count (slow) or time budget (fast) where the optimized privacy
 * ratio reaches one; infinite when it never does.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum QrsStatus qrs_crossing_repetition(double epsilon,
                                       enum QrsNoiseKind kind,
                                       enum QrsRegimeFamily family,
                                       enum QrsOptimizationTarget target,
                                       double *out);

/**
 * Register count k demanded by the sampling test for the given tolerances.
 *
 * # Safety
 * `out` must be null or valid for writing one `uint64_t`.
 */
enum QrsStatus qrs_required_registers(double epsilon,
                                      double delta,
                                      double capital_delta,
                                      uint64_t *out);

/**
 * Creates a deterministic random stream; identical arguments replay the
 * same sequence. Release with [`qrs_rng_stream_free`].
 */
struct QrsRngStream *qrs_rng_stream_new(uint64_t seed, uint64_t stream_id);

/**
 * Releases a stream created by [`qrs_rng_stream_new`]. Null is ignored.
 *
 * # Safety
 * `stream` must be null or a pointer from [`qrs_rng_stream_new`] that has
 * not been freed.
 */
void qrs_rng_stream_free(struct QrsRngStream *stream);

/**
 * Draws one random accumulated dephasing phase at time t.
 *
 * # Safety
 * `stream` must be a live pointer from [`qrs_rng_stream_new`] and `out`
 * null or valid for writing one `double`.
 */
enum QrsStatus qrs_sample_dephasing_phase(enum QrsNoiseKind kind,
                                          double t,
                                          double t2,
                                          struct QrsRngStream *stream,
                                          double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QRS_H */
