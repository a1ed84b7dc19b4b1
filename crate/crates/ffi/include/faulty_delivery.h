#ifndef FAULTY_DELIVERY_H
#define FAULTY_DELIVERY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FdStatus {
  FD_STATUS_OK = 0,
  FD_STATUS_INVALID_INPUT = 1,
  FD_STATUS_INAPPLICABLE = 2,
  FD_STATUS_DOMAIN = 3,
  FD_STATUS_INVALID_ARGUMENT = 4,
  FD_STATUS_NO_DELIVERY = 5,
  FD_STATUS_NULL_POINTER = 6,
  FD_STATUS_PANIC = 7,
} FdStatus;

typedef enum FdCandidate {
  FD_CANDIDATE_A0 = 0,
  FD_CANDIDATE_A1 = 1,
  FD_CANDIDATE_AD = 2,
} FdCandidate;

typedef enum FdRegion {
  FD_REGION_A0 = 0,
  FD_REGION_A1 = 1,
  FD_REGION_AD = 2,
} FdRegion;

/**
 * Hybrid analysis of one start point.
 */
typedef struct FdAnalysis FdAnalysis;

/**
 * Region map over a lattice.
 */
typedef struct FdRegionGrid FdRegionGrid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *fd_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fd_version(void);

/**
 * Offline-optimal delivery time for fail time `t`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum FdStatus fd_opt_delivery_time(double x, double y, double t, double *out);

/**
 * Closed-form delivery time of a strategy for fail time `t`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum FdStatus fd_delivery_time(double x,
                               double y,
                               enum FdCandidate candidate,
                               double t,
                               double *out);

/**
 * Closed-form competitive ratio of a strategy and the fail time attaining it.
 * Fails with `Domain` outside the strategy's validity region.
 *
 * # Safety
 * `ratio` and `worst_t` must be valid for writes.
 */
enum FdStatus fd_closed_form_cr(double x,
                                double y,
                                enum FdCandidate candidate,
                                double *ratio,
                                double *worst_t);

/**
 * Brute-force competitive ratio of a strategy by simulation, with fail
 * times on a grid of spacing `t_step` refined by golden-section search.
 *
 * # Safety
 * `ratio` and `worst_t` must be valid for writes.
 */
enum FdStatus fd_numeric_sup_cr(double x,
                                double y,
                                enum FdCandidate candidate,
                                double t_step,
                                double *ratio,
                                double *worst_t);

/**
 * Simulates a strategy for fail time `t`.
 *
 * # Safety
 * All out pointers must be valid for writes.
 */
enum FdStatus fd_simulate(double x,
                          double y,
                          enum FdCandidate candidate,
                          double t,
                          double *delivery_time,
                          double *pickup_time,
                          double *pickup_x);

/**
 * Competitive ratio of the hybrid strategy.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum FdStatus fd_hybrid_cr(double x, double y, double *out);

/**
 * Closed-form outer `A0`/`A1` curve at `x > 0`. `exists` is set to 0 where
 * the curve has no real point; `y` is then left untouched.
 *
 * # Safety
 * `y` and `exists` must be valid for writes.
 */
enum FdStatus fd_outer_curve_y(double x, double *y, bool *exists);

/**
 * Runs the hybrid selection and hands out a report handle.
 *
 * # Safety
 * `out` must be valid for writes. Release the handle with [`fd_analysis_free`].
 */
enum FdStatus fd_analyze(double x, double y, struct FdAnalysis **out);

/**
 * # Safety
 * `h` must be null or a handle from [`fd_analyze`] not yet freed.
 */
void fd_analysis_free(struct FdAnalysis *h);

/**
 * Selected region, its ratio and worst fail time.
 *
 * # Safety
 * `h` must be a live handle; out pointers must be valid for writes.
 */
enum FdStatus fd_analysis_chosen(const struct FdAnalysis *h,
                                 enum FdRegion *label,
                                 double *ratio,
                                 double *worst_t);

/**
 * Meet-in-the-middle coordinate; `has_d` is 0 when `x <= 0`.
 *
 * # Safety
 * `h` must be a live handle; out pointers must be valid for writes.
 */
enum FdStatus fd_analysis_d(const struct FdAnalysis *h, double *d, bool *has_d);

/**
 * Number of strategies whose closed form applies at this point.
 *
 * # Safety
 * `h` must be a live handle; `count` must be valid for writes.
 */
enum FdStatus fd_analysis_candidate_count(const struct FdAnalysis *h, size_t *count);

/**
 * The `index`-th applicable strategy. Out of range gives `InvalidArgument`.
 *
 * # Safety
 * `h` must be a live handle; out pointers must be valid for writes.
 */
enum FdStatus fd_analysis_candidate(const struct FdAnalysis *h,
                                    size_t index,
                                    enum FdCandidate *kind,
                                    double *ratio,
                                    double *worst_t);

/**
 * Region map over `[xmin, xmax] x [ymin, ymax]` at spacing `step`.
 *
 * # Safety
 * `out` must be valid for writes. Release with [`fd_region_grid_free`].
 */
enum FdStatus fd_region_map(double xmin,
                            double xmax,
                            double ymin,
                            double ymax,
                            double step,
                            struct FdRegionGrid **out);

/**
 * # Safety
 * `h` must be null or a handle from [`fd_region_map`] not yet freed.
 */
void fd_region_grid_free(struct FdRegionGrid *h);

/**
 * Lattice size; rows number `nx * ny`, `y` outer and `x` inner.
 *
 * # Safety
 * `h` must be a live handle; out pointers must be valid for writes.
 */
enum FdStatus fd_region_grid_dims(const struct FdRegionGrid *h, size_t *nx, size_t *ny);

/**
 * One lattice row. Out of range gives `InvalidArgument`.
 *
 * # Safety
 * `h` must be a live handle; out pointers must be valid for writes.
 */
enum FdStatus fd_region_grid_row(const struct FdRegionGrid *h,
                                 size_t index,
                                 double *x,
                                 double *y,
                                 enum FdRegion *label,
                                 double *ratio);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FAULTY_DELIVERY_H */
