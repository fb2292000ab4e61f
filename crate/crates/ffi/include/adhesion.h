#ifndef ADHESION_H
#define ADHESION_H

/* Generated from the adhesion-ffi crate; edit the Rust source, not this file. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a fallible call.
 */
typedef enum AdhStatus {
  /**
   * Success.
   */
  ADH_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ADH_STATUS_NULL_POINTER = 1,
  /**
   * An argument was out of the function's domain.
   */
  ADH_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The input is geometrically degenerate for the requested operation.
   */
  ADH_STATUS_DEGENERATE = 3,
  /**
   * A numeric search could not finish at the requested resolution.
   */
  ADH_STATUS_NUMERIC = 4,
  /**
   * An internal invariant failed; the handle is still valid.
   */
  ADH_STATUS_INTERNAL = 5,
} AdhStatus;

/**
 * One-dimensional limit potential with Fourier initial data.
 */
typedef struct AdhHopfLax AdhHopfLax;

/**
 * Planar local model: finitely many momenta meeting at the origin.
 */
typedef struct AdhLocalModel AdhLocalModel;

/**
 * A sampled particle path with per-sample shock flags.
 */
typedef struct AdhTrajectory AdhTrajectory;

/**
 * Exact viscous solution with Fourier initial data.
 */
typedef struct AdhViscous AdhViscous;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *adh_version(void);

/**
 * Copies the message of the most recent failure on this thread into `buf`
 * (truncated, always NUL-terminated when `capacity > 0`) and returns the
 * full message length in bytes.
 *
 * # Safety
 * `buf` must point to `capacity` writable bytes, or be null with
 * `capacity == 0` to query the length alone.
 */
size_t adh_last_error_message(char *buf, size_t capacity);

/**
 * Creates a one-dimensional limit potential from Fourier initial data with
 * the given period, mean, and harmonic coefficients. Returns null on
 * failure (see [`adh_last_error_message`]).
 *
 * # Safety
 * `cos` must point to `n_cos` doubles and `sin` to `n_sin` doubles; either
 * pointer may be null when its count is zero.
 */
struct AdhHopfLax *adh_hopf_lax_new(double period,
                                    double mean,
                                    const double *cos,
                                    size_t n_cos,
                                    const double *sin,
                                    size_t n_sin);

/**
 * Releases a handle created by [`adh_hopf_lax_new`]. Null is a no-op.
 *
 * # Safety
 * `handle` must be a pointer returned by [`adh_hopf_lax_new`] that has not
 * been freed yet, or null.
 */
void adh_hopf_lax_free(struct AdhHopfLax *handle);

/**
 * Evaluates the limit potential at (x, t), t ≥ 0.
 *
 * # Safety
 * `handle` must be a live [`adh_hopf_lax_new`] pointer and `out` a valid
 * double pointer.
 */
enum AdhStatus adh_hopf_lax_eval(const struct AdhHopfLax *handle, double x, double t, double *out);

/**
 * Writes the limit velocity (the center of the minimal ball of active
 * momenta) at (x, t) to `out`. A non-positive `tol` selects the model's
 * default active tolerance.
 *
 * # Safety
 * `handle` must be a live [`adh_hopf_lax_new`] pointer and `out` a valid
 * double pointer.
 */
enum AdhStatus adh_hopf_lax_velocity(const struct AdhHopfLax *handle,
                                     double x,
                                     double t,
                                     double tol,
                                     double *out);

/**
 * Sets `*out` to 1 when several momenta are active at (x, t) within `tol`
 * (i.e. the point is on the shock), 0 otherwise. A non-positive `tol`
 * selects the model's default.
 *
 * # Safety
 * `handle` must be a live [`adh_hopf_lax_new`] pointer and `out` a valid
 * int pointer.
 */
enum AdhStatus adh_hopf_lax_on_shock(const struct AdhHopfLax *handle,
                                     double x,
                                     double t,
                                     double tol,
                                     int *out);

/**
 * Integrates the adhesion trajectory x⁺ = u(x, t) from (x0, t0) to t1 with
 * the given step. Returns null on failure.
 *
 * # Safety
 * `handle` must be a live [`adh_hopf_lax_new`] pointer.
 */
struct AdhTrajectory *adh_hopf_lax_trajectory(const struct AdhHopfLax *handle,
                                              double x0,
                                              double t0,
                                              double t1,
                                              double step);

/**
 * Creates a planar local model from `k` momenta laid out row-major in
 * `momenta` (`k`×`dim` doubles) plus a constant force term. Returns null
 * on failure.
 *
 * # Safety
 * `momenta` must point to `k * dim` doubles.
 */
struct AdhLocalModel *adh_local_model_new(const double *momenta,
                                          size_t k,
                                          size_t dim,
                                          double force);

/**
 * Releases a handle created by [`adh_local_model_new`]. Null is a no-op.
 *
 * # Safety
 * `handle` must be a pointer returned by [`adh_local_model_new`] that has
 * not been freed yet, or null.
 */
void adh_local_model_free(struct AdhLocalModel *handle);

/**
 * Writes the limit velocity of the local model at position `x` (of the
 * model's dimension) and time `t` into `out`. A non-positive `tol` selects
 * the model's default.
 *
 * # Safety
 * `handle` must be a live [`adh_local_model_new`] pointer; `x` and `out`
 * must each point to `dim` doubles.
 */
enum AdhStatus adh_local_model_velocity(const struct AdhLocalModel *handle,
                                        const double *x,
                                        size_t dim,
                                        double t,
                                        double tol,
                                        double *out);

/**
 * Integrates the adhesion trajectory of the local model from `x0` (of the
 * model's dimension). Returns null on failure.
 *
 * # Safety
 * `handle` must be a live [`adh_local_model_new`] pointer and `x0` must
 * point to `dim` doubles.
 */
struct AdhTrajectory *adh_local_model_trajectory(const struct AdhLocalModel *handle,
                                                 const double *x0,
                                                 size_t dim,
                                                 double t0,
                                                 double t1,
                                                 double step);

/**
 * Number of samples along the trajectory (zero for null).
 *
 * # Safety
 * `handle` must be a live trajectory pointer or null.
 */
size_t adh_trajectory_len(const struct AdhTrajectory *handle);

/**
 * Space dimension of the trajectory samples (zero for null).
 *
 * # Safety
 * `handle` must be a live trajectory pointer or null.
 */
size_t adh_trajectory_dim(const struct AdhTrajectory *handle);

/**
 * Copies sample `index` of the trajectory: its time, position, one-way
 * velocity, and whether the particle had already merged with the shock.
 * Output pointers may be null to skip a field.
 *
 * # Safety
 * `handle` must be a live trajectory pointer; `out_position` and
 * `out_velocity`, when non-null, must each point to
 * [`adh_trajectory_dim`] doubles.
 */
enum AdhStatus adh_trajectory_sample(const struct AdhTrajectory *handle,
                                     size_t index,
                                     double *out_time,
                                     double *out_position,
                                     double *out_velocity,
                                     int *out_on_shock);

/**
 * Releases a trajectory handle. Null is a no-op.
 *
 * # Safety
 * `handle` must be a pointer returned by a trajectory call that has not
 * been freed yet, or null.
 */
void adh_trajectory_free(struct AdhTrajectory *handle);

/**
 * Creates the exact viscous solution for Fourier initial data at viscosity
 * `nu > 0`. Returns null on failure.
 *
 * # Safety
 * `cos` must point to `n_cos` doubles and `sin` to `n_sin` doubles; either
 * pointer may be null when its count is zero.
 */
struct AdhViscous *adh_viscous_new(double period,
                                   double mean,
                                   const double *cos,
                                   size_t n_cos,
                                   const double *sin,
                                   size_t n_sin,
                                   double nu);

/**
 * Releases a handle created by [`adh_viscous_new`]. Null is a no-op.
 *
 * # Safety
 * `handle` must be a pointer returned by [`adh_viscous_new`] that has not
 * been freed yet, or null.
 */
void adh_viscous_free(struct AdhViscous *handle);

/**
 * Evaluates the viscous potential ψ^ν(x, t), t ≥ 0.
 *
 * # Safety
 * `handle` must be a live [`adh_viscous_new`] pointer and `out` a valid
 * double pointer.
 */
enum AdhStatus adh_viscous_psi(const struct AdhViscous *handle, double x, double t, double *out);

/**
 * Evaluates the viscous velocity ∂ψ/∂x at (x, t), t ≥ 0.
 *
 * # Safety
 * `handle` must be a live [`adh_viscous_new`] pointer and `out` a valid
 * double pointer.
 */
enum AdhStatus adh_viscous_velocity(const struct AdhViscous *handle,
                                    double x,
                                    double t,
                                    double *out);

/**
 * Minimal enclosing ball of `n` points of dimension `dim`, laid out
 * row-major in `points`. Writes the center (`dim` doubles) and the radius.
 *
 * # Safety
 * `points` must hold `n * dim` doubles, `out_center` must hold `dim`
 * doubles, and `out_radius` must be a valid double pointer.
 */
enum AdhStatus adh_min_enclosing_ball(const double *points,
                                      size_t n,
                                      size_t dim,
                                      double *out_center,
                                      double *out_radius);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADHESION_H */
