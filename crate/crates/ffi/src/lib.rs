//! C bindings for the adhesion library.
//!
//! Handles are opaque pointers created by `adh_*_new` and released by the
//! matching `adh_*_free`. Fallible calls return an [`AdhStatus`]; when a
//! call fails, a thread-local message with the details is available through
//! [`adh_last_error_message`]. No call unwinds across the boundary: panics
//! are caught and reported as `ADH_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use adhesion::convex::{min_enclosing_ball, MomentumSet};
use adhesion::potential::{
    on_shock, FourierSeries, HopfLaxPotential, LocalLinearModel, PotentialModel,
};
use adhesion::trajectory::{integrate, LimitTrajectory};
use adhesion::viscous::ViscousSolution;
use adhesion::Error;

/// Result of a fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdhStatus {
    /// Success.
    AdhStatusOk = 0,
    /// A required pointer argument was null.
    AdhStatusNullPointer = 1,
    /// An argument was out of the function's domain.
    AdhStatusInvalidArgument = 2,
    /// The input is geometrically degenerate for the requested operation.
    AdhStatusDegenerate = 3,
    /// A numeric search could not finish at the requested resolution.
    AdhStatusNumeric = 4,
    /// An internal invariant failed; the handle is still valid.
    AdhStatusInternal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message.into());
}

fn fail(err: &Error) -> AdhStatus {
    set_error(err.to_string());
    match err {
        Error::Degenerate(_) | Error::NonGenericInterval { .. } => AdhStatus::AdhStatusDegenerate,
        Error::GridResolution(_) => AdhStatus::AdhStatusNumeric,
        Error::Domain(_)
        | Error::InvalidModel(_)
        | Error::UnsupportedDimension { .. }
        | Error::InvalidConfig { .. }
        | Error::Io(_) => AdhStatus::AdhStatusInvalidArgument,
    }
}

fn null_arg(name: &str) -> AdhStatus {
    set_error(format!("{name} must not be null"));
    AdhStatus::AdhStatusNullPointer
}

/// Runs `f` with panics converted to `ADH_STATUS_INTERNAL`.
fn guarded(f: impl FnOnce() -> AdhStatus) -> AdhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            AdhStatus::AdhStatusInternal
        }
    }
}

/// Runs `f` with panics converted to a null pointer.
fn guarded_ptr<T>(f: impl FnOnce() -> *mut T) -> *mut T {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(ptr) => ptr,
        Err(_) => {
            set_error("internal panic");
            std::ptr::null_mut()
        }
    }
}

unsafe fn optional_slice<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(slice::from_raw_parts(ptr, len))
    }
}

/// One-dimensional limit potential with Fourier initial data.
pub struct AdhHopfLax {
    model: HopfLaxPotential,
}

/// Planar local model: finitely many momenta meeting at the origin.
pub struct AdhLocalModel {
    model: LocalLinearModel,
}

/// Exact viscous solution with Fourier initial data.
pub struct AdhViscous {
    solution: ViscousSolution,
}

/// A sampled particle path with per-sample shock flags.
pub struct AdhTrajectory {
    trajectory: LimitTrajectory,
    dim: usize,
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn adh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the message of the most recent failure on this thread into `buf`
/// (truncated, always NUL-terminated when `capacity > 0`) and returns the
/// full message length in bytes.
///
/// # Safety
/// `buf` must point to `capacity` writable bytes, or be null with
/// `capacity == 0` to query the length alone.
#[no_mangle]
pub unsafe extern "C" fn adh_last_error_message(buf: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes();
        if !buf.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

fn fourier(
    period: f64,
    mean: f64,
    cos: Option<&[f64]>,
    sin: Option<&[f64]>,
) -> Result<FourierSeries, AdhStatus> {
    let cos = cos.ok_or_else(|| null_arg("cos"))?;
    let sin = sin.ok_or_else(|| null_arg("sin"))?;
    FourierSeries::new(period, mean, cos.to_vec(), sin.to_vec()).map_err(|e| fail(&e))
}

/// Creates a one-dimensional limit potential from Fourier initial data with
/// the given period, mean, and harmonic coefficients. Returns null on
/// failure (see [`adh_last_error_message`]).
///
/// # Safety
/// `cos` must point to `n_cos` doubles and `sin` to `n_sin` doubles; either
/// pointer may be null when its count is zero.
#[no_mangle]
pub unsafe extern "C" fn adh_hopf_lax_new(
    period: f64,
    mean: f64,
    cos: *const f64,
    n_cos: usize,
    sin: *const f64,
    n_sin: usize,
) -> *mut AdhHopfLax {
    let cos = optional_slice(cos, n_cos);
    let sin = optional_slice(sin, n_sin);
    guarded_ptr(move || match fourier(period, mean, cos, sin) {
        Ok(phi0) => Box::into_raw(Box::new(AdhHopfLax {
            model: HopfLaxPotential::new(phi0),
        })),
        Err(_) => std::ptr::null_mut(),
    })
}

/// Releases a handle created by [`adh_hopf_lax_new`]. Null is a no-op.
///
/// # Safety
/// `handle` must be a pointer returned by [`adh_hopf_lax_new`] that has not
/// been freed yet, or null.
#[no_mangle]
pub unsafe extern "C" fn adh_hopf_lax_free(handle: *mut AdhHopfLax) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Evaluates the limit potential at (x, t), t ≥ 0.
///
/// # Safety
/// `handle` must be a live [`adh_hopf_lax_new`] pointer and `out` a valid
/// double pointer.
#[no_mangle]
pub unsafe extern "C" fn adh_hopf_lax_eval(
    handle: *const AdhHopfLax,
    x: f64,
    t: f64,
    out: *mut f64,
) -> AdhStatus {
    if handle.is_null() {
        return null_arg("handle");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let model = &(*handle).model;
    guarded(|| match model.eval(&[x], t) {
        Ok(value) => {
            *out = value;
            AdhStatus::AdhStatusOk
        }
        Err(e) => fail(&e),
    })
}

/// Writes the limit velocity (the center of the minimal ball of active
/// momenta) at (x, t) to `out`. A non-positive `tol` selects the model's
/// default active tolerance.
///
/// # Safety
/// `handle` must be a live [`adh_hopf_lax_new`] pointer and `out` a valid
/// double pointer.
#[no_mangle]
pub unsafe extern "C" fn adh_hopf_lax_velocity(
    handle: *const AdhHopfLax,
    x: f64,
    t: f64,
    tol: f64,
    out: *mut f64,
) -> AdhStatus {
    if handle.is_null() {
        return null_arg("handle");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let model = &(*handle).model;
    guarded(|| {
        let tol = if tol > 0.0 { tol } else { model.default_active_tol() };
        match model.limit_velocity(&[x], t, tol) {
            Ok(u) => {
                *out = u[0];
                AdhStatus::AdhStatusOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Sets `*out` to 1 when several momenta are active at (x, t) within `tol`
/// (i.e. the point is on the shock), 0 otherwise. A non-positive `tol`
/// selects the model's default.
///
/// # Safety
/// `handle` must be a live [`adh_hopf_lax_new`] pointer and `out` a valid
/// int pointer.
#[no_mangle]
pub unsafe extern "C" fn adh_hopf_lax_on_shock(
    handle: *const AdhHopfLax,
    x: f64,
    t: f64,
    tol: f64,
    out: *mut c_int,
) -> AdhStatus {
    if handle.is_null() {
        return null_arg("handle");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let model = &(*handle).model;
    guarded(|| {
        let tol = if tol > 0.0 { tol } else { model.default_active_tol() };
        match on_shock(model, &[x], t, tol) {
            Ok(flag) => {
                *out = c_int::from(flag);
                AdhStatus::AdhStatusOk
            }
            Err(e) => fail(&e),
        }
    })
}

fn trajectory_handle<M: PotentialModel + ?Sized>(
    model: &M,
    x0: &[f64],
    t0: f64,
    t1: f64,
    step: f64,
) -> *mut AdhTrajectory {
    match integrate(model, x0, t0, t1, step) {
        Ok(trajectory) => Box::into_raw(Box::new(AdhTrajectory {
            trajectory,
            dim: x0.len(),
        })),
        Err(e) => {
            fail(&e);
            std::ptr::null_mut()
        }
    }
}

/// Integrates the adhesion trajectory x⁺ = u(x, t) from (x0, t0) to t1 with
/// the given step. Returns null on failure.
///
/// # Safety
/// `handle` must be a live [`adh_hopf_lax_new`] pointer.
#[no_mangle]
pub unsafe extern "C" fn adh_hopf_lax_trajectory(
    handle: *const AdhHopfLax,
    x0: f64,
    t0: f64,
    t1: f64,
    step: f64,
) -> *mut AdhTrajectory {
    if handle.is_null() {
        null_arg("handle");
        return std::ptr::null_mut();
    }
    let model = &(*handle).model;
    guarded_ptr(|| trajectory_handle(model, &[x0], t0, t1, step))
}

/// Creates a planar local model from `k` momenta laid out row-major in
/// `momenta` (`k`×`dim` doubles) plus a constant force term. Returns null
/// on failure.
///
/// # Safety
/// `momenta` must point to `k * dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn adh_local_model_new(
    momenta: *const f64,
    k: usize,
    dim: usize,
    force: f64,
) -> *mut AdhLocalModel {
    let Some(flat) = optional_slice(momenta, k.saturating_mul(dim)) else {
        null_arg("momenta");
        return std::ptr::null_mut();
    };
    guarded_ptr(move || {
        let rows: Vec<Vec<f64>> = flat.chunks_exact(dim.max(1)).map(<[f64]>::to_vec).collect();
        let set = match MomentumSet::from_rows(&rows) {
            Ok(s) => s,
            Err(e) => {
                fail(&e);
                return std::ptr::null_mut();
            }
        };
        match LocalLinearModel::new(set, force) {
            Ok(model) => Box::into_raw(Box::new(AdhLocalModel { model })),
            Err(e) => {
                fail(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Releases a handle created by [`adh_local_model_new`]. Null is a no-op.
///
/// # Safety
/// `handle` must be a pointer returned by [`adh_local_model_new`] that has
/// not been freed yet, or null.
#[no_mangle]
pub unsafe extern "C" fn adh_local_model_free(handle: *mut AdhLocalModel) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Writes the limit velocity of the local model at position `x` (of the
/// model's dimension) and time `t` into `out`. A non-positive `tol` selects
/// the model's default.
///
/// # Safety
/// `handle` must be a live [`adh_local_model_new`] pointer; `x` and `out`
/// must each point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn adh_local_model_velocity(
    handle: *const AdhLocalModel,
    x: *const f64,
    dim: usize,
    t: f64,
    tol: f64,
    out: *mut f64,
) -> AdhStatus {
    if handle.is_null() {
        return null_arg("handle");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let Some(x) = optional_slice(x, dim) else {
        return null_arg("x");
    };
    let model = &(*handle).model;
    guarded(|| {
        let tol = if tol > 0.0 { tol } else { model.default_active_tol() };
        match model.limit_velocity(x, t, tol) {
            Ok(u) => {
                if u.len() != dim {
                    set_error(format!("model dimension is {}, not {dim}", u.len()));
                    return AdhStatus::AdhStatusInvalidArgument;
                }
                std::ptr::copy_nonoverlapping(u.as_ptr(), out, dim);
                AdhStatus::AdhStatusOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Integrates the adhesion trajectory of the local model from `x0` (of the
/// model's dimension). Returns null on failure.
///
/// # Safety
/// `handle` must be a live [`adh_local_model_new`] pointer and `x0` must
/// point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn adh_local_model_trajectory(
    handle: *const AdhLocalModel,
    x0: *const f64,
    dim: usize,
    t0: f64,
    t1: f64,
    step: f64,
) -> *mut AdhTrajectory {
    if handle.is_null() {
        null_arg("handle");
        return std::ptr::null_mut();
    }
    let Some(x0) = optional_slice(x0, dim) else {
        null_arg("x0");
        return std::ptr::null_mut();
    };
    let model = &(*handle).model;
    guarded_ptr(|| trajectory_handle(model, x0, t0, t1, step))
}

/// Number of samples along the trajectory (zero for null).
///
/// # Safety
/// `handle` must be a live trajectory pointer or null.
#[no_mangle]
pub unsafe extern "C" fn adh_trajectory_len(handle: *const AdhTrajectory) -> usize {
    if handle.is_null() {
        return 0;
    }
    (*handle).trajectory.times().len()
}

/// Space dimension of the trajectory samples (zero for null).
///
/// # Safety
/// `handle` must be a live trajectory pointer or null.
#[no_mangle]
pub unsafe extern "C" fn adh_trajectory_dim(handle: *const AdhTrajectory) -> usize {
    if handle.is_null() {
        return 0;
    }
    (*handle).dim
}

/// Copies sample `index` of the trajectory: its time, position, one-way
/// velocity, and whether the particle had already merged with the shock.
/// Output pointers may be null to skip a field.
///
/// # Safety
/// `handle` must be a live trajectory pointer; `out_position` and
/// `out_velocity`, when non-null, must each point to
/// [`adh_trajectory_dim`] doubles.
#[no_mangle]
pub unsafe extern "C" fn adh_trajectory_sample(
    handle: *const AdhTrajectory,
    index: usize,
    out_time: *mut f64,
    out_position: *mut f64,
    out_velocity: *mut f64,
    out_on_shock: *mut c_int,
) -> AdhStatus {
    if handle.is_null() {
        return null_arg("handle");
    }
    let tr = &(*handle).trajectory;
    if index >= tr.times().len() {
        set_error(format!(
            "sample index {index} out of range (len {})",
            tr.times().len()
        ));
        return AdhStatus::AdhStatusInvalidArgument;
    }
    if !out_time.is_null() {
        *out_time = tr.times()[index];
    }
    if !out_position.is_null() {
        let p = &tr.positions()[index];
        std::ptr::copy_nonoverlapping(p.as_ptr(), out_position, p.len());
    }
    if !out_velocity.is_null() {
        let v = &tr.velocities()[index];
        std::ptr::copy_nonoverlapping(v.as_ptr(), out_velocity, v.len());
    }
    if !out_on_shock.is_null() {
        *out_on_shock = c_int::from(tr.merge_flags()[index]);
    }
    AdhStatus::AdhStatusOk
}

/// Releases a trajectory handle. Null is a no-op.
///
/// # Safety
/// `handle` must be a pointer returned by a trajectory call that has not
/// been freed yet, or null.
#[no_mangle]
pub unsafe extern "C" fn adh_trajectory_free(handle: *mut AdhTrajectory) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Creates the exact viscous solution for Fourier initial data at viscosity
/// `nu > 0`. Returns null on failure.
///
/// # Safety
/// `cos` must point to `n_cos` doubles and `sin` to `n_sin` doubles; either
/// pointer may be null when its count is zero.
#[no_mangle]
pub unsafe extern "C" fn adh_viscous_new(
    period: f64,
    mean: f64,
    cos: *const f64,
    n_cos: usize,
    sin: *const f64,
    n_sin: usize,
    nu: f64,
) -> *mut AdhViscous {
    let cos = optional_slice(cos, n_cos);
    let sin = optional_slice(sin, n_sin);
    guarded_ptr(move || {
        let phi0 = match fourier(period, mean, cos, sin) {
            Ok(p) => p,
            Err(_) => return std::ptr::null_mut(),
        };
        match ViscousSolution::new(phi0, nu) {
            Ok(solution) => Box::into_raw(Box::new(AdhViscous { solution })),
            Err(e) => {
                fail(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Releases a handle created by [`adh_viscous_new`]. Null is a no-op.
///
/// # Safety
/// `handle` must be a pointer returned by [`adh_viscous_new`] that has not
/// been freed yet, or null.
#[no_mangle]
pub unsafe extern "C" fn adh_viscous_free(handle: *mut AdhViscous) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Evaluates the viscous potential ψ^ν(x, t), t ≥ 0.
///
/// # Safety
/// `handle` must be a live [`adh_viscous_new`] pointer and `out` a valid
/// double pointer.
#[no_mangle]
pub unsafe extern "C" fn adh_viscous_psi(
    handle: *const AdhViscous,
    x: f64,
    t: f64,
    out: *mut f64,
) -> AdhStatus {
    if handle.is_null() {
        return null_arg("handle");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let solution = &(*handle).solution;
    guarded(|| match solution.psi(x, t) {
        Ok(value) => {
            *out = value;
            AdhStatus::AdhStatusOk
        }
        Err(e) => fail(&e),
    })
}

/// Evaluates the viscous velocity ∂ψ/∂x at (x, t), t ≥ 0.
///
/// # Safety
/// `handle` must be a live [`adh_viscous_new`] pointer and `out` a valid
/// double pointer.
#[no_mangle]
pub unsafe extern "C" fn adh_viscous_velocity(
    handle: *const AdhViscous,
    x: f64,
    t: f64,
    out: *mut f64,
) -> AdhStatus {
    if handle.is_null() {
        return null_arg("handle");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let solution = &(*handle).solution;
    guarded(|| match solution.velocity(x, t) {
        Ok(value) => {
            *out = value;
            AdhStatus::AdhStatusOk
        }
        Err(e) => fail(&e),
    })
}

/// Minimal enclosing ball of `n` points of dimension `dim`, laid out
/// row-major in `points`. Writes the center (`dim` doubles) and the radius.
///
/// # Safety
/// `points` must hold `n * dim` doubles, `out_center` must hold `dim`
/// doubles, and `out_radius` must be a valid double pointer.
#[no_mangle]
pub unsafe extern "C" fn adh_min_enclosing_ball(
    points: *const f64,
    n: usize,
    dim: usize,
    out_center: *mut f64,
    out_radius: *mut f64,
) -> AdhStatus {
    let Some(flat) = optional_slice(points, n.saturating_mul(dim)) else {
        return null_arg("points");
    };
    if out_center.is_null() {
        return null_arg("out_center");
    }
    if out_radius.is_null() {
        return null_arg("out_radius");
    }
    guarded(|| {
        let rows: Vec<Vec<f64>> = flat.chunks_exact(dim.max(1)).map(<[f64]>::to_vec).collect();
        let set = match MomentumSet::from_rows(&rows) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        match min_enclosing_ball(&set) {
            Ok(ball) => {
                std::ptr::copy_nonoverlapping(ball.center.as_ptr(), out_center, dim);
                *out_radius = ball.radius;
                AdhStatus::AdhStatusOk
            }
            Err(e) => fail(&e),
        }
    })
}
