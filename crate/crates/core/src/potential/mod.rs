//! Representations of the limit potential and its momentum sets.
//!
//! Every model here exposes the same queries: evaluate φ(x,t), list the
//! active momenta k_{x,t} (the limit velocities of nearby off-shock points),
//! and produce the limit velocity u(x,t) as the center of the minimal ball
//! enclosing those momenta. Points where two or more momenta are active are
//! shock points.
//!
//! Models:
//! - [`HopfLaxPotential`]: the global zero-force potential on the circle,
//!   φ(x,t) = min_a φ₀(a) + (x−a)²/(2t), with periodic initial data given as
//!   a finite Fourier series.
//! - [`FiniteMinFamily`]: a minimum of finitely many closed-form solutions of
//!   the Hamilton–Jacobi equation with a constant force value.
//! - [`LocalLinearModel`]: the space-time derivative of a potential frozen at
//!   a shock point, φ′(q,τ) = min_i (p_i·q − τ|p_i|²/2) − U_*τ.
//! - [`A3EndpointModel`]: the quartic normal form describing a shock end
//!   point, with its approximating half-hyperplane and tangency diagnostics.
//! - [`FamilyPotential`]: a potential sampled as a minimum over a parameter
//!   grid of a user-supplied smooth family, for cross-checking the closed
//!   forms.

mod a3;
mod family;
mod fourier;
mod hopf_lax;
pub(crate) mod local;
mod sampled;

pub use a3::{A3EndpointModel, LinearForm, ShockHalfplane, TangentDiagnostics};
pub use family::{Branch, FiniteMinFamily};
pub use fourier::FourierSeries;
pub use hopf_lax::HopfLaxPotential;
pub use local::LocalLinearModel;
pub use sampled::FamilyPotential;

use crate::convex::{min_enclosing_ball, MomentumSet};
use crate::{linalg, Result};

/// Common interface of the limit-potential models.
pub trait PotentialModel {
    /// Space dimension d of the medium.
    fn space_dim(&self) -> usize;

    /// The force value entering the space-time derivative at the model's
    /// reference point (zero for the force-free Hopf–Lax potential).
    fn force_constant(&self) -> f64;

    /// Potential value. For local models x and t are offsets from the
    /// expansion point.
    fn eval(&self, x: &[f64], t: f64) -> Result<f64>;

    /// The set k_{x,t}: momenta of every branch/minimizer whose value lies
    /// within `tol` of the minimum.
    fn active_momenta(&self, x: &[f64], t: f64, tol: f64) -> Result<MomentumSet>;

    /// u(x,t): center of the minimal ball enclosing the active momenta.
    fn limit_velocity(&self, x: &[f64], t: f64, tol: f64) -> Result<Vec<f64>> {
        Ok(min_enclosing_ball(&self.active_momenta(x, t, tol)?)?.center)
    }

    /// Distance between medium positions, respecting the model's topology
    /// (periodic models override this with the torus metric).
    fn position_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        linalg::dist(a, b)
    }

    /// Value-scale tolerance used when callers do not pick their own.
    fn default_active_tol(&self) -> f64 {
        1e-6
    }
}

/// A point is on the shock exactly when several momenta are active.
pub fn on_shock<M: PotentialModel + ?Sized>(
    model: &M,
    x: &[f64],
    t: f64,
    tol: f64,
) -> Result<bool> {
    Ok(model.active_momenta(x, t, tol)?.len() >= 2)
}
