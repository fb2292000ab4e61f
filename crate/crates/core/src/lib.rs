//! Matter evolution in the vanishing-viscosity (adhesion) limit of the
//! potential forced Burgers equation.
//!
//! The crate revolves around one geometric fact: where the limit velocity
//! potential is not differentiable, a particle still has a well-defined
//! velocity — the center of the smallest ball enclosing the active momenta
//! (the gradients of the branches that attain the potential's minimum).
//!
//! The pieces:
//!
//! * [`convex`] — momenta, minimal enclosing balls, directional minima;
//! * [`hgrad`] — generalized gradient flows for semiconcave potentials under
//!   linear-plus-quadratic Hamiltonians, with the invariance suite;
//! * [`potential`] — limit potentials: periodic Hopf–Lax data, finite branch
//!   families, local linear shock models, quartic shock-endpoint models;
//! * [`trajectory`] — forward Euler adhesion trajectories, merge detection,
//!   uniqueness and reachability checks;
//! * [`viscous`] — the exact smooth solution at positive viscosity via the
//!   Cole–Hopf integral, used as the convergence oracle;
//! * [`shock`] — planar shock diagrams at fixed time offsets, node and
//!   four-momentum classification, cluster event scans, SVG rendering;
//! * [`scenario`] / [`verify`] — the TOML-driven CLI layer and the named
//!   verification suites it exposes.

pub mod convex;
pub mod error;
pub mod hgrad;
pub mod linalg;
pub mod potential;
pub mod scenario;
pub mod shock;
pub mod trajectory;
pub mod verify;
pub mod viscous;

pub use error::{Error, Result};
