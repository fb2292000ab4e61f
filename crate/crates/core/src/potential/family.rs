//! Potentials given as a minimum of finitely many closed-form solutions.

use super::PotentialModel;
use crate::convex::{MomentumSet, MAX_DIM};
use crate::{linalg, Error, Result};

/// One closed-form solution of φ_t + |∇φ|²/2 + U = 0 with constant force U.
#[derive(Debug, Clone, PartialEq)]
pub enum Branch {
    /// φ(x,t) = p·x − (|p|²/2 + U)·t + offset; the flow of a single stream
    /// of matter with momentum p.
    Affine { momentum: Vec<f64>, offset: f64 },
    /// φ(x,t) = |x − vertex|²/(2(t − birth)) + offset − U·t, valid for
    /// t > birth; the fan of matter emitted from a point.
    Parabolic {
        vertex: Vec<f64>,
        birth: f64,
        offset: f64,
    },
}

impl Branch {
    fn dim(&self) -> usize {
        match self {
            Branch::Affine { momentum, .. } => momentum.len(),
            Branch::Parabolic { vertex, .. } => vertex.len(),
        }
    }

    /// Value at (x,t), or +∞ where the branch does not exist yet.
    fn eval(&self, x: &[f64], t: f64, force: f64) -> f64 {
        match self {
            Branch::Affine { momentum, offset } => {
                linalg::dot(momentum, x) - (0.5 * linalg::norm_sq(momentum) + force) * t + offset
            }
            Branch::Parabolic {
                vertex,
                birth,
                offset,
            } => {
                if t <= *birth {
                    f64::INFINITY
                } else {
                    let d2: f64 = linalg::norm_sq(&linalg::sub(x, vertex));
                    d2 / (2.0 * (t - birth)) + offset - force * t
                }
            }
        }
    }

    fn gradient(&self, x: &[f64], t: f64) -> Vec<f64> {
        match self {
            Branch::Affine { momentum, .. } => momentum.clone(),
            Branch::Parabolic { vertex, birth, .. } => {
                linalg::scale(&linalg::sub(x, vertex), 1.0 / (t - birth))
            }
        }
    }

    fn time_derivative(&self, x: &[f64], t: f64, force: f64) -> f64 {
        match self {
            Branch::Affine { momentum, .. } => -(0.5 * linalg::norm_sq(momentum) + force),
            Branch::Parabolic { vertex, birth, .. } => {
                let d2: f64 = linalg::norm_sq(&linalg::sub(x, vertex));
                -d2 / (2.0 * (t - birth) * (t - birth)) - force
            }
        }
    }
}

/// φ = min over branches; every branch solves the same Hamilton–Jacobi
/// equation, so the minimum is the limit potential of an explicit flow.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMinFamily {
    branches: Vec<Branch>,
    force: f64,
    dim: usize,
}

impl FiniteMinFamily {
    pub fn new(branches: Vec<Branch>, force: f64) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidModel("family needs at least one branch".into()));
        }
        if !force.is_finite() {
            return Err(Error::InvalidModel("force must be finite".into()));
        }
        let dim = branches[0].dim();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension { dim, max: MAX_DIM });
        }
        for b in &branches {
            if b.dim() != dim {
                return Err(Error::InvalidModel(
                    "all branches must share one dimension".into(),
                ));
            }
            let finite = match b {
                Branch::Affine { momentum, offset } => {
                    momentum.iter().all(|v| v.is_finite()) && offset.is_finite()
                }
                Branch::Parabolic {
                    vertex,
                    birth,
                    offset,
                } => {
                    vertex.iter().all(|v| v.is_finite())
                        && birth.is_finite()
                        && offset.is_finite()
                }
            };
            if !finite {
                return Err(Error::InvalidModel("branch parameters must be finite".into()));
            }
        }
        let family = Self {
            branches,
            force,
            dim,
        };
        family.check_residuals()?;
        Ok(family)
    }

    /// Verifies φ_t + |∇φ|²/2 + U = 0 on each branch at sampled points.
    /// The derivatives are closed forms, so this is a tripwire against
    /// inconsistent branch formulas rather than a numerical test.
    fn check_residuals(&self) -> Result<()> {
        for (i, b) in self.branches.iter().enumerate() {
            let t0 = match b {
                Branch::Parabolic { birth, .. } => birth + 0.5,
                _ => 0.25,
            };
            for s in 0..4 {
                let t = t0 + 0.4 * s as f64;
                let x: Vec<f64> = (0..self.dim).map(|j| 0.3 * (j as f64 + 1.0) - s as f64 * 0.1).collect();
                let grad = b.gradient(&x, t);
                let residual =
                    b.time_derivative(&x, t, self.force) + 0.5 * linalg::norm_sq(&grad) + self.force;
                if residual.abs() > 1e-10 {
                    return Err(Error::InvalidModel(format!(
                        "branch {i} violates the evolution equation (residual {residual:.3e})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// Indices of branches within `tol` of the minimum at (x,t).
    pub fn active_branches(&self, x: &[f64], t: f64, tol: f64) -> Result<Vec<usize>> {
        let values: Vec<f64> = self
            .branches
            .iter()
            .map(|b| b.eval(x, t, self.force))
            .collect();
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        if !min.is_finite() {
            return Err(Error::Domain(format!(
                "no branch of the family exists at t = {t}"
            )));
        }
        Ok((0..values.len())
            .filter(|&i| values[i] <= min + tol)
            .collect())
    }
}

impl PotentialModel for FiniteMinFamily {
    fn space_dim(&self) -> usize {
        self.dim
    }

    fn force_constant(&self) -> f64 {
        self.force
    }

    fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        self.check_point(x)?;
        let min = self
            .branches
            .iter()
            .map(|b| b.eval(x, t, self.force))
            .fold(f64::INFINITY, f64::min);
        if !min.is_finite() {
            return Err(Error::Domain(format!(
                "no branch of the family exists at t = {t}"
            )));
        }
        Ok(min)
    }

    fn active_momenta(&self, x: &[f64], t: f64, tol: f64) -> Result<MomentumSet> {
        self.check_point(x)?;
        let active = self.active_branches(x, t, tol)?;
        let rows: Vec<Vec<f64>> = active
            .into_iter()
            .map(|i| self.branches[i].gradient(x, t))
            .collect();
        MomentumSet::from_rows(&rows)
    }

    fn default_active_tol(&self) -> f64 {
        let scale = self
            .branches
            .iter()
            .map(|b| match b {
                Branch::Affine { momentum, offset } => linalg::norm(momentum) + offset.abs(),
                Branch::Parabolic { offset, .. } => offset.abs(),
            })
            .fold(1.0, f64::max);
        1e-6 * scale
    }
}

impl FiniteMinFamily {
    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::UnsupportedDimension {
                dim: x.len(),
                max: self.dim,
            });
        }
        Ok(())
    }
}
