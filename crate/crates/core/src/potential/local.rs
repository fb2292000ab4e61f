//! The linear model of the potential frozen at a shock point.

use super::PotentialModel;
use crate::convex::{min_enclosing_ball, spacetime_directional_derivative, MomentumSet};
use crate::{Error, Result};

/// Relative determinant below which three momenta count as collinear.
const COLLINEAR_TOL: f64 = 1e-10;
/// Relative determinant below which four momenta count as cocircular.
const COCIRCULAR_TOL: f64 = 1e-10;
/// |cos| below which a triangle angle counts as right.
const RIGHT_ANGLE_TOL: f64 = 1e-9;

/// First-order model of the potential near a shock point carrying momenta
/// p_1 … p_k and force value U_*:
///
/// φ(x*+q, t*+τ) − φ(x*,t*) ≈ min_i (p_i·q − τ|p_i|²/2) − U_*τ.
///
/// The offsets (q,τ) may have either time sign; the model describes the
/// local shock structure both before and after the meeting time. Planar
/// models with three or more momenta must be generic: no three momenta on a
/// line, no four on a circle, and no subtriangle with a right angle.
#[derive(Debug, Clone)]
pub struct LocalLinearModel {
    momenta: MomentumSet,
    force: f64,
}

impl LocalLinearModel {
    pub fn new(momenta: MomentumSet, force: f64) -> Result<Self> {
        if !force.is_finite() {
            return Err(Error::InvalidModel("force must be finite".into()));
        }
        if momenta.dim() > 2 {
            return Err(Error::UnsupportedDimension {
                dim: momenta.dim(),
                max: 2,
            });
        }
        if momenta.dim() == 2 {
            check_planar_genericity(&momenta)?;
        }
        Ok(Self { momenta, force })
    }

    pub fn momenta(&self) -> &MomentumSet {
        &self.momenta
    }

    /// The space-time derivative min_i (p_i·q − τ|p_i|²/2) − U_*τ.
    pub fn derivative(&self, q: &[f64], tau: f64) -> Result<f64> {
        spacetime_directional_derivative(&self.momenta, self.force, q, tau)
    }

    /// Indices of momenta achieving the minimum within `tol`.
    pub fn active_indices(&self, q: &[f64], tau: f64, tol: f64) -> Result<Vec<usize>> {
        if q.len() != self.momenta.dim() {
            return Err(Error::UnsupportedDimension {
                dim: q.len(),
                max: self.momenta.dim(),
            });
        }
        let values: Vec<f64> = self
            .momenta
            .iter()
            .map(|p| {
                let pq: f64 = p.as_slice().iter().zip(q).map(|(a, b)| a * b).sum();
                pq - 0.5 * tau * p.norm_sq()
            })
            .collect();
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        Ok((0..values.len())
            .filter(|&i| values[i] <= min + tol)
            .collect())
    }

    /// Position at offset time τ of the one matter trajectory emitted by the
    /// shock point itself: τ times the center of the minimal ball of all
    /// momenta. For τ > 0 this point stays on the shock.
    pub fn trajectory_from_origin(&self, tau: f64) -> Result<Vec<f64>> {
        let ball = min_enclosing_ball(&self.momenta)?;
        Ok(ball.center.iter().map(|c| c * tau).collect())
    }
}

impl PotentialModel for LocalLinearModel {
    fn space_dim(&self) -> usize {
        self.momenta.dim()
    }

    fn force_constant(&self) -> f64 {
        self.force
    }

    fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        self.derivative(x, t)
    }

    fn active_momenta(&self, x: &[f64], t: f64, tol: f64) -> Result<MomentumSet> {
        let idx = self.active_indices(x, t, tol)?;
        let rows: Vec<Vec<f64>> = idx
            .into_iter()
            .map(|i| self.momenta.get(i).as_slice().to_vec())
            .collect();
        MomentumSet::from_rows(&rows)
    }

    fn default_active_tol(&self) -> f64 {
        1e-9 * (1.0 + self.momenta.max_norm().powi(2))
    }
}

/// No three collinear, no four cocircular, no right subtriangle.
pub(crate) fn check_planar_genericity(set: &MomentumSet) -> Result<()> {
    let n = set.len();
    let p = |i: usize| set.get(i).as_slice().to_vec();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (a, b, c) = (p(i), p(j), p(k));
                let ab = [b[0] - a[0], b[1] - a[1]];
                let ac = [c[0] - a[0], c[1] - a[1]];
                let det = ab[0] * ac[1] - ab[1] * ac[0];
                let scale = (ab[0].hypot(ab[1])) * (ac[0].hypot(ac[1]));
                if scale == 0.0 || det.abs() <= COLLINEAR_TOL * scale {
                    return Err(Error::Degenerate(format!(
                        "momenta {i}, {j}, {k} are collinear"
                    )));
                }
                // Right angles: check the cosine at each vertex.
                for (v, e1, e2) in [(i, j, k), (j, i, k), (k, i, j)] {
                    let (pv, p1, p2) = (p(v), p(e1), p(e2));
                    let u = [p1[0] - pv[0], p1[1] - pv[1]];
                    let w = [p2[0] - pv[0], p2[1] - pv[1]];
                    let cos = (u[0] * w[0] + u[1] * w[1])
                        / (u[0].hypot(u[1]) * w[0].hypot(w[1]));
                    if cos.abs() <= RIGHT_ANGLE_TOL {
                        return Err(Error::Degenerate(format!(
                            "triangle {i}, {j}, {k} has a right angle at momentum {v}"
                        )));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in (k + 1)..n {
                    let base = p(l);
                    let mut rows = Vec::new();
                    let mut scale = 0.0f64;
                    for idx in [i, j, k] {
                        let d = [p(idx)[0] - base[0], p(idx)[1] - base[1]];
                        let n2 = d[0] * d[0] + d[1] * d[1];
                        scale = scale.max(n2.sqrt());
                        rows.push([n2, d[0], d[1]]);
                    }
                    let det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
                        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
                        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
                    if det.abs() <= COCIRCULAR_TOL * scale.powi(4) {
                        return Err(Error::Degenerate(format!(
                            "momenta {i}, {j}, {k}, {l} are cocircular"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
