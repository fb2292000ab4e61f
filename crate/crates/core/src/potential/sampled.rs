//! Potentials sampled as a minimum over a gridded generating family.

use super::PotentialModel;
use crate::convex::{MomentumSet, MAX_DIM};
use crate::{Error, Result};

type Family = Box<dyn Fn(&[f64], &[f64], f64) -> f64>;

/// Pattern-search refinement rounds per located basin.
const REFINE_ROUNDS: usize = 40;
/// Most basins kept per evaluation, best values first.
const MAX_BASINS: usize = 16;

/// φ(x,t) = min over a parameter box of a user-supplied family F(ξ; x, t).
///
/// The minimization is a coarse grid scan followed by compass-search
/// polishing of each grid-local basin. This is deliberately independent of
/// the closed-form models, so it serves as a cross-check for them; momenta
/// come out of ∇ₓF at the refined minimizers.
pub struct FamilyPotential {
    f: Family,
    xi_dim: usize,
    space_dim: usize,
    lo: Vec<f64>,
    hi: Vec<f64>,
    force: f64,
    cells: usize,
}

impl std::fmt::Debug for FamilyPotential {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("FamilyPotential")
            .field("xi_dim", &self.xi_dim)
            .field("space_dim", &self.space_dim)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("force", &self.force)
            .field("cells", &self.cells)
            .finish()
    }
}

impl FamilyPotential {
    pub fn new(
        f: impl Fn(&[f64], &[f64], f64) -> f64 + 'static,
        xi_dim: usize,
        space_dim: usize,
        lo: Vec<f64>,
        hi: Vec<f64>,
        force: f64,
    ) -> Result<Self> {
        if xi_dim == 0 || xi_dim > 2 {
            return Err(Error::UnsupportedDimension {
                dim: xi_dim,
                max: 2,
            });
        }
        if space_dim == 0 || space_dim > MAX_DIM {
            return Err(Error::UnsupportedDimension {
                dim: space_dim,
                max: MAX_DIM,
            });
        }
        if lo.len() != xi_dim || hi.len() != xi_dim {
            return Err(Error::InvalidModel(
                "parameter box bounds must match the family dimension".into(),
            ));
        }
        if !force.is_finite()
            || lo.iter().zip(&hi).any(|(a, b)| !a.is_finite() || !b.is_finite() || a >= b)
        {
            return Err(Error::InvalidModel(
                "parameter box must be finite with lo < hi".into(),
            ));
        }
        Ok(Self {
            f: Box::new(f),
            xi_dim,
            space_dim,
            lo,
            hi,
            force,
            cells: 128,
        })
    }

    /// Override the coarse grid resolution per parameter axis.
    pub fn with_resolution(mut self, cells: usize) -> Result<Self> {
        if cells < 8 {
            return Err(Error::GridResolution(format!(
                "need at least 8 cells per family axis, got {cells}"
            )));
        }
        self.cells = cells;
        Ok(self)
    }

    /// Refined basins as (parameter, value), best value first.
    fn basins(&self, x: &[f64], t: f64) -> Vec<(Vec<f64>, f64)> {
        let n = self.cells;
        let step: Vec<f64> = (0..self.xi_dim)
            .map(|i| (self.hi[i] - self.lo[i]) / n as f64)
            .collect();
        let point = |idx: &[usize]| -> Vec<f64> {
            idx.iter()
                .enumerate()
                .map(|(i, &j)| self.lo[i] + (j as f64 + 0.5) * step[i])
                .collect()
        };
        let value = |xi: &[f64]| (self.f)(xi, x, t);

        // Scan the grid, remembering values for the local-minimum test.
        let mut minima: Vec<(Vec<usize>, f64)> = Vec::new();
        if self.xi_dim == 1 {
            let vals: Vec<f64> = (0..n).map(|j| value(&point(&[j]))).collect();
            for j in 0..n {
                let left = if j > 0 { vals[j - 1] } else { f64::INFINITY };
                let right = if j + 1 < n { vals[j + 1] } else { f64::INFINITY };
                if vals[j] <= left && vals[j] <= right {
                    minima.push((vec![j], vals[j]));
                }
            }
        } else {
            let mut vals = vec![0.0; n * n];
            for j0 in 0..n {
                for j1 in 0..n {
                    vals[j0 * n + j1] = value(&point(&[j0, j1]));
                }
            }
            for j0 in 0..n {
                for j1 in 0..n {
                    let v = vals[j0 * n + j1];
                    let mut is_min = true;
                    'nbrs: for d0 in -1i64..=1 {
                        for d1 in -1i64..=1 {
                            if d0 == 0 && d1 == 0 {
                                continue;
                            }
                            let (n0, n1) = (j0 as i64 + d0, j1 as i64 + d1);
                            if n0 < 0 || n1 < 0 || n0 >= n as i64 || n1 >= n as i64 {
                                continue;
                            }
                            if vals[n0 as usize * n + n1 as usize] < v {
                                is_min = false;
                                break 'nbrs;
                            }
                        }
                    }
                    if is_min {
                        minima.push((vec![j0, j1], v));
                    }
                }
            }
        }
        minima.sort_by(|a, b| a.1.total_cmp(&b.1));
        minima.truncate(MAX_BASINS);

        // Compass-search polish: probe axis neighbors, halve on failure.
        let mut refined: Vec<(Vec<f64>, f64)> = Vec::new();
        for (idx, _) in minima {
            let mut p = point(&idx);
            let mut v = value(&p);
            let mut radius: Vec<f64> = step.clone();
            for _ in 0..REFINE_ROUNDS {
                let mut improved = false;
                for axis in 0..self.xi_dim {
                    for sign in [-1.0, 1.0] {
                        let mut q = p.clone();
                        q[axis] = (q[axis] + sign * radius[axis])
                            .clamp(self.lo[axis], self.hi[axis]);
                        let vq = value(&q);
                        if vq < v {
                            p = q;
                            v = vq;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    for r in radius.iter_mut() {
                        *r *= 0.5;
                    }
                }
            }
            refined.push((p, v));
        }
        refined.sort_by(|a, b| a.1.total_cmp(&b.1));
        refined
    }

    fn spatial_gradient(&self, xi: &[f64], x: &[f64], t: f64) -> Vec<f64> {
        let h = 1e-6;
        (0..self.space_dim)
            .map(|j| {
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[j] += h;
                xm[j] -= h;
                ((self.f)(xi, &xp, t) - (self.f)(xi, &xm, t)) / (2.0 * h)
            })
            .collect()
    }
}

impl PotentialModel for FamilyPotential {
    fn space_dim(&self) -> usize {
        self.space_dim
    }

    fn force_constant(&self) -> f64 {
        self.force
    }

    fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        if x.len() != self.space_dim {
            return Err(Error::UnsupportedDimension {
                dim: x.len(),
                max: self.space_dim,
            });
        }
        let basins = self.basins(x, t);
        basins
            .first()
            .map(|&(_, v)| v)
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Domain(format!("family has no finite minimum at t = {t}")))
    }

    fn active_momenta(&self, x: &[f64], t: f64, tol: f64) -> Result<MomentumSet> {
        if x.len() != self.space_dim {
            return Err(Error::UnsupportedDimension {
                dim: x.len(),
                max: self.space_dim,
            });
        }
        let basins = self.basins(x, t);
        let best = basins
            .first()
            .map(|&(_, v)| v)
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Domain(format!("family has no finite minimum at t = {t}")))?;
        // Distinct minimizers may polish to the same point; merge them.
        let mut kept: Vec<Vec<f64>> = Vec::new();
        let box_scale: f64 = (0..self.xi_dim)
            .map(|i| self.hi[i] - self.lo[i])
            .fold(0.0, f64::max);
        for (xi, v) in &basins {
            if *v > best + tol {
                continue;
            }
            let dup = kept.iter().any(|k| {
                k.iter()
                    .zip(xi)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
                    < 1e-6 * box_scale
            });
            if !dup {
                kept.push(xi.clone());
            }
        }
        let rows: Vec<Vec<f64>> = kept
            .iter()
            .map(|xi| self.spatial_gradient(xi, x, t))
            .collect();
        MomentumSet::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{FourierSeries, HopfLaxPotential};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn matches_the_hopf_lax_stack_on_cosine_data() {
        // Same minimization posed two ways: the dedicated circle evaluator
        // and the generic gridded family must agree.
        let family = FamilyPotential::new(
            |xi, x, t| xi[0].cos() + (x[0] - xi[0]).powi(2) / (2.0 * t),
            1,
            1,
            vec![-7.0],
            vec![7.0],
            0.0,
        )
        .unwrap();
        let reference = HopfLaxPotential::new(FourierSeries::cosine(2.0 * PI, 1.0).unwrap());
        for &(x, t) in &[(0.3, 0.5), (1.8, 1.2), (PI, 2.0), (0.0, 2.0)] {
            let a = family.eval(&[x], t).unwrap();
            let b = reference.hopf_lax_eval(x, t).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-6);
        }

        // At the symmetric shock point both stacks must report the same
        // symmetric momentum pair.
        let tol = 1e-6;
        let a = family.active_momenta(&[0.0], 2.0, tol).unwrap();
        let b = reference.active_momenta(&[0.0], 2.0, tol).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(b.len(), 2);
        let mut pa: Vec<f64> = (0..2).map(|i| a.get(i)[0]).collect();
        let mut pb: Vec<f64> = (0..2).map(|i| b.get(i)[0]).collect();
        pa.sort_by(f64::total_cmp);
        pb.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(pa[0], pb[0], epsilon = 1e-4);
        assert_abs_diff_eq!(pa[1], pb[1], epsilon = 1e-4);
    }

    #[test]
    fn quadratic_family_has_closed_form_minimum() {
        // F(a; x) = (a − x)²/2 + 0.3a: minimizer a* = x − 0.3, value
        // 0.045 + 0.3(x − 0.3), spatial slope −(a* − x) = 0.3.
        let family = FamilyPotential::new(
            |xi, x, _t| (xi[0] - x[0]).powi(2) / 2.0 + 0.3 * xi[0],
            1,
            1,
            vec![-10.0],
            vec![10.0],
            0.0,
        )
        .unwrap();
        for &x in &[-1.0, 0.0, 2.2] {
            let v = family.eval(&[x], 1.0).unwrap();
            assert_abs_diff_eq!(v, 0.045 + 0.3 * (x - 0.3), epsilon = 1e-9);
            let p = family.limit_velocity(&[x], 1.0, 1e-9).unwrap();
            assert_abs_diff_eq!(p[0], 0.3, epsilon = 1e-5);
        }
    }

    #[test]
    fn two_parameter_families_work() {
        // Independent quadratics in each parameter; minimum splits.
        let family = FamilyPotential::new(
            |xi, x, t| {
                (xi[0] - x[0]).powi(2) / (2.0 * t) + (xi[1] - 0.5).powi(2) + xi[0] * 0.1
            },
            2,
            1,
            vec![-3.0, -3.0],
            vec![3.0, 3.0],
            0.0,
        )
        .unwrap()
        .with_resolution(64)
        .unwrap();
        let t = 0.8;
        let x = [0.4f64];
        // Minimize (a−x)²/(2t) + 0.1a over a: a* = x − 0.1t.
        let a_star: f64 = x[0] - 0.1 * t;
        let expected = (a_star - x[0]).powi(2) / (2.0 * t) + 0.1 * a_star;
        assert_abs_diff_eq!(family.eval(&x, t).unwrap(), expected, epsilon = 1e-8);
        let p = family.limit_velocity(&x, t, 1e-9).unwrap();
        assert_abs_diff_eq!(p[0], (x[0] - a_star) / t, epsilon = 1e-5);
    }

    #[test]
    fn construction_guards() {
        assert!(FamilyPotential::new(|_, _, _| 0.0, 3, 1, vec![0.0; 3], vec![1.0; 3], 0.0)
            .is_err());
        assert!(FamilyPotential::new(|_, _, _| 0.0, 1, 1, vec![1.0], vec![0.0], 0.0).is_err());
        let ok = FamilyPotential::new(|_, _, _| 0.0, 1, 1, vec![0.0], vec![1.0], 0.0).unwrap();
        assert!(ok.with_resolution(4).is_err());
    }
}
