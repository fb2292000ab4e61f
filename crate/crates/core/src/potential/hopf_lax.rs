//! Zero-force limit potential on the circle via the Hopf–Lax formula.

use super::fourier::FourierSeries;
use super::PotentialModel;
use crate::convex::MomentumSet;
use crate::{Error, Result};

/// Number of search cells per period of the initial data.
const CELLS_PER_PERIOD: usize = 2048;
/// Interval-halving rounds when polishing a candidate minimizer.
const REFINE_ROUNDS: usize = 40;
/// Minimizers closer than this fraction of a period are treated as one basin.
const MERGE_REL: f64 = 1e-7;

/// φ(x,t) = min_a [ φ₀(a) + (x−a)²/(2t) ] for periodic initial data φ₀.
///
/// This is the zero-force limit potential in one space dimension. Momenta of
/// minimizers are p = (x−a)/t; a point is on the shock when two or more
/// minimizers are active. The minimization scans a uniform lattice over the
/// window |x−a|² ≤ 4t·osc(φ₀) (outside it the quadratic term alone exceeds
/// any possible gain), keeps every lattice local minimum whose value is
/// within a curvature-controlled slack of the best, and polishes each basin
/// by interval halving.
#[derive(Debug, Clone)]
pub struct HopfLaxPotential {
    phi0: FourierSeries,
}

impl HopfLaxPotential {
    pub fn new(phi0: FourierSeries) -> Self {
        Self { phi0 }
    }

    pub fn initial_data(&self) -> &FourierSeries {
        &self.phi0
    }

    pub fn period(&self) -> f64 {
        self.phi0.period()
    }

    fn objective(&self, x: f64, t: f64, a: f64) -> f64 {
        self.phi0.eval(a) + (x - a) * (x - a) / (2.0 * t)
    }

    /// All minimizing positions a with value within `tol` of the minimum.
    ///
    /// Errors with a domain error when t ≤ 0; the t = 0 case is handled by
    /// the trait methods, which fall back to the initial data.
    pub fn minimizers(&self, x: f64, t: f64, tol: f64) -> Result<Vec<f64>> {
        if !(t > 0.0) || !t.is_finite() || !x.is_finite() {
            return Err(Error::Domain(format!(
                "Hopf-Lax minimization needs finite x and t > 0, got x={x}, t={t}"
            )));
        }
        let period = self.phi0.period();
        let osc = self.phi0.oscillation_bound().max(1e-12);
        let h = period / CELLS_PER_PERIOD as f64;
        // Any a with (x−a)²/(2t) > 2·osc loses to a = x by at least osc.
        // Keep at least a few lattice cells so flat data still has interior
        // candidates.
        let window = (2.0 * (t * osc).sqrt()).max(2.5 * h);
        let j_lo = ((x - window) / h).floor() as i64;
        let j_hi = ((x + window) / h).ceil() as i64;
        let values: Vec<f64> = (j_lo..=j_hi)
            .map(|j| self.objective(x, t, j as f64 * h))
            .collect();
        let grid_min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        // A lattice point adjacent to the true minimizer overshoots it by at
        // most max|F''|·(h/2)²/2; double that for safety.
        let curvature = self.phi0.second_derivative_bound() + 1.0 / t;
        let slack = curvature * h * h / 4.0;

        let mut refined: Vec<(f64, f64)> = Vec::new();
        for i in 1..values.len().saturating_sub(1) {
            if values[i] <= values[i - 1]
                && values[i] <= values[i + 1]
                && values[i] <= grid_min + slack + tol
            {
                let mid = (j_lo + i as i64) as f64 * h;
                refined.push(self.refine_basin(x, t, mid - h, mid, mid + h));
            }
        }
        debug_assert!(!refined.is_empty(), "window always contains a = x");

        // Merge basins that collapsed to the same point, keep the best value.
        refined.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        let merge_tol = MERGE_REL * period;
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (a, v) in refined {
            match merged.last_mut() {
                Some((prev_a, prev_v)) if (a - *prev_a).abs() <= merge_tol => {
                    if v < *prev_v {
                        *prev_a = a;
                        *prev_v = v;
                    }
                }
                _ => merged.push((a, v)),
            }
        }
        let best = merged
            .iter()
            .map(|&(_, v)| v)
            .fold(f64::INFINITY, f64::min);
        Ok(merged
            .into_iter()
            .filter(|&(_, v)| v <= best + tol)
            .map(|(a, _)| a)
            .collect())
    }

    /// Shrink (lo, mid, hi) with F(mid) minimal; interval halves each round.
    fn refine_basin(&self, x: f64, t: f64, mut lo: f64, mut mid: f64, mut hi: f64) -> (f64, f64) {
        let mut f_mid = self.objective(x, t, mid);
        for _ in 0..REFINE_ROUNDS {
            let q1 = 0.5 * (lo + mid);
            let q2 = 0.5 * (mid + hi);
            let f1 = self.objective(x, t, q1);
            let f2 = self.objective(x, t, q2);
            if f1 <= f_mid && f1 <= f2 {
                hi = mid;
                mid = q1;
                f_mid = f1;
            } else if f2 < f_mid {
                lo = mid;
                mid = q2;
                f_mid = f2;
            } else {
                lo = q1;
                hi = q2;
            }
        }
        (mid, f_mid)
    }

    /// The Hopf–Lax value; errors when t ≤ 0.
    pub fn hopf_lax_eval(&self, x: f64, t: f64) -> Result<f64> {
        let tol = self.default_active_tol();
        let a = self.minimizers(x, t, tol)?;
        Ok(self.objective(x, t, a[0]))
    }

    /// Sup over unit space-time directions Q of the second derivative of the
    /// potential at t = 0: max_x φ₀''(x)·(1 + φ₀'(x)²), clamped below by 0.
    ///
    /// With zero force this constant bounds second difference quotients of
    /// φ along every unit space-time direction, uniformly in t > 0.
    pub fn spacetime_curvature_bound(&self) -> f64 {
        let n = 8192;
        let mut best = 0.0f64;
        let mut best_x = 0.0f64;
        let period = self.phi0.period();
        let f = |x: f64| {
            let d1 = self.phi0.derivative(x);
            self.phi0.second_derivative(x) * (1.0 + d1 * d1)
        };
        for i in 0..n {
            let x = period * i as f64 / n as f64;
            let v = f(x);
            if v > best {
                best = v;
                best_x = x;
            }
        }
        // Polish with a local three-point search.
        let mut half = period / n as f64;
        for _ in 0..60 {
            for cand in [best_x - half, best_x + half] {
                let v = f(cand);
                if v > best {
                    best = v;
                    best_x = cand;
                }
            }
            half *= 0.5;
        }
        best.max(0.0)
    }
}

impl PotentialModel for HopfLaxPotential {
    fn space_dim(&self) -> usize {
        1
    }

    fn force_constant(&self) -> f64 {
        0.0
    }

    fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        check_dim(x)?;
        if t == 0.0 {
            return Ok(self.phi0.eval(x[0]));
        }
        self.hopf_lax_eval(x[0], t)
    }

    fn active_momenta(&self, x: &[f64], t: f64, tol: f64) -> Result<MomentumSet> {
        check_dim(x)?;
        if t == 0.0 {
            return MomentumSet::from_rows(&[vec![self.phi0.derivative(x[0])]]);
        }
        let momenta: Vec<Vec<f64>> = self
            .minimizers(x[0], t, tol)?
            .into_iter()
            .map(|a| vec![(x[0] - a) / t])
            .collect();
        MomentumSet::from_rows(&momenta)
    }

    fn position_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let period = self.phi0.period();
        let d = (a[0] - b[0]).rem_euclid(period);
        d.min(period - d)
    }

    fn default_active_tol(&self) -> f64 {
        1e-6 * (1.0 + self.phi0.oscillation_bound() + self.phi0.mean().abs())
    }
}

fn check_dim(x: &[f64]) -> Result<()> {
    if x.len() != 1 {
        return Err(Error::UnsupportedDimension {
            dim: x.len(),
            max: 1,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::spacetime_directional_derivative;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn cosine_potential() -> HopfLaxPotential {
        HopfLaxPotential::new(FourierSeries::cosine(2.0 * PI, 1.0).unwrap())
    }

    /// Pre-shock oracle for φ₀ = cos: solve x = a − t·sin a by bisection
    /// (the map is strictly increasing for t < 1) and read the value off the
    /// characteristic, φ = cos a + t·sin²a / 2.
    fn characteristic_value(x: f64, t: f64) -> f64 {
        assert!(t < 1.0);
        let g = |a: f64| a - t * a.sin() - x;
        let (mut lo, mut hi) = (x - t - 1e-9, x + t + 1e-9);
        assert!(g(lo) < 0.0 && g(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = 0.5 * (lo + hi);
        a.cos() + t * a.sin() * a.sin() / 2.0
    }

    #[test]
    fn flat_initial_data_stays_flat() {
        let model = HopfLaxPotential::new(FourierSeries::flat(2.0 * PI, 0.25).unwrap());
        for (x, t) in [(0.0, 0.1), (1.3, 1.0), (-2.0, 7.5)] {
            assert_abs_diff_eq!(model.eval(&[x], t).unwrap(), 0.25, epsilon = 1e-12);
            let u = model.limit_velocity(&[x], t, 1e-8).unwrap();
            assert_abs_diff_eq!(u[0], 0.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn pre_shock_values_match_characteristic_tracing() {
        let model = cosine_potential();
        for &t in &[0.2, 0.5, 0.9] {
            for i in 0..25 {
                let x = -PI + 2.0 * PI * i as f64 / 25.0;
                let value = model.hopf_lax_eval(x, t).unwrap();
                assert_abs_diff_eq!(value, characteristic_value(x, t), epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn quarter_period_value_at_half_time() {
        // The worked example: x = π/2, t = 0.5, before the shock forms.
        let model = cosine_potential();
        let value = model.hopf_lax_eval(PI / 2.0, 0.5).unwrap();
        assert_abs_diff_eq!(value, characteristic_value(PI / 2.0, 0.5), epsilon = 1e-10);
    }

    #[test]
    fn symmetry_point_keeps_exact_initial_value() {
        // a = π stays the unique minimizer for x = π at every t: the point
        // sits between the attractors, so φ(π,t) = cos(π) = −1.
        let model = cosine_potential();
        let value = model.hopf_lax_eval(PI, 2.0).unwrap();
        assert_abs_diff_eq!(value, -1.0, epsilon = 1e-10);
        // Value-based minimization pins positions down to about the square
        // root of machine precision; momenta inherit that accuracy.
        let momenta = model.active_momenta(&[PI], 2.0, 1e-8).unwrap();
        assert_eq!(momenta.len(), 1);
        assert_abs_diff_eq!(momenta.get(0)[0], 0.0, epsilon = 1e-7);
    }

    #[test]
    fn shock_point_carries_symmetric_momentum_pair() {
        // After the shock forms at t = 1 the origin absorbs matter from both
        // sides; an independent dense scan confirms the two minimizers.
        let model = cosine_potential();
        let t = 2.0;
        let momenta = model.active_momenta(&[0.0], t, 1e-9).unwrap();
        assert_eq!(momenta.len(), 2);
        let (p0, p1) = (momenta.get(0)[0], momenta.get(1)[0]);
        assert_abs_diff_eq!(p0 + p1, 0.0, epsilon = 1e-7);
        assert!(p0.abs() > 0.5);

        // Oracle: scan F(a) = cos a + a²/(2t) on 200001 points in (−π, π].
        let f = |a: f64| a.cos() + a * a / (2.0 * t);
        let mut best_pos = (f64::INFINITY, 0.0);
        for i in 0..=100_000 {
            let a = PI * i as f64 / 100_000.0;
            if f(a) < best_pos.0 {
                best_pos = (f(a), a);
            }
        }
        let oracle_p = best_pos.1 / t;
        assert_abs_diff_eq!(p0.abs(), oracle_p, epsilon = 1e-4);

        // The limit velocity at the symmetric shock point is zero.
        let u = model.limit_velocity(&[0.0], t, 1e-9).unwrap();
        assert_abs_diff_eq!(u[0], 0.0, epsilon = 1e-7);
    }

    #[test]
    fn time_zero_falls_back_to_initial_data() {
        let model = cosine_potential();
        assert_abs_diff_eq!(model.eval(&[1.1], 0.0).unwrap(), 1.1f64.cos());
        let momenta = model.active_momenta(&[1.1], 0.0, 1e-9).unwrap();
        assert_eq!(momenta.len(), 1);
        assert_abs_diff_eq!(momenta.get(0)[0], -(1.1f64.sin()), epsilon = 1e-12);
        assert!(model.hopf_lax_eval(1.0, 0.0).is_err());
        assert!(model.hopf_lax_eval(1.0, -0.5).is_err());
    }

    #[test]
    fn lowering_initial_data_lowers_the_potential() {
        // φ₀ᵇ − φ₀ᵃ = −0.3 + 0.1·cos x ≤ −0.2 pointwise, so the minimum of
        // φ₀ + quadratic drops by at least 0.2 everywhere.
        let a = cosine_potential();
        let b = HopfLaxPotential::new(
            FourierSeries::new(2.0 * PI, -0.3, vec![1.1], vec![]).unwrap(),
        );
        for i in 0..20 {
            let x = -3.0 + 0.31 * i as f64;
            for &t in &[0.3, 1.0, 2.5] {
                let va = a.hopf_lax_eval(x, t).unwrap();
                let vb = b.hopf_lax_eval(x, t).unwrap();
                assert!(vb <= va - 0.2 + 1e-9, "x={x} t={t}: {vb} vs {va}");
            }
        }
    }

    #[test]
    fn second_difference_quotients_respect_curvature_constant() {
        // With zero force the semiconcavity constant is the t = 0 supremum
        // max_x φ₀''(x)(1 + φ₀'(x)²); for cos data it is (4/3)√(2/3).
        let model = cosine_potential();
        let c = model.spacetime_curvature_bound();
        assert_abs_diff_eq!(c, (4.0 / 3.0) * (2.0f64 / 3.0).sqrt(), epsilon = 1e-9);

        let delta = 1e-3;
        let mut worst = f64::NEG_INFINITY;
        for ix in 0..10 {
            let x = -PI + 2.0 * PI * ix as f64 / 10.0 + 0.037;
            for it in 0..8 {
                let t = 0.1 + 2.0 * it as f64 / 8.0;
                for kd in 0..8 {
                    let theta = PI * kd as f64 / 8.0;
                    let (q, tau) = (theta.cos(), theta.sin());
                    if t - delta * tau.abs() <= 1e-6 {
                        continue;
                    }
                    let plus = model.eval(&[x + delta * q], t + delta * tau).unwrap();
                    let mid = model.eval(&[x], t).unwrap();
                    let minus = model.eval(&[x - delta * q], t - delta * tau).unwrap();
                    worst = worst.max((plus - 2.0 * mid + minus) / (delta * delta));
                }
            }
        }
        assert!(
            worst <= c + 1e-3,
            "second difference quotient {worst} exceeds bound {c}"
        );
        // The bound is sharp enough that the classical spatial-only constant
        // max φ₀'' = 1 is genuinely exceeded somewhere.
        assert!(worst > 1.0 - 0.2, "sampled quotients suspiciously small");
    }

    #[test]
    fn directional_derivatives_match_momentum_formula() {
        // One-sided difference quotients of φ along (q,τ) must agree with
        // min over active momenta of p·q − τ|p|²/2 (zero force), both at
        // smooth points and at the shock point.
        let model = cosine_potential();
        let lambda = 1e-5;
        let points = [(0.3, 0.5), (-1.2, 0.8), (0.0, 2.0), (PI, 2.0)];
        for &(x, t) in &points {
            let set = model.active_momenta(&[x], t, 1e-9).unwrap();
            let base = model.eval(&[x], t).unwrap();
            for kd in 0..12 {
                let theta = 2.0 * PI * kd as f64 / 12.0;
                let (q, tau) = (theta.cos(), theta.sin());
                let predicted =
                    spacetime_directional_derivative(&set, 0.0, &[q], tau).unwrap();
                let probe = model.eval(&[x + lambda * q], t + lambda * tau).unwrap();
                let quotient = (probe - base) / lambda;
                assert_abs_diff_eq!(quotient, predicted, epsilon = 5e-4);
            }
        }
    }

    #[test]
    fn periodic_distance_wraps() {
        let model = cosine_potential();
        let d = model.position_distance(&[0.1], &[2.0 * PI - 0.1]);
        assert_abs_diff_eq!(d, 0.2, epsilon = 1e-12);
    }

    #[test]
    fn momenta_translate_with_the_period() {
        let model = cosine_potential();
        let a = model.active_momenta(&[0.7], 1.7, 1e-9).unwrap();
        let b = model.active_momenta(&[0.7 + 2.0 * PI], 1.7, 1e-9).unwrap();
        assert_eq!(a.len(), b.len());
        for i in 0..a.len() {
            assert_abs_diff_eq!(a.get(i)[0], b.get(i)[0], epsilon = 1e-7);
        }
    }
}
