//! Limit trajectories of matter: x⁺(t) = u(x(t), t) with adhesion.

use crate::potential::PotentialModel;
use crate::{linalg, Error, Result};

/// A polyline trajectory of one particle, with shock bookkeeping.
///
/// Once the particle is absorbed by the shock its merge flag stays set: with
/// adhesion dynamics a particle cannot leave the shock.
#[derive(Debug, Clone)]
pub struct LimitTrajectory {
    times: Vec<f64>,
    positions: Vec<Vec<f64>>,
    velocities: Vec<Vec<f64>>,
    merge_flags: Vec<bool>,
}

impl LimitTrajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn positions(&self) -> &[Vec<f64>] {
        &self.positions
    }

    /// One-way velocities used by the integrator, one per sample.
    pub fn velocities(&self) -> &[Vec<f64>] {
        &self.velocities
    }

    pub fn merge_flags(&self) -> &[bool] {
        &self.merge_flags
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn endpoint(&self) -> (f64, &[f64]) {
        let last = self.times.len() - 1;
        (self.times[last], &self.positions[last])
    }

    /// Time of the first sample flagged as merged, if any.
    pub fn first_merge_time(&self) -> Option<f64> {
        self.merge_flags
            .iter()
            .position(|&f| f)
            .map(|i| self.times[i])
    }

    /// Largest velocity magnitude along the path.
    pub fn velocity_bound(&self) -> f64 {
        self.velocities
            .iter()
            .map(|v| linalg::norm(v))
            .fold(0.0, f64::max)
    }
}

/// Report of a two-trajectory coincidence check.
#[derive(Debug, Clone)]
pub struct UniquenessReport {
    /// First sample time when the trajectories came within the tolerance.
    pub meet_time: Option<f64>,
    /// Distance below which the discrete paths count as met.
    pub meet_tolerance: f64,
    /// Largest velocity magnitude seen on either path.
    pub velocity_bound: f64,
    /// Largest separation at any sample strictly after the meeting sample
    /// (that sample's own gap is bounded by `meet_tolerance` already).
    pub post_meet_max_gap: f64,
    /// Separation at the final sample.
    pub final_gap: f64,
}

/// Initial points whose forward trajectories hit a target.
#[derive(Debug, Clone)]
pub struct ReachabilityReport {
    pub preimages: Vec<f64>,
    /// Positions within this distance of the target count as hits.
    pub tolerance: f64,
    /// True when the first sampling pass found nothing and the search
    /// re-ran at double resolution.
    pub refined: bool,
}

/// Integrates x⁺ = u(x,t) by one-way Euler steps from (x0, t0) to t_end.
///
/// The field has only one-sided limits at shocks, so no higher-order scheme
/// applies. Velocities are evaluated with the model's own tight active
/// tolerance: just off a shock this picks the one-sided velocity, which
/// points back toward the shock from either side, so the iterate chatters
/// within one step of the surface it rides instead of drifting away.
/// Merge flags use a wider value band, 3·B²·step (B = largest velocity seen
/// so far), because a chattering sample sits up to B·step off the shock and
/// the value gap between its branches there is of order |Δp|·B·step.
pub fn integrate<M: PotentialModel + ?Sized>(
    model: &M,
    x0: &[f64],
    t0: f64,
    t_end: f64,
    step: f64,
) -> Result<LimitTrajectory> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    if !(t_end >= t0) {
        return Err(Error::Domain(format!(
            "need t0 <= t_end, got {t0} > {t_end}"
        )));
    }
    let horizon = t_end - t0;
    let n_full = (horizon / step + 1e-9).floor() as usize;
    let remainder = horizon - n_full as f64 * step;
    let take_partial = remainder > 1e-9 * step;

    let mut times = Vec::with_capacity(n_full + 2);
    let mut positions = Vec::with_capacity(n_full + 2);
    let mut velocities = Vec::with_capacity(n_full + 2);
    let mut merge_flags = Vec::with_capacity(n_full + 2);

    let mut x = x0.to_vec();
    let mut t = t0;
    let mut bound = 0.0f64;
    let mut merged = false;
    let total_samples = n_full + 1 + usize::from(take_partial);
    for i in 0..total_samples {
        let base_tol = model.default_active_tol();
        let band = base_tol + 3.0 * bound * bound * step;
        let active = model.active_momenta(&x, t, band)?;
        let u = model.limit_velocity(&x, t, base_tol)?;
        bound = bound.max(linalg::norm(&u));
        merged = merged || active.len() >= 2;
        times.push(t);
        positions.push(x.clone());
        velocities.push(u.clone());
        merge_flags.push(merged);
        if i + 1 < total_samples {
            let dt = if i < n_full { step } else { remainder };
            linalg::axpy(&mut x, dt, &u);
            t = t0 + if i + 1 <= n_full {
                (i + 1) as f64 * step
            } else {
                horizon
            };
        }
    }
    Ok(LimitTrajectory {
        times,
        positions,
        velocities,
        merge_flags,
    })
}

/// Integrates two trajectories on a common grid and reports when they meet
/// and how far apart they stay afterwards.
///
/// The meeting tolerance defaults to 3·step·B: discrete paths never land on
/// each other exactly, but adhesion keeps them within a step-sized band of
/// the shared shock trajectory once they have merged.
pub fn forward_uniqueness_check<M: PotentialModel + ?Sized>(
    model: &M,
    x0a: &[f64],
    x0b: &[f64],
    t0: f64,
    t_end: f64,
    step: f64,
    meet_tolerance: Option<f64>,
) -> Result<UniquenessReport> {
    let a = integrate(model, x0a, t0, t_end, step)?;
    let b = integrate(model, x0b, t0, t_end, step)?;
    debug_assert_eq!(a.len(), b.len());
    let bound = a.velocity_bound().max(b.velocity_bound());
    let tol = meet_tolerance.unwrap_or(3.0 * step * bound.max(1e-12));

    let mut meet_time = None;
    let mut post_meet_max_gap = 0.0f64;
    let mut final_gap = 0.0;
    for i in 0..a.len() {
        let gap = model.position_distance(&a.positions[i], &b.positions[i]);
        if meet_time.is_some() {
            post_meet_max_gap = post_meet_max_gap.max(gap);
        } else if gap <= tol {
            meet_time = Some(a.times[i]);
        }
        final_gap = gap;
    }
    Ok(UniquenessReport {
        meet_time,
        meet_tolerance: tol,
        velocity_bound: bound,
        post_meet_max_gap,
        final_gap,
    })
}

/// Finds initial points a ∈ [a_lo, a_hi] whose trajectories pass within
/// tolerance of `x_star` at `t_star` (one space dimension).
///
/// Endpoints are sampled on a grid; sign changes of endpoint − target are
/// polished by bisection, and grid points already within tolerance are kept
/// as well (a shock target is reached from a whole basin of initial data,
/// so several representatives are expected there). An empty first pass
/// triggers one automatic refinement at double resolution.
pub fn backward_reachability<M: PotentialModel + ?Sized>(
    model: &M,
    x_star: f64,
    t_star: f64,
    t0: f64,
    step: f64,
    a_lo: f64,
    a_hi: f64,
    samples: usize,
) -> Result<ReachabilityReport> {
    if model.space_dim() != 1 {
        return Err(Error::UnsupportedDimension {
            dim: model.space_dim(),
            max: 1,
        });
    }
    if samples < 3 || !(a_lo < a_hi) {
        return Err(Error::Domain(
            "need a_lo < a_hi and at least 3 samples".into(),
        ));
    }
    if !(t_star > t0) {
        return Err(Error::Domain(format!(
            "need t0 < t_star, got t0 = {t0}, t_star = {t_star}"
        )));
    }

    let mut refined = false;
    let mut samples = samples;
    loop {
        let cell = (a_hi - a_lo) / (samples - 1) as f64;
        let mut endpoints = Vec::with_capacity(samples);
        let mut bound = 0.0f64;
        for i in 0..samples {
            let a = a_lo + cell * i as f64;
            let traj = integrate(model, &[a], t0, t_star, step)?;
            bound = bound.max(traj.velocity_bound());
            endpoints.push((a, traj.endpoint().1[0]));
        }
        let tol = 3.0 * step * bound.max(1e-12);

        let mut hits: Vec<f64> = Vec::new();
        for &(a, e) in &endpoints {
            if (e - x_star).abs() <= tol {
                hits.push(a);
            }
        }
        for w in endpoints.windows(2) {
            let (a0, e0) = w[0];
            let (a1, e1) = w[1];
            let (f0, f1) = (e0 - x_star, e1 - x_star);
            if f0.abs() <= tol || f1.abs() <= tol || f0.signum() == f1.signum() {
                continue;
            }
            let (mut lo, mut hi, mut flo) = (a0, a1, f0);
            for _ in 0..30 {
                let mid = 0.5 * (lo + hi);
                let traj = integrate(model, &[mid], t0, t_star, step)?;
                let fm = traj.endpoint().1[0] - x_star;
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            let mid = 0.5 * (lo + hi);
            let traj = integrate(model, &[mid], t0, t_star, step)?;
            if (traj.endpoint().1[0] - x_star).abs() <= tol {
                hits.push(mid);
            }
        }

        hits.sort_by(f64::total_cmp);
        let mut preimages: Vec<f64> = Vec::new();
        for h in hits {
            if preimages.last().is_none_or(|&p| h - p > 0.5 * cell) {
                preimages.push(h);
            }
        }
        if preimages.is_empty() && !refined {
            refined = true;
            samples = samples * 2 - 1;
            continue;
        }
        return Ok(ReachabilityReport {
            preimages,
            tolerance: tol,
            refined,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{
        Branch, FiniteMinFamily, FourierSeries, HopfLaxPotential, LocalLinearModel,
    };
    use crate::convex::MomentumSet;
    use crate::viscous::ViscousSolution;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn cos_model() -> HopfLaxPotential {
        HopfLaxPotential::new(FourierSeries::cosine(2.0 * PI, 1.0).unwrap())
    }

    #[test]
    fn flat_data_keeps_particles_still() {
        let model = HopfLaxPotential::new(FourierSeries::flat(2.0 * PI, 0.1).unwrap());
        let traj = integrate(&model, &[1.3], 0.0, 2.0, 1e-2).unwrap();
        for p in traj.positions() {
            assert_abs_diff_eq!(p[0], 1.3, epsilon = 1e-6);
        }
        assert!(traj.merge_flags().iter().all(|&f| !f));
        assert!(traj.velocity_bound() < 1e-7);
    }

    #[test]
    fn sample_times_cover_the_horizon_exactly() {
        let model = HopfLaxPotential::new(FourierSeries::flat(2.0 * PI, 0.0).unwrap());
        let traj = integrate(&model, &[0.0], 0.25, 1.0, 0.2).unwrap();
        let times = traj.times();
        assert_abs_diff_eq!(times[0], 0.25);
        assert_abs_diff_eq!(*times.last().unwrap(), 1.0);
        for w in times.windows(2) {
            assert!(w[1] > w[0]);
        }
        // 3 full steps of 0.2 plus the 0.15 remainder.
        assert_eq!(times.len(), 5);
    }

    #[test]
    fn cosine_particle_reaches_the_attractor_and_sticks() {
        // Matter drifts toward the attractor at 0 (mod 2π), falls into the
        // shock there once it forms, and afterwards stays within a band of
        // a few steps around it.
        let model = cos_model();
        let step = 2e-3;
        let traj = integrate(&model, &[PI / 2.0], 0.0, 3.0, step).unwrap();
        let bound = traj.velocity_bound();
        let (_, end) = traj.endpoint();
        assert!(
            end[0].abs() <= 2.0 * step * bound.max(1.0),
            "endpoint {} not at the shock",
            end[0]
        );
        let merge_time = traj.first_merge_time().expect("particle never merged");
        // The characteristic from π/2 reaches 0 at t = π/2.
        assert!((1.0..=1.8).contains(&merge_time), "merged at {merge_time}");

        // Merge flags never revert, and positions stay near the shock after
        // merging.
        let mut seen = false;
        for (i, &flag) in traj.merge_flags().iter().enumerate() {
            if seen {
                assert!(flag, "merge flag reverted at sample {i}");
                assert!(traj.positions()[i][0].abs() <= 3.0 * step * bound.max(1.0));
            }
            seen = seen || flag;
        }

        // Cross-check against the smooth viscous trajectory at small ν.
        let viscous = ViscousSolution::new(FourierSeries::cosine(2.0 * PI, 1.0).unwrap(), 0.005)
            .unwrap();
        let smooth = viscous.trajectory(PI / 2.0, 0.0, 3.0, 5e-3).unwrap();
        let (_, x_nu) = *smooth.last().unwrap();
        assert!(
            (end[0] - x_nu).abs() <= 2e-2,
            "limit endpoint {} vs viscous endpoint {}",
            end[0],
            x_nu
        );
        // Mid-flight comparison at t = 1.5.
        let idx_limit = traj.times().iter().position(|&t| t >= 1.5).unwrap();
        let idx_nu = smooth.iter().position(|&(t, _)| t >= 1.5).unwrap();
        assert!(
            (traj.positions()[idx_limit][0] - smooth[idx_nu].1).abs() <= 2e-2,
            "trajectories diverge mid-flight"
        );
    }

    #[test]
    fn recorded_velocities_are_reproducible() {
        let model = cos_model();
        let traj = integrate(&model, &[0.8], 0.0, 2.0, 5e-3).unwrap();
        for i in 0..traj.len() {
            let u = model
                .limit_velocity(
                    &traj.positions()[i],
                    traj.times()[i],
                    model.default_active_tol(),
                )
                .unwrap();
            assert_eq!(u, traj.velocities()[i], "sample {i} not reproducible");
        }
    }

    #[test]
    fn obtuse_node_releases_the_particle_along_the_pair_edge() {
        // Obtuse triangle: the ball center sits on the long edge's midpoint,
        // not at the circumcenter, so the particle leaves the triple node
        // and rides the two-momentum shock edge with the midpoint velocity.
        let w = [0.2, 0.1];
        let rows = vec![
            vec![-1.0 + w[0], 0.0 + w[1]],
            vec![1.0 + w[0], 0.0 + w[1]],
            vec![0.0 + w[0], 0.3 + w[1]],
        ];
        let set = MomentumSet::from_rows(&rows).unwrap();
        let model = LocalLinearModel::new(set, 0.0).unwrap();

        // Node at offset time τ: circumcenter of the three sites, scaled.
        // For the unshifted triangle the circumcenter is (0, −91/60).
        let tau = 1.0;
        let node = [w[0] * tau, (-91.0 / 60.0 + w[1]) * tau];
        let all = model.active_indices(&node, tau, 1e-9).unwrap();
        assert_eq!(all.len(), 3, "node should have all momenta active");

        let step = 1e-2;
        let traj = integrate(&model, &node, tau, tau + 0.3, step).unwrap();
        // Velocity at the node is the ball center = drift w.
        assert_abs_diff_eq!(traj.velocities()[0][0], w[0], epsilon = 1e-9);
        assert_abs_diff_eq!(traj.velocities()[0][1], w[1], epsilon = 1e-9);
        // At later samples only the long-edge pair stays active, and the
        // velocity is its midpoint — the particle has left the node but
        // stays on the shock.
        for i in 1..traj.len() {
            let active = model
                .active_indices(&traj.positions()[i], traj.times()[i], model.default_active_tol())
                .unwrap();
            assert_eq!(active, vec![0, 1], "sample {i}: active = {active:?}");
            assert_abs_diff_eq!(traj.velocities()[i][0], w[0], epsilon = 1e-9);
            assert_abs_diff_eq!(traj.velocities()[i][1], w[1], epsilon = 1e-9);
            assert!(traj.merge_flags()[i]);
        }
    }

    #[test]
    fn symmetric_starts_meet_and_stay_together() {
        let model = cos_model();
        let step = 1e-3;
        let report =
            forward_uniqueness_check(&model, &[0.5], &[-0.5], 0.0, 2.5, step, None).unwrap();
        let meet = report.meet_time.expect("symmetric starts must meet");
        assert!(meet > 1.0 && meet < 2.0, "met at {meet}");
        assert!(
            report.post_meet_max_gap <= 2.0 * step * report.velocity_bound,
            "post-meet gap {} vs allowance {}",
            report.post_meet_max_gap,
            2.0 * step * report.velocity_bound
        );
    }

    #[test]
    fn identical_starts_never_separate() {
        let model = cos_model();
        let report =
            forward_uniqueness_check(&model, &[0.7], &[0.7], 0.0, 2.0, 5e-3, None).unwrap();
        assert_eq!(report.meet_time, Some(0.0));
        assert_eq!(report.post_meet_max_gap, 0.0);
        assert_eq!(report.final_gap, 0.0);
    }

    #[test]
    fn opposite_planar_streams_merge_onto_a_moving_trajectory() {
        // Two affine streams of equal speed aimed at the tie line x₁ = 0.
        // Symmetric starts land on the line at the same point (0, 0.3) at
        // t = 0.5 and afterwards share the midpoint-velocity trajectory
        // (0, 0.3 + 0.6(t − 1/2)), which keeps moving up the line.
        let family = FiniteMinFamily::new(
            vec![
                Branch::Affine {
                    momentum: vec![0.8, 0.6],
                    offset: 0.0,
                },
                Branch::Affine {
                    momentum: vec![-0.8, 0.6],
                    offset: 0.0,
                },
            ],
            0.0,
        )
        .unwrap();
        let step = 1e-3;
        let report = forward_uniqueness_check(
            &family,
            &[-0.4, 0.0],
            &[0.4, 0.0],
            0.0,
            2.0,
            step,
            None,
        )
        .unwrap();
        let meet = report.meet_time.expect("particles must meet on the line");
        assert_abs_diff_eq!(meet, 0.5, epsilon = 3.0 * step);
        assert!(
            report.post_meet_max_gap <= 2.0 * step * report.velocity_bound,
            "post-meet gap {}",
            report.post_meet_max_gap
        );

        // The merged pair rides the line: endpoint near (0, 0.3 + 0.6·1.5).
        let traj = integrate(&family, &[-0.4, 0.0], 0.0, 2.0, step).unwrap();
        let (_, end) = traj.endpoint();
        assert_abs_diff_eq!(end[0], 0.0, epsilon = 3.0 * step);
        assert_abs_diff_eq!(end[1], 1.2, epsilon = 3.0 * step);
        assert!(traj.first_merge_time().is_some());
    }

    #[test]
    fn continuity_envelope_before_merging() {
        // Same potential for both starts: the separation obeys the
        // α·exp(2Ct) envelope (C = space-time curvature constant) up to
        // O(step) until the trajectories merge, and shrinks afterwards.
        let model = cos_model();
        let step = 2e-3;
        let alpha: f64 = 0.3;
        let a = integrate(&model, &[0.4], 0.0, 2.5, step).unwrap();
        let b = integrate(&model, &[0.7], 0.0, 2.5, step).unwrap();
        let c = model.spacetime_curvature_bound();
        let bound = a.velocity_bound().max(b.velocity_bound());
        for i in 0..a.len() {
            let t = a.times()[i];
            let gap = model.position_distance(&a.positions()[i], &b.positions()[i]);
            let envelope = alpha * (2.0 * c * t).exp() + 10.0 * step * bound.max(1.0);
            assert!(
                gap <= envelope,
                "t={t}: separation {gap} exceeds envelope {envelope}"
            );
        }
        let final_gap = model.position_distance(
            a.positions().last().unwrap(),
            b.positions().last().unwrap(),
        );
        assert!(final_gap <= 3.0 * step * bound.max(1.0), "ended {final_gap} apart");
    }

    #[test]
    fn backward_reachability_flat_data_is_the_identity() {
        let model = HopfLaxPotential::new(FourierSeries::flat(2.0 * PI, 0.0).unwrap());
        let report =
            backward_reachability(&model, 0.8, 1.0, 0.0, 1e-2, -1.0, 2.0, 16).unwrap();
        assert!(!report.preimages.is_empty());
        for a in &report.preimages {
            assert_abs_diff_eq!(*a, 0.8, epsilon = 0.2);
        }
    }

    #[test]
    fn smooth_target_has_a_unique_preimage_matching_characteristics() {
        let model = cos_model();
        // Solve a − 2 sin a = 1.2 on [2, π], where the map is monotone:
        // the characteristic oracle for the smooth branch at t = 2.
        let target = 1.2;
        let (mut lo, mut hi) = (2.0f64, PI);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid - 2.0 * mid.sin() < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a_true = 0.5 * (lo + hi);

        let report =
            backward_reachability(&model, target, 2.0, 0.0, 1e-2, 0.3, 3.0, 21).unwrap();
        assert_eq!(
            report.preimages.len(),
            1,
            "expected one preimage, got {:?}",
            report.preimages
        );
        assert_abs_diff_eq!(report.preimages[0], a_true, epsilon = 0.05);
    }

    #[test]
    fn shock_target_is_reached_from_both_sides() {
        let model = cos_model();
        let report =
            backward_reachability(&model, 0.0, 2.0, 0.0, 1e-2, -2.0, 2.0, 21).unwrap();
        assert!(
            report.preimages.len() >= 2,
            "shock needs several preimages, got {:?}",
            report.preimages
        );
        assert!(report.preimages.iter().any(|&a| a < -0.1));
        assert!(report.preimages.iter().any(|&a| a > 0.1));
    }
}
