//! Quartic normal form of the potential family at a shock end point.

use crate::linalg::{self, SymMat};
use crate::{Error, Result};

/// A linear functional α(q,τ) = space·q + time·τ on space-time offsets.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm {
    pub space: Vec<f64>,
    pub time: f64,
}

impl LinearForm {
    pub fn eval(&self, q: &[f64], tau: f64) -> f64 {
        linalg::dot(&self.space, q) + self.time * tau
    }

    fn is_finite(&self) -> bool {
        self.space.iter().all(|v| v.is_finite()) && self.time.is_finite()
    }
}

/// Expansion of a generating family F(ξ; x, t) at an end point of the shock:
///
/// F(ξ) − F(0) = A·a⁴ + 2·Σᵢ Bᵢ·a²bᵢ + Σᵢⱼ Cᵢⱼ·bᵢbⱼ
///             + α(q,τ)·a + β(q,τ)·a² + Σᵢ γᵢ(q,τ)·bᵢ + h.o.t.
///
/// where ξ = (a, b) splits the family parameter into the flat direction a and
/// the transverse block b, and (q,τ) is the space-time offset from the end
/// point. Near the end point the shock is approximated by the half
/// hyperplane {α(q,τ) = 0, bordered determinant ≤ 0}.
#[derive(Debug, Clone)]
pub struct A3EndpointModel {
    a4: f64,
    ab: Vec<f64>,
    bb: SymMat,
    alpha: LinearForm,
    beta: LinearForm,
    gamma: Vec<LinearForm>,
    p_star: Vec<f64>,
}

/// The half hyperplane approximating the shock near its end point.
#[derive(Debug, Clone)]
pub struct ShockHalfplane {
    alpha: LinearForm,
    beta: LinearForm,
    gamma: Vec<LinearForm>,
    ab: Vec<f64>,
    bb: SymMat,
}

/// Values of the end-point conditions along the trajectory direction.
#[derive(Debug, Clone)]
pub struct TangentDiagnostics {
    /// α(p*, 1): must vanish (the tangent lies in the shock's hyperplane).
    pub alpha_value: f64,
    /// β(p*, 1): must be negative.
    pub beta_value: f64,
    /// γᵢ(p*, 1): must vanish.
    pub gamma_values: Vec<f64>,
    /// det C: must be positive.
    pub transverse_det: f64,
    /// Bordered determinant at (p*, 1): ≤ 0 puts the tangent on the shock
    /// side of the boundary.
    pub bordered_value: f64,
    pub passes: bool,
}

impl A3EndpointModel {
    pub fn new(
        a4: f64,
        ab: Vec<f64>,
        bb: SymMat,
        alpha: LinearForm,
        beta: LinearForm,
        gamma: Vec<LinearForm>,
        p_star: Vec<f64>,
    ) -> Result<Self> {
        let k = ab.len();
        let d = alpha.space.len();
        if bb.dim() != k || gamma.len() != k {
            return Err(Error::InvalidModel(format!(
                "transverse blocks disagree: {} mixed terms, {}x{} matrix, {} linear forms",
                k,
                bb.dim(),
                bb.dim(),
                gamma.len()
            )));
        }
        if beta.space.len() != d
            || gamma.iter().any(|g| g.space.len() != d)
            || p_star.len() != d
        {
            return Err(Error::InvalidModel(
                "space dimensions of the linear forms disagree".into(),
            ));
        }
        if !a4.is_finite()
            || ab.iter().any(|v| !v.is_finite())
            || !alpha.is_finite()
            || !beta.is_finite()
            || gamma.iter().any(|g| !g.is_finite())
            || p_star.iter().any(|v| !v.is_finite())
        {
            return Err(Error::InvalidModel("coefficients must be finite".into()));
        }
        if a4 <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "quartic coefficient must be positive, got {a4}"
            )));
        }
        // The restriction of F to the family parameter must have a strict
        // minimum: the quadratic form in (a², b) with matrix [[A, Bᵀ],[B, C]]
        // must be positive definite (and with it C itself).
        let n = k + 1;
        let mut rows = vec![0.0; n * n];
        rows[0] = a4;
        for i in 0..k {
            rows[i + 1] = ab[i];
            rows[(i + 1) * n] = ab[i];
            for j in 0..k {
                rows[(i + 1) * n + j + 1] = bb.get(i, j);
            }
        }
        let quartic_form = SymMat::from_rows(n, &rows)?;
        let scale = quartic_form.max_abs().max(1.0);
        let min_eig = quartic_form
            .eigen()
            .0
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig <= 1e-12 * scale {
            return Err(Error::InvalidModel(format!(
                "family restriction is not a strict minimum (smallest eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(Self {
            a4,
            ab,
            bb,
            alpha,
            beta,
            gamma,
            p_star,
        })
    }

    pub fn space_dim(&self) -> usize {
        self.p_star.len()
    }

    /// Number of transverse family parameters.
    pub fn transverse_dim(&self) -> usize {
        self.ab.len()
    }

    pub fn quartic_coefficient(&self) -> f64 {
        self.a4
    }

    pub fn mixed_coefficients(&self) -> &[f64] {
        &self.ab
    }

    pub fn transverse_matrix(&self) -> &SymMat {
        &self.bb
    }

    pub fn alpha(&self) -> &LinearForm {
        &self.alpha
    }

    pub fn beta(&self) -> &LinearForm {
        &self.beta
    }

    pub fn gamma(&self) -> &[LinearForm] {
        &self.gamma
    }

    /// Velocity of the matter trajectory reaching the end point.
    pub fn momentum(&self) -> &[f64] {
        &self.p_star
    }

    pub fn shock_halfplane(&self) -> ShockHalfplane {
        ShockHalfplane {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
            ab: self.ab.clone(),
            bb: self.bb.clone(),
        }
    }

    /// Checks that the trajectory tangent (p*, 1) is tangent to the shock's
    /// half hyperplane and points into it.
    pub fn tangent_check(&self, tol: f64) -> TangentDiagnostics {
        let half = self.shock_halfplane();
        let alpha_value = self.alpha.eval(&self.p_star, 1.0);
        let beta_value = self.beta.eval(&self.p_star, 1.0);
        let gamma_values: Vec<f64> = self
            .gamma
            .iter()
            .map(|g| g.eval(&self.p_star, 1.0))
            .collect();
        let k = self.ab.len();
        let mut c_rows = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                c_rows[i * k + j] = self.bb.get(i, j);
            }
        }
        let transverse_det = linalg::det(c_rows, k);
        let bordered_value = half.bordered_determinant(&self.p_star, 1.0);
        let passes = alpha_value.abs() <= tol
            && gamma_values.iter().all(|g| g.abs() <= tol)
            && beta_value < 0.0
            && transverse_det > 0.0
            && bordered_value <= tol;
        TangentDiagnostics {
            alpha_value,
            beta_value,
            gamma_values,
            transverse_det,
            bordered_value,
            passes,
        }
    }

    /// Extracts the expansion from a generating family by finite differences
    /// at family parameter ξ = 0, position `x_star`, time `t_star`.
    ///
    /// The flat direction is detected as the near-null eigenvector of the
    /// Hessian in ξ, so the family does not need to arrive pre-rotated.
    /// Directions are sign-normalized (largest component positive); the
    /// mixed coefficients Bᵢ and forms γᵢ inherit that convention.
    pub fn from_samples(
        f: &dyn Fn(&[f64], &[f64], f64) -> f64,
        xi_dim: usize,
        x_star: &[f64],
        t_star: f64,
    ) -> Result<Self> {
        if xi_dim == 0 || xi_dim > 4 {
            return Err(Error::InvalidModel(format!(
                "family parameter dimension must be 1..=4, got {xi_dim}"
            )));
        }
        let d = x_star.len();
        let at = |xi: &[f64], dx: &[f64], dt: f64| -> f64 {
            let x: Vec<f64> = x_star.iter().zip(dx).map(|(a, b)| a + b).collect();
            f(xi, &x, t_star + dt)
        };
        let zero_xi = vec![0.0; xi_dim];
        let zero_dx = vec![0.0; d];

        // Hessian of the family in ξ; its near-null eigenvector is the flat
        // direction a, the rest span the transverse block b.
        let hh = 1e-3;
        let mut hess = vec![0.0; xi_dim * xi_dim];
        let f0 = at(&zero_xi, &zero_dx, 0.0);
        for i in 0..xi_dim {
            for j in i..xi_dim {
                let v = if i == j {
                    let mut xp = zero_xi.clone();
                    let mut xm = zero_xi.clone();
                    xp[i] += hh;
                    xm[i] -= hh;
                    (at(&xp, &zero_dx, 0.0) - 2.0 * f0 + at(&xm, &zero_dx, 0.0)) / (hh * hh)
                } else {
                    let probe = |si: f64, sj: f64| {
                        let mut xi_v = zero_xi.clone();
                        xi_v[i] += si * hh;
                        xi_v[j] += sj * hh;
                        at(&xi_v, &zero_dx, 0.0)
                    };
                    (probe(1.0, 1.0) - probe(1.0, -1.0) - probe(-1.0, 1.0)
                        + probe(-1.0, -1.0))
                        / (4.0 * hh * hh)
                };
                hess[i * xi_dim + j] = v;
                hess[j * xi_dim + i] = v;
            }
        }
        let hmat = SymMat::from_rows(xi_dim, &hess)?;
        let (evals, evecs) = hmat.eigen();
        let scale = evals.iter().fold(1.0f64, |m, e| m.max(e.abs()));
        let a_idx = (0..xi_dim)
            .min_by(|&i, &j| evals[i].abs().total_cmp(&evals[j].abs()))
            .unwrap();
        if evals[a_idx].abs() > 1e-4 * scale {
            return Err(Error::InvalidModel(format!(
                "family has no flat direction at the base point \
                 (smallest Hessian eigenvalue {:.3e})",
                evals[a_idx]
            )));
        }
        let mut u0 = evecs[a_idx].clone();
        sign_normalize(&mut u0);
        let mut b_dirs: Vec<Vec<f64>> = Vec::new();
        let mut b_evals: Vec<f64> = Vec::new();
        for i in 0..xi_dim {
            if i == a_idx {
                continue;
            }
            if evals[i] <= 1e-4 * scale {
                return Err(Error::InvalidModel(format!(
                    "transverse family direction is not convex (eigenvalue {:.3e})",
                    evals[i]
                )));
            }
            let mut u = evecs[i].clone();
            sign_normalize(&mut u);
            b_dirs.push(u);
            b_evals.push(evals[i]);
        }
        let k = xi_dim - 1;

        // Family values in the rotated coordinates (a, b).
        let rot = |a: f64, b: &[f64]| -> Vec<f64> {
            let mut xi = vec![0.0; xi_dim];
            for c in 0..xi_dim {
                xi[c] = a * u0[c];
                for (i, dir) in b_dirs.iter().enumerate() {
                    xi[c] += b[i] * dir[c];
                }
            }
            xi
        };
        let zero_b = vec![0.0; k];
        let gg =
            |a: f64, b: &[f64], dx: &[f64], dt: f64| -> f64 { at(&rot(a, b), dx, dt) };

        // Quartic coefficient from a five-point fourth difference.
        let h4 = 5e-2;
        let s = |m: f64| gg(m * h4, &zero_b, &zero_dx, 0.0);
        let fourth =
            (s(-2.0) - 4.0 * s(-1.0) + 6.0 * f0 - 4.0 * s(1.0) + s(2.0)) / h4.powi(4);
        let a4 = fourth / 24.0;

        // Mixed a²bᵢ coefficients.
        let hb = 1e-3;
        let mut ab = vec![0.0; k];
        for i in 0..k {
            let second_a = |sign: f64| {
                let mut b = zero_b.clone();
                b[i] = sign * hb;
                (gg(h4, &b, &zero_dx, 0.0) - 2.0 * gg(0.0, &b, &zero_dx, 0.0)
                    + gg(-h4, &b, &zero_dx, 0.0))
                    / (h4 * h4)
            };
            ab[i] = (second_a(1.0) - second_a(-1.0)) / (2.0 * hb) / 4.0;
        }

        // Transverse quadratic block: diagonal in the eigenbasis.
        let mut bb = SymMat::zeros(k);
        for i in 0..k {
            bb.set(i, i, 0.5 * b_evals[i]);
        }

        // Linear forms from mixed differences against (x, t).
        let hx = 1e-3;
        let ha = 1e-3;
        let mixed = |ga: &dyn Fn(&[f64], f64) -> f64| -> LinearForm {
            let mut space = vec![0.0; d];
            for j in 0..d {
                let mut dp = vec![0.0; d];
                dp[j] = hx;
                let mut dm = vec![0.0; d];
                dm[j] = -hx;
                space[j] = (ga(&dp, 0.0) - ga(&dm, 0.0)) / (2.0 * hx);
            }
            let time = (ga(&vec![0.0; d], hx) - ga(&vec![0.0; d], -hx)) / (2.0 * hx);
            LinearForm { space, time }
        };
        // α: first derivative in a of the (x,t) slope.
        let alpha = mixed(&|dx: &[f64], dt: f64| {
            (gg(ha, &zero_b, dx, dt) - gg(-ha, &zero_b, dx, dt)) / (2.0 * ha)
        });
        // β: half the second derivative in a of the (x,t) slope; the wider
        // step keeps the quartic term from drowning the signal.
        let beta_form = mixed(&|dx: &[f64], dt: f64| {
            0.5 * (gg(h4, &zero_b, dx, dt) - 2.0 * gg(0.0, &zero_b, dx, dt)
                + gg(-h4, &zero_b, dx, dt))
                / (h4 * h4)
        });
        // γᵢ: first derivatives in bᵢ of the (x,t) slope.
        let mut gamma = Vec::with_capacity(k);
        for i in 0..k {
            let form = mixed(&|dx: &[f64], dt: f64| {
                let mut bp = zero_b.clone();
                bp[i] = hb;
                let mut bm = zero_b.clone();
                bm[i] = -hb;
                (gg(0.0, &bp, dx, dt) - gg(0.0, &bm, dx, dt)) / (2.0 * hb)
            });
            gamma.push(form);
        }

        // Momentum of the arriving trajectory: spatial gradient at ξ = 0.
        let hp = 1e-5;
        let mut p_star = vec![0.0; d];
        for j in 0..d {
            let mut dp = vec![0.0; d];
            dp[j] = hp;
            let mut dm = vec![0.0; d];
            dm[j] = -hp;
            p_star[j] = (at(&zero_xi, &dp, 0.0) - at(&zero_xi, &dm, 0.0)) / (2.0 * hp);
        }

        Self::new(a4, ab, bb, alpha, beta_form, gamma, p_star)
    }
}

impl ShockHalfplane {
    /// The defining linear functional of the hyperplane {α = 0}.
    pub fn alpha(&self, q: &[f64], tau: f64) -> f64 {
        self.alpha.eval(q, tau)
    }

    /// det [[β(q,τ), γ(q,τ)ᵀ], [B, C]]; the shock side is where it is ≤ 0.
    pub fn bordered_determinant(&self, q: &[f64], tau: f64) -> f64 {
        let k = self.ab.len();
        let n = k + 1;
        let mut rows = vec![0.0; n * n];
        rows[0] = self.beta.eval(q, tau);
        for j in 0..k {
            rows[j + 1] = self.gamma[j].eval(q, tau);
        }
        for i in 0..k {
            rows[(i + 1) * n] = self.ab[i];
            for j in 0..k {
                rows[(i + 1) * n + j + 1] = self.bb.get(i, j);
            }
        }
        linalg::det(rows, n)
    }

    /// Membership in the approximating half hyperplane.
    pub fn contains(&self, q: &[f64], tau: f64, tol: f64) -> bool {
        self.alpha(q, tau).abs() <= tol && self.bordered_determinant(q, tau) <= tol
    }
}

/// Flip the vector so its largest-magnitude component is positive.
fn sign_normalize(v: &mut [f64]) {
    let lead = v
        .iter()
        .cloned()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(1.0);
    if lead < 0.0 {
        for c in v.iter_mut() {
            *c = -*c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// The worked end point: family F(ξ;x,t) = φ₀(ξ) + |x−ξ|²/(2t) with
    /// φ₀(a,b) = −a²/2 + a⁴ + a²b, expanded at x = 0, t = 1. By hand:
    /// A = 1, B = 1/2, C = 1/2, α = −q₁, β = −τ/2, γ = −q₂, p* = 0.
    fn worked_model() -> A3EndpointModel {
        A3EndpointModel::new(
            1.0,
            vec![0.5],
            SymMat::from_rows(1, &[0.5]).unwrap(),
            LinearForm {
                space: vec![-1.0, 0.0],
                time: 0.0,
            },
            LinearForm {
                space: vec![0.0, 0.0],
                time: -0.5,
            },
            vec![LinearForm {
                space: vec![0.0, -1.0],
                time: 0.0,
            }],
            vec![0.0, 0.0],
        )
        .unwrap()
    }

    fn worked_family(xi: &[f64], x: &[f64], t: f64) -> f64 {
        let (a, b) = (xi[0], xi[1]);
        let phi0 = -a * a / 2.0 + a.powi(4) + a * a * b;
        phi0 + ((x[0] - a).powi(2) + (x[1] - b).powi(2)) / (2.0 * t)
    }

    #[test]
    fn worked_endpoint_passes_the_tangent_check() {
        let model = worked_model();
        let diag = model.tangent_check(1e-12);
        assert!(diag.passes, "{diag:?}");
        assert_abs_diff_eq!(diag.alpha_value, 0.0);
        assert_abs_diff_eq!(diag.beta_value, -0.5);
        assert_abs_diff_eq!(diag.transverse_det, 0.5);
        // det [[−1/2, 0], [1/2, 1/2]] = −1/4.
        assert_abs_diff_eq!(diag.bordered_value, -0.25, epsilon = 1e-15);
    }

    #[test]
    fn halfplane_of_the_worked_model() {
        let half = worked_model().shock_halfplane();
        // Bordered determinant is det [[−τ/2, −q₂],[1/2, 1/2]] = −τ/4 + q₂/2:
        // the shock occupies {q₁ = 0, q₂ ≤ τ/2}, a half line moving upward.
        assert!(half.contains(&[0.0, 0.02], 0.1, 1e-12));
        assert!(half.contains(&[0.0, -0.3], 0.1, 1e-12));
        assert!(!half.contains(&[0.0, 0.08], 0.1, 1e-12));
        assert!(!half.contains(&[0.05, 0.0], 0.1, 1e-12));
        assert_abs_diff_eq!(
            half.bordered_determinant(&[0.0, 0.02], 0.1),
            -0.1 / 4.0 + 0.01,
            epsilon = 1e-15
        );
        // The end point itself lies on the boundary at every τ.
        for tau in [0.05, 0.2, 0.7] {
            assert!(half.contains(&[0.0, 0.5 * tau], tau, 1e-12));
        }
    }

    #[test]
    fn extraction_recovers_the_worked_coefficients() {
        let model =
            A3EndpointModel::from_samples(&worked_family, 2, &[0.0, 0.0], 1.0).unwrap();
        assert_abs_diff_eq!(model.quartic_coefficient(), 1.0, epsilon = 2e-2);
        assert_abs_diff_eq!(model.mixed_coefficients()[0], 0.5, epsilon = 5e-3);
        assert_abs_diff_eq!(model.transverse_matrix().get(0, 0), 0.5, epsilon = 1e-4);
        assert_abs_diff_eq!(model.alpha().space[0], -1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(model.alpha().space[1], 0.0, epsilon = 1e-4);
        assert_abs_diff_eq!(model.alpha().time, 0.0, epsilon = 1e-4);
        assert_abs_diff_eq!(model.beta().time, -0.5, epsilon = 5e-3);
        assert_abs_diff_eq!(model.beta().space[0], 0.0, epsilon = 5e-3);
        assert_abs_diff_eq!(model.gamma()[0].space[1], -1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(model.gamma()[0].time, 0.0, epsilon = 1e-4);
        assert_abs_diff_eq!(model.momentum()[0], 0.0, epsilon = 1e-8);
        let diag = model.tangent_check(1e-3);
        assert!(diag.passes, "{diag:?}");
    }

    #[test]
    fn extraction_handles_rotated_family_parameters() {
        // Rotate the family parameter by 0.5 rad; the extracted invariants
        // must match the aligned ones (B and γ up to the b-direction sign,
        // which the sign normalization fixes to match here).
        let theta: f64 = 0.5;
        let (s, c) = theta.sin_cos();
        let rotated = move |xi: &[f64], x: &[f64], t: f64| {
            let a = c * xi[0] - s * xi[1];
            let b = s * xi[0] + c * xi[1];
            worked_family(&[a, b], x, t)
        };
        let model = A3EndpointModel::from_samples(&rotated, 2, &[0.0, 0.0], 1.0).unwrap();
        assert_abs_diff_eq!(model.quartic_coefficient(), 1.0, epsilon = 2e-2);
        assert_abs_diff_eq!(model.mixed_coefficients()[0].abs(), 0.5, epsilon = 5e-3);
        assert_abs_diff_eq!(model.transverse_matrix().get(0, 0), 0.5, epsilon = 1e-4);
        assert_abs_diff_eq!(model.alpha().space[0].abs(), 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(model.beta().time, -0.5, epsilon = 5e-3);
        assert_abs_diff_eq!(model.gamma()[0].space[1].abs(), 1.0, epsilon = 1e-3);
        let diag = model.tangent_check(1e-3);
        assert!(diag.passes, "{diag:?}");
    }

    #[test]
    fn moving_endpoint_tangent_stays_on_the_shock() {
        // Same local geometry but the arriving trajectory has momentum
        // (0.3, 0); α and γ are adjusted so the tangent conditions hold.
        let model = A3EndpointModel::new(
            1.0,
            vec![0.5],
            SymMat::from_rows(1, &[0.5]).unwrap(),
            LinearForm {
                space: vec![-1.0, 0.0],
                time: 0.3,
            },
            LinearForm {
                space: vec![0.0, 0.0],
                time: -0.5,
            },
            vec![LinearForm {
                space: vec![0.0, -1.0],
                time: 0.0,
            }],
            vec![0.3, 0.0],
        )
        .unwrap();
        let diag = model.tangent_check(1e-12);
        assert!(diag.passes, "{diag:?}");
        let half = model.shock_halfplane();
        for tau in [0.01, 0.1, 0.4] {
            let q = [0.3 * tau, 0.0];
            assert!(half.contains(&q, tau, 1e-12));
        }
    }

    #[test]
    fn invalid_expansions_are_rejected() {
        let c = SymMat::from_rows(1, &[0.5]).unwrap();
        let alpha = LinearForm {
            space: vec![0.0],
            time: 0.0,
        };
        let gamma = vec![LinearForm {
            space: vec![0.0],
            time: 0.0,
        }];
        // Negative quartic coefficient.
        assert!(A3EndpointModel::new(
            -1.0,
            vec![0.0],
            c.clone(),
            alpha.clone(),
            alpha.clone(),
            gamma.clone(),
            vec![0.0],
        )
        .is_err());
        // Mixed term too large: [[1, 2],[2, 1]] has a negative eigenvalue.
        assert!(A3EndpointModel::new(
            1.0,
            vec![2.0],
            SymMat::from_rows(1, &[1.0]).unwrap(),
            alpha.clone(),
            alpha.clone(),
            gamma.clone(),
            vec![0.0],
        )
        .is_err());
        // Indefinite transverse block.
        assert!(A3EndpointModel::new(
            1.0,
            vec![0.0],
            SymMat::from_rows(1, &[-0.5]).unwrap(),
            alpha.clone(),
            alpha.clone(),
            gamma,
            vec![0.0],
        )
        .is_err());
    }

    #[test]
    fn extraction_rejects_families_without_a_flat_direction() {
        let strictly_convex = |xi: &[f64], x: &[f64], t: f64| {
            xi[0] * xi[0] + xi[1] * xi[1]
                + ((x[0] - xi[0]).powi(2) + (x[1] - xi[1]).powi(2)) / (2.0 * t)
        };
        let err = A3EndpointModel::from_samples(&strictly_convex, 2, &[0.0, 0.0], 1.0);
        assert!(matches!(err, Err(Error::InvalidModel(_))));
    }
}
