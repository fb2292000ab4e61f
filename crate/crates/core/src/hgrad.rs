//! Gradient differential equations for semiconcave potentials.
//!
//! A potential here is a function φ = e − f where e is a positive-semidefinite
//! quadratic form and f is convex. Such a φ has a compact convex set of
//! sub-differentials D_X at every point, and for a Hamiltonian h that is a
//! linear form plus a PSD quadratic form, the *h-gradient* of φ at X is
//! h′(P_X), where P_X minimizes h over conv(D_X). When φ is smooth this is
//! the ordinary chain-rule velocity; at kinks it picks the unique velocity
//! compatible with the one-way derivative.
//!
//! The module provides the h-gradient in both its Hamiltonian form (minimize
//! h over the sub-differential hull) and its Lagrangian form (minimize
//! l(Q) − φ′_X(Q) over velocities on a grid), the first-order flow of the
//! one-way equation X⁺ = ∇_h φ(X), and an invariance harness checking the
//! four exact symmetries of that flow (adding constants, translations, time
//! shifts, graph dilations).

use crate::convex::{self, MomentumSet};
use crate::linalg::{self, SymMat};
use crate::{Error, Result};

/// h(P) = h₁·P + ½ PᵀMP with M symmetric positive-semidefinite.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    linear: Vec<f64>,
    quadratic: SymMat,
}

impl Hamiltonian {
    /// Builds a Hamiltonian from its linear part and the row-major entries of
    /// its quadratic part (an m×m symmetric PSD matrix applied as ½ PᵀMP).
    pub fn new(linear: Vec<f64>, quadratic_rows: &[f64]) -> Result<Self> {
        let m = linear.len();
        if m == 0 || m > convex::MAX_DIM {
            return Err(Error::UnsupportedDimension {
                dim: m,
                max: convex::MAX_DIM,
            });
        }
        if linear.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidModel(
                "Hamiltonian linear part must be finite".into(),
            ));
        }
        let quadratic = SymMat::from_rows(m, quadratic_rows)?;
        if !quadratic.is_psd(1e-12) {
            return Err(Error::InvalidModel(
                "Hamiltonian quadratic part must be positive semidefinite".into(),
            ));
        }
        Ok(Hamiltonian { linear, quadratic })
    }

    /// The instance h(p,σ) = |p|²/2 + σ on momenta P = (p,σ) over
    /// space-time points X = (x,t).
    pub fn free_particle(space_dim: usize) -> Result<Self> {
        let m = space_dim + 1;
        if space_dim == 0 || m > convex::MAX_DIM {
            return Err(Error::UnsupportedDimension {
                dim: m,
                max: convex::MAX_DIM,
            });
        }
        let mut linear = vec![0.0; m];
        linear[m - 1] = 1.0;
        let mut rows = vec![0.0; m * m];
        for i in 0..space_dim {
            rows[i * m + i] = 1.0;
        }
        Hamiltonian::new(linear, &rows)
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        linalg::dot(&self.linear, p) + 0.5 * self.quadratic.quad(p)
    }

    /// h′(P) = h₁ + MP.
    pub fn gradient(&self, p: &[f64]) -> Vec<f64> {
        let mut g = self.quadratic.matvec(p);
        for (gi, li) in g.iter_mut().zip(&self.linear) {
            *gi += li;
        }
        g
    }

    pub fn linear_part(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic_part(&self) -> &SymMat {
        &self.quadratic
    }
}

/// A semiconcave potential: φ = e − f with e a PSD quadratic form and f
/// convex. Implementations expose the value, a generator set for the
/// sub-differential D_X, and the matrix of e.
pub trait SemiconcavePotential {
    /// Domain dimension m.
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> f64;

    /// Generators whose convex hull is the sub-differential set D_X.
    fn subdifferential(&self, x: &[f64]) -> Result<MomentumSet>;

    /// Matrix E of the quadratic bound, applied as e(Z) = ½ ZᵀEZ; the
    /// difference e − φ must be convex.
    fn quadratic_bound(&self) -> SymMat;
}

impl<P: SemiconcavePotential + ?Sized> SemiconcavePotential for &P {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, x: &[f64]) -> f64 {
        (**self).eval(x)
    }
    fn subdifferential(&self, x: &[f64]) -> Result<MomentumSet> {
        (**self).subdifferential(x)
    }
    fn quadratic_bound(&self) -> SymMat {
        (**self).quadratic_bound()
    }
}

/// φ(X) = min_i (p_i·X + c_i): concave, piecewise linear, and positively
/// homogeneous when every offset c_i is zero.
#[derive(Debug, Clone)]
pub struct PiecewiseLinearMin {
    forms: Vec<(Vec<f64>, f64)>,
    dim: usize,
}

impl PiecewiseLinearMin {
    pub fn new(forms: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::InvalidModel(
                "piecewise-linear potential needs at least one form".into(),
            ));
        };
        let dim = first.0.len();
        if dim == 0 || dim > convex::MAX_DIM {
            return Err(Error::UnsupportedDimension {
                dim,
                max: convex::MAX_DIM,
            });
        }
        for (p, c) in &forms {
            if p.len() != dim {
                return Err(Error::InvalidModel(
                    "all linear forms must share one dimension".into(),
                ));
            }
            if p.iter().any(|v| !v.is_finite()) || !c.is_finite() {
                return Err(Error::InvalidModel("linear form is not finite".into()));
            }
        }
        Ok(PiecewiseLinearMin { forms, dim })
    }

    pub fn forms(&self) -> &[(Vec<f64>, f64)] {
        &self.forms
    }
}

impl SemiconcavePotential for PiecewiseLinearMin {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.forms
            .iter()
            .map(|(p, c)| linalg::dot(p, x) + c)
            .fold(f64::INFINITY, f64::min)
    }

    fn subdifferential(&self, x: &[f64]) -> Result<MomentumSet> {
        let values: Vec<f64> = self
            .forms
            .iter()
            .map(|(p, c)| linalg::dot(p, x) + c)
            .collect();
        let vmin = values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let tol = 1e-9 * (1.0 + vmin.abs());
        let active: Vec<Vec<f64>> = self
            .forms
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v <= vmin + tol)
            .map(|((p, _), _)| p.clone())
            .collect();
        MomentumSet::from_rows(&active)
    }

    fn quadratic_bound(&self) -> SymMat {
        SymMat::zeros(self.dim)
    }
}

/// φ(X) = ½ XᵀHX + b·X + c with any symmetric H; the quadratic bound is
/// max(λ_max(H), 0)·I.
#[derive(Debug, Clone)]
pub struct SmoothQuadratic {
    hessian: SymMat,
    linear: Vec<f64>,
    offset: f64,
}

impl SmoothQuadratic {
    pub fn new(hessian_rows: &[f64], linear: Vec<f64>, offset: f64) -> Result<Self> {
        let m = linear.len();
        if m == 0 || m > convex::MAX_DIM {
            return Err(Error::UnsupportedDimension {
                dim: m,
                max: convex::MAX_DIM,
            });
        }
        let hessian = SymMat::from_rows(m, hessian_rows)?;
        if linear.iter().any(|v| !v.is_finite()) || !offset.is_finite() {
            return Err(Error::InvalidModel("quadratic model is not finite".into()));
        }
        Ok(SmoothQuadratic {
            hessian,
            linear,
            offset,
        })
    }
}

impl SemiconcavePotential for SmoothQuadratic {
    fn dim(&self) -> usize {
        self.linear.len()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        0.5 * self.hessian.quad(x) + linalg::dot(&self.linear, x) + self.offset
    }

    fn subdifferential(&self, x: &[f64]) -> Result<MomentumSet> {
        let mut g = self.hessian.matvec(x);
        for (gi, li) in g.iter_mut().zip(&self.linear) {
            *gi += li;
        }
        MomentumSet::from_rows(&[g])
    }

    fn quadratic_bound(&self) -> SymMat {
        SymMat::scaled_identity(self.dim(), self.hessian.max_eigenvalue().max(0.0))
    }
}

/// φ(X) + c: same sub-differentials, same flow.
pub struct PlusConst<'a, P: ?Sized> {
    pub base: &'a P,
    pub constant: f64,
}

impl<P: SemiconcavePotential + ?Sized> SemiconcavePotential for PlusConst<'_, P> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.base.eval(x) + self.constant
    }
    fn subdifferential(&self, x: &[f64]) -> Result<MomentumSet> {
        self.base.subdifferential(x)
    }
    fn quadratic_bound(&self) -> SymMat {
        self.base.quadratic_bound()
    }
}

/// φ(X − X₀): the flow translates by X₀.
pub struct Shifted<'a, P: ?Sized> {
    pub base: &'a P,
    pub origin: Vec<f64>,
}

impl<P: SemiconcavePotential + ?Sized> SemiconcavePotential for Shifted<'_, P> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.base.eval(&linalg::sub(x, &self.origin))
    }
    fn subdifferential(&self, x: &[f64]) -> Result<MomentumSet> {
        self.base.subdifferential(&linalg::sub(x, &self.origin))
    }
    fn quadratic_bound(&self) -> SymMat {
        self.base.quadratic_bound()
    }
}

/// λ·φ(X/λ) for λ ≥ 1: sub-differentials are unchanged, the graph (and the
/// flow, jointly with time) dilates by λ. λ ≥ 1 keeps the quadratic bound
/// valid.
pub struct Dilated<'a, P: ?Sized> {
    base: &'a P,
    lambda: f64,
}

impl<'a, P: SemiconcavePotential + ?Sized> Dilated<'a, P> {
    pub fn new(base: &'a P, lambda: f64) -> Result<Self> {
        if !(lambda >= 1.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!(
                "dilation factor must be >= 1, got {lambda}"
            )));
        }
        Ok(Dilated { base, lambda })
    }
}

impl<P: SemiconcavePotential + ?Sized> SemiconcavePotential for Dilated<'_, P> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn eval(&self, x: &[f64]) -> f64 {
        let inner: Vec<f64> = x.iter().map(|v| v / self.lambda).collect();
        self.lambda * self.base.eval(&inner)
    }
    fn subdifferential(&self, x: &[f64]) -> Result<MomentumSet> {
        let inner: Vec<f64> = x.iter().map(|v| v / self.lambda).collect();
        self.base.subdifferential(&inner)
    }
    fn quadratic_bound(&self) -> SymMat {
        // the true bound is E/λ; E itself stays valid for λ ≥ 1
        self.base.quadratic_bound()
    }
}

/// Visits every k-element index combination of 0..n in lexicographic order.
fn for_each_combination(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if k == 0 || k > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx)?;
        let mut i = k;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break true;
            }
        };
        if !advanced {
            return Ok(());
        }
    }
}

/// Feasible critical points of h on the faces of conv(set), as (value, point)
/// pairs. Every vertex is included, so the list is never empty and its best
/// entry attains min h over the hull: the minimizer sits in the relative
/// interior of some face, where the restricted gradient vanishes, and a
/// Carathéodory sub-simplex of that face reproduces it (or, for a singular
/// restriction, another critical point with the same value and h-gradient).
fn hull_critical_points(h: &Hamiltonian, set: &MomentumSet) -> Result<Vec<(f64, Vec<f64>)>> {
    let m = set.dim();
    let n = set.len();
    let gens: Vec<&[f64]> = set.iter().map(|p| p.as_slice()).collect();
    let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
    for p in &gens {
        out.push((h.eval(p), p.to_vec()));
    }
    for k in 2..=n.min(m + 1) {
        for_each_combination(n, k, |idx| {
            let s0 = gens[idx[0]];
            let cols: Vec<Vec<f64>> = idx[1..]
                .iter()
                .map(|&i| linalg::sub(gens[i], s0))
                .collect();
            let r = k - 1;
            // skip affinely dependent subsets: a smaller one covers the face
            let mut gram = vec![0.0; r * r];
            for i in 0..r {
                for j in 0..r {
                    gram[i * r + j] = linalg::dot(&cols[i], &cols[j]);
                }
            }
            let gram_m = SymMat::from_rows(r, &gram)?;
            let (gvals, _) = gram_m.eigen();
            let gmax = gvals.iter().fold(0.0f64, |a, &b| a.max(b));
            if gvals.iter().any(|&e| e <= 1e-12 * gmax.max(1e-300)) {
                return Ok(());
            }
            // critical point of h on the affine hull: (VᵀMV) y = −Vᵀ h′(s0)
            let grad0 = h.gradient(s0);
            let mut gq = vec![0.0; r * r];
            for i in 0..r {
                let mv = h.quadratic_part().matvec(&cols[i]);
                for j in i..r {
                    let v = linalg::dot(&mv, &cols[j]);
                    gq[i * r + j] = v;
                    gq[j * r + i] = v;
                }
            }
            let gq_m = SymMat::from_rows(r, &gq)?;
            let rhs: Vec<f64> = cols.iter().map(|c| -linalg::dot(c, &grad0)).collect();
            let (evals, evecs) = gq_m.eigen();
            let emax = evals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            let mut y = vec![0.0; r];
            for (e, u) in evals.iter().zip(&evecs) {
                if *e > 1e-12 * emax.max(1e-300) {
                    linalg::axpy(&mut y, linalg::dot(u, &rhs) / e, u);
                }
            }
            // no critical point on this hull if the projected system is
            // inconsistent (h decreases off one side of the face)
            let gy = gq_m.matvec(&y);
            let resid: Vec<f64> = gy.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            let rhs_scale = 1.0 + rhs.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            if linalg::norm(&resid) > 1e-8 * rhs_scale {
                return Ok(());
            }
            // barycentric feasibility keeps the point inside the face
            let lam0 = 1.0 - y.iter().sum::<f64>();
            if lam0 < -1e-9 || y.iter().any(|&l| l < -1e-9) {
                return Ok(());
            }
            let mut p = s0.to_vec();
            for (yi, c) in y.iter().zip(&cols) {
                linalg::axpy(&mut p, *yi, c);
            }
            out.push((h.eval(&p), p));
            Ok(())
        })?;
    }
    Ok(out)
}

/// Hamiltonian form of the h-gradient: h′ at the minimizer of h over the
/// sub-differential hull at x. When the minimizer is not unique, all
/// minimizers share one h′; this is verified at runtime.
pub fn h_gradient<P: SemiconcavePotential + ?Sized>(
    potential: &P,
    hamiltonian: &Hamiltonian,
    x: &[f64],
) -> Result<Vec<f64>> {
    if x.len() != potential.dim() {
        return Err(Error::Domain(format!(
            "point has dimension {}, potential expects {}",
            x.len(),
            potential.dim()
        )));
    }
    if hamiltonian.dim() != potential.dim() {
        return Err(Error::Domain(format!(
            "Hamiltonian dimension {} does not match potential dimension {}",
            hamiltonian.dim(),
            potential.dim()
        )));
    }
    let set = potential.subdifferential(x)?;
    let candidates = hull_critical_points(hamiltonian, &set)?;
    let best = candidates
        .iter()
        .map(|(v, _)| *v)
        .fold(f64::INFINITY, f64::min);
    let tie = 1e-9 * (1.0 + best.abs());
    // near-tied minimizers can sit apart by ~sqrt(tie/λ) along flat valleys,
    // which moves h′ by at most sqrt(2·λ_max·tie); anything beyond that is a
    // genuine inconsistency
    let vel_tol = (2.0 * hamiltonian.quadratic_part().max_eigenvalue().max(0.0) * tie).sqrt()
        * 4.0
        + 1e-9;
    let mut velocity: Option<Vec<f64>> = None;
    for (v, p) in &candidates {
        if *v > best + tie {
            continue;
        }
        let g = hamiltonian.gradient(p);
        match &velocity {
            None => velocity = Some(g),
            Some(g0) => {
                if linalg::dist(g0, &g) > vel_tol {
                    return Err(Error::Degenerate(format!(
                        "h attains its minimum over the sub-differential hull at \
                         momenta with different velocities: {g0:?} vs {g:?}"
                    )));
                }
            }
        }
    }
    Ok(velocity.expect("candidate list contains every generator"))
}

/// Grid parameters for the Lagrangian form: spacing between velocity samples
/// along each direction of range(M). The covered radius is derived from the
/// sub-differential bound, so the true minimizer is always bracketed.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub spacing: f64,
}

impl GridSpec {
    pub fn new(spacing: f64) -> Result<Self> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::Domain(format!(
                "grid spacing must be positive, got {spacing}"
            )));
        }
        Ok(GridSpec { spacing })
    }
}

/// Lagrangian form of the h-gradient: the minimizer Q of l(Q) − φ′_X(Q),
/// where l is the Legendre transform of h. l is finite exactly on the affine
/// slice h₁ + range(M), so the search grid lives in the eigenbasis of M.
///
/// Agreement with [`h_gradient`]: within one grid cell wherever the
/// potential is differentiable (the objective then has a smooth axis-aligned
/// apex) and always for rank-1 grids. When several momenta are active the
/// minimizer sits on a crease of the objective, and grid values resolve the
/// valley floor only to the strong-convexity radius
/// √(2·λ_max(M)·g·spacing·√r), g being the local subgradient bound.
pub fn h_gradient_lagrangian<P: SemiconcavePotential + ?Sized>(
    potential: &P,
    hamiltonian: &Hamiltonian,
    x: &[f64],
    grid: &GridSpec,
) -> Result<Vec<f64>> {
    if x.len() != potential.dim() || hamiltonian.dim() != potential.dim() {
        return Err(Error::Domain(
            "point, potential, and Hamiltonian dimensions must agree".into(),
        ));
    }
    let set = potential.subdifferential(x)?;
    let bound = set.max_norm();
    let (evals, evecs) = hamiltonian.quadratic_part().eigen();
    let emax = evals.iter().fold(0.0f64, |a, &b| a.max(b));
    let axes: Vec<(f64, &Vec<f64>)> = evals
        .iter()
        .zip(&evecs)
        .filter(|(e, _)| **e > 1e-12 * emax.max(1e-300))
        .map(|(e, u)| (*e, u))
        .collect();
    if axes.is_empty() {
        // l(Q) is finite only at Q = h₁
        return Ok(hamiltonian.linear_part().to_vec());
    }
    let delta = grid.spacing;
    let rdim = axes.len();
    let mut half_counts = Vec::with_capacity(rdim);
    let mut total = 1usize;
    for (e, _) in &axes {
        // |coefficient along u_j| = e_j·|u_jᵀP| ≤ e_j·bound at the optimum
        let radius = e * bound * (1.0 + 1e-9) + 2.0 * delta;
        let half = (radius / delta).ceil() as usize;
        half_counts.push(half);
        total = total.saturating_mul(2 * half + 1);
    }
    if total > 40_000_000 {
        return Err(Error::GridResolution(format!(
            "Lagrangian grid needs {total} samples at spacing {delta}; use a coarser grid"
        )));
    }
    let mut iidx = vec![0usize; rdim];
    let mut best = f64::INFINITY;
    let mut best_q: Vec<f64> = hamiltonian.linear_part().to_vec();
    let mut best_on_boundary = false;
    loop {
        let mut q = hamiltonian.linear_part().to_vec();
        let mut lag = 0.0;
        let mut boundary = false;
        for j in 0..rdim {
            let c = (iidx[j] as f64 - half_counts[j] as f64) * delta;
            lag += 0.5 * c * c / axes[j].0;
            linalg::axpy(&mut q, c, axes[j].1);
            if iidx[j] == 0 || iidx[j] == 2 * half_counts[j] {
                boundary = true;
            }
        }
        let f = lag - convex::directional_min(&set, &q)?;
        if f < best {
            best = f;
            best_q = q;
            best_on_boundary = boundary;
        }
        // odometer
        let mut j = 0;
        loop {
            if j == rdim {
                break;
            }
            iidx[j] += 1;
            if iidx[j] <= 2 * half_counts[j] {
                break;
            }
            iidx[j] = 0;
            j += 1;
        }
        if j == rdim {
            break;
        }
    }
    if best_on_boundary {
        return Err(Error::GridResolution(
            "Lagrangian grid argmin landed on the boundary; the sub-differential \
             bound did not bracket the minimizer"
                .into(),
        ));
    }
    Ok(best_q)
}

/// The one-way flow X⁺ = ∇_h φ(X) integrated by an explicit first-order
/// scheme. The field is only one-way continuous along trajectories, so
/// higher-order schemes would not gain accuracy.
pub struct FlowMap<'a, P: SemiconcavePotential + ?Sized> {
    pub potential: &'a P,
    pub hamiltonian: Hamiltonian,
    pub step_size: f64,
}

impl<'a, P: SemiconcavePotential + ?Sized> FlowMap<'a, P> {
    pub fn new(potential: &'a P, hamiltonian: Hamiltonian, step_size: f64) -> Result<Self> {
        if !(step_size > 0.0) || !step_size.is_finite() {
            return Err(Error::Domain(format!(
                "step size must be positive, got {step_size}"
            )));
        }
        if hamiltonian.dim() != potential.dim() {
            return Err(Error::Domain(
                "Hamiltonian and potential dimensions must agree".into(),
            ));
        }
        Ok(FlowMap {
            potential,
            hamiltonian,
            step_size,
        })
    }

    pub fn velocity(&self, x: &[f64]) -> Result<Vec<f64>> {
        h_gradient(self.potential, &self.hamiltonian, x)
    }

    /// Polyline of the trajectory from x0 over [0, horizon]: full steps of
    /// `step_size` plus one exact partial step when the horizon is not a
    /// multiple of the step.
    pub fn flow(&self, x0: &[f64], horizon: f64) -> Result<Vec<Vec<f64>>> {
        if !(horizon >= 0.0) || !horizon.is_finite() {
            return Err(Error::Domain(format!(
                "horizon must be nonnegative, got {horizon}"
            )));
        }
        if x0.len() != self.potential.dim() {
            return Err(Error::Domain(
                "initial point dimension mismatch".into(),
            ));
        }
        let n_full = (horizon / self.step_size + 1e-9).floor() as usize;
        let rem = horizon - n_full as f64 * self.step_size;
        let mut points = Vec::with_capacity(n_full + 2);
        let mut x = x0.to_vec();
        points.push(x.clone());
        for _ in 0..n_full {
            let v = self.velocity(&x)?;
            for (xi, vi) in x.iter_mut().zip(&v) {
                *xi += self.step_size * vi;
            }
            points.push(x.clone());
        }
        if rem > 1e-9 * self.step_size {
            let v = self.velocity(&x)?;
            for (xi, vi) in x.iter_mut().zip(&v) {
                *xi += rem * vi;
            }
            points.push(x.clone());
        }
        Ok(points)
    }

    pub fn endpoint(&self, x0: &[f64], horizon: f64) -> Result<Vec<f64>> {
        Ok(self.flow(x0, horizon)?.pop().expect("flow is nonempty"))
    }
}

/// Maximum endpoint violations of the four flow symmetries.
#[derive(Debug, Clone, Copy)]
pub struct InvarianceReport {
    /// g_{φ+c} = g_φ.
    pub add_constant: f64,
    /// g_{φ(·−X₀)} = g_φ + X₀.
    pub translate: f64,
    /// g^{t₁+t₂} = g^{t₁} ∘ g^{t₂}.
    pub semigroup: f64,
    /// g^{λt}_{λφ(·/λ)}(λX₀) = λ g^t_φ(X₀).
    pub dilate: f64,
}

impl InvarianceReport {
    pub fn max_violation(&self) -> f64 {
        self.add_constant
            .max(self.translate)
            .max(self.semigroup)
            .max(self.dilate)
    }
}

/// Runs the four-symmetry check over a fixed set of start points and returns
/// the worst endpoint deviation per symmetry. `t_split` must divide the
/// horizon into two nonnegative legs.
pub fn invariance_suite<P: SemiconcavePotential + ?Sized>(
    map: &FlowMap<'_, P>,
    lambda: f64,
    x_shift: &[f64],
    t_split: f64,
    constant: f64,
    horizon: f64,
) -> Result<InvarianceReport> {
    let m = map.potential.dim();
    if x_shift.len() != m {
        return Err(Error::Domain("shift dimension mismatch".into()));
    }
    if !(0.0..=horizon).contains(&t_split) {
        return Err(Error::Domain(format!(
            "time split {t_split} outside [0, {horizon}]"
        )));
    }
    if !(lambda >= 1.0) {
        return Err(Error::Domain(format!(
            "dilation factor must be >= 1, got {lambda}"
        )));
    }
    let mut starts: Vec<Vec<f64>> = vec![vec![0.0; m]];
    starts.push(x_shift.iter().map(|v| 0.5 * v).collect());
    starts.push((0..m).map(|i| 0.1 + 0.2 * i as f64).collect());

    let mut report = InvarianceReport {
        add_constant: 0.0,
        translate: 0.0,
        semigroup: 0.0,
        dilate: 0.0,
    };
    let sup = |a: &[f64], b: &[f64]| -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    for x0 in &starts {
        let base = map.endpoint(x0, horizon)?;

        let shifted_pot = PlusConst {
            base: map.potential,
            constant,
        };
        let cmap = FlowMap::new(&shifted_pot, map.hamiltonian.clone(), map.step_size)?;
        let with_const = cmap.endpoint(x0, horizon)?;
        report.add_constant = report.add_constant.max(sup(&with_const, &base));

        let translated = Shifted {
            base: map.potential,
            origin: x_shift.to_vec(),
        };
        let tmap = FlowMap::new(&translated, map.hamiltonian.clone(), map.step_size)?;
        let moved_start = linalg::add(x0, x_shift);
        let moved_end = tmap.endpoint(&moved_start, horizon)?;
        let expected = linalg::add(&base, x_shift);
        report.translate = report.translate.max(sup(&moved_end, &expected));

        let mid = map.endpoint(x0, t_split)?;
        let rejoined = map.endpoint(&mid, horizon - t_split)?;
        report.semigroup = report.semigroup.max(sup(&rejoined, &base));

        let dilated = Dilated::new(map.potential, lambda)?;
        let dmap = FlowMap::new(&dilated, map.hamiltonian.clone(), lambda * map.step_size)?;
        let big_start: Vec<f64> = x0.iter().map(|v| lambda * v).collect();
        let big_end = dmap.endpoint(&big_start, lambda * horizon)?;
        let expected_big: Vec<f64> = base.iter().map(|v| lambda * v).collect();
        report.dilate = report.dilate.max(sup(&big_end, &expected_big));
    }
    Ok(report)
}
