//! Convex kernel: momenta, minimal enclosing balls, and support-style minima.
//!
//! The velocity of a limit particle is the center of the smallest ball enclosing
//! its active momenta, so this module is the geometric heart of the crate. Balls
//! are found by exact combinatorial search over boundary subsets (at most d+1
//! points pin the ball for d <= 3), with a randomized incremental pass as a fast
//! path for larger inputs.

use crate::error::{Error, Result};
use crate::linalg::{self, dot};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest spatial dimension the geometric routines accept.
pub const MAX_DIM: usize = 3;

/// Inputs with more points than this go through the randomized
/// incremental path instead of full subset enumeration.
const COMBINATORIAL_LIMIT: usize = 12;

/// Relative tolerance for "is this point inside the candidate ball".
const CONTAIN_REL_TOL: f64 = 1e-12;

/// Relative tolerance (on squared lengths) for collinearity / cocircularity tests.
const DEGENERACY_REL_TOL: f64 = 1e-10;

/// Extended real line with a genuine +infinity, used for Lagrangians that are
/// infinite off their domain. Deliberately not a large float: callers must
/// branch on the variant instead of doing arithmetic with a sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// Finite value, or None for +infinity.
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::PosInf => None,
        }
    }
}

/// A momentum (equivalently: a velocity) vector of dimension 1..=3.
#[derive(Debug, Clone, PartialEq)]
pub struct Momentum(Vec<f64>);

impl Momentum {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() || components.len() > MAX_DIM {
            return Err(Error::UnsupportedDimension { dim: components.len(), max: MAX_DIM });
        }
        if components.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("momentum components must be finite".into()));
        }
        Ok(Momentum(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn norm_sq(&self) -> f64 {
        linalg::norm_sq(&self.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

impl std::ops::Index<usize> for Momentum {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Nonempty finite set of momenta of a common dimension.
/// Construction drops exact duplicates (bitwise equality per component).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumSet {
    elements: Vec<Momentum>,
    dim: usize,
}

impl MomentumSet {
    pub fn new(elements: Vec<Momentum>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::Degenerate("momentum set must be nonempty".into()));
        };
        let dim = first.dim();
        if elements.iter().any(|m| m.dim() != dim) {
            return Err(Error::Degenerate("momenta must share one dimension".into()));
        }
        let mut dedup: Vec<Momentum> = Vec::with_capacity(elements.len());
        for m in elements {
            if !dedup.contains(&m) {
                dedup.push(m);
            }
        }
        Ok(MomentumSet { elements: dedup, dim })
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| Momentum::new(r.clone())).collect::<Result<_>>()?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Momentum> {
        self.elements.iter()
    }

    pub fn get(&self, i: usize) -> &Momentum {
        &self.elements[i]
    }

    /// Largest Euclidean norm in the set.
    pub fn max_norm(&self) -> f64 {
        self.elements.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }

    /// Coordinate scale of the set, used to make tolerances relative.
    pub fn scale(&self) -> f64 {
        self.elements
            .iter()
            .flat_map(|m| m.as_slice().iter())
            .fold(0.0f64, |s, x| s.max(x.abs()))
            .max(1.0)
    }
}

/// Closed ball returned by the enclosing-ball search.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        linalg::dist(&self.center, p) <= self.radius + tol
    }
}

/// Center of the sphere through `subset` within its affine hull, or None when
/// the points are affinely dependent. For two points this is the midpoint; for
/// three non-collinear points the (planar) circumcenter, valid in any ambient
/// dimension.
fn circumcenter_subset(points: &[&[f64]], tol: f64) -> Option<Vec<f64>> {
    let k = points.len();
    debug_assert!(k >= 1);
    let p0 = points[0];
    if k == 1 {
        return Some(p0.to_vec());
    }
    let dirs: Vec<Vec<f64>> = points[1..].iter().map(|p| linalg::sub(p, p0)).collect();
    let n = k - 1;
    // Gram system: (p_i - p_0) . (x - p_0) = |p_i - p_0|^2 / 2
    let mut g = vec![0.0; n * n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            g[i * n + j] = dot(&dirs[i], &dirs[j]);
        }
        rhs[i] = 0.5 * linalg::norm_sq(&dirs[i]);
    }
    let t = linalg::solve(&mut g, &mut rhs, n, tol)?;
    let mut center = p0.to_vec();
    for (ti, d) in t.iter().zip(&dirs) {
        linalg::axpy(&mut center, *ti, d);
    }
    Some(center)
}

fn ball_from_subset(points: &[&[f64]], tol: f64) -> Option<Ball> {
    let center = circumcenter_subset(points, tol)?;
    let radius = points.iter().map(|p| linalg::dist(&center, p)).fold(0.0, f64::max);
    Some(Ball { center, radius })
}

/// Circumcenter of three points, the unique point equidistant from all three.
/// Errors when the points are collinear within a relative tolerance.
pub fn circumcenter(a: &Momentum, b: &Momentum, c: &Momentum) -> Result<Vec<f64>> {
    let set = MomentumSet::new(vec![a.clone(), b.clone(), c.clone()])?;
    if set.len() < 3 {
        return Err(Error::Degenerate("circumcenter of coincident points".into()));
    }
    let scale = set.scale();
    // Degeneracy threshold on the Gram pivot, which has units of length^2.
    let tol = DEGENERACY_REL_TOL * scale * scale;
    circumcenter_subset(&[a.as_slice(), b.as_slice(), c.as_slice()], tol)
        .ok_or_else(|| Error::Degenerate("collinear points have no circumcenter".into()))
}

/// Exact search over boundary subsets: the minimal enclosing ball of points in
/// dimension d is pinned by at most d+1 of them, so the smallest valid
/// candidate over all subsets of size <= d+1 is the answer.
fn meb_combinatorial(pts: &[&[f64]], dim: usize, tol: f64, pivot_tol: f64) -> (Ball, Vec<usize>) {
    let n = pts.len();
    let mut best: Option<(Ball, Vec<usize>)> = None;
    let max_k = (dim + 1).min(n);
    let mut idx = Vec::with_capacity(max_k);
    // enumerate subsets of each size k = 1..=max_k
    fn rec(
        pts: &[&[f64]],
        k: usize,
        start: usize,
        idx: &mut Vec<usize>,
        tol: f64,
        pivot_tol: f64,
        best: &mut Option<(Ball, Vec<usize>)>,
    ) {
        if idx.len() == k {
            let subset: Vec<&[f64]> = idx.iter().map(|&i| pts[i]).collect();
            if let Some(ball) = ball_from_subset(&subset, pivot_tol) {
                if let Some((b, _)) = best {
                    if ball.radius >= b.radius {
                        return;
                    }
                }
                if pts.iter().all(|p| ball.contains(p, tol)) {
                    *best = Some((ball, idx.clone()));
                }
            }
            return;
        }
        for i in start..pts.len() {
            idx.push(i);
            rec(pts, k, i + 1, idx, tol, pivot_tol, best);
            idx.pop();
        }
    }
    for k in 1..=max_k {
        rec(pts, k, 0, &mut idx, tol, pivot_tol, &mut best);
    }
    best.expect("some subset always yields a valid ball")
}

/// Welzl's move-to-front recursion; exact, expected linear after a shuffle.
/// The shuffle is seeded so results are reproducible run to run.
fn meb_welzl(pts: &[&[f64]], dim: usize, tol: f64, pivot_tol: f64) -> Ball {
    fn welzl(
        pts: &[&[f64]],
        n: usize,
        boundary: &mut Vec<usize>,
        all: &[&[f64]],
        dim: usize,
        tol: f64,
        pivot_tol: f64,
    ) -> Ball {
        if n == 0 || boundary.len() == dim + 1 {
            // empty or degenerate boundary: an "invalid" ball that contains nothing
            if boundary.is_empty() {
                return Ball { center: vec![0.0; dim], radius: -1.0 };
            }
            let subset: Vec<&[f64]> = boundary.iter().map(|&i| all[i]).collect();
            return match ball_from_subset(&subset, pivot_tol) {
                Some(b) => b,
                None => Ball { center: vec![0.0; dim], radius: -1.0 },
            };
        }
        let p = pts[n - 1];
        let b = welzl(pts, n - 1, boundary, all, dim, tol, pivot_tol);
        if b.radius >= 0.0 && b.contains(p, tol) {
            return b;
        }
        // p must lie on the boundary
        let pi = all.iter().position(|q| std::ptr::eq(*q, p)).unwrap();
        boundary.push(pi);
        let b = welzl(pts, n - 1, boundary, all, dim, tol, pivot_tol);
        boundary.pop();
        b
    }
    let mut order: Vec<&[f64]> = pts.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba11);
    order.shuffle(&mut rng);
    let mut boundary = Vec::new();
    welzl(&order, order.len(), &mut boundary, pts, dim, tol, pivot_tol)
}

/// Minimal enclosing ball of the set. Unique; exact up to floating rounding.
pub fn min_enclosing_ball(set: &MomentumSet) -> Result<Ball> {
    Ok(min_enclosing_ball_with_support(set)?.0)
}

/// As [`min_enclosing_ball`] but also reports which input indices pin the
/// ball (the boundary support set). Support indices are only available from
/// the combinatorial path, which covers every set small enough to care.
pub fn min_enclosing_ball_with_support(set: &MomentumSet) -> Result<(Ball, Vec<usize>)> {
    let dim = set.dim();
    if dim > MAX_DIM {
        return Err(Error::UnsupportedDimension { dim, max: MAX_DIM });
    }
    let pts: Vec<&[f64]> = set.iter().map(|m| m.as_slice()).collect();
    let scale = set.scale();
    let tol = CONTAIN_REL_TOL * scale;
    let pivot_tol = DEGENERACY_REL_TOL * scale * scale * 1e-4;
    if pts.len() <= COMBINATORIAL_LIMIT {
        Ok(meb_combinatorial(&pts, dim, tol, pivot_tol))
    } else {
        let ball = meb_welzl(&pts, dim, tol, pivot_tol);
        // recover the support set: points within tolerance of the boundary
        let support: Vec<usize> = pts
            .iter()
            .enumerate()
            .filter(|(_, p)| (linalg::dist(&ball.center, p) - ball.radius).abs() <= 10.0 * tol)
            .map(|(i, _)| i)
            .collect();
        Ok((ball, support))
    }
}

/// min over the set of p . q — the (concave) support-style minimum used as the
/// directional derivative of a semiconcave function with subdifferential `set`.
pub fn directional_min(set: &MomentumSet, q: &[f64]) -> Result<f64> {
    if q.len() != set.dim() {
        return Err(Error::UnsupportedDimension { dim: q.len(), max: set.dim() });
    }
    Ok(set
        .iter()
        .map(|p| dot(p.as_slice(), q))
        .fold(f64::INFINITY, f64::min))
}

/// Space-time directional derivative of a limit potential with active momenta
/// `set` under constant force potential `u_star`:
///
/// min over p of ( p . q  -  tau |p|^2 / 2 )  -  u_star tau
pub fn spacetime_directional_derivative(
    set: &MomentumSet,
    u_star: f64,
    q: &[f64],
    tau: f64,
) -> Result<f64> {
    if q.len() != set.dim() {
        return Err(Error::UnsupportedDimension { dim: q.len(), max: set.dim() });
    }
    let m = set
        .iter()
        .map(|p| dot(p.as_slice(), q) - tau * 0.5 * p.norm_sq())
        .fold(f64::INFINITY, f64::min);
    Ok(m - u_star * tau)
}

/// Lagrangian dual of the Burgers Hamiltonian h(p, sigma) = |p|^2/2 + sigma:
/// finite (and equal to |q|^2/2) only on the slice tau = 1.
pub fn legendre_lagrangian(q: &[f64], tau: f64) -> ExtReal {
    if tau == 1.0 {
        ExtReal::Finite(0.5 * linalg::norm_sq(q))
    } else {
        ExtReal::PosInf
    }
}
