//! Exact solutions of the viscous equation on the circle.

use crate::potential::FourierSeries;
use crate::{Error, Result};

/// Default quadrature nodes for the Cole–Hopf integral.
const DEFAULT_QUADRATURE_POINTS: usize = 4096;
/// Fewer nodes than this loses the accuracy the tests rely on.
const MIN_QUADRATURE_POINTS: usize = 256;
/// Tail cutoff: exp(−TAIL_EXPONENT) relative mass is discarded.
const TAIL_EXPONENT: f64 = 46.0;

/// ψ^ν(x,t) solving ψ_t + ψ_x²/2 = ν ψ_xx with ψ(·,0) = φ₀ on the circle.
///
/// Evaluated through the Cole–Hopf substitution w = exp(−ψ/2ν), which turns
/// the equation into heat flow:
///
/// ψ^ν(x,t) = −2ν · ln [ (4πνt)^(−1/2) ∫ exp(−F(x,a,t)/(2ν)) da ],
///
/// with F(x,a,t) = φ₀(a) + (x−a)²/(2t). The integral is a midpoint rule over
/// the window where exp(−F/2ν) carries mass, summed in log space. As ν → 0
/// this converges uniformly to the Hopf–Lax potential, which is what the
/// limit-model tests lean on.
#[derive(Debug, Clone)]
pub struct ViscousSolution {
    phi0: FourierSeries,
    nu: f64,
    quadrature_points: usize,
}

impl ViscousSolution {
    pub fn new(phi0: FourierSeries, nu: f64) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::Domain(format!(
                "viscosity must be positive and finite, got {nu}"
            )));
        }
        Ok(Self {
            phi0,
            nu,
            quadrature_points: DEFAULT_QUADRATURE_POINTS,
        })
    }

    /// Override the quadrature resolution (at least 256 nodes).
    pub fn with_quadrature_points(mut self, n: usize) -> Result<Self> {
        if n < MIN_QUADRATURE_POINTS {
            return Err(Error::GridResolution(format!(
                "need at least {MIN_QUADRATURE_POINTS} quadrature nodes, got {n}"
            )));
        }
        self.quadrature_points = n;
        Ok(self)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn initial_data(&self) -> &FourierSeries {
        &self.phi0
    }

    /// Integration window half-width: covers every point whose quadratic
    /// cost could compete with the data's oscillation, plus a Gaussian tail
    /// allowance of exp(−TAIL_EXPONENT).
    fn window(&self, t: f64) -> f64 {
        let osc = self.phi0.oscillation_bound();
        (2.0 * t * (2.0 * osc + 2.0 * self.nu * TAIL_EXPONENT)).sqrt()
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "viscous solution is evaluated for t > 0, got {t}"
            )));
        }
        Ok(())
    }

    /// Log-space accumulation over the quadrature nodes. Returns
    /// (max exponent m, Σ exp(e_j − m), Σ exp(e_j − m)·(x−a_j)/t).
    fn accumulate(&self, x: f64, t: f64) -> (f64, f64, f64) {
        let w = self.window(t);
        let n = self.quadrature_points;
        let h = 2.0 * w / n as f64;
        let inv = 1.0 / (2.0 * self.nu);
        let mut exponents = Vec::with_capacity(n);
        let mut m = f64::NEG_INFINITY;
        for j in 0..n {
            let a = x - w + (j as f64 + 0.5) * h;
            let f = self.phi0.eval(a) + (x - a) * (x - a) / (2.0 * t);
            let e = -f * inv;
            if e > m {
                m = e;
            }
            exponents.push((a, e));
        }
        let mut mass = 0.0;
        let mut flux = 0.0;
        for (a, e) in exponents {
            let wgt = (e - m).exp();
            mass += wgt;
            flux += wgt * (x - a) / t;
        }
        (m, mass, flux)
    }

    /// The viscous potential ψ^ν(x,t); at t = 0 it is the initial data.
    pub fn psi(&self, x: f64, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Ok(self.phi0.eval(x));
        }
        self.check_time(t)?;
        let w = self.window(t);
        let h = 2.0 * w / self.quadrature_points as f64;
        let (m, mass, _) = self.accumulate(x, t);
        let log_integral = m + (mass * h).ln();
        let log_kernel = 0.5 * (4.0 * std::f64::consts::PI * self.nu * t).ln();
        Ok(-2.0 * self.nu * (log_integral - log_kernel))
    }

    /// u^ν = ∂ψ/∂x: the softmax-weighted average of the momenta (x−a)/t.
    pub fn velocity(&self, x: f64, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Ok(self.phi0.derivative(x));
        }
        self.check_time(t)?;
        let (_, mass, flux) = self.accumulate(x, t);
        Ok(flux / mass)
    }

    /// Classical particle path x' = u^ν(x,t) integrated with RK4 from
    /// (x0, t0) to t1. Returns the sampled (t, x) pairs including both ends.
    pub fn trajectory(&self, x0: f64, t0: f64, t1: f64, step: f64) -> Result<Vec<(f64, f64)>> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::Domain(format!("step must be positive, got {step}")));
        }
        if !(t1 >= t0) || t0 < 0.0 {
            return Err(Error::Domain(format!(
                "need 0 <= t0 <= t1, got t0 = {t0}, t1 = {t1}"
            )));
        }
        let mut points = vec![(t0, x0)];
        let mut t = t0;
        let mut x = x0;
        while t < t1 - 1e-12 * (1.0 + t1.abs()) {
            let dt = step.min(t1 - t);
            let k1 = self.velocity(x, t)?;
            let k2 = self.velocity(x + 0.5 * dt * k1, t + 0.5 * dt)?;
            let k3 = self.velocity(x + 0.5 * dt * k2, t + 0.5 * dt)?;
            let k4 = self.velocity(x + dt * k3, t + dt)?;
            x += dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
            t += dt;
            points.push((t, x));
        }
        Ok(points)
    }

    /// Scans second difference quotients of ψ^ν over a space-time grid and
    /// all sampled unit directions Q, reporting the largest one next to the
    /// zero-viscosity curvature constant max_x φ₀''(x)·(1 + φ₀'(x)²).
    ///
    /// The quotients stay below that constant up to O(ν) corrections. Note
    /// that the constant genuinely involves the space-time direction factor
    /// (1 + φ₀'²): the spatial-only number max φ₀'' is exceeded near t = 0
    /// whenever φ₀' is large where φ₀'' peaks.
    pub fn second_derivative_bound_check(
        &self,
        t_lo: f64,
        t_hi: f64,
        delta: f64,
    ) -> Result<CurvatureReport> {
        if !(t_lo > 0.0 && t_hi > t_lo) || !(delta > 0.0) {
            return Err(Error::Domain(format!(
                "need 0 < t_lo < t_hi and delta > 0, got {t_lo}, {t_hi}, {delta}"
            )));
        }
        let period = self.phi0.period();
        let (nx, nt, nq) = (16, 10, 12);
        let mut max_quotient = f64::NEG_INFINITY;
        let mut argmax = (0.0, 0.0, 0.0);
        for ix in 0..nx {
            let x = period * ix as f64 / nx as f64;
            for it in 0..nt {
                let t = t_lo + (t_hi - t_lo) * it as f64 / (nt - 1) as f64;
                for iq in 0..nq {
                    let theta = std::f64::consts::PI * iq as f64 / nq as f64;
                    let (tau, q) = theta.sin_cos();
                    if t - delta * tau.abs() <= 0.0 {
                        continue;
                    }
                    let plus = self.psi(x + delta * q, t + delta * tau)?;
                    let mid = self.psi(x, t)?;
                    let minus = self.psi(x - delta * q, t - delta * tau)?;
                    let quotient = (plus - 2.0 * mid + minus) / (delta * delta);
                    if quotient > max_quotient {
                        max_quotient = quotient;
                        argmax = (x, t, theta);
                    }
                }
            }
        }
        Ok(CurvatureReport {
            max_quotient,
            limit_constant: self.limit_curvature_constant(),
            at: argmax,
        })
    }

    /// max_x φ₀''(x)·(1 + φ₀'(x)²), clamped below by zero: the ν → 0
    /// space-time semiconcavity constant of the zero-force evolution.
    pub fn limit_curvature_constant(&self) -> f64 {
        let n = 8192;
        let period = self.phi0.period();
        let f = |x: f64| {
            let d1 = self.phi0.derivative(x);
            self.phi0.second_derivative(x) * (1.0 + d1 * d1)
        };
        let mut best = 0.0f64;
        for i in 0..n {
            best = best.max(f(period * i as f64 / n as f64));
        }
        best
    }
}

/// Result of scanning ψ^ν's second difference quotients.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    /// Largest sampled second difference quotient along any unit direction.
    pub max_quotient: f64,
    /// The ν → 0 constant it is compared against.
    pub limit_constant: f64,
    /// (x, t, direction angle) where the maximum was attained.
    pub at: (f64, f64, f64),
}

impl CurvatureReport {
    /// Does the scan exceed the limiting constant by more than `slack`?
    pub fn exceeds(&self, slack: f64) -> bool {
        self.max_quotient > self.limit_constant + slack
    }
}
