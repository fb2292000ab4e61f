//! Periodic initial data as finite Fourier series.

use crate::{Error, Result};

/// A real trigonometric polynomial
/// `f(x) = mean + Σ_k cos_k·cos(ω k x) + sin_k·sin(ω k x)`, `ω = 2π/period`.
///
/// Used for initial potentials on the circle; exposes the derivatives needed
/// by the Hopf–Lax evaluator together with cheap a-priori bounds on the
/// oscillation and on the second derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    period: f64,
    mean: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl FourierSeries {
    /// `cos[k-1]` and `sin[k-1]` are the coefficients of harmonic k. The two
    /// lists may have different lengths; missing entries are zero.
    pub fn new(period: f64, mean: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidModel(format!(
                "period must be positive and finite, got {period}"
            )));
        }
        if !mean.is_finite() || cos.iter().chain(&sin).any(|c| !c.is_finite()) {
            return Err(Error::InvalidModel(
                "Fourier coefficients must be finite".into(),
            ));
        }
        Ok(Self {
            period,
            mean,
            cos,
            sin,
        })
    }

    /// The zero function with the given period.
    pub fn flat(period: f64, mean: f64) -> Result<Self> {
        Self::new(period, mean, Vec::new(), Vec::new())
    }

    /// `amplitude·cos(2πx/period)`, the classic one-harmonic benchmark.
    pub fn cosine(period: f64, amplitude: f64) -> Result<Self> {
        Self::new(period, 0.0, vec![amplitude], Vec::new())
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.period
    }

    /// Sum of `d/dx^order` of each harmonic at x.
    fn eval_order(&self, x: f64, order: u32) -> f64 {
        let w = self.omega();
        let mut acc = if order == 0 { self.mean } else { 0.0 };
        let n = self.cos.len().max(self.sin.len());
        for k in 1..=n {
            let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
            let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
            let wk = w * k as f64;
            let (s, c) = (wk * x).sin_cos();
            let scale = wk.powi(order as i32);
            // Each derivative maps (cos, sin) -> (-sin, cos) coefficient-wise.
            let (ca, cb) = match order % 4 {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            acc += scale * (a * ca + b * cb);
        }
        acc
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_order(x, 0)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.eval_order(x, 1)
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        self.eval_order(x, 2)
    }

    /// Upper bound on max − min: twice the sum of coefficient magnitudes.
    pub fn oscillation_bound(&self) -> f64 {
        let n = self.cos.len().max(self.sin.len());
        let sum: f64 = (1..=n)
            .map(|k| {
                let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
                let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
                a.hypot(b)
            })
            .sum();
        2.0 * sum
    }

    /// Upper bound on |f''| everywhere: Σ (ωk)²·|coefficient|.
    pub fn second_derivative_bound(&self) -> f64 {
        let w = self.omega();
        let n = self.cos.len().max(self.sin.len());
        (1..=n)
            .map(|k| {
                let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
                let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
                (w * k as f64).powi(2) * a.hypot(b)
            })
            .sum()
    }

    /// Upper bound on |f'| everywhere: Σ ωk·|coefficient|.
    pub fn derivative_bound(&self) -> f64 {
        let w = self.omega();
        let n = self.cos.len().max(self.sin.len());
        (1..=n)
            .map(|k| {
                let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
                let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
                w * k as f64 * a.hypot(b)
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn derivatives_match_difference_quotients() {
        let f = FourierSeries::new(
            2.0 * std::f64::consts::PI,
            0.3,
            vec![1.0, -0.25],
            vec![0.0, 0.5],
        )
        .unwrap();
        let h = 1e-5;
        for i in 0..40 {
            let x = -3.0 + 0.17 * i as f64;
            let d1 = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
            let d2 = (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h);
            assert_abs_diff_eq!(f.derivative(x), d1, epsilon = 1e-8);
            assert_abs_diff_eq!(f.second_derivative(x), d2, epsilon = 1e-5);
        }
    }

    #[test]
    fn periodicity_is_exact_up_to_argument_reduction() {
        let f = FourierSeries::new(3.0, -0.1, vec![0.7], vec![0.2]).unwrap();
        for i in 0..30 {
            let x = -4.0 + 0.31 * i as f64;
            assert_abs_diff_eq!(f.eval(x), f.eval(x + 3.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn bounds_dominate_sampled_values() {
        let f = FourierSeries::new(
            2.0 * std::f64::consts::PI,
            0.0,
            vec![0.9, 0.1],
            vec![-0.3],
        )
        .unwrap();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut d2 = 0.0f64;
        let mut d1 = 0.0f64;
        for i in 0..2000 {
            let x = f.period() * i as f64 / 2000.0;
            lo = lo.min(f.eval(x));
            hi = hi.max(f.eval(x));
            d1 = d1.max(f.derivative(x).abs());
            d2 = d2.max(f.second_derivative(x).abs());
        }
        assert!(hi - lo <= f.oscillation_bound() + 1e-12);
        assert!(d1 <= f.derivative_bound() + 1e-12);
        assert!(d2 <= f.second_derivative_bound() + 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FourierSeries::new(0.0, 0.0, vec![], vec![]).is_err());
        assert!(FourierSeries::new(1.0, f64::NAN, vec![], vec![]).is_err());
        assert!(FourierSeries::new(1.0, 0.0, vec![f64::INFINITY], vec![]).is_err());
    }
}
