//! Functions on a curve stored as Fourier data in the circle parameter.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative size of the outermost stored modes above which data counts as
/// under-resolved.
pub const UNDER_RESOLVED: f64 = 1e-6;

/// Fourier coefficients `h_n`, `n = -K..=K`, of `u(e^{i theta})`.
///
/// The parameter is the circle parameter of whichever curve the function
/// lives on; pairing with a [`crate::curve::CurveSample`] is the caller's
/// business, so the same data can be read on the circle or on `f(S^1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryFunction {
    #[serde(rename = "K")]
    k: usize,
    #[serde(with = "crate::serde_c64::vec")]
    fourier: Vec<Complex64>,
}

fn fft(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    }
}

/// `(u(theta_j))_j` with `theta_j = 2 pi j / n`.
pub fn nodes(n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |j| 2.0 * std::f64::consts::PI * j as f64 / n as f64)
}

impl BoundaryFunction {
    pub fn new(k: usize, fourier: Vec<Complex64>) -> Result<Self> {
        if fourier.len() != 2 * k + 1 {
            return Err(Error::InvalidInput(format!(
                "fourier data for K={k} needs {} entries, got {}",
                2 * k + 1,
                fourier.len()
            )));
        }
        Ok(Self { k, fourier })
    }

    pub fn zeros(k: usize) -> Self {
        Self {
            k,
            fourier: vec![Complex64::new(0.0, 0.0); 2 * k + 1],
        }
    }

    /// `c e^{i n theta}`.
    pub fn monomial(n: i64, c: Complex64, k: usize) -> Self {
        let mut f = Self::zeros(k.max(n.unsigned_abs() as usize));
        f.set(n, c);
        f
    }

    /// Build from `(n, h_n)` pairs.
    pub fn from_modes(k: usize, modes: &[(i64, Complex64)]) -> Self {
        let mut f = Self::zeros(k);
        for (n, c) in modes {
            let cur = f.coeff(*n);
            f.set(*n, cur + c);
        }
        f
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: Self =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("parse: {e}")))?;
        Self::new(f.k, f.fourier)
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Self> {
        let f: Self = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidInput(format!("parse: {e}")))?;
        Self::new(f.k, f.fourier)
    }

    /// Analysis of equispaced samples; the Nyquist mode is dropped, so
    /// `K = N/2 - 1`.
    pub fn from_samples(samples: &[Complex64]) -> Self {
        let n = samples.len();
        let k = (n / 2).saturating_sub(1);
        Self::from_samples_k(samples, k)
    }

    /// Analysis keeping modes `|n| <= k` (`k < N/2`).
    pub fn from_samples_k(samples: &[Complex64], k: usize) -> Self {
        let n = samples.len();
        assert!(2 * k < n.max(1), "K={k} needs more than {n} samples");
        let mut buf = samples.to_vec();
        fft(n, false).process(&mut buf);
        let scale = 1.0 / n as f64;
        let fourier = (-(k as i64)..=k as i64)
            .map(|m| buf[m.rem_euclid(n as i64) as usize] * scale)
            .collect();
        Self { k, fourier }
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Self {
        let s: Vec<Complex64> = nodes(n).map(f).collect();
        Self::from_samples(&s)
    }

    #[allow(non_snake_case)]
    pub fn K(&self) -> usize {
        self.k
    }

    /// `h_{-K..=K}`.
    pub fn fourier(&self) -> &[Complex64] {
        &self.fourier
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.k {
            Complex64::new(0.0, 0.0)
        } else {
            self.fourier[(n + self.k as i64) as usize]
        }
    }

    pub fn set(&mut self, n: i64, c: Complex64) {
        assert!(n.unsigned_abs() as usize <= self.k);
        self.fourier[(n + self.k as i64) as usize] = c;
    }

    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let k = self.k as i64;
        self.fourier
            .iter()
            .enumerate()
            .map(move |(i, c)| (i as i64 - k, *c))
    }

    /// Same function with modes `|n| > k` dropped (or zero-padded).
    pub fn truncated(&self, k: usize) -> Self {
        let fourier = (-(k as i64)..=k as i64).map(|n| self.coeff(n)).collect();
        Self { k, fourier }
    }

    /// Values at the `n` equispaced nodes; modes are folded modulo `n`.
    pub fn samples(&self, n: usize) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (m, c) in self.modes() {
            buf[m.rem_euclid(n as i64) as usize] += c;
        }
        fft(n, true).process(&mut buf);
        buf
    }

    /// `d/d theta` values at the nodes.
    pub fn derivative_samples(&self, n: usize) -> Vec<Complex64> {
        self.derivative().samples(n)
    }

    pub fn derivative(&self) -> Self {
        let fourier = self
            .modes()
            .map(|(m, c)| c * Complex64::new(0.0, m as f64))
            .collect();
        Self { k: self.k, fourier }
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.modes()
            .map(|(m, c)| c * Complex64::from_polar(1.0, m as f64 * theta))
            .sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            k: self.k,
            fourier: self.fourier.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.k.max(other.k);
        let fourier = (-(k as i64)..=k as i64)
            .map(|n| self.coeff(n) + other.coeff(n))
            .collect();
        Self { k, fourier }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Modes `n >= 0`.
    pub fn nonnegative_part(&self) -> Self {
        self.select(|n| n >= 0)
    }

    /// Modes `n < 0`.
    pub fn negative_part(&self) -> Self {
        self.select(|n| n < 0)
    }

    pub fn select(&self, keep: impl Fn(i64) -> bool) -> Self {
        let fourier = self
            .modes()
            .map(|(n, c)| if keep(n) { c } else { Complex64::new(0.0, 0.0) })
            .collect();
        Self { k: self.k, fourier }
    }

    pub fn max_abs(&self) -> f64 {
        self.fourier.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `(sum |h_n|^2)^(1/2)`.
    pub fn l2(&self) -> f64 {
        self.fourier.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// Largest of `|h_K|`, `|h_-K|`.
    pub fn tail(&self) -> f64 {
        let k = self.k as i64;
        self.coeff(k).norm().max(self.coeff(-k).norm())
    }

    /// True when the outermost modes exceed [`UNDER_RESOLVED`] times the
    /// largest coefficient.
    pub fn is_under_resolved(&self) -> bool {
        let m = self.max_abs();
        m > 0.0 && self.tail() > UNDER_RESOLVED * m
    }
}
