//! Dirichlet energies, half-order norms and curve diagnostics.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cauchy::jump_decompose;
use crate::curve::CurveSample;
use crate::error::{Error, Result};
pub use crate::faber::DomainSide;
use crate::fourier::BoundaryFunction;

/// A holomorphic function on the unit disk (`h_0..h_K`) or on its exterior
/// (`h_-1..h_-K`, vanishing at infinity).
#[derive(Clone, Debug, PartialEq)]
pub struct DiskFunction {
    pub side: DomainSide,
    coeffs: Vec<Complex64>,
}

impl DiskFunction {
    /// `coeffs[i]` multiplies `z^i` inside or `z^-(i+1)` outside.
    pub fn new(side: DomainSide, coeffs: Vec<Complex64>) -> Self {
        Self { side, coeffs }
    }

    /// The half of `u` living on `side`.
    pub fn from_boundary(side: DomainSide, u: &BoundaryFunction) -> Self {
        let k = u.K() as i64;
        let coeffs = match side {
            DomainSide::Interior => (0..=k).map(|n| u.coeff(n)).collect(),
            DomainSide::Exterior => (1..=k).map(|n| u.coeff(-n)).collect(),
        };
        Self { side, coeffs }
    }

    #[allow(non_snake_case)]
    pub fn K(&self) -> usize {
        match self.side {
            DomainSide::Interior => self.coeffs.len().saturating_sub(1),
            DomainSide::Exterior => self.coeffs.len(),
        }
    }

    /// `(n, h_n)` over the stored modes.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let side = self.side;
        self.coeffs.iter().enumerate().map(move |(i, c)| match side {
            DomainSide::Interior => (i as i64, *c),
            DomainSide::Exterior => (-(i as i64) - 1, *c),
        })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.modes().map(|(n, c)| c * z.powi(n as i32)).sum()
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        self.modes()
            .filter(|(n, _)| *n != 0)
            .map(|(n, c)| c * n as f64 * z.powi(n as i32 - 1))
            .sum()
    }

    /// Value at the origin (interior) or zero (exterior).
    pub fn center_value(&self) -> Complex64 {
        match self.side {
            DomainSide::Interior => self.coeffs.first().copied().unwrap_or_default(),
            DomainSide::Exterior => Complex64::new(0.0, 0.0),
        }
    }
}

/// `h(z) = holo(z) + conj(antiholo(z))` on the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicPair {
    pub holo: DiskFunction,
    pub antiholo: DiskFunction,
}

impl HarmonicPair {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.holo.eval(z) + self.antiholo.eval(z).conj()
    }
}

/// `\iint |h'|^2 dA = pi sum |n| |h_n|^2`.
pub fn dirichlet_energy(f: &DiskFunction) -> f64 {
    PI * f
        .modes()
        .map(|(n, c)| n.unsigned_abs() as f64 * c.norm_sqr())
        .sum::<f64>()
}

/// `(|h(0)|^2 + D(holo) + D(antiholo))^(1/2)`.
pub fn harmonic_dirichlet_norm(h: &HarmonicPair) -> f64 {
    let h0 = h.holo.center_value() + h.antiholo.center_value().conj();
    (h0.norm_sqr() + dirichlet_energy(&h.holo) + dirichlet_energy(&h.antiholo)).sqrt()
}

/// `(|h_0|^2 + sum |n| |h_n|^2)^(1/2)` of Fourier data, read on the circle.
pub fn fourier_half_norm(u: &BoundaryFunction) -> f64 {
    u.modes()
        .map(|(n, c)| n.unsigned_abs().max(if n == 0 { 1 } else { 0 }) as f64 * c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Half-order norm on the unit circle. Other curves should use
/// [`besov_seminorm`].
pub fn h_half_norm(curve: &CurveSample, u: &BoundaryFunction) -> Result<f64> {
    if !curve.is_unit_circle() {
        return Err(Error::NotCircle);
    }
    Ok(fourier_half_norm(u))
}

/// `(\iint |u(x)-u(y)|^2 / |x-y|^2 ds ds)^(1/2)` by a double trapezoid sum in
/// arc length. The diagonal cells are filled with the central-difference
/// value of `|du/ds|^2`.
pub fn besov_seminorm(curve: &CurveSample, u: &[Complex64]) -> f64 {
    let n = curve.n;
    assert_eq!(u.len(), n, "one sample per node");
    let h = 2.0 * PI / n as f64;
    let w: Vec<f64> = curve.derivs.iter().map(|d| d.norm() * h).collect();
    let total: f64 = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut row = 0.0;
            for k in 0..n {
                if k == j {
                    let (a, b) = ((j + n - 1) % n, (j + 1) % n);
                    let q = (u[b] - u[a]) / (curve.points[b] - curve.points[a]);
                    row += q.norm_sqr() * w[j] * w[j];
                } else {
                    let d = (u[j] - u[k]).norm_sqr() / (curve.points[j] - curve.points[k]).norm_sqr();
                    row += d * w[j] * w[k];
                }
            }
            row
        })
        .sum();
    total.sqrt()
}

/// Largest ratio of shorter arc length to chord length over node pairs.
pub fn chord_arc_constant(curve: &CurveSample) -> f64 {
    let (s, total) = curve.arc_lengths();
    let n = curve.n;
    (0..n)
        .into_par_iter()
        .map(|j| {
            let mut best: f64 = 1.0;
            for k in (j + 1)..n {
                let arc = (s[k] - s[j]).abs();
                let arc = arc.min(total - arc);
                let chord = (curve.points[k] - curve.points[j]).norm();
                best = best.max(arc / chord);
            }
            best
        })
        .reduce(|| 1.0, f64::max)
}

/// `(|u_+|^2 + |u_-|^2) / |u|^2` in the Fourier half norm: a measured
/// witness for boundedness of the jump decomposition on `curve`.
pub fn jump_bound_ratio(curve: &CurveSample, u: &BoundaryFunction) -> Result<f64> {
    let d = jump_decompose(curve, u)?;
    let nu = fourier_half_norm(u);
    if nu == 0.0 {
        return Ok(0.0);
    }
    Ok((fourier_half_norm(&d.u_plus).powi(2) + fourier_half_norm(&d.u_minus).powi(2)) / nu.powi(2))
}
