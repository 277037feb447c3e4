//! Cauchy integrals over sampled curves and the jump decomposition.
//!
//! All quadratures are the periodic trapezoid rule in the circle parameter:
//! `(1/2 pi i) \oint u(zeta) / (zeta - z) d zeta
//!  ~ (1/iN) sum_j u_j gamma'_j / (gamma_j - z)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::curve::CurveSample;
use crate::error::{Error, Result};
use crate::fourier::BoundaryFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Boundary values from the bounded component.
    Plus,
    /// Boundary values from the unbounded component.
    Minus,
}

#[derive(Clone, Debug)]
pub struct JumpDecomposition {
    /// Trace of the interior Cauchy integral.
    pub u_plus: BoundaryFunction,
    /// Trace of the exterior Cauchy integral; vanishes at infinity.
    pub u_minus: BoundaryFunction,
    /// `max_j |u_plus - u_minus - u|` at the nodes.
    pub residual: f64,
}

impl JumpDecomposition {
    /// The summand of `u` holomorphic inside.
    pub fn interior_part(&self) -> &BoundaryFunction {
        &self.u_plus
    }

    /// The summand of `u` holomorphic outside, `u = interior + exterior`.
    pub fn exterior_part(&self) -> BoundaryFunction {
        self.u_minus.scale(Complex64::new(-1.0, 0.0))
    }
}

fn check_size(curve: &CurveSample, u: &BoundaryFunction) -> Result<()> {
    if 2 * u.K() >= curve.n {
        log::debug!(
            "boundary data with K={} folded onto N={} nodes",
            u.K(),
            curve.n
        );
    }
    Ok(())
}

/// Cauchy integral of `u` over `curve` at points off the curve.
pub fn cauchy_integral(
    curve: &CurveSample,
    u: &BoundaryFunction,
    z: &[Complex64],
) -> Result<Vec<Complex64>> {
    check_size(curve, u)?;
    let mesh = curve.mesh_width();
    for p in z {
        let d = curve.distance_to(*p);
        if d <= mesh {
            return Err(Error::NearSingular { distance: d, mesh });
        }
    }
    let samples = u.samples(curve.n);
    Ok(cauchy_integral_samples(curve, &samples, z))
}

/// Trapezoid sum with node values already at hand; no proximity check.
pub fn cauchy_integral_samples(
    curve: &CurveSample,
    samples: &[Complex64],
    z: &[Complex64],
) -> Vec<Complex64> {
    let weights: Vec<Complex64> = samples
        .iter()
        .zip(&curve.derivs)
        .map(|(u, d)| u * d)
        .collect();
    let scale = Complex64::new(0.0, -1.0 / curve.n as f64);
    z.par_iter()
        .map(|p| {
            let s: Complex64 = weights
                .iter()
                .zip(&curve.points)
                .map(|(w, g)| w / (g - p))
                .sum();
            s * scale
        })
        .collect()
}

/// The principal-value part `S_m` at every node, computed by singularity
/// subtraction: `S_m = (1/iN) [sum_{j != m} (u_j - u_m) gamma'_j /
/// (gamma_j - gamma_m) + u'(theta_m)]`.
pub fn principal_values(curve: &CurveSample, u: &BoundaryFunction) -> Vec<Complex64> {
    let n = curve.n;
    let s = u.samples(n);
    let ds = u.derivative_samples(n);
    let scale = Complex64::new(0.0, -1.0 / n as f64);
    (0..n)
        .into_par_iter()
        .map(|m| {
            let gm = curve.points[m];
            let um = s[m];
            let mut acc = ds[m];
            for (j, ((sj, dj), pj)) in s.iter().zip(&curve.derivs).zip(&curve.points).enumerate() {
                if j != m {
                    acc += (sj - um) * dj / (pj - gm);
                }
            }
            acc * scale
        })
        .collect()
}

/// One-sided boundary values of the Cauchy integral of `u`:
/// `f_plus = u/2 + PV` and `f_minus = -u/2 + PV`.
///
/// The result keeps `K = N/2 - 1` modes. A warning is logged when its
/// outermost modes are not small compared to the largest one.
pub fn boundary_values(
    curve: &CurveSample,
    u: &BoundaryFunction,
    side: Side,
) -> Result<BoundaryFunction> {
    check_size(curve, u)?;
    let pv = principal_values(curve, u);
    let values: Vec<Complex64> = match side {
        Side::Minus => pv,
        Side::Plus => {
            let s = u.samples(curve.n);
            pv.iter().zip(&s).map(|(p, x)| p + x).collect()
        }
    };
    let out = BoundaryFunction::from_samples(&values);
    if out.is_under_resolved() {
        log::warn!(
            "under-resolved: boundary values at N={} have tail {:.3e}",
            curve.n,
            out.tail()
        );
    }
    Ok(out)
}

/// Solve the jump problem `u_plus - u_minus = u`, `u_minus(inf) = 0`.
pub fn jump_decompose(curve: &CurveSample, u: &BoundaryFunction) -> Result<JumpDecomposition> {
    check_size(curve, u)?;
    let n = curve.n;
    let s = u.samples(n);
    let pv = principal_values(curve, u);
    let plus: Vec<Complex64> = pv.iter().zip(&s).map(|(p, x)| p + x).collect();
    let u_plus = BoundaryFunction::from_samples(&plus);
    let u_minus = BoundaryFunction::from_samples(&pv);
    if u_plus.is_under_resolved() || u_minus.is_under_resolved() {
        log::warn!("under-resolved: jump decomposition at N={n}");
    }
    let p = u_plus.samples(n);
    let m = u_minus.samples(n);
    let residual = (0..n)
        .map(|j| (p[j] - m[j] - s[j]).norm())
        .fold(0.0, f64::max);
    Ok(JumpDecomposition {
        u_plus,
        u_minus,
        residual,
    })
}

/// `P_+(Gamma) u`, the trace of the interior part.
pub fn project_interior(curve: &CurveSample, u: &BoundaryFunction) -> Result<BoundaryFunction> {
    boundary_values(curve, u, Side::Plus)
}

/// `u_minus` of the jump decomposition (note the sign: `u = P_+ u - P_- u`).
pub fn project_exterior(curve: &CurveSample, u: &BoundaryFunction) -> Result<BoundaryFunction> {
    boundary_values(curve, u, Side::Minus)
}
