//! Faber polynomials, Faber series and the trivialization operator.

use num_complex::Complex64;

use crate::cauchy::jump_decompose;
use crate::curve::{sample_curve, CurveSample};
use crate::error::{Error, Result};
use crate::fourier::BoundaryFunction;
use crate::maps::{ConformalMap, LaurentMap, TaylorMap};
use crate::power_matrix::{power_matrix_of_series, Triangularity};
use crate::series::{laurent_reversion, series_reversion};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainSide {
    /// The bounded domain, mapped onto from outside by a Laurent map.
    Interior,
    /// The unbounded domain, the complement of a Taylor map's image.
    Exterior,
}

/// Faber polynomials of one domain.
///
/// Interior families hold `Phi_0..=Phi_K` as coefficients of `w^0..w^k`.
/// Exterior families hold `Phi_1..=Phi_K` as coefficients of
/// `(w-p)^-1..(w-p)^-k`, where `p` is the center of the Taylor map.
#[derive(Clone, Debug)]
pub struct FaberFamily {
    pub side: DomainSide,
    pub source: ConformalMap,
    pub k: usize,
    pub polys: Vec<Vec<Complex64>>,
}

impl FaberFamily {
    /// Smallest valid index: 0 inside, 1 outside.
    pub fn first_index(&self) -> usize {
        match self.side {
            DomainSide::Interior => 0,
            DomainSide::Exterior => 1,
        }
    }

    /// Coefficients of `Phi_k`.
    pub fn poly(&self, k: usize) -> &[Complex64] {
        &self.polys[k - self.first_index()]
    }

    fn center(&self) -> Complex64 {
        match &self.source {
            ConformalMap::Taylor(t) => t.center,
            ConformalMap::Laurent(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn eval(&self, k: usize, w: Complex64) -> Complex64 {
        let c = self.poly(k);
        match self.side {
            DomainSide::Interior => c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, x| acc * w + x),
            DomainSide::Exterior => {
                let u = (w - self.center()).inv();
                c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, x| (acc + x) * u)
            }
        }
    }
}

/// `Phi_k(Omega+)`, `k = 0..=K`: the polynomial part of `g(w)^k` where `g` is
/// the inverse of `map` near infinity.
pub fn faber_polynomials(map: &LaurentMap, k: usize) -> Result<FaberFamily> {
    map.validate()?;
    let order = k.max(1) as i64;
    let g = laurent_reversion(map, order)?.series;
    let pm = power_matrix_of_series(&g, Triangularity::Lower, (0, k as i64), (0, k as i64))?;
    let polys = (0..=k as i64)
        .map(|m| (0..=m).map(|l| pm.entry(m, l)).collect())
        .collect();
    Ok(FaberFamily {
        side: DomainSide::Interior,
        source: map.clone().into(),
        k,
        polys,
    })
}

/// `Phi_k(Omega-)`, `k = 1..=K`: the principal part at `p` of
/// `g(w - p)^-k`, where `g` inverts `map - p` near the origin.
pub fn faber_polynomials_exterior(map: &TaylorMap, k: usize) -> Result<FaberFamily> {
    map.validate()?;
    if k == 0 {
        return Err(Error::InvalidInput("exterior Faber family needs K >= 1".into()));
    }
    let g = series_reversion(map, k as i64)?.series;
    let ki = k as i64;
    let pm = power_matrix_of_series(&g, Triangularity::Upper, (-ki, -1), (-ki, -1))?;
    let polys = (1..=ki)
        .map(|m| (1..=m).map(|l| pm.entry(-m, -l)).collect())
        .collect();
    Ok(FaberFamily {
        side: DomainSide::Exterior,
        source: map.clone().into(),
        k,
        polys,
    })
}

/// Faber coefficients of a function together with its family.
#[derive(Clone, Debug)]
pub struct FaberSeries {
    /// `h_n` for `n = first_index..=K`.
    pub coeffs: Vec<Complex64>,
    pub family: FaberFamily,
}

impl FaberSeries {
    /// `sum_{n <= terms} h_n Phi_n(w)`.
    pub fn partial_sum(&self, terms: usize, w: Complex64) -> Complex64 {
        let start = self.family.first_index();
        (start..=terms.min(self.family.k))
            .map(|n| self.coeffs[n - start] * self.family.eval(n, w))
            .sum()
    }

    /// For every partial-sum order `n`, the largest error against `exact` over
    /// the probes.
    pub fn sup_errors(
        &self,
        probes: &[Complex64],
        exact: impl Fn(Complex64) -> Complex64,
    ) -> Vec<f64> {
        let start = self.family.first_index();
        let truth: Vec<Complex64> = probes.iter().map(|w| exact(*w)).collect();
        let mut acc = vec![Complex64::new(0.0, 0.0); probes.len()];
        (start..=self.family.k)
            .map(|n| {
                let c = self.coeffs[n - start];
                for (a, w) in acc.iter_mut().zip(probes) {
                    *a += c * self.family.eval(n, *w);
                }
                acc.iter()
                    .zip(&truth)
                    .map(|(a, t)| (a - t).norm())
                    .fold(0.0, f64::max)
            })
            .collect()
    }
}

/// Faber series of boundary data `h` given in the circle parameter of
/// `curve`, which must be sampled from the family's map.
///
/// Fails with [`Error::NonHolomorphic`] when `h` has a Cauchy component on
/// the wrong side larger than `1e-8` relative to its size.
pub fn faber_series(
    curve: &CurveSample,
    h: &BoundaryFunction,
    family: &FaberFamily,
) -> Result<FaberSeries> {
    let jump = jump_decompose(curve, h)?;
    let wrong = match family.side {
        DomainSide::Interior => jump.u_minus.max_abs(),
        DomainSide::Exterior => jump.u_plus.max_abs(),
    };
    if wrong > 1e-8 * h.max_abs().max(1.0) {
        return Err(Error::NonHolomorphic(wrong));
    }
    let coeffs = match family.side {
        DomainSide::Interior => (0..=family.k as i64).map(|n| h.coeff(n)).collect(),
        DomainSide::Exterior => (1..=family.k as i64).map(|n| h.coeff(-n)).collect(),
    };
    Ok(FaberSeries {
        coeffs,
        family: family.clone(),
    })
}

/// The trivialization `P_+(dOmega) C_{F^-1}` (Laurent map, interior side) or
/// the exterior summand of `C_{F^-1}` (Taylor map, exterior side), applied
/// to disk data `g`; the result is boundary data in the curve parameter.
pub fn trivialization_apply(
    map: &ConformalMap,
    side: DomainSide,
    g: &BoundaryFunction,
    n: usize,
) -> Result<BoundaryFunction> {
    let wrong = match (map, side) {
        (ConformalMap::Laurent(_), DomainSide::Interior) => g.negative_part().max_abs(),
        (ConformalMap::Taylor(_), DomainSide::Exterior) => g.nonnegative_part().max_abs(),
        _ => {
            return Err(Error::InvalidInput(
                "interior side needs a Laurent map, exterior side a Taylor map".into(),
            ))
        }
    };
    if wrong > 1e-12 * g.max_abs() {
        return Err(Error::InvalidInput(format!(
            "disk data has {wrong:.3e} on the wrong Fourier side"
        )));
    }
    let curve = sample_curve(map, n)?;
    let d = jump_decompose(&curve, g)?;
    Ok(match side {
        DomainSide::Interior => d.u_plus,
        DomainSide::Exterior => d.exterior_part(),
    })
}
