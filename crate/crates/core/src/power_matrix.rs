//! Power matrices: entry `(m, k)` is the coefficient of `z^k` in `F(z)^m`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::maps::ConformalMap;
use crate::series::{FormalSeries, Truncation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangularity {
    /// Taylor maps at the origin: `F(z)^m = sum_{k >= m}`.
    Upper,
    /// Laurent maps at infinity: `F(z)^m = sum_{k <= m}`.
    Lower,
}

#[derive(Clone, Debug)]
pub struct PowerMatrix {
    pub m_range: (i64, i64),
    pub k_range: (i64, i64),
    pub entries: DMatrix<Complex64>,
    pub orientation: Triangularity,
}

impl PowerMatrix {
    pub fn entry(&self, m: i64, k: i64) -> Complex64 {
        self.entries[((m - self.m_range.0) as usize, (k - self.k_range.0) as usize)]
    }

    pub fn rows(&self) -> impl Iterator<Item = i64> {
        self.m_range.0..=self.m_range.1
    }

    pub fn cols(&self) -> impl Iterator<Item = i64> {
        self.k_range.0..=self.k_range.1
    }
}

/// Power matrix of a map: the centered Taylor series `F - p` (upper) or the
/// Laurent series at infinity (lower).
pub fn build_power_matrix(
    map: &ConformalMap,
    m_range: (i64, i64),
    k_range: (i64, i64),
) -> Result<PowerMatrix> {
    match map {
        ConformalMap::Taylor(t) => power_matrix_of_series(
            &t.centered_series(),
            Triangularity::Upper,
            m_range,
            k_range,
        ),
        ConformalMap::Laurent(l) => {
            power_matrix_of_series(&l.series(), Triangularity::Lower, m_range, k_range)
        }
    }
}

/// Power matrix of an arbitrary series. For `Upper` the series must have
/// valuation exactly 1; for `Lower` its top exponent must be 1. Exact series
/// are promoted as far as the window needs; truncated ones must already
/// determine every requested entry.
pub fn power_matrix_of_series(
    s: &FormalSeries,
    orientation: Triangularity,
    m_range: (i64, i64),
    k_range: (i64, i64),
) -> Result<PowerMatrix> {
    let (m0, m1) = m_range;
    let (k0, k1) = k_range;
    if m1 < m0 || k1 < k0 {
        return Err(Error::InvalidInput("empty power-matrix range".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    let base = match orientation {
        Triangularity::Upper => {
            if s.valuation() != Some(1) || s.lo() < 1 && (s.lo()..1).any(|e| s.coeff(e) != Some(zero))
            {
                return Err(Error::InvalidMap(
                    "upper power matrix needs a series with valuation 1".into(),
                ));
            }
            match s.truncation() {
                Truncation::Exact => s.into_above((k1 - m0 + 1).max(s.hi()).max(1))?,
                Truncation::Above => s.clone(),
                Truncation::Below => {
                    return Err(Error::IncompatibleTruncation(
                        "upper power matrix of an expansion at infinity".into(),
                    ))
                }
            }
        }
        Triangularity::Lower => {
            if s.degree() != Some(1) || s.hi() > 1 && (2..=s.hi()).any(|e| s.coeff(e) != Some(zero))
            {
                return Err(Error::InvalidMap(
                    "lower power matrix needs a series with a simple pole at infinity".into(),
                ));
            }
            match s.truncation() {
                Truncation::Exact => s.into_below((1 - (m1 - k0)).min(s.lo()).min(1))?,
                Truncation::Below => s.clone(),
                Truncation::Above => {
                    return Err(Error::IncompatibleTruncation(
                        "lower power matrix of an expansion at the origin".into(),
                    ))
                }
            }
        }
    };
    let rows = (m1 - m0 + 1) as usize;
    let cols = (k1 - k0 + 1) as usize;
    let mut entries = DMatrix::from_element(rows, cols, zero);
    for (r, m) in (m0..=m1).enumerate() {
        let p = base.powi(m)?;
        for (c, k) in (k0..=k1).enumerate() {
            let structural_zero = match orientation {
                Triangularity::Upper => k < m,
                Triangularity::Lower => k > m,
            };
            if structural_zero {
                continue;
            }
            entries[(r, c)] = p.coeff(k).ok_or_else(|| {
                Error::InsufficientTruncation(format!(
                    "entry (m={m}, k={k}) needs coefficients beyond the stored window"
                ))
            })?;
        }
    }
    Ok(PowerMatrix {
        m_range,
        k_range,
        entries,
        orientation,
    })
}
