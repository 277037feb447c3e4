//! Conformal maps given by finitely many series coefficients.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::FormalSeries;

/// `f(z) = p + a1 z + a2 z^2 + ... + aM z^M`, a map of the unit disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaylorMap {
    #[serde(with = "crate::serde_c64::one")]
    pub center: Complex64,
    /// `a1..aM`.
    #[serde(with = "crate::serde_c64::vec")]
    pub coeffs: Vec<Complex64>,
}

/// `f(z) = b z + c0 + c1/z + ... + cM/z^M`, a map of the exterior disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentMap {
    #[serde(with = "crate::serde_c64::one")]
    pub leading: Complex64,
    /// `c0..cM`.
    #[serde(with = "crate::serde_c64::vec")]
    pub coeffs: Vec<Complex64>,
}

impl TaylorMap {
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        let m = Self { center, coeffs };
        m.validate()?;
        Ok(m)
    }

    /// `z -> p + r z`.
    pub fn disk(center: Complex64, r: f64) -> Self {
        Self {
            center,
            coeffs: vec![Complex64::new(r, 0.0)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.coeffs.first() {
            None => Err(Error::InvalidMap("taylor map needs a1".into())),
            Some(a1) if a1.norm() == 0.0 => Err(Error::InvalidMap("a1 = 0".into())),
            _ if !finite(&self.coeffs) || !self.center.is_finite() => {
                Err(Error::InvalidMap("non-finite coefficient".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn a1(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `f(z) - p` as an exact polynomial.
    pub fn centered_series(&self) -> FormalSeries {
        FormalSeries::polynomial(1, self.coeffs.clone())
    }

    pub fn series(&self) -> FormalSeries {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(self.center);
        c.extend_from_slice(&self.coeffs);
        FormalSeries::polynomial(0, c)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in self.coeffs.iter().rev() {
            acc = (acc + a) * z;
        }
        acc + self.center
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            acc = acc * z + a * (k + 1) as f64;
        }
        acc
    }
}

impl LaurentMap {
    pub fn new(leading: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        let m = Self { leading, coeffs };
        m.validate()?;
        Ok(m)
    }

    pub fn scaled(b: f64) -> Self {
        Self {
            leading: Complex64::new(b, 0.0),
            coeffs: vec![],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.leading.norm() == 0.0 {
            return Err(Error::InvalidMap("leading coefficient b = 0".into()));
        }
        if !finite(&self.coeffs) || !self.leading.is_finite() {
            return Err(Error::InvalidMap("non-finite coefficient".into()));
        }
        Ok(())
    }

    /// `b z + c0 + ... + cM z^-M` as an exact Laurent polynomial.
    pub fn series(&self) -> FormalSeries {
        let m = self.coeffs.len() as i64;
        let mut c: Vec<Complex64> = self.coeffs.iter().rev().copied().collect();
        if c.is_empty() {
            c.push(Complex64::new(0.0, 0.0));
        }
        c.push(self.leading);
        FormalSeries::polynomial(-(m - 1).max(0), c)
    }

    pub fn constant(&self) -> Complex64 {
        self.coeffs.first().copied().unwrap_or_default()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let w = z.inv();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * w + c;
        }
        self.leading * z + acc
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        let w = z.inv();
        let mut tail = Complex64::new(0.0, 0.0);
        for (m, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            tail = (tail - c * m as f64) * w;
        }
        self.leading + tail * w
    }
}

fn finite(v: &[Complex64]) -> bool {
    v.iter().all(|c| c.is_finite())
}

/// Either kind of map, with the tagged JSON form
/// `{"kind":"taylor","center":[re,im],"coeffs":[...]}` or
/// `{"kind":"laurent","leading":[re,im],"coeffs":[...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConformalMap {
    Taylor(TaylorMap),
    Laurent(LaurentMap),
}

impl ConformalMap {
    pub fn from_json(s: &str) -> Result<Self> {
        let m: Self =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("parse: {e}")))?;
        m.validate()?;
        Ok(m)
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Self> {
        let m: Self = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidInput(format!("parse: {e}")))?;
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Taylor(t) => t.validate(),
            Self::Laurent(l) => l.validate(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Taylor(t) => t.eval(z),
            Self::Laurent(l) => l.eval(z),
        }
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Taylor(t) => t.deriv(z),
            Self::Laurent(l) => l.deriv(z),
        }
    }

    /// Largest `|exponent|` among the stored terms.
    pub fn degree(&self) -> usize {
        match self {
            Self::Taylor(t) => t.coeffs.len(),
            Self::Laurent(l) => l.coeffs.len().saturating_sub(1).max(1),
        }
    }

    /// `|a1|` or `|b|`: the radius of the cap to first order.
    pub fn scale(&self) -> f64 {
        match self {
            Self::Taylor(t) => t.a1().norm(),
            Self::Laurent(l) => l.leading.norm(),
        }
    }

    pub fn as_taylor(&self) -> Option<&TaylorMap> {
        match self {
            Self::Taylor(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_laurent(&self) -> Option<&LaurentMap> {
        match self {
            Self::Laurent(l) => Some(l),
            _ => None,
        }
    }
}

impl From<TaylorMap> for ConformalMap {
    fn from(t: TaylorMap) -> Self {
        Self::Taylor(t)
    }
}

impl From<LaurentMap> for ConformalMap {
    fn from(l: LaurentMap) -> Self {
        Self::Laurent(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluation_matches_series() {
        let t = TaylorMap::new(c(0.5, 0.2), vec![c(1.0, 0.0), c(0.2, -0.1), c(0.0, 0.05)]).unwrap();
        let l = LaurentMap::new(c(2.0, 0.0), vec![c(0.1, 0.0), c(0.3, 0.0), c(0.0, 0.02)]).unwrap();
        let z = c(0.3, 0.4);
        assert!((t.eval(z) - t.series().eval(z)).norm() < 1e-15);
        let w = c(1.2, -0.7);
        assert!((l.eval(w) - l.series().eval(w)).norm() < 1e-14);
        let h = 1e-6;
        let fd = (t.eval(z + h) - t.eval(z - h)) / (2.0 * h);
        assert!((fd - t.deriv(z)).norm() < 1e-9);
        let fd = (l.eval(w + h) - l.eval(w - h)) / (2.0 * h);
        assert!((fd - l.deriv(w)).norm() < 1e-9);
    }

    #[test]
    fn laurent_series_window() {
        let l = LaurentMap::scaled(3.0);
        let s = l.series();
        assert_eq!((s.lo(), s.hi()), (0, 1));
        let l = LaurentMap::new(c(1.0, 0.0), vec![c(0.0, 0.0), c(0.3, 0.0)]).unwrap();
        let s = l.series();
        assert_eq!((s.lo(), s.hi()), (-1, 1));
        assert_eq!(s.coeff(-1), Some(c(0.3, 0.0)));
    }

    #[test]
    fn rejects_degenerate_maps() {
        assert!(TaylorMap::new(c(0.0, 0.0), vec![c(0.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(TaylorMap::new(c(0.0, 0.0), vec![]).is_err());
        assert!(LaurentMap::new(c(0.0, 0.0), vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"kind":"laurent","leading":[1.0,0.0],"coeffs":[[0.0,0.0],[0.3,0.0]]}"#;
        let m = ConformalMap::from_json(src).unwrap();
        assert!(matches!(m, ConformalMap::Laurent(_)));
        let back = serde_json::to_string(&m).unwrap();
        assert_eq!(ConformalMap::from_json(&back).unwrap(), m);
        let t = r#"{"kind":"taylor","center":[0.0,0.0],"coeffs":[[0.3,0.0]]}"#;
        assert_eq!(ConformalMap::from_json(t).unwrap().scale(), 0.3);
        assert!(ConformalMap::from_json(r#"{"kind":"taylor","coeffs":[]}"#).is_err());
        assert!(ConformalMap::from_json(r#"{"kind":"taylor","center":[0,0],"coeffs":[[0,0]]}"#)
            .is_err());
    }
}
