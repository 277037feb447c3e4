//! Rational test functions with poles in the caps, and the decomposition
//! `h = sum_i h_i` into pieces holomorphic off one cap each.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Rigging;
use crate::cauchy::{cauchy_integral, jump_decompose};
use crate::error::{Error, Result};
use crate::fourier::BoundaryFunction;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    #[serde(with = "crate::serde_c64::one")]
    pub at: Complex64,
    /// `coeffs[j]` multiplies `(w - at)^-(j+1)`.
    #[serde(with = "crate::serde_c64::vec")]
    pub coeffs: Vec<Complex64>,
}

/// `constant + sum_l poly[l-1] w^l + sum_poles sum_j c_j (w - q)^-j`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    #[serde(default, with = "crate::serde_c64::one")]
    pub constant: Complex64,
    #[serde(default, with = "crate::serde_c64::vec")]
    pub poly: Vec<Complex64>,
    #[serde(default)]
    pub poles: Vec<Pole>,
}

impl TestFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self {
            constant: c,
            ..Self::default()
        }
    }

    /// `c / (w - q)`.
    pub fn simple_pole(q: Complex64, c: Complex64) -> Self {
        Self {
            poles: vec![Pole {
                at: q,
                coeffs: vec![c],
            }],
            ..Self::default()
        }
    }

    pub fn plus(mut self, other: Self) -> Self {
        self.constant += other.constant;
        if self.poly.len() < other.poly.len() {
            self.poly.resize(other.poly.len(), Complex64::new(0.0, 0.0));
        }
        for (a, b) in self.poly.iter_mut().zip(other.poly) {
            *a += b;
        }
        self.poles.extend(other.poles);
        self
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let poly = self
            .poly
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| (acc + c) * w);
        let mut s = self.constant + poly;
        for p in &self.poles {
            let u = (w - p.at).inv();
            s += p
                .coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| (acc + c) * u);
        }
        s
    }

    /// Every pole sits in a cap at distance at least `0.1` times the cap's
    /// scale from its boundary curve.
    pub fn validate(&self, r: &Rigging) -> Result<()> {
        for p in &self.poles {
            let cap = r.cap_of(p.at).ok_or_else(|| {
                Error::InvalidInput(format!("pole {} is not inside any cap", p.at))
            })?;
            let d = r.curves[cap].distance_to(p.at);
            if d < 0.1 * r.cap_scale(cap) {
                return Err(Error::InvalidInput(format!(
                    "pole {} is {d:.3e} from curve {cap}; too close",
                    p.at
                )));
            }
        }
        Ok(())
    }

    /// The piece belonging to cap `i`: its poles for `i < n`; the polynomial
    /// part, the constant and poles beyond the outer curve for `i = n`.
    pub fn component(&self, r: &Rigging, i: usize) -> Self {
        let poles = self
            .poles
            .iter()
            .filter(|p| r.cap_of(p.at) == Some(i))
            .cloned()
            .collect();
        if i < r.n {
            Self {
                poles,
                ..Self::default()
            }
        } else {
            Self {
                constant: self.constant,
                poly: self.poly.clone(),
                poles,
            }
        }
    }

    /// Fourier data of `h(f_i(e^{i theta}))`, `K = N/2 - 1`.
    pub fn trace(&self, r: &Rigging, i: usize) -> BoundaryFunction {
        let v: Vec<Complex64> = r.curves[i].points.iter().map(|w| self.eval(*w)).collect();
        BoundaryFunction::from_samples(&v)
    }

    pub fn traces(&self, r: &Rigging) -> Vec<BoundaryFunction> {
        (0..=r.n).map(|i| self.trace(r, i)).collect()
    }

    /// Three test functions touching every cap: simple poles at the centers,
    /// double poles plus a linear term, and a mixed sum.
    pub fn default_set(r: &Rigging) -> Vec<Self> {
        let centers: Vec<Complex64> = r.interior.iter().map(|t| t.center).collect();
        let radius = r.exterior.leading.norm();
        let outer = radius * 5.0;
        let mut a = Self::zero();
        let mut b = Self {
            poly: vec![Complex64::new(1.0 / radius, 0.0)],
            ..Self::default()
        };
        for (i, p) in centers.iter().enumerate() {
            let s = r.cap_scale(i);
            a = a.plus(Self::simple_pole(*p, Complex64::new(s, 0.0)));
            let q = p + Complex64::new(0.1 * s, 0.05 * s);
            b.poles.push(Pole {
                at: q,
                coeffs: vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.5) * s * s],
            });
        }
        let c = Self::constant(Complex64::new(0.5, -0.25))
            .plus(Self::simple_pole(
                r.exterior.constant() + Complex64::new(outer, 0.0),
                Complex64::new(outer, 0.0),
            ))
            .plus(Self::simple_pole(centers[0], Complex64::new(0.0, r.cap_scale(0))));
        vec![a, b, c]
    }
}

/// Per-cap pieces `h_i` of a test function, each stored as its trace on
/// `f_i(S^1)`.
#[derive(Clone, Debug)]
pub struct KComponents {
    pub traces: Vec<BoundaryFunction>,
}

impl KComponents {
    /// `h_i` at points of `Sigma`, recovered from its trace by a Cauchy
    /// integral over curve `i`.
    pub fn eval(&self, r: &Rigging, i: usize, probes: &[Complex64]) -> Result<Vec<Complex64>> {
        let v = cauchy_integral(&r.curves[i], &self.traces[i], probes)?;
        Ok(if i < r.n {
            v.into_iter().map(|x| Complex64::new(0.0, 0.0) - x).collect()
        } else {
            v
        })
    }

    /// `sum_i h_i` at the probes.
    pub fn sum(&self, r: &Rigging, probes: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); probes.len()];
        for i in 0..=r.n {
            for (o, x) in out.iter_mut().zip(self.eval(r, i, probes)?) {
                *o += x;
            }
        }
        Ok(out)
    }
}

/// Split `h` into `h_i`: the exterior Cauchy part of its trace on the inner
/// curves and the interior part on the outer curve.
pub fn apply_k(r: &Rigging, h: &TestFunction) -> Result<KComponents> {
    h.validate(r)?;
    let mut traces = Vec::with_capacity(r.n + 1);
    for i in 0..=r.n {
        let d = jump_decompose(&r.curves[i], &h.trace(r, i))?;
        traces.push(if i < r.n { d.exterior_part() } else { d.u_plus });
    }
    Ok(KComponents { traces })
}
