//! Grunsky coefficients of a map at infinity.
//!
//! `log((f(z) - f(zeta)) / (z - zeta)) = log b - sum_{k,m>=1} b_km z^-k zeta^-m`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::faber::faber_polynomials;
use crate::maps::LaurentMap;
use crate::series::FormalSeries;

#[derive(Clone, Debug)]
pub struct GrunskyMatrix {
    pub k: usize,
    /// `entries[(k-1, m-1)] = b_km`.
    pub entries: DMatrix<Complex64>,
    pub map: LaurentMap,
}

impl GrunskyMatrix {
    pub fn b(&self, k: usize, m: usize) -> Complex64 {
        self.entries[(k - 1, m - 1)]
    }

    /// `max |b_km - b_mk|`.
    pub fn symmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for k in 1..=self.k {
            for m in 1..=self.k {
                r = r.max((self.b(k, m) - self.b(m, k)).norm());
            }
        }
        r
    }

    /// Matrix of the block operator on monomials: entry `(m, k)` is the
    /// coefficient of `z^-m` in `P_-(S^1) Phi_k(f(z))`, i.e. `k b_km`.
    pub fn operator_entries(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.k, self.k, |r, c| self.b(c + 1, r + 1) * (c + 1) as f64)
    }

    /// `max |k Y_km - m Y_mk|` for the operator-normalized entries
    /// `Y_km = m b_km`.
    pub fn weighted_symmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for k in 1..=self.k {
            for m in 1..=self.k {
                let y_km = self.b(k, m) * m as f64;
                let y_mk = self.b(m, k) * k as f64;
                r = r.max((y_km * k as f64 - y_mk * m as f64).norm());
            }
        }
        r
    }

    pub fn max_abs_diff(&self, other: &GrunskyMatrix) -> f64 {
        (&self.entries - &other.entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Serialize for GrunskyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.k)
            .map(|r| {
                (0..self.k)
                    .map(|c| crate::serde_c64::to_pair(self.entries[(r, c)]))
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("GrunskyMatrix", 2)?;
        st.serialize_field("K", &self.k)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// Coefficients `a[p][q]` of `x^(p+1) y^(q+1)`, `p, q < K`.
type Bivariate = Vec<Vec<Complex64>>;

fn bivariate_mul(a: &Bivariate, b: &Bivariate, k: usize) -> Bivariate {
    let mut out = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    for p1 in 0..k {
        for q1 in 0..k {
            let x = a[p1][q1];
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            // exponents add: (p1+1) + (p2+1) = p + 1  =>  p = p1 + p2 + 1
            for p2 in 0..k.saturating_sub(p1 + 1) {
                for q2 in 0..k.saturating_sub(q1 + 1) {
                    out[p1 + p2 + 1][q1 + q2 + 1] += x * b[p2][q2];
                }
            }
        }
    }
    out
}

/// Grunsky matrix from the generating function, by a truncated bivariate
/// logarithm in `x = 1/z`, `y = 1/zeta`.
pub fn grunsky_via_generating(map: &LaurentMap, k: usize) -> Result<GrunskyMatrix> {
    map.validate()?;
    if k == 0 {
        return Err(Error::InvalidInput("K must be >= 1".into()));
    }
    let b = map.leading;
    // (f(z)-f(zeta))/(z-zeta) / b = 1 + u,
    // u = -(1/b) sum_j c_j sum_{p+q=j+1, p,q>=1} x^p y^q
    let mut u: Bivariate = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    for (j, cj) in map.coeffs.iter().enumerate().skip(1) {
        let w = -cj / b;
        for p in 1..=j {
            let q = j + 1 - p;
            if p <= k && q <= k {
                u[p - 1][q - 1] += w;
            }
        }
    }
    // total degree of u^j is at least 2j, so j <= K suffices
    let mut log = u.clone();
    let mut power = u.clone();
    for j in 2..=k {
        power = bivariate_mul(&power, &u, k);
        let s = if j % 2 == 0 { -1.0 } else { 1.0 } / j as f64;
        for p in 0..k {
            for q in 0..k {
                log[p][q] += power[p][q] * s;
            }
        }
    }
    let entries = DMatrix::from_fn(k, k, |r, c| Complex64::new(0.0, 0.0) - log[r][c]);
    Ok(GrunskyMatrix {
        k,
        entries,
        map: map.clone(),
    })
}

/// Grunsky matrix from `Phi_k(f(z)) = z^k + k sum_m b_km z^-m`.
///
/// Fails with [`Error::IdentityViolated`] when `Phi_k(f(z)) - z^k` has a
/// nonnegative power with coefficient above `1e-9`.
pub fn grunsky_via_faber(map: &LaurentMap, k: usize) -> Result<GrunskyMatrix> {
    if k == 0 {
        return Err(Error::InvalidInput("K must be >= 1".into()));
    }
    let family = faber_polynomials(map, k)?;
    let f = map.series();
    let mut entries = DMatrix::from_element(k, k, Complex64::new(0.0, 0.0));
    for kk in 1..=k {
        let phi = FormalSeries::polynomial(0, family.poly(kk).to_vec());
        let comp = phi.compose(&f)?;
        let mut worst: f64 = 0.0;
        for e in 0..=comp.hi().max(kk as i64) {
            let want = if e == kk as i64 { 1.0 } else { 0.0 };
            let got = comp.coeff(e).unwrap_or_default();
            worst = worst.max((got - Complex64::new(want, 0.0)).norm());
        }
        if worst > 1e-9 {
            return Err(Error::IdentityViolated(worst));
        }
        for m in 1..=k {
            let coef = comp.coeff(-(m as i64)).ok_or_else(|| {
                Error::InsufficientTruncation(format!("z^-{m} of Phi_{kk}(f)"))
            })?;
            entries[(kk - 1, m - 1)] = coef / kk as f64;
        }
    }
    Ok(GrunskyMatrix {
        k,
        entries,
        map: map.clone(),
    })
}
