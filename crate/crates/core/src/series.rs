//! Truncated Laurent series with explicit truncation windows.
//!
//! A [`FormalSeries`] stores the coefficients of `z^lo ..= z^hi` together with
//! a [`Truncation`] tag saying what is known outside that window. Exact
//! series are finite Laurent polynomials. `Above` series are expansions at
//! the origin whose coefficients past `hi` are unknown; `Below` series are
//! expansions at infinity whose coefficients under `lo` are unknown.
//!
//! Every operation returns the window it can actually prove. Unknown
//! coefficients are never replaced by zeros; callers that know a series is
//! exact beyond its stored terms say so with [`FormalSeries::into_above`] or
//! [`FormalSeries::into_below`].

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Every coefficient outside the window is zero.
    Exact,
    /// Zero below `lo`, unknown above `hi`.
    Above,
    /// Zero above `hi`, unknown below `lo`.
    Below,
}

impl Truncation {
    fn reflect(self) -> Self {
        match self {
            Truncation::Exact => Truncation::Exact,
            Truncation::Above => Truncation::Below,
            Truncation::Below => Truncation::Above,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries {
    lo: i64,
    coeffs: Vec<Complex64>,
    truncation: Truncation,
}

/// Output of a series inversion: the inverse and the largest coefficient of
/// `f(g(w)) - w` over the window where both are determined.
#[derive(Clone, Debug)]
pub struct Reversion {
    pub series: FormalSeries,
    pub residual: f64,
}

impl FormalSeries {
    pub fn new(lo: i64, coeffs: Vec<Complex64>, truncation: Truncation) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::TruncationExhausted);
        }
        Ok(Self {
            lo,
            coeffs,
            truncation,
        })
    }

    /// Finite Laurent polynomial `sum coeffs[i] z^(lo+i)`.
    pub fn polynomial(lo: i64, coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        Self {
            lo,
            coeffs,
            truncation: Truncation::Exact,
        }
    }

    pub fn monomial(exponent: i64, c: Complex64) -> Self {
        Self::polynomial(exponent, vec![c])
    }

    pub fn zero() -> Self {
        Self::polynomial(0, vec![Complex64::new(0.0, 0.0)])
    }

    pub fn one() -> Self {
        Self::monomial(0, Complex64::new(1.0, 0.0))
    }

    /// The series `z`.
    pub fn identity() -> Self {
        Self::monomial(1, Complex64::new(1.0, 0.0))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    /// Stored coefficients for exponents `lo..=hi`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^e`, or `None` when the window does not determine it.
    pub fn coeff(&self, e: i64) -> Option<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        if e < self.lo {
            match self.truncation {
                Truncation::Below => None,
                _ => Some(zero),
            }
        } else if e > self.hi() {
            match self.truncation {
                Truncation::Above => None,
                _ => Some(zero),
            }
        } else {
            Some(self.coeffs[(e - self.lo) as usize])
        }
    }

    /// Lowest exponent with a nonzero stored coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| *c != Complex64::new(0.0, 0.0))
            .map(|i| self.lo + i as i64)
    }

    /// Highest exponent with a nonzero stored coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .map(|i| self.lo + i as i64)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.truncation == Truncation::Exact && self.valuation().is_none()
    }

    /// Substitute `z -> 1/z`.
    pub fn reflect(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self {
            lo: -self.hi(),
            coeffs,
            truncation: self.truncation.reflect(),
        }
    }

    /// Restrict to exponents `<= hi` and mark everything above as unknown.
    ///
    /// Exact series are padded with their (known) zeros when `hi` lies past
    /// the stored window.
    pub fn into_above(&self, hi: i64) -> Result<Self> {
        match self.truncation {
            Truncation::Below => Err(Error::IncompatibleTruncation(
                "cannot view an expansion at infinity as one at the origin".into(),
            )),
            Truncation::Above if hi > self.hi() => Err(Error::InsufficientTruncation(format!(
                "requested through z^{hi}, known through z^{}",
                self.hi()
            ))),
            _ => {
                if hi < self.lo {
                    return Err(Error::TruncationExhausted);
                }
                let len = (hi - self.lo + 1) as usize;
                let mut coeffs = self.coeffs.clone();
                coeffs.resize(len, Complex64::new(0.0, 0.0));
                Ok(Self {
                    lo: self.lo,
                    coeffs,
                    truncation: Truncation::Above,
                })
            }
        }
    }

    /// Restrict to exponents `>= lo` and mark everything below as unknown.
    pub fn into_below(&self, lo: i64) -> Result<Self> {
        match self.truncation {
            Truncation::Above => Err(Error::IncompatibleTruncation(
                "cannot view an expansion at the origin as one at infinity".into(),
            )),
            _ => self.reflect().into_above(-lo).map(|s| s.reflect()),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            truncation: self.truncation,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        use Truncation::*;
        match (self.truncation, rhs.truncation) {
            (Above, Below) | (Below, Above) => Err(Error::IncompatibleTruncation(
                "sum of expansions at the origin and at infinity".into(),
            )),
            (Below, _) | (_, Below) => Ok(self.reflect().add(&rhs.reflect())?.reflect()),
            _ => {
                let lo = self.lo.min(rhs.lo);
                let mut hi = self.hi().max(rhs.hi());
                let mut truncation = Exact;
                for s in [self, rhs] {
                    if s.truncation == Above {
                        hi = hi.min(s.hi());
                        truncation = Above;
                    }
                }
                if hi < lo {
                    return Err(Error::TruncationExhausted);
                }
                let coeffs = (lo..=hi)
                    .map(|e| self.coeff(e).unwrap() + rhs.coeff(e).unwrap())
                    .collect();
                Self::new(lo, coeffs, truncation)
            }
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    /// Where a product of `self` with anything starts to be unknown, or
    /// `None` if the product is exactly determined at every order.
    fn effective_valuation(&self) -> Option<i64> {
        match self.valuation() {
            Some(v) => Some(v),
            None => match self.truncation {
                Truncation::Above => Some(self.hi() + 1),
                _ => None,
            },
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        use Truncation::*;
        match (self.truncation, rhs.truncation) {
            (Above, Below) | (Below, Above) => Err(Error::IncompatibleTruncation(
                "product of expansions at the origin and at infinity".into(),
            )),
            (Below, _) | (_, Below) => Ok(self.reflect().mul(&rhs.reflect())?.reflect()),
            _ => {
                if self.is_exact_zero() || rhs.is_exact_zero() {
                    return Ok(Self::zero());
                }
                let lo = self.lo + rhs.lo;
                let mut hi = self.hi() + rhs.hi();
                let mut truncation = Exact;
                if self.truncation == Above {
                    if let Some(v) = rhs.effective_valuation() {
                        hi = hi.min(self.hi() + v);
                    }
                    truncation = Above;
                }
                if rhs.truncation == Above {
                    if let Some(v) = self.effective_valuation() {
                        hi = hi.min(rhs.hi() + v);
                    }
                    truncation = Above;
                }
                if hi < lo {
                    return Err(Error::TruncationExhausted);
                }
                let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if *a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        let idx = i + j;
                        if idx >= coeffs.len() {
                            break;
                        }
                        coeffs[idx] += a * b;
                    }
                }
                Self::new(lo, coeffs, truncation)
            }
        }
    }

    /// Multiplicative inverse, keeping the relative precision of `self`.
    pub fn reciprocal(&self) -> Result<Self> {
        match self.truncation {
            Truncation::Below => Ok(self.reflect().reciprocal()?.reflect()),
            Truncation::Exact => {
                let v = self.valuation().ok_or(Error::NonInvertible)?;
                if self.degree() == Some(v) {
                    let c = self.coeff(v).unwrap();
                    Ok(Self::monomial(-v, c.inv()))
                } else {
                    Err(Error::Unbounded("reciprocal"))
                }
            }
            Truncation::Above => {
                let v = self.valuation().ok_or(Error::NonInvertible)?;
                let n = (self.hi() - v) as usize;
                let a: Vec<Complex64> = (0..=n)
                    .map(|j| self.coeff(v + j as i64).unwrap())
                    .collect();
                let inv0 = a[0].inv();
                let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
                b[0] = inv0;
                for k in 1..=n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for i in 1..=k {
                        acc += a[i] * b[k - i];
                    }
                    b[k] = -acc * inv0;
                }
                Self::new(-v, b, Truncation::Above)
            }
        }
    }

    pub fn powi(&self, m: i64) -> Result<Self> {
        if m == 0 {
            return Ok(Self::one());
        }
        let base = if m < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut e = m.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (self.lo + i as i64) as f64)
            .collect();
        Self {
            lo: self.lo - 1,
            coeffs,
            truncation: self.truncation,
        }
    }

    /// `outer(inner(z))` with window bookkeeping.
    ///
    /// For an expansion at the origin `inner` must have positive valuation
    /// when `outer` is truncated above, and negative valuation when `outer`
    /// is an expansion at infinity. Expansions of `inner` at infinity are
    /// handled through `z -> 1/z`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.truncation == Truncation::Below {
            return Ok(self.compose(&inner.reflect())?.reflect());
        }
        let v = inner.valuation().ok_or_else(|| {
            Error::IncompatibleTruncation("inner series has no nonzero coefficient".into())
        })?;
        let mut tail_hi: Option<i64> = None;
        match self.truncation {
            Truncation::Exact => {}
            Truncation::Above => {
                if v <= 0 {
                    return Err(Error::IncompatibleTruncation(
                        "outer series truncated above needs inner = O(z)".into(),
                    ));
                }
                tail_hi = Some(v * (self.hi() + 1) - 1);
            }
            Truncation::Below => {
                if v >= 0 {
                    return Err(Error::IncompatibleTruncation(
                        "outer series at infinity needs an inner series with a pole".into(),
                    ));
                }
                tail_hi = Some(v * (self.lo - 1) - 1);
            }
        }
        let (m_lo, m_hi) = (self.lo, self.hi());
        let mut acc: Option<Self> = None;
        fn push(term: FormalSeries, acc: &mut Option<FormalSeries>) -> Result<()> {
            *acc = Some(match acc.take() {
                None => term,
                Some(a) => a.add(&term)?,
            });
            Ok(())
        }
        if m_hi >= 0 {
            let mut power = Self::one();
            for m in 0..=m_hi {
                if m > 0 {
                    power = power.mul(inner)?;
                }
                if m >= m_lo {
                    let c = self.coeff(m).unwrap();
                    push(power.scale(c), &mut acc)?;
                }
            }
        }
        if m_lo < 0 {
            let recip = inner.reciprocal()?;
            let mut power = recip.clone();
            for m in (m_lo..=-1).rev() {
                if m < -1 {
                    power = power.mul(&recip)?;
                }
                if m <= m_hi {
                    let c = self.coeff(m).unwrap();
                    push(power.scale(c), &mut acc)?;
                }
            }
        }
        let mut out = acc.unwrap_or_else(Self::zero);
        if let Some(t) = tail_hi {
            let hi = match out.truncation {
                Truncation::Above => out.hi().min(t),
                _ => t,
            };
            out = out.into_above(hi)?;
        }
        Ok(out)
    }

    /// Extend an `Above` window to `hi` by declaring the new coefficients
    /// zero. Only for iterations that correct those coefficients afterwards.
    fn zero_extend(&self, hi: i64) -> Self {
        let mut s = self.clone();
        if hi > s.hi() {
            s.coeffs.resize((hi - s.lo + 1) as usize, Complex64::new(0.0, 0.0));
        }
        s
    }

    /// `log(1 + u)` for `u = O(z)` (truncated above) or `u = O(1/z)`
    /// (truncated below).
    pub fn log1p(&self) -> Result<Self> {
        match self.truncation {
            Truncation::Below => Ok(self.reflect().log1p()?.reflect()),
            Truncation::Exact => {
                if self.is_exact_zero() {
                    Ok(Self::zero())
                } else {
                    Err(Error::Unbounded("logarithm"))
                }
            }
            Truncation::Above => {
                let v = match self.valuation() {
                    Some(v) => v,
                    None => return Ok(self.clone()),
                };
                if v <= 0 {
                    return Err(Error::ConstantTerm);
                }
                let hi = self.hi();
                let terms = hi / v;
                let mut power = self.clone();
                let mut acc = self.clone();
                for j in 2..=terms {
                    power = power.mul(self)?;
                    let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
                    acc = acc.add(&power.scale(Complex64::new(sign / j as f64, 0.0)))?;
                }
                acc.into_above(hi)
            }
        }
    }

    /// Evaluate the stored window at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.lo as i32)
    }

    /// Largest coefficient difference over exponents both series determine.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi)
            .filter_map(|e| match (self.coeff(e), other.coeff(e)) {
                (Some(a), Some(b)) => Some((a - b).norm()),
                _ => None,
            })
            .fold(0.0, f64::max)
    }
}

/// Compositional inverse of `f = a1 z + a2 z^2 + ...` near the origin.
///
/// Newton iteration on truncated series: each step doubles the number of
/// correct terms. Returns `g` with `f(g(w)) = w + O(w^(order+1))`.
pub fn reversion(f: &FormalSeries, order: i64) -> Result<Reversion> {
    if f.truncation == Truncation::Below {
        return Err(Error::IncompatibleTruncation(
            "reversion at the origin needs a series at the origin".into(),
        ));
    }
    if order < 1 {
        return Err(Error::InvalidInput("reversion order must be >= 1".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    if f.coeff(0) != Some(zero) || f.lo < 0 && (f.lo..0).any(|e| f.coeff(e) != Some(zero)) {
        return Err(Error::InvalidInput(
            "series must vanish at the origin".into(),
        ));
    }
    let a1 = f.coeff(1).ok_or_else(|| {
        Error::InsufficientTruncation("linear coefficient unknown".into())
    })?;
    if a1 == zero {
        return Err(Error::NonInvertible);
    }
    let f_full = f.into_above(order)?;
    let w = FormalSeries::identity();
    let mut g = FormalSeries::monomial(1, a1.inv()).into_above(1)?;
    let mut prec = 1;
    while prec < order {
        prec = (2 * prec).min(order);
        let g_pad = g.zero_extend(prec);
        let f_t = f_full.into_above(prec)?;
        let fg = f_t.compose(&g_pad)?;
        let dfg = f_t.derivative().compose(&g_pad)?;
        let step = fg.sub(&w)?.mul(&dfg.reciprocal()?)?;
        g = g_pad.sub(&step)?.into_above(prec)?;
    }
    let check = f_full.compose(&g)?.sub(&w)?;
    let residual = (1..=check.hi())
        .filter_map(|e| check.coeff(e))
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    Ok(Reversion {
        series: g,
        residual,
    })
}

/// Inverse of a Taylor map about its center: the returned series `g`
/// satisfies `f(center + g(u)) - center = u + O(u^(order+1))`.
pub fn series_reversion(f: &crate::maps::TaylorMap, order: i64) -> Result<Reversion> {
    reversion(&f.centered_series(), order)
}

/// Inverse near infinity of `f(z) = b z + c0 + c1/z + ...`: returns `g` with
/// `f(g(w)) = w + O(w^(-order))`.
pub fn laurent_series_reversion(f: &FormalSeries, order: i64) -> Result<Reversion> {
    if f.truncation == Truncation::Above {
        return Err(Error::IncompatibleTruncation(
            "reversion at infinity needs a series at infinity".into(),
        ));
    }
    if order < 1 {
        return Err(Error::InvalidInput("reversion order must be >= 1".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    if f.hi() > 1 && (2..=f.hi()).any(|e| f.coeff(e) != Some(zero)) {
        return Err(Error::InvalidInput("series must have a simple pole".into()));
    }
    let b = f.coeff(1).unwrap_or(zero);
    if b == zero {
        return Err(Error::NonInvertible);
    }
    // f~(t) = 1/f(1/t) is an expansion at the origin with f~'(0) = 1/b.
    let margin = 3;
    let reflected = f.reflect().into_above(order + margin)?;
    let f_tilde = reflected.reciprocal()?;
    let g_tilde = reversion(&f_tilde, order + margin)?.series;
    let g = g_tilde.reciprocal()?.reflect().into_below(-order)?;
    let check = f.compose(&g)?.sub(&FormalSeries::identity())?;
    let residual = (-order..=1)
        .filter_map(|e| check.coeff(e))
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    Ok(Reversion {
        series: g,
        residual,
    })
}

pub fn laurent_reversion(f: &crate::maps::LaurentMap, order: i64) -> Result<Reversion> {
    laurent_series_reversion(&f.series(), order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn poly(lo: i64, cs: &[f64]) -> FormalSeries {
        FormalSeries::polynomial(lo, cs.iter().map(|x| c(*x)).collect())
    }

    fn assert_coeffs(s: &FormalSeries, lo: i64, expected: &[f64], tol: f64) {
        for (i, e) in expected.iter().enumerate() {
            let got = s.coeff(lo + i as i64).expect("coefficient determined");
            assert!(
                (got - c(*e)).norm() <= tol,
                "z^{}: got {got}, expected {e}",
                lo + i as i64
            );
        }
    }

    #[test]
    fn exact_products() {
        let p = poly(0, &[1.0, 1.0]).mul(&poly(0, &[1.0, -1.0])).unwrap();
        assert_eq!(p.truncation(), Truncation::Exact);
        assert_coeffs(&p, 0, &[1.0, 0.0, -1.0], 0.0);
        let q = poly(1, &[1.0, 1.0]).powi(2).unwrap();
        assert_eq!((q.lo(), q.hi()), (2, 4));
        assert_coeffs(&q, 2, &[1.0, 2.0, 1.0], 0.0);
    }

    #[test]
    fn truncated_product_window() {
        // (z + z^2 + O(z^3))^2 = z^2 + 2z^3 + O(z^4)
        let a = poly(1, &[1.0, 1.0]).into_above(2).unwrap();
        let p = a.mul(&a).unwrap();
        assert_eq!(p.truncation(), Truncation::Above);
        assert_eq!((p.lo(), p.hi()), (2, 3));
        assert_eq!(p.coeff(4), None);
        assert_eq!(p.coeff(1), Some(c(0.0)));
    }

    #[test]
    fn empty_window_is_an_error() {
        let a = FormalSeries::new(0, vec![c(0.0)], Truncation::Above).unwrap();
        let b = FormalSeries::new(-3, vec![c(1.0)], Truncation::Above).unwrap();
        // a = O(z), b has valuation -3 and is known only at z^-3:
        // the product is O(z^-2) with lowest stored exponent -3.
        let p = a.mul(&b).unwrap();
        assert_eq!((p.lo(), p.hi()), (-3, -3));
        let a2 = FormalSeries::new(0, vec![c(1.0)], Truncation::Above).unwrap();
        let b2 = FormalSeries::new(2, vec![c(1.0)], Truncation::Above).unwrap();
        // 1 + O(z) times z^2 + O(z^3): window [2, 2]
        assert_eq!(a2.mul(&b2).unwrap().hi(), 2);
        assert_eq!(
            FormalSeries::new(0, vec![], Truncation::Exact),
            Err(Error::TruncationExhausted)
        );
        // O(z^2) seen through [0, 1] leaves nothing once shifted below lo.
        let s = poly(0, &[1.0]).into_above(0).unwrap();
        assert_eq!(s.into_above(-1), Err(Error::TruncationExhausted));
    }

    #[test]
    fn mixed_orientations_are_rejected() {
        let a = poly(0, &[1.0, 1.0]).into_above(3).unwrap();
        let b = poly(-1, &[1.0, 1.0]).into_below(-3).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::IncompatibleTruncation(_))));
        assert!(matches!(a.add(&b), Err(Error::IncompatibleTruncation(_))));
    }

    #[test]
    fn composition_examples() {
        let outer = poly(2, &[1.0]);
        let inner = poly(1, &[1.0, 1.0]);
        let r = outer.compose(&inner).unwrap();
        assert_eq!(r.truncation(), Truncation::Exact);
        assert_coeffs(&r, 2, &[1.0, 2.0, 1.0], 0.0);
        let f = poly(1, &[2.0, -1.0, 0.5]).into_above(6).unwrap();
        let r = f.compose(&FormalSeries::identity()).unwrap();
        assert!(r.max_abs_diff(&f) == 0.0);
        assert_eq!(r.hi(), 6);
    }

    #[test]
    fn composition_rejects_bad_inner() {
        let outer = poly(0, &[1.0, 1.0]).into_above(4).unwrap();
        let inner = poly(0, &[1.0, 1.0]);
        assert!(matches!(
            outer.compose(&inner),
            Err(Error::IncompatibleTruncation(_))
        ));
    }

    #[test]
    fn reciprocal_series() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let s = poly(0, &[1.0, -1.0]).into_above(5).unwrap();
        let r = s.reciprocal().unwrap();
        assert_coeffs(&r, 0, &[1.0; 6], 1e-15);
        assert_eq!(r.hi(), 5);
        assert_eq!(poly(0, &[1.0, 1.0]).reciprocal(), Err(Error::Unbounded("reciprocal")));
        let m = poly(2, &[4.0]).reciprocal().unwrap();
        assert_eq!(m.coeff(-2), Some(c(0.25)));
    }

    #[test]
    fn reversion_examples() {
        let f = poly(1, &[2.0]);
        let g = reversion(&f, 5).unwrap();
        assert_coeffs(&g.series, 1, &[0.5, 0.0, 0.0, 0.0, 0.0], 1e-15);

        let f = poly(1, &[1.0, 1.0]);
        let g = reversion(&f, 4).unwrap();
        assert_coeffs(&g.series, 1, &[1.0, -1.0, 2.0, -5.0], 1e-13);
        assert!(g.residual < 1e-13);
        assert_eq!(g.series.coeff(5), None);

        // z/(1 - z) known through z^4
        let f = poly(1, &[1.0, 1.0, 1.0, 1.0]).into_above(4).unwrap();
        let g = reversion(&f, 4).unwrap();
        assert_coeffs(&g.series, 1, &[1.0, -1.0, 1.0, -1.0], 1e-13);
        // the cubic polynomial itself has no w^4 term in its inverse
        let g = reversion(&poly(1, &[1.0, 1.0, 1.0]), 4).unwrap();
        assert_coeffs(&g.series, 1, &[1.0, -1.0, 1.0, 0.0], 1e-13);
    }

    #[test]
    fn reversion_errors() {
        assert_eq!(reversion(&poly(1, &[0.0, 1.0]), 3).unwrap_err(), Error::NonInvertible);
        assert!(matches!(
            reversion(&poly(0, &[1.0, 1.0]), 3),
            Err(Error::InvalidInput(_))
        ));
        let short = poly(1, &[1.0, 1.0]).into_above(2).unwrap();
        assert!(matches!(
            reversion(&short, 5),
            Err(Error::InsufficientTruncation(_))
        ));
    }

    #[test]
    fn laurent_reversion_examples() {
        let f = poly(1, &[3.0]);
        let g = laurent_series_reversion(&f, 4).unwrap().series;
        assert_eq!(g.lo(), -4);
        assert!((g.coeff(1).unwrap() - c(1.0 / 3.0)).norm() < 1e-15);
        for e in -4..=0 {
            assert!(g.coeff(e).unwrap().norm() < 1e-15);
        }

        let cc = 0.3;
        let f = poly(-1, &[cc, 0.0, 1.0]);
        let r = laurent_series_reversion(&f, 4).unwrap();
        // w - c/w - c^2/w^3
        let g = &r.series;
        assert!((g.coeff(1).unwrap() - c(1.0)).norm() < 1e-14);
        assert!((g.coeff(-1).unwrap() - c(-cc)).norm() < 1e-14);
        assert!((g.coeff(-3).unwrap() - c(-cc * cc)).norm() < 1e-14);
        assert!(g.coeff(0).unwrap().norm() < 1e-14);
        assert!(g.coeff(-2).unwrap().norm() < 1e-14);
        assert!(r.residual < 1e-13);

        let f = poly(0, &[1.0, 1.0]);
        let g = laurent_series_reversion(&f, 5).unwrap().series;
        assert!((g.coeff(1).unwrap() - c(1.0)).norm() < 1e-14);
        assert!((g.coeff(0).unwrap() - c(-1.0)).norm() < 1e-14);
        for e in -5..0 {
            assert!(g.coeff(e).unwrap().norm() < 1e-13);
        }
    }

    #[test]
    fn log1p_examples() {
        assert!(FormalSeries::zero().log1p().unwrap().is_exact_zero());
        let u = poly(1, &[-1.0]).into_above(6).unwrap();
        let l = u.log1p().unwrap();
        for k in 1..=6 {
            assert!((l.coeff(k).unwrap() - c(-1.0 / k as f64)).norm() < 1e-15);
        }
        assert_eq!(l.coeff(7), None);
        let with_constant = poly(0, &[1.0, 1.0]).into_above(4).unwrap();
        assert_eq!(with_constant.log1p(), Err(Error::ConstantTerm));
        let at_infinity = poly(-2, &[1.0, 1.0]).into_below(-6).unwrap();
        let l = at_infinity.log1p().unwrap();
        assert_eq!(l.truncation(), Truncation::Below);
        assert!((l.coeff(-1).unwrap() - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_shifts_window() {
        let s = poly(0, &[1.0, 2.0, 3.0]).into_above(4).unwrap();
        let d = s.derivative();
        assert_eq!(d.hi(), 3);
        assert_coeffs(&d, 0, &[2.0, 6.0, 0.0, 0.0], 0.0);
    }
}
