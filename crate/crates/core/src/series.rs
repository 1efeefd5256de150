//! Truncated formal power series with exact rational coefficients.
//!
//! The ring is sign-agnostic: Euler-characteristic signs are folded into the
//! coefficients by whoever builds the series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{rat, Rational};

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("composition f(g) is undefined: g has nonzero constant term")]
    CompositionUndefined,
    #[error("series has no compositional inverse: {0}")]
    NoInverse(&'static str),
    #[error("{0}")]
    Input(String),
}

/// A power series `Σ c_k t^k` known modulo `t^(N+1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rational::one())
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::monomial(order, 1, Rational::one())
    }

    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients beyond the truncation order are dropped, missing ones are zero.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| rat(c)))
    }

    /// `Σ_{k≥0} t^k`.
    pub fn geometric(order: usize) -> Self {
        Self::from_coeffs(order, std::iter::repeat(Rational::one()))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Same series viewed at a smaller or larger truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product modulo `t^(N+1)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::Input("reciprocal of a series with zero constant term".into()));
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = Self::zero(n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out.coeffs[k - j];
            }
            out.coeffs[k] = -s * &inv0;
        }
        Ok(out)
    }

    /// `f(g(t))` by Horner evaluation in the truncated ring.
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        self.check_order(g)?;
        if !g.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionUndefined);
        }
        let n = self.order();
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * g;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `f(λt)`.
    pub fn rescale(&self, lambda: &Rational) -> Self {
        let mut p = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &p;
                p *= lambda;
                v
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Compositional inverse `g` with `f(g(t)) = g(f(t)) = t`.
    ///
    /// The series is first made monic by `f = λ·f̃`; the inverse of `f̃` is
    /// built coefficient by coefficient, and `f⁻¹(t) = f̃⁻¹(t/λ)`.
    pub fn invert_composition(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NoInverse("nonzero constant term"));
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let lambda = self.coeffs[1].clone();
        if lambda.is_zero() {
            return Err(SeriesError::NoInverse("zero linear coefficient"));
        }
        let monic = self.scale(&lambda.recip());
        // For monic f and g = t + g_2 t² + ⋯, [t^k] f(g) = g_k + (terms in g_2..g_{k−1}).
        let mut g = Self::t(n);
        for k in 2..=n {
            let c = monic.compose(&g)?.coeffs[k].clone();
            g.coeffs[k] = -c;
        }
        Ok(g.rescale(&lambda.recip()))
    }

    /// `[t^n] f^⟨−1⟩` through `(1/n)·[u^(n−1)] (u/f(u))^n`.
    pub fn lagrange_coefficient(&self, n: usize) -> Result<Rational, SeriesError> {
        if n == 0 {
            return Err(SeriesError::Input("coefficient index must be at least 1".into()));
        }
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::Input("series has a nonzero constant term".into()));
        }
        let order = self.order();
        if order == 0 || self.coeffs[1].is_zero() {
            return Err(SeriesError::Input("linear coefficient must be nonzero".into()));
        }
        if n > order {
            return Err(SeriesError::Input(format!(
                "index {n} exceeds the truncation order {order}"
            )));
        }
        // f(u)/u is known modulo u^N.
        let quotient = Self::from_coeffs(order - 1, self.coeffs[1..].iter().cloned());
        let ratio = quotient.reciprocal()?;
        let c = ratio.pow(n).coeff(n - 1);
        Ok(c / rat(n as i64))
    }
}

/// Outcome of a functional-equation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Smallest power of `t` at which the identity fails.
    pub first_failure: Option<usize>,
}

impl Verdict {
    fn compare(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Self {
        let first_failure = (0..=lhs.order()).find(|&k| lhs.coeff(k) != rhs.coeff(k));
        Verdict {
            holds: first_failure.is_none(),
            first_failure,
        }
    }
}

/// Checks `g_P(g_{P¡}(t)) = t`.
pub fn check_gk(operad: &TruncatedSeries, dual: &TruncatedSeries) -> Result<Verdict, SeriesError> {
    if !operad.coeff(0).is_zero() || !dual.coeff(0).is_zero() {
        return Err(SeriesError::Input("operad series must vanish at t = 0".into()));
    }
    let composite = operad.compose(dual)?;
    Ok(Verdict::compare(&composite, &TruncatedSeries::t(operad.order())))
}

/// Checks `g_A(t) · g_{A¡}(t) = 1`.
pub fn check_backelin(algebra: &TruncatedSeries, dual: &TruncatedSeries) -> Result<Verdict, SeriesError> {
    if !algebra.coeff(0).is_one() || !dual.coeff(0).is_one() {
        return Err(SeriesError::Input("algebra series must have constant term 1".into()));
    }
    let product = algebra.try_mul(dual)?;
    Ok(Verdict::compare(&product, &TruncatedSeries::one(algebra.order())))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> $tr<&'a TruncatedSeries> for &'a TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
                self.$inner(rhs).expect("operands share a truncation order")
            }
        }
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn s(order: usize, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_integers(order, c)
    }

    #[test]
    fn products() {
        assert_eq!(&s(6, &[1, 1]) * &s(6, &[1, -1]), s(6, &[1, 0, -1]));
        let f = s(6, &[2, 0, 3, -1]);
        assert_eq!(&f * &TruncatedSeries::one(6), f);
        assert_eq!(&TruncatedSeries::geometric(9) * &s(9, &[1, -1]), TruncatedSeries::one(9));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        assert_eq!(
            s(3, &[1]).try_mul(&s(4, &[1])),
            Err(SeriesError::TruncationMismatch(3, 4))
        );
        assert!(s(3, &[1]).try_add(&s(2, &[1])).is_err());
    }

    #[test]
    fn compose_examples() {
        let f = s(8, &[3, 1, 4, 1, 5]);
        assert_eq!(f.compose(&TruncatedSeries::t(8)).unwrap(), f);
        assert_eq!(s(8, &[0, 0, 1]).compose(&s(8, &[0, 1, 1])).unwrap(), s(8, &[0, 0, 1, 2, 1]));
        assert_eq!(f.compose(&s(8, &[1, 1])), Err(SeriesError::CompositionUndefined));
    }

    #[test]
    fn catalan_inverse() {
        let g = s(5, &[0, 1, -1]).invert_composition().unwrap();
        assert_eq!(g, s(5, &[0, 1, 1, 2, 5, 14]));
        assert_eq!(TruncatedSeries::t(5).invert_composition().unwrap(), TruncatedSeries::t(5));
    }

    #[test]
    fn inverse_of_geometric_shift() {
        // t/(1−t) has inverse t/(1+t).
        let f = &TruncatedSeries::t(7) * &TruncatedSeries::geometric(7);
        let g = f.invert_composition().unwrap();
        assert_eq!(g, s(7, &[0, 1, -1, 1, -1, 1, -1, 1]));
        assert_eq!(f.compose(&g).unwrap(), TruncatedSeries::t(7));
    }

    #[test]
    fn non_monic_inverse() {
        let f = s(6, &[0, 2, 3, -1]);
        let g = f.invert_composition().unwrap();
        assert_eq!(f.compose(&g).unwrap(), TruncatedSeries::t(6));
        assert_eq!(g.compose(&f).unwrap(), TruncatedSeries::t(6));
        assert_eq!(g.coeff(1), ratio(1, 2));
    }

    #[test]
    fn inverse_preconditions() {
        assert!(matches!(s(4, &[1, 1]).invert_composition(), Err(SeriesError::NoInverse(_))));
        assert!(matches!(s(4, &[0, 0, 1]).invert_composition(), Err(SeriesError::NoInverse(_))));
    }

    #[test]
    fn lagrange_examples() {
        assert_eq!(s(8, &[0, 1, -1]).lagrange_coefficient(4).unwrap(), rat(5));
        assert_eq!(s(8, &[0, 1, 7, -3]).lagrange_coefficient(1).unwrap(), rat(1));
        assert!(s(8, &[0, 1, -1]).lagrange_coefficient(0).is_err());
        assert!(s(8, &[0, 1, -1]).lagrange_coefficient(9).is_err());
        assert!(s(8, &[1, 1]).lagrange_coefficient(2).is_err());
        assert!(s(8, &[0, 0, 1]).lagrange_coefficient(2).is_err());
    }

    #[test]
    fn gk_examples() {
        let n = 10;
        let assoc = &TruncatedSeries::t(n) * &TruncatedSeries::geometric(n);
        let dual = assoc.compose(&-&TruncatedSeries::t(n)).unwrap().scale(&rat(-1));
        assert_eq!(dual, s(n, &[0, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1]));
        assert!(check_gk(&assoc, &dual).unwrap().holds);
        let id = TruncatedSeries::t(n);
        assert!(check_gk(&id, &id).unwrap().holds);
        let bad = s(n, &[0, 1, 1]);
        assert_eq!(
            check_gk(&bad, &bad).unwrap(),
            Verdict { holds: false, first_failure: Some(2) }
        );
    }

    #[test]
    fn backelin_examples() {
        let n = 10;
        assert!(check_backelin(&TruncatedSeries::geometric(n), &s(n, &[1, -1])).unwrap().holds);
        assert!(check_backelin(&TruncatedSeries::one(n), &TruncatedSeries::one(n)).unwrap().holds);
        let v = check_backelin(&s(n, &[1, 1]), &s(n, &[1, 1])).unwrap();
        assert_eq!(v.first_failure, Some(1));
        assert!(check_backelin(&s(n, &[0, 1]), &s(n, &[1])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(s(3, &[0, 1, -1]).to_string(), "t - t^2 + O(t^4)");
        assert_eq!(TruncatedSeries::zero(2).to_string(), "0 + O(t^3)");
        let f = TruncatedSeries::from_coeffs(2, vec![ratio(-1, 2), rat(0), rat(3)]);
        assert_eq!(f.to_string(), "-1/2 + 3*t^2 + O(t^3)");
    }
}
