use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

/// Sparse linear combination of monomials with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Combination<M: Ord> {
    terms: BTreeMap<M, Rational>,
}

impl<M: Ord> Default for Combination<M> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Ord + Clone> Combination<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: M) -> Self {
        let mut c = Self::zero();
        c.add_term(m, Rational::one());
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (M, Rational)>) -> Self {
        let mut c = Self::zero();
        for (m, x) in terms {
            c.add_term(m, x);
        }
        c
    }

    pub fn add_term(&mut self, m: M, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn remove(&mut self, m: &M) -> Option<Rational> {
        self.terms.remove(m)
    }

    pub fn coeff(&self, m: &M) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &M> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Combination {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, x) in other.terms() {
            out.add_term(m.clone(), x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, x) in other.terms() {
            out.add_term(m.clone(), -x);
        }
        out
    }

    /// Applies `f` to every monomial, collecting like terms.
    pub fn map_monomials<N: Ord + Clone>(&self, mut f: impl FnMut(&M) -> N) -> Combination<N> {
        Combination::from_terms(self.terms.iter().map(|(m, x)| (f(m), x.clone())))
    }
}

/// Renders `c1*m1 + c2*m2 - …` with unit coefficients omitted.
pub(crate) fn format_terms<'a, M: 'a>(
    terms: impl Iterator<Item = (&'a M, &'a Rational)>,
    mut show: impl FnMut(&M) -> String,
) -> String {
    let mut out = String::new();
    for (k, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push('*');
        }
        out.push_str(&show(m));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn like_terms_cancel() {
        let mut c = Combination::monomial("x");
        c.add_term("y", rat(2));
        c.add_term("x", rat(-1));
        assert_eq!(c.len(), 1);
        assert_eq!(c.coeff(&"y"), rat(2));
        assert!(c.sub(&c).is_zero());
        assert!(c.scale(&rat(0)).is_zero());
    }

    #[test]
    fn formatting() {
        let c = Combination::from_terms([("a", rat(1)), ("b", rat(-3))]);
        let s = format_terms(c.terms(), |m| m.to_string());
        assert_eq!(s, "a - 3*b");
        assert_eq!(format_terms(Combination::<&str>::zero().terms(), |m| m.to_string()), "0");
    }
}
