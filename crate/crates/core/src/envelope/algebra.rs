use std::collections::{BTreeMap, HashMap};

use crate::linalg::Rational;
use crate::rewriting::{RewritingSystem, Word, WordElement, Words};
use crate::series::TruncatedSeries;

use super::{AlgebraPresentation, EnvelopeError};

/// A weight graded algebra given by a completed word rewriting system and
/// the normal words of each weight up to a bound.
#[derive(Debug, Clone)]
pub struct AlgebraQuotient {
    names: Vec<String>,
    system: RewritingSystem<Words>,
    basis: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
}

impl AlgebraQuotient {
    pub(super) fn new(pres: &AlgebraPresentation, kind: Words, bound: usize) -> Self {
        let system = RewritingSystem::buchberger(kind, pres.relations(), bound);
        let basis = system.normal_words(bound);
        let index = basis
            .iter()
            .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        AlgebraQuotient {
            names: pres.names().to_vec(),
            system,
            basis,
            index,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn system(&self) -> &RewritingSystem<Words> {
        &self.system
    }

    pub fn bound(&self) -> usize {
        self.basis.len() - 1
    }

    /// Dimensions of weights `0..=bound`.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, weight: usize) -> usize {
        self.basis.get(weight).map_or(0, Vec::len)
    }

    pub fn basis(&self, weight: usize) -> &[Word] {
        &self.basis[weight]
    }

    /// Letters joined by `_`; the empty word is `1`.
    pub fn basis_name(&self, weight: usize, i: usize) -> String {
        let w = &self.basis[weight][i];
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.names[l as usize].as_str()).collect::<Vec<_>>().join("_")
    }

    /// Coordinates of the normal form of a homogeneous element of weight `weight`.
    pub fn coordinates(&self, weight: usize, e: &WordElement) -> Vec<(usize, Rational)> {
        self.system
            .reduce(e)
            .terms()
            .map(|(w, c)| (self.index[weight][w], c.clone()))
            .collect()
    }

    /// Product of basis elements `(w1, i)` and `(w2, j)` in the basis of weight `w1 + w2`.
    pub fn product(&self, (w1, i): (usize, usize), (w2, j): (usize, usize)) -> Result<Vec<(usize, Rational)>, EnvelopeError> {
        if w1 + w2 > self.bound() {
            return Err(EnvelopeError::BoundTooSmall {
                what: "product",
                needed: w1 + w2,
                available: self.bound(),
            });
        }
        let mut word = self.basis[w1][i].clone();
        word.extend_from_slice(&self.basis[w2][j]);
        Ok(self.coordinates(w1 + w2, &WordElement::monomial(word)))
    }

    /// Structure constants on normal bases, for total weight up to `weight_bound`.
    pub fn multiplication_table(&self, weight_bound: usize) -> Result<MultiplicationTable, EnvelopeError> {
        if weight_bound > self.bound() {
            return Err(EnvelopeError::BoundTooSmall {
                what: "multiplication table",
                needed: weight_bound,
                available: self.bound(),
            });
        }
        let names: Vec<Vec<String>> = (0..=weight_bound)
            .map(|w| (0..self.dim(w)).map(|i| self.basis_name(w, i)).collect())
            .collect();
        MultiplicationTable::build(names, |a, b| self.product(a, b))
    }

    /// Hilbert series `Σ dim A(w) tʷ` truncated at the bound.
    pub fn hilbert_series(&self) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.bound(), self.dims().into_iter().map(|d| Rational::from_integer(d.into())))
    }
}

/// Structure constants of a graded product, keyed by basis element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    /// Basis names per weight.
    pub names: Vec<Vec<String>>,
    /// `(x, y) ↦ x·y` as name ↦ coefficient, zero coefficients omitted.
    pub products: BTreeMap<(String, String), BTreeMap<String, Rational>>,
}

impl MultiplicationTable {
    pub(super) fn build(
        names: Vec<Vec<String>>,
        mut product: impl FnMut((usize, usize), (usize, usize)) -> Result<Vec<(usize, Rational)>, EnvelopeError>,
    ) -> Result<Self, EnvelopeError> {
        let bound = names.len() - 1;
        let mut products = BTreeMap::new();
        for w1 in 0..=bound {
            for w2 in 0..=bound - w1 {
                for i in 0..names[w1].len() {
                    for j in 0..names[w2].len() {
                        let terms = product((w1, i), (w2, j))?;
                        let value = terms
                            .into_iter()
                            .map(|(k, c)| (names[w1 + w2][k].clone(), c))
                            .collect();
                        products.insert((names[w1][i].clone(), names[w2][j].clone()), value);
                    }
                }
            }
        }
        Ok(MultiplicationTable { names, products })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }
}
