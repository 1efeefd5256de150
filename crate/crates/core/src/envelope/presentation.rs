use crate::rewriting::{OperadElement, Trees, WordElement, WordOrder, Words};
use crate::tree::MonomialOrder;

use super::{AlgebraQuotient, EnvelopeError, OperadQuotient};

/// Generators with positive weights and weight-homogeneous relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    names: Vec<String>,
    weights: Vec<usize>,
    relations: Vec<WordElement>,
}

impl AlgebraPresentation {
    pub fn new(names: Vec<String>, weights: Vec<usize>, relations: Vec<WordElement>) -> Result<Self, EnvelopeError> {
        assert_eq!(names.len(), weights.len(), "one weight per generator");
        if let Some(k) = weights.iter().position(|&w| w == 0) {
            return Err(EnvelopeError::WeightZeroGenerator(names[k].clone()));
        }
        for (index, r) in relations.iter().enumerate() {
            let mut degrees = Vec::new();
            for w in r.monomials() {
                if w.iter().any(|&l| l as usize >= names.len()) {
                    return Err(EnvelopeError::UnknownGenerator(index));
                }
                degrees.push(w.iter().map(|&l| weights[l as usize]).sum::<usize>());
            }
            if let Some(&d) = degrees.iter().find(|&&d| d != degrees[0]) {
                return Err(EnvelopeError::Inhomogeneous {
                    index,
                    kind: "weights",
                    first: degrees[0],
                    second: d,
                });
            }
        }
        Ok(AlgebraPresentation {
            names,
            weights,
            relations,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn relations(&self) -> &[WordElement] {
        &self.relations
    }

    /// Weight-one generators and relations in words of length two.
    pub fn is_quadratic(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
            && self.relations.iter().all(|r| r.monomials().all(|w| w.len() == 2))
    }

    pub fn word_kind(&self) -> Words {
        Words::new(WordOrder::declaration(self.weights.clone()))
    }

    /// Quotient with normal words computed up to `weight_bound`.
    pub fn quotient(&self, weight_bound: usize) -> AlgebraQuotient {
        AlgebraQuotient::new(self, self.word_kind(), weight_bound)
    }

    pub fn quotient_with_order(&self, kind: Words, weight_bound: usize) -> AlgebraQuotient {
        AlgebraQuotient::new(self, kind, weight_bound)
    }
}

/// Generators of arity at least 2 and arity-homogeneous relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadPresentation {
    names: Vec<String>,
    arities: Vec<usize>,
    relations: Vec<OperadElement>,
}

impl OperadPresentation {
    pub fn new(names: Vec<String>, arities: Vec<usize>, relations: Vec<OperadElement>) -> Result<Self, EnvelopeError> {
        assert_eq!(names.len(), arities.len(), "one arity per generator");
        if let Some(k) = arities.iter().position(|&a| a < 2) {
            return Err(EnvelopeError::LowArityGenerator {
                name: names[k].clone(),
                arity: arities[k],
            });
        }
        for (index, r) in relations.iter().enumerate() {
            let mut found = Vec::new();
            for t in r.monomials() {
                let ok = t
                    .nodes()
                    .iter()
                    .all(|n| n.label().is_none_or(|l| (l as usize) < names.len() && arities[l as usize] == n.arity()));
                if !ok {
                    return Err(EnvelopeError::UnknownGenerator(index));
                }
                found.push(t.arity());
            }
            if let Some(&a) = found.iter().find(|&&a| a != found[0]) {
                return Err(EnvelopeError::Inhomogeneous {
                    index,
                    kind: "arities",
                    first: found[0],
                    second: a,
                });
            }
        }
        Ok(OperadPresentation {
            names,
            arities,
            relations,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn relations(&self) -> &[OperadElement] {
        &self.relations
    }

    /// Every relation monomial has exactly two vertices.
    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.monomials().all(|t| t.weight() == 2))
    }

    /// Common arity of all generators, if there is one.
    pub fn uniform_arity(&self) -> Option<usize> {
        let a = *self.arities.first()?;
        self.arities.iter().all(|&b| b == a).then_some(a)
    }

    pub fn tree_kind(&self) -> Trees {
        Trees::with_declaration_order(self.arities.clone())
    }

    /// Quotient with normal trees computed up to `arity_bound`.
    pub fn quotient(&self, arity_bound: usize) -> OperadQuotient {
        OperadQuotient::new(self, self.tree_kind(), arity_bound)
    }

    pub fn quotient_with_order(&self, order: MonomialOrder, arity_bound: usize) -> OperadQuotient {
        OperadQuotient::new(self, Trees::new(self.arities.clone(), order), arity_bound)
    }
}
