use std::collections::HashMap;

use crate::linalg::Rational;
use crate::rewriting::{OperadElement, RewritingSystem, Trees};
use crate::tree::TreeMonomial;

use super::{EnvelopeError, MultiplicationTable, OperadPresentation};

/// A ns operad given by a completed tree rewriting system and the normal
/// tree monomials of each arity up to a bound.
#[derive(Debug, Clone)]
pub struct OperadQuotient {
    names: Vec<String>,
    system: RewritingSystem<Trees>,
    basis: Vec<Vec<TreeMonomial>>,
    index: Vec<HashMap<TreeMonomial, usize>>,
}

impl OperadQuotient {
    pub(super) fn new(pres: &OperadPresentation, kind: Trees, bound: usize) -> Self {
        let system = RewritingSystem::buchberger(kind, pres.relations(), bound);
        let basis = system.normal_basis(bound);
        let index = basis
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        OperadQuotient {
            names: pres.names().to_vec(),
            system,
            basis,
            index,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn system(&self) -> &RewritingSystem<Trees> {
        &self.system
    }

    pub fn bound(&self) -> usize {
        self.basis.len() - 1
    }

    /// Dimensions of arities `0..=bound`.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, arity: usize) -> usize {
        self.basis.get(arity).map_or(0, Vec::len)
    }

    pub fn basis(&self, arity: usize) -> &[TreeMonomial] {
        &self.basis[arity]
    }

    /// Generator name for a corolla, `1` for the unit, canonical text otherwise.
    pub fn basis_name(&self, arity: usize, i: usize) -> String {
        let t = &self.basis[arity][i];
        if t.is_unit() {
            return "1".into();
        }
        if t.weight() == 1 {
            return self.names[t.root_label().expect("corolla has a root") as usize].clone();
        }
        t.display(&self.names).to_string()
    }

    pub fn coordinates(&self, arity: usize, e: &OperadElement) -> Vec<(usize, Rational)> {
        self.system
            .reduce(e)
            .terms()
            .map(|(t, c)| (self.index[arity][t], c.clone()))
            .collect()
    }

    /// `x ∘_slot y` for basis elements `x = (n1, i)` and `y = (n2, j)`,
    /// in the basis of arity `n1 + n2 − 1`.
    pub fn compose(&self, (n1, i): (usize, usize), slot: usize, (n2, j): (usize, usize)) -> Result<Vec<(usize, Rational)>, EnvelopeError> {
        let n = n1 + n2 - 1;
        if n > self.bound() {
            return Err(EnvelopeError::BoundTooSmall {
                what: "composition",
                needed: n,
                available: self.bound(),
            });
        }
        let t = self.basis[n1][i]
            .graft(slot, &self.basis[n2][j])
            .expect("slot within the arity of a basis element");
        Ok(self.coordinates(n, &OperadElement::monomial(t)))
    }

    /// The algebra `A(P)`: weight `w` is arity `w + 1` and the product is `∘₁`.
    pub fn forget_to_algebra(&self, weight_bound: usize) -> Result<MultiplicationTable, EnvelopeError> {
        let available = self.system.complete_to().unwrap_or(0).min(self.bound());
        if weight_bound + 1 > available {
            return Err(EnvelopeError::BoundTooSmall {
                what: "forgetful algebra",
                needed: weight_bound + 1,
                available,
            });
        }
        let names: Vec<Vec<String>> = (0..=weight_bound)
            .map(|w| (0..self.dim(w + 1)).map(|i| self.basis_name(w + 1, i)).collect())
            .collect();
        MultiplicationTable::build(names, |(w1, i), (w2, j)| self.compose((w1 + 1, i), 1, (w2 + 1, j)))
    }
}
