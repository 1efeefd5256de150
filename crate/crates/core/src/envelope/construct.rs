use std::collections::HashMap;

use crate::rewriting::OperadElement;
use crate::tree::{Node, TreeEnumerator, TreeMonomial};

use super::{AlgebraPresentation, AlgebraQuotient, EnvelopeError, OperadPresentation, OperadQuotient};

/// An envelope operad whose generators are indexed by a basis of the algebra.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub presentation: OperadPresentation,
    /// `(weight, basis index)` of the algebra element behind each generator.
    pub sources: Vec<(usize, usize)>,
    pub arity_bound: usize,
}

impl Envelope {
    pub fn quotient(&self) -> OperadQuotient {
        self.presentation.quotient(self.arity_bound)
    }

    pub fn generators(&self) -> Vec<(u32, usize)> {
        self.presentation
            .arities()
            .iter()
            .enumerate()
            .map(|(l, &a)| (l as u32, a))
            .collect()
    }

    /// Weight of the algebra element behind generator `label`.
    pub fn weight_of(&self, label: u32) -> usize {
        self.sources[label as usize].0
    }
}

fn envelope(a: &AlgebraQuotient, arity_bound: usize, all_slots: bool) -> Result<Envelope, EnvelopeError> {
    let top = arity_bound.saturating_sub(1);
    if top > a.bound() {
        return Err(EnvelopeError::BoundTooSmall {
            what: "envelope",
            needed: top,
            available: a.bound(),
        });
    }
    let mut names = Vec::new();
    let mut arities = Vec::new();
    let mut sources = Vec::new();
    let mut label: HashMap<(usize, usize), u32> = HashMap::new();
    for w in 1..=top {
        for i in 0..a.dim(w) {
            label.insert((w, i), names.len() as u32);
            names.push(a.basis_name(w, i));
            arities.push(w + 1);
            sources.push((w, i));
        }
    }
    let corolla = |w: usize, i: usize| TreeMonomial::corolla(label[&(w, i)], w + 1);
    let mut relations = Vec::new();
    for w1 in 1..top {
        for w2 in 1..=top - w1 {
            for i in 0..a.dim(w1) {
                for j in 0..a.dim(w2) {
                    let inner = corolla(w2, j);
                    let first = corolla(w1, i).graft(1, &inner).expect("slot 1 exists");
                    let mut rel = OperadElement::monomial(first);
                    for (k, c) in a.product((w1, i), (w2, j))? {
                        rel.add_term(corolla(w1 + w2, k), -c);
                    }
                    relations.push(rel);
                    if all_slots {
                        for slot in 2..=w1 + 1 {
                            let t = corolla(w1, i).graft(slot, &inner).expect("slot within arity");
                            relations.push(OperadElement::monomial(t));
                        }
                    }
                }
            }
        }
    }
    let presentation = OperadPresentation::new(names, arities, relations).expect("envelope presentations are well formed");
    Ok(Envelope {
        presentation,
        sources,
        arity_bound,
    })
}

/// The max-envelope operad: generators a basis of `A⁺` up to arity
/// `arity_bound`, relations `a₁∘₁a₂ − a₁·a₂`.
pub fn u_max(a: &AlgebraQuotient, arity_bound: usize) -> Result<Envelope, EnvelopeError> {
    envelope(a, arity_bound, false)
}

/// The min-envelope operad: the relations of [`u_max`] together with
/// `a₁∘ᵢa₂` for every `i ≥ 2`.
pub fn u_min(a: &AlgebraQuotient, arity_bound: usize) -> Result<Envelope, EnvelopeError> {
    envelope(a, arity_bound, true)
}

fn quadratic_envelope(a: &AlgebraPresentation, all_slots: bool) -> Result<OperadPresentation, EnvelopeError> {
    if !a.is_quadratic() {
        return Err(EnvelopeError::NotQuadratic(
            "generators must have weight 1 and relations must be sums of two-letter words".into(),
        ));
    }
    let n = a.names().len() as u32;
    let comp = |x: u32, slot: usize, y: u32| {
        TreeMonomial::corolla(x, 2)
            .graft(slot, &TreeMonomial::corolla(y, 2))
            .expect("binary slot")
    };
    let mut relations: Vec<OperadElement> = a
        .relations()
        .iter()
        .map(|r| r.map_monomials(|w| comp(w[0], 1, w[1])))
        .collect();
    if all_slots {
        for x in 0..n {
            for y in 0..n {
                relations.push(OperadElement::monomial(comp(x, 2, y)));
            }
        }
    }
    Ok(OperadPresentation::new(a.names().to_vec(), vec![2; n as usize], relations).expect("binary presentation is well formed"))
}

/// Homogeneous quadratic presentation of the max-envelope of a quadratic
/// algebra: binary generators, relations `R` written with `∘₁`.
pub fn u_max_quadratic(a: &AlgebraPresentation) -> Result<OperadPresentation, EnvelopeError> {
    quadratic_envelope(a, false)
}

/// Homogeneous quadratic presentation of the min-envelope of a quadratic
/// algebra: the relations of [`u_max_quadratic`] and every `x∘₂y`.
pub fn u_min_quadratic(a: &AlgebraPresentation) -> Result<OperadPresentation, EnvelopeError> {
    quadratic_envelope(a, true)
}

/// Trees of arity `n` in which the leftmost input of every vertex is a leaf.
pub fn leftmost_leaf_trees(generators: &[(u32, usize)], n: usize) -> Vec<TreeMonomial> {
    let mut e = TreeEnumerator::new(generators.to_vec(), |t: &TreeMonomial| t.nodes()[1] == Node::Leaf);
    e.trees(n).to_vec()
}

/// The leftmost-leaf basis of `U_max(A)` in arity `n`.
pub fn u_max_basis(env: &Envelope, n: usize) -> Vec<TreeMonomial> {
    leftmost_leaf_trees(&env.generators(), n)
}
