use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::linalg::{annihilator, span_basis, Matrix, Rational, Rationals};
use crate::rewriting::{WordElement};
use crate::series::TruncatedSeries;
use crate::tree::{Node, TreeEnumerator, TreeMonomial};

use super::{AlgebraPresentation, EnvelopeError, OperadPresentation};

/// Dimensions of the Koszul dual coalgebra of a quadratic algebra, with a
/// presentation of the dual algebra `T(V*)/(R^⊥)` of the same dimensions.
#[derive(Debug, Clone)]
pub struct DualAlgebra {
    /// `dim A¡(w)` for `w = 0..=bound`; weight `w` sits in homological degree `w`.
    pub dims: Vec<usize>,
    pub presentation: AlgebraPresentation,
    /// `Σ (−1)ʷ dim A¡(w) tʷ`.
    pub euler: TruncatedSeries,
}

fn require_quadratic_algebra(a: &AlgebraPresentation) -> Result<(), EnvelopeError> {
    if a.is_quadratic() {
        Ok(())
    } else {
        Err(EnvelopeError::NotQuadratic(
            "generators must have weight 1 and relations must be sums of two-letter words".into(),
        ))
    }
}

fn signed_series(order: usize, terms: impl IntoIterator<Item = (usize, usize, usize)>) -> TruncatedSeries {
    // (power, sign exponent, dimension)
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (k, s, d) in terms {
        if k <= order {
            let x = Rational::from_integer(d.into());
            coeffs[k] += if s % 2 == 0 { x } else { -x };
        }
    }
    TruncatedSeries::from_coeffs(order, coeffs)
}

/// The weight-`w` part of `A¡` is `⋂ᵢ V^{⊗i} ⊗ R ⊗ V^{⊗(w−i−2)}`, computed as
/// the common kernel of every `R^⊥` constraint placed at every position.
pub fn quadratic_dual_algebra(a: &AlgebraPresentation, weight_bound: usize) -> Result<DualAlgebra, EnvelopeError> {
    require_quadratic_algebra(a)?;
    let d = a.names().len();
    let f = Rationals;
    let relations: Vec<Vec<Rational>> = a
        .relations()
        .iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); d * d];
            for (w, c) in r.terms() {
                v[w[0] as usize * d + w[1] as usize] += c;
            }
            v
        })
        .collect();
    let r = span_basis(&f, &relations, d * d).expect("relation vectors have length d²");
    let perp = annihilator(&f, &r, d * d).expect("basis vectors have length d²");
    let mut dims = vec![1usize];
    for w in 1..=weight_bound {
        let cols = d.pow(w as u32);
        if w == 1 || perp.is_empty() {
            dims.push(cols);
            continue;
        }
        let mut triplets = Vec::new();
        let mut row = 0;
        for p in 0..w - 1 {
            let after = d.pow((w - p - 2) as u32);
            for phi in &perp {
                for prefix in 0..d.pow(p as u32) {
                    for suffix in 0..after {
                        for (ij, c) in phi.iter().enumerate() {
                            if !c.is_zero() {
                                let col = (prefix * d * d + ij) * after + suffix;
                                triplets.push((row, col, c.clone()));
                            }
                        }
                        row += 1;
                    }
                }
            }
        }
        let m = Matrix::from_triplets(f, row, cols, triplets);
        dims.push(cols - m.rank());
    }
    let dual_relations = perp
        .iter()
        .map(|phi| {
            WordElement::from_terms(
                phi.iter()
                    .enumerate()
                    .map(|(ij, c)| (vec![(ij / d) as u32, (ij % d) as u32], c.clone())),
            )
        })
        .collect();
    let presentation = AlgebraPresentation::new(a.names().to_vec(), vec![1; d], dual_relations)?;
    let euler = signed_series(weight_bound, dims.iter().enumerate().map(|(w, &n)| (w, w, n)));
    Ok(DualAlgebra {
        dims,
        presentation,
        euler,
    })
}

/// Dimensions of the Koszul dual cooperad of a quadratic operad.
#[derive(Debug, Clone, PartialEq)]
pub struct DualOperadDims {
    /// `(arity, weight) ↦ dim`, zero entries omitted; weight is also the homological degree.
    pub dims: BTreeMap<(usize, usize), usize>,
    pub arity_bound: usize,
    /// `Σ (−1)ʷ dim P¡(n, w) tⁿ`.
    pub euler: TruncatedSeries,
}

impl DualOperadDims {
    /// Total dimension in arity `n`.
    pub fn total(&self, n: usize) -> usize {
        self.dims.range((n, 0)..(n + 1, 0)).map(|(_, &d)| d).sum()
    }

    /// Weights carrying a nonzero part in arity `n`.
    pub fn weights(&self, n: usize) -> Vec<usize> {
        self.dims.range((n, 0)..(n + 1, 0)).map(|(&(_, w), _)| w).collect()
    }
}

const HOLE: u32 = u32::MAX;

/// `P¡(n)` inside `T(X)(n)`: combinations whose two-vertex piece at every
/// internal edge lies in `R`, i.e. the common kernel of `R^⊥` applied at
/// each edge of each tree shape. Each edge carries the suspension sign of
/// the bar differential, `(−1)^k` with `k` the vertices preceding the child.
pub fn quadratic_dual_operad_dims(p: &OperadPresentation, arity_bound: usize) -> Result<DualOperadDims, EnvelopeError> {
    if !p.is_quadratic() {
        return Err(EnvelopeError::NotQuadratic("every relation monomial must have two vertices".into()));
    }
    let f = Rationals;
    let generators: Vec<(u32, usize)> = p.arities().iter().enumerate().map(|(l, &a)| (l as u32, a)).collect();
    let mut free = TreeEnumerator::new(generators, |_: &TreeMonomial| true);

    // Two-vertex monomials and the annihilator of R, per arity.
    let mut local_index: HashMap<TreeMonomial, usize> = HashMap::new();
    let mut perp: HashMap<usize, Vec<Vec<Rational>>> = HashMap::new();
    let max_local = p.arities().iter().max().map_or(0, |a| 2 * a - 1).min(arity_bound);
    for m in 0..=max_local {
        let locals: Vec<TreeMonomial> = free.trees(m).iter().filter(|t| t.weight() == 2).cloned().collect();
        if locals.is_empty() {
            continue;
        }
        for (i, t) in locals.iter().enumerate() {
            local_index.insert(t.clone(), i);
        }
        let rel: Vec<Vec<Rational>> = p
            .relations()
            .iter()
            .filter(|r| r.monomials().next().is_some_and(|t| t.arity() == m))
            .map(|r| {
                let mut v = vec![Rational::zero(); locals.len()];
                for (t, c) in r.terms() {
                    v[local_index[t]] += c;
                }
                v
            })
            .collect();
        let r = span_basis(&f, &rel, locals.len()).expect("lengths match");
        perp.insert(m, annihilator(&f, &r, locals.len()).expect("lengths match"));
    }

    let mut dims = BTreeMap::new();
    for n in 1..=arity_bound {
        let mut by_weight: BTreeMap<usize, Vec<TreeMonomial>> = BTreeMap::new();
        for t in free.trees(n) {
            by_weight.entry(t.weight()).or_default().push(t.clone());
        }
        for (w, trees) in by_weight {
            let dim = if w <= 1 { trees.len() } else { constrained_dim(&trees, &local_index, &perp) };
            if dim > 0 {
                dims.insert((n, w), dim);
            }
        }
    }
    let euler = signed_series(arity_bound, dims.iter().map(|(&(n, w), &d)| (n, w, d)));
    Ok(DualOperadDims {
        dims,
        arity_bound,
        euler,
    })
}

fn constrained_dim(
    trees: &[TreeMonomial],
    local_index: &HashMap<TreeMonomial, usize>,
    perp: &HashMap<usize, Vec<Vec<Rational>>>,
) -> usize {
    let mut rows: HashMap<(TreeMonomial, usize), usize> = HashMap::new();
    let mut triplets = Vec::new();
    for (col, t) in trees.iter().enumerate() {
        for (parent, child, slot) in t.internal_edges() {
            let (pn, cn) = (t.nodes()[parent], t.nodes()[child]);
            let local = TreeMonomial::corolla(pn.label().expect("vertex"), pn.arity())
                .graft(slot, &TreeMonomial::corolla(cn.label().expect("vertex"), cn.arity()))
                .expect("slot within arity");
            let m = local.arity();
            let li = local_index[&local];
            let context = t.collapse_edge(parent, child, HOLE);
            let preceding = t.nodes()[..child].iter().filter(|n| **n != Node::Leaf).count();
            for (k, phi) in perp[&m].iter().enumerate() {
                if phi[li].is_zero() {
                    continue;
                }
                let next = rows.len();
                let r = *rows.entry((context.clone(), k)).or_insert(next);
                let entry = if preceding % 2 == 0 { phi[li].clone() } else { -phi[li].clone() };
                triplets.push((r, col, entry));
            }
        }
    }
    let m = Matrix::from_triplets(Rationals, rows.len(), trees.len(), triplets);
    trees.len() - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::series::check_backelin;

    fn one_generator(relations: Vec<WordElement>) -> AlgebraPresentation {
        AlgebraPresentation::new(vec!["x".into()], vec![1], relations).unwrap()
    }

    #[test]
    fn associative_operad_is_self_dual() {
        let d = quadratic_dual_operad_dims(&crate::catalog::associative(), 6).unwrap();
        for n in 1..=6 {
            assert_eq!(d.total(n), 1);
            assert_eq!(d.weights(n), vec![n - 1]);
        }
    }

    #[test]
    fn free_algebra_dual() {
        let a = one_generator(vec![]);
        let d = quadratic_dual_algebra(&a, 6).unwrap();
        assert_eq!(d.dims, vec![1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(d.euler, TruncatedSeries::from_integers(6, &[1, -1]));
        let g = a.quotient(6).hilbert_series();
        assert!(check_backelin(&g, &d.euler).unwrap().holds);
    }

    #[test]
    fn dual_numbers_dual() {
        let a = one_generator(vec![WordElement::monomial(vec![0, 0])]);
        let d = quadratic_dual_algebra(&a, 6).unwrap();
        assert_eq!(d.dims, vec![1; 7]);
        let g = a.quotient(6).hilbert_series();
        assert!(check_backelin(&g, &d.euler).unwrap().holds);
        // The dual algebra is free on one generator.
        assert!(d.presentation.relations().is_empty());
    }

    #[test]
    fn commutative_polynomials_dual_is_exterior() {
        let rel = WordElement::from_terms([(vec![0, 1], rat(1)), (vec![1, 0], rat(-1))]);
        let a = AlgebraPresentation::new(vec!["x".into(), "y".into()], vec![1, 1], vec![rel]).unwrap();
        let d = quadratic_dual_algebra(&a, 4).unwrap();
        assert_eq!(d.dims, vec![1, 2, 1, 0, 0]);
        assert_eq!(d.presentation.quotient(4).dims(), d.dims);
    }

    #[test]
    fn free_binary_operad_dual() {
        let p = OperadPresentation::new(vec!["m".into()], vec![2], vec![]).unwrap();
        let d = quadratic_dual_operad_dims(&p, 5).unwrap();
        assert_eq!(d.dims.len(), 2);
        assert_eq!(d.euler, TruncatedSeries::from_integers(5, &[0, 1, -1]));
    }

    #[test]
    fn non_quadratic_inputs_are_rejected() {
        let a = one_generator(vec![WordElement::monomial(vec![0, 0, 0])]);
        assert!(quadratic_dual_algebra(&a, 3).is_err());
    }
}
