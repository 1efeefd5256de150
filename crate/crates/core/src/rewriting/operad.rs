//! Tree monomials as a [`MonomialKind`].

use crate::tree::{MonomialOrder, Occurrence, OrderKey, TreeEnumerator, TreeMonomial};

use super::{Combination, MonomialKind, Overlap, RewritingSystem};

/// Linear combination of tree monomials of one arity.
pub type OperadElement = Combination<TreeMonomial>;

/// Free ns operad on labelled generators, ordered path-degree-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trees {
    /// Arity of each generator label.
    pub arities: Vec<usize>,
    pub order: MonomialOrder,
}

impl Trees {
    pub fn new(arities: Vec<usize>, order: MonomialOrder) -> Self {
        Trees { arities, order }
    }

    /// Generators ordered by declaration, the first one greatest.
    pub fn with_declaration_order(arities: Vec<usize>) -> Self {
        let order = MonomialOrder::declaration(arities.len());
        Trees { arities, order }
    }

    pub fn generators(&self) -> Vec<(u32, usize)> {
        self.arities
            .iter()
            .enumerate()
            .map(|(l, &a)| (l as u32, a))
            .collect()
    }
}

impl MonomialKind for Trees {
    type Mono = TreeMonomial;
    type Key = OrderKey;
    type Occ = Occurrence;

    fn key(&self, m: &TreeMonomial) -> OrderKey {
        self.order.key(m)
    }

    fn size(&self, m: &TreeMonomial) -> usize {
        m.arity()
    }

    fn occurrence(&self, pattern: &TreeMonomial, m: &TreeMonomial) -> Option<Occurrence> {
        let root = pattern.nodes()[0];
        (0..m.nodes().len())
            .filter(|&i| m.nodes()[i] == root)
            .find_map(|i| m.occurrence_at(pattern, i))
    }

    fn substitute(&self, m: &TreeMonomial, occ: &Occurrence, replacement: &TreeMonomial) -> TreeMonomial {
        m.substitute(occ, replacement)
    }

    fn overlaps(&self, first: &TreeMonomial, second: &TreeMonomial, same_rule: bool) -> Vec<Overlap<Self>> {
        let mut out = Vec::new();
        for p in first.vertex_positions() {
            if same_rule && p == 0 {
                continue;
            }
            if let Some(multiple) = first.overlap(p, second) {
                let a = multiple.occurrence_at(first, 0).expect("base occurs at the root");
                let b = multiple.occurrence_at(second, p).expect("top occurs at the overlap vertex");
                out.push(Overlap { multiple, first: a, second: b });
            }
        }
        if !same_rule {
            for p in second.vertex_positions().into_iter().skip(1) {
                if let Some(multiple) = second.overlap(p, first) {
                    let a = multiple.occurrence_at(first, p).expect("top occurs at the overlap vertex");
                    let b = multiple.occurrence_at(second, 0).expect("base occurs at the root");
                    out.push(Overlap { multiple, first: a, second: b });
                }
            }
        }
        out
    }

    fn anchor(&self, m: &TreeMonomial) -> Option<u32> {
        m.root_label()
    }

    fn symbols(&self, m: &TreeMonomial) -> Vec<u32> {
        let mut v: Vec<u32> = m.labels().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn format(&self, m: &TreeMonomial, names: &[String]) -> String {
        m.display(names).to_string()
    }
}

/// Count of normal monomials in one arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalCount {
    pub count: usize,
    /// False when the arity exceeds the bound the system was completed to,
    /// in which case the count is only an upper bound on the quotient dimension.
    pub within_bound: bool,
}

impl RewritingSystem<Trees> {
    /// Whether some leading monomial occurs rooted at the root of `t`.
    fn divisible_at_root(&self, t: &TreeMonomial) -> bool {
        let Some(root) = t.root_label() else {
            return false;
        };
        self.by_anchor
            .get(&root)
            .is_some_and(|v| v.iter().any(|&i| t.occurrence_at(&self.rules[i].leading, 0).is_some()))
    }

    /// Normal tree monomials of arities `0..=max_arity`, indexed by arity.
    pub fn normal_basis(&self, max_arity: usize) -> Vec<Vec<TreeMonomial>> {
        let mut e = TreeEnumerator::new(self.kind.generators(), |t: &TreeMonomial| !self.divisible_at_root(t));
        (0..=max_arity).map(|n| e.trees(n).to_vec()).collect()
    }

    pub fn normal_monomial_count(&self, arity: usize) -> NormalCount {
        let count = self.normal_basis(arity)[arity].len();
        NormalCount {
            count,
            within_bound: self.complete_to.is_some_and(|b| arity <= b),
        }
    }
}
