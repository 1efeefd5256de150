//! Gröbner bases for ideals of free ns operads and free associative algebras.
//!
//! The engine is written once over [`MonomialKind`], which supplies the
//! monomial order, divisibility, substitution and overlaps; [`Trees`] and
//! [`Words`] are the two instances. Every completion is bounded: a system
//! built with bound `N` has all critical pairs of size at most `N` resolved,
//! where size is arity for trees and weighted degree for words.

mod combination;
pub mod operad;
pub mod word;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;

use num_traits::{One, Zero};

use crate::linalg::Rational;

pub use combination::Combination;
pub use operad::{OperadElement, Trees};
pub use word::{Word, WordElement, WordOrder, Words};

/// A family of monomials with a monomial order and divisibility structure.
pub trait MonomialKind: Clone + Send + Sync {
    type Mono: Clone + Ord + Hash + fmt::Debug + Send + Sync;
    type Key: Ord + Clone + fmt::Debug;
    type Occ: Clone + fmt::Debug;

    fn key(&self, m: &Self::Mono) -> Self::Key;
    /// Arity of a tree, weighted degree of a word.
    fn size(&self, m: &Self::Mono) -> usize;
    fn occurrence(&self, pattern: &Self::Mono, m: &Self::Mono) -> Option<Self::Occ>;
    /// Replaces the occurrence `occ` of a pattern inside `m` by `replacement`.
    fn substitute(&self, m: &Self::Mono, occ: &Self::Occ, replacement: &Self::Mono) -> Self::Mono;
    /// Small common multiples of `first` and `second`; for a rule paired with
    /// itself only the nontrivial self-overlaps are listed.
    fn overlaps(&self, first: &Self::Mono, second: &Self::Mono, same_rule: bool) -> Vec<Overlap<Self>>;
    /// Symbol any divisor's anchor must match (root label, first letter).
    fn anchor(&self, m: &Self::Mono) -> Option<u32>;
    /// All symbols occurring in a monomial.
    fn symbols(&self, m: &Self::Mono) -> Vec<u32>;
    fn format(&self, m: &Self::Mono, names: &[String]) -> String;
}

/// A common multiple together with the occurrences of both leading monomials.
#[derive(Debug, Clone)]
pub struct Overlap<K: MonomialKind + ?Sized> {
    pub multiple: K::Mono,
    pub first: K::Occ,
    pub second: K::Occ,
}

/// A relation made monic, oriented by its leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule<M: Ord> {
    pub leading: M,
    /// Full element, with coefficient 1 on `leading`.
    pub element: Combination<M>,
}

/// A critical pair whose S-polynomial does not reduce to zero.
#[derive(Debug, Clone)]
pub struct Survivor<M: Ord> {
    pub rules: (usize, usize),
    pub multiple: M,
    pub remainder: Combination<M>,
}

/// An ordered list of rewriting rules.
#[derive(Debug, Clone)]
pub struct RewritingSystem<K: MonomialKind> {
    kind: K,
    rules: Vec<Rule<K::Mono>>,
    by_anchor: BTreeMap<u32, Vec<usize>>,
    by_symbol: BTreeMap<u32, BTreeSet<usize>>,
    /// Size up to which all critical pairs are resolved, if completed.
    complete_to: Option<usize>,
}

impl<K: MonomialKind> RewritingSystem<K> {
    pub fn new(kind: K) -> Self {
        RewritingSystem {
            kind,
            rules: Vec::new(),
            by_anchor: BTreeMap::new(),
            by_symbol: BTreeMap::new(),
            complete_to: None,
        }
    }

    /// Takes the relations as rules without completing them. Zero and
    /// duplicate relations are dropped.
    pub fn from_relations(kind: K, relations: &[Combination<K::Mono>]) -> Self {
        let mut sys = Self::new(kind);
        let mut seen = BTreeSet::new();
        for r in relations {
            if let Some(rule) = sys.make_rule(r.clone()) {
                if seen.insert(rule.element.clone()) {
                    sys.push_rule(rule);
                }
            }
        }
        sys
    }

    /// Bounded Buchberger completion followed by inter-reduction.
    ///
    /// Critical pairs are processed by size of the common multiple, then by
    /// the monomial order of the multiple, then by rule indices.
    pub fn buchberger(kind: K, relations: &[Combination<K::Mono>], bound: usize) -> Self {
        let mut sys = Self::new(kind);
        let mut queue: BTreeMap<(usize, K::Key, usize, usize, usize), Overlap<K>> = BTreeMap::new();
        let mut seq = 0usize;
        let mut add = |sys: &mut Self, e: Combination<K::Mono>, queue: &mut BTreeMap<_, _>| {
            let reduced = sys.reduce(&e);
            let Some(rule) = sys.make_rule(reduced) else {
                return;
            };
            let k = sys.push_rule(rule);
            for j in sys.partners(k) {
                let (a, b) = (j.min(k), j.max(k));
                for ov in sys.kind.overlaps(&sys.rules[a].leading, &sys.rules[b].leading, a == b) {
                    let size = sys.kind.size(&ov.multiple);
                    if size <= bound {
                        queue.insert((size, sys.kind.key(&ov.multiple), a, b, seq), ov);
                        seq += 1;
                    }
                }
            }
        };
        for r in relations {
            add(&mut sys, r.clone(), &mut queue);
        }
        while let Some((id, ov)) = queue.pop_first() {
            let s = sys.s_polynomial(id.2, id.3, &ov);
            add(&mut sys, s, &mut queue);
        }
        sys.interreduce();
        sys.complete_to = Some(bound);
        sys
    }

    fn make_rule(&self, e: Combination<K::Mono>) -> Option<Rule<K::Mono>> {
        let leading = e.terms().map(|(m, _)| m).max_by_key(|m| self.kind.key(m))?.clone();
        let c = e.coeff(&leading);
        let element = if c.is_one() { e } else { e.scale(&c.recip()) };
        Some(Rule { leading, element })
    }

    fn push_rule(&mut self, rule: Rule<K::Mono>) -> usize {
        let k = self.rules.len();
        if let Some(a) = self.kind.anchor(&rule.leading) {
            self.by_anchor.entry(a).or_default().push(k);
        }
        for s in self.kind.symbols(&rule.leading) {
            self.by_symbol.entry(s).or_default().insert(k);
        }
        self.rules.push(rule);
        k
    }

    fn rebuild_index(&mut self) {
        let rules = std::mem::take(&mut self.rules);
        self.by_anchor.clear();
        self.by_symbol.clear();
        for r in rules {
            self.push_rule(r);
        }
    }

    /// Rules whose leading monomial can overlap with that of rule `k`.
    fn partners(&self, k: usize) -> BTreeSet<usize> {
        let lm = &self.rules[k].leading;
        let mut out = BTreeSet::new();
        for s in self.kind.symbols(lm) {
            if let Some(v) = self.by_anchor.get(&s) {
                out.extend(v.iter().copied());
            }
        }
        if let Some(a) = self.kind.anchor(lm) {
            if let Some(v) = self.by_symbol.get(&a) {
                out.extend(v.iter().copied());
            }
        }
        out
    }

    pub fn kind(&self) -> &K {
        &self.kind
    }

    pub fn rules(&self) -> &[Rule<K::Mono>] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn complete_to(&self) -> Option<usize> {
        self.complete_to
    }

    pub fn leading_monomials(&self) -> Vec<K::Mono> {
        self.rules.iter().map(|r| r.leading.clone()).collect()
    }

    /// First rule (by index) whose leading monomial divides `m`.
    pub fn find_divisor(&self, m: &K::Mono) -> Option<(usize, K::Occ)> {
        let mut candidates: Vec<usize> = Vec::new();
        let mut symbols = self.kind.symbols(m);
        symbols.sort_unstable();
        symbols.dedup();
        for s in symbols {
            if let Some(v) = self.by_anchor.get(&s) {
                candidates.extend(v.iter().copied());
            }
        }
        candidates.sort_unstable();
        candidates
            .into_iter()
            .find_map(|i| self.kind.occurrence(&self.rules[i].leading, m).map(|o| (i, o)))
    }

    pub fn is_normal(&self, m: &K::Mono) -> bool {
        self.find_divisor(m).is_none()
    }

    /// Full normal form: no monomial of the result is divisible by a leading
    /// monomial of the system.
    pub fn reduce(&self, e: &Combination<K::Mono>) -> Combination<K::Mono> {
        let mut work: BTreeMap<K::Key, (K::Mono, Rational)> = e
            .terms()
            .map(|(m, c)| (self.kind.key(m), (m.clone(), c.clone())))
            .collect();
        let mut result = Combination::zero();
        while let Some((_, (m, c))) = work.pop_last() {
            match self.find_divisor(&m) {
                None => result.add_term(m, c),
                Some((i, occ)) => {
                    let rule = &self.rules[i];
                    for (t, tc) in rule.element.terms() {
                        if *t == rule.leading {
                            continue;
                        }
                        let nm = self.kind.substitute(&m, &occ, t);
                        let delta = -(&c * tc);
                        let key = self.kind.key(&nm);
                        match work.get_mut(&key) {
                            Some(slot) => {
                                slot.1 += delta;
                                if slot.1.is_zero() {
                                    work.remove(&key);
                                }
                            }
                            None => {
                                work.insert(key, (nm, delta));
                            }
                        }
                    }
                }
            }
        }
        result
    }

    fn lift(&self, rule: usize, m: &K::Mono, occ: &K::Occ) -> Combination<K::Mono> {
        let mut out = Combination::zero();
        for (t, c) in self.rules[rule].element.terms() {
            out.add_term(self.kind.substitute(m, occ, t), c.clone());
        }
        out
    }

    fn s_polynomial(&self, i: usize, j: usize, ov: &Overlap<K>) -> Combination<K::Mono> {
        let a = self.lift(i, &ov.multiple, &ov.first);
        let b = self.lift(j, &ov.multiple, &ov.second);
        a.sub(&b)
    }

    /// Unreduced S-polynomials of rules `i` and `j`, one per overlap.
    pub fn s_polynomials(&self, i: usize, j: usize) -> Vec<(K::Mono, Combination<K::Mono>)> {
        let (a, b) = (i.min(j), i.max(j));
        self.kind
            .overlaps(&self.rules[a].leading, &self.rules[b].leading, a == b)
            .into_iter()
            .map(|ov| {
                let s = self.s_polynomial(a, b, &ov);
                (ov.multiple, s)
            })
            .collect()
    }

    /// Diamond Lemma check: every S-polynomial whose common multiple has size
    /// at most `bound` and which does not reduce to zero.
    pub fn critical_survivors(&self, bound: usize) -> Vec<Survivor<K::Mono>> {
        let mut out = Vec::new();
        for i in 0..self.rules.len() {
            for j in self.partners(i).into_iter().filter(|&j| j >= i) {
                for ov in self.kind.overlaps(&self.rules[i].leading, &self.rules[j].leading, i == j) {
                    if self.kind.size(&ov.multiple) > bound {
                        continue;
                    }
                    let remainder = self.reduce(&self.s_polynomial(i, j, &ov));
                    if !remainder.is_zero() {
                        out.push(Survivor {
                            rules: (i, j),
                            multiple: ov.multiple,
                            remainder,
                        });
                    }
                }
            }
        }
        out
    }

    /// Number of critical pairs of size at most `bound`.
    pub fn critical_pair_count(&self, bound: usize) -> usize {
        (0..self.rules.len())
            .map(|i| {
                self.partners(i)
                    .into_iter()
                    .filter(|&j| j >= i)
                    .map(|j| {
                        self.kind
                            .overlaps(&self.rules[i].leading, &self.rules[j].leading, i == j)
                            .iter()
                            .filter(|ov| self.kind.size(&ov.multiple) <= bound)
                            .count()
                    })
                    .sum::<usize>()
            })
            .sum()
    }

    /// Removes rules with reducible leading monomials and brings every tail
    /// into normal form, then sorts rules by their leading monomials.
    fn interreduce(&mut self) {
        loop {
            let redundant = (0..self.rules.len()).find(|&i| {
                let lm = &self.rules[i].leading;
                self.rules
                    .iter()
                    .enumerate()
                    .any(|(j, r)| j != i && self.kind.occurrence(&r.leading, lm).is_some())
            });
            let Some(i) = redundant else { break };
            let rule = self.rules.remove(i);
            self.rebuild_index();
            let rest = self.reduce(&rule.element);
            if let Some(r) = self.make_rule(rest) {
                self.push_rule(r);
            }
        }
        let mut rules = std::mem::take(&mut self.rules);
        rules.sort_by_key(|r| (self.kind.size(&r.leading), self.kind.key(&r.leading)));
        self.rules = rules;
        self.rebuild_index();
        let tails: Vec<Combination<K::Mono>> = self
            .rules
            .iter()
            .map(|r| {
                let mut tail = r.element.clone();
                tail.remove(&r.leading);
                self.reduce(&tail)
            })
            .collect();
        for (r, tail) in self.rules.iter_mut().zip(tails) {
            let mut e = tail;
            e.add_term(r.leading.clone(), Rational::one());
            r.element = e;
        }
    }

    /// Terms sorted from the largest monomial down.
    pub fn sorted_terms<'a>(&self, e: &'a Combination<K::Mono>) -> Vec<(&'a K::Mono, &'a Rational)> {
        let mut terms: Vec<_> = e.terms().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(self.kind.key(m)));
        terms
    }

    /// Text form of an element, leading term first, e.g. `a(a(*,*),*) - 2*b(*,*,*)`.
    pub fn format_element(&self, e: &Combination<K::Mono>, names: &[String]) -> String {
        let terms = self.sorted_terms(e);
        combination::format_terms(terms.into_iter(), |m| self.kind.format(m, names))
    }

    /// One line per rule, in the order of the system.
    pub fn dump(&self, names: &[String]) -> Vec<String> {
        self.rules
            .iter()
            .map(|r| self.format_element(&r.element, names))
            .collect()
    }
}
