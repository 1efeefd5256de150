//! Words over weighted letters as a [`MonomialKind`], and the leading-term
//! selection scan for quadratic algebras.

use std::collections::BTreeSet;

use super::{Combination, MonomialKind, Overlap, RewritingSystem};

pub type Word = Vec<u32>;

/// Linear combination of words of one weighted degree.
pub type WordElement = Combination<Word>;

/// Degree-lexicographic order on words: weighted degree first, then letters
/// left to right by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordOrder {
    ranks: Vec<i64>,
    weights: Vec<usize>,
}

impl WordOrder {
    /// `greatest_first[0]` is the greatest letter.
    pub fn deglex(weights: Vec<usize>, greatest_first: &[u32]) -> Self {
        let mut ranks = vec![-1; weights.len()];
        for (k, &l) in greatest_first.iter().enumerate() {
            ranks[l as usize] = (greatest_first.len() - k) as i64;
        }
        WordOrder { ranks, weights }
    }

    pub fn declaration(weights: Vec<usize>) -> Self {
        let perm: Vec<u32> = (0..weights.len() as u32).collect();
        Self::deglex(weights, &perm)
    }

    pub fn degree(&self, w: &[u32]) -> usize {
        w.iter().map(|&l| self.weights[l as usize]).sum()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn key(&self, w: &[u32]) -> (usize, Vec<i64>) {
        (self.degree(w), w.iter().map(|&l| self.ranks[l as usize]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Words {
    pub order: WordOrder,
}

impl Words {
    pub fn new(order: WordOrder) -> Self {
        Words { order }
    }
}

/// Occurrence of a factor: start position and length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub start: usize,
    pub len: usize,
}

fn find_factor(pattern: &[u32], w: &[u32]) -> Option<usize> {
    if pattern.len() > w.len() {
        return None;
    }
    (0..=w.len() - pattern.len()).find(|&i| &w[i..i + pattern.len()] == pattern)
}

impl MonomialKind for Words {
    type Mono = Word;
    type Key = (usize, Vec<i64>);
    type Occ = Factor;

    fn key(&self, m: &Word) -> Self::Key {
        self.order.key(m)
    }

    fn size(&self, m: &Word) -> usize {
        self.order.degree(m)
    }

    fn occurrence(&self, pattern: &Word, m: &Word) -> Option<Factor> {
        find_factor(pattern, m).map(|start| Factor {
            start,
            len: pattern.len(),
        })
    }

    fn substitute(&self, m: &Word, occ: &Factor, replacement: &Word) -> Word {
        let mut out = Vec::with_capacity(m.len() - occ.len + replacement.len());
        out.extend_from_slice(&m[..occ.start]);
        out.extend_from_slice(replacement);
        out.extend_from_slice(&m[occ.start + occ.len..]);
        out
    }

    fn overlaps(&self, u: &Word, v: &Word, same_rule: bool) -> Vec<Overlap<Self>> {
        let mut out = Vec::new();
        let fac = |start, len| Factor { start, len };
        // Suffix of `x` equal to a proper prefix of `y`.
        let chain = |x: &Word, y: &Word, x_first: bool, out: &mut Vec<Overlap<Self>>| {
            for k in 1..x.len().min(y.len()) {
                if x[x.len() - k..] == y[..k] {
                    let mut multiple = x.clone();
                    multiple.extend_from_slice(&y[k..]);
                    let (ox, oy) = (fac(0, x.len()), fac(x.len() - k, y.len()));
                    let (first, second) = if x_first { (ox, oy) } else { (oy, ox) };
                    out.push(Overlap { multiple, first, second });
                }
            }
        };
        chain(u, v, true, &mut out);
        if !same_rule {
            chain(v, u, false, &mut out);
            if u.len() > v.len() {
                if let Some(s) = find_factor(v, u) {
                    out.push(Overlap { multiple: u.clone(), first: fac(0, u.len()), second: fac(s, v.len()) });
                }
            } else if v.len() > u.len() {
                if let Some(s) = find_factor(u, v) {
                    out.push(Overlap { multiple: v.clone(), first: fac(s, u.len()), second: fac(0, v.len()) });
                }
            }
        }
        out
    }

    fn anchor(&self, m: &Word) -> Option<u32> {
        m.first().copied()
    }

    fn symbols(&self, m: &Word) -> Vec<u32> {
        let mut v = m.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn format(&self, m: &Word, names: &[String]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter().map(|&l| names[l as usize].as_str()).collect::<Vec<_>>().join("*")
    }
}

impl RewritingSystem<Words> {
    /// Words of weighted degree `0..=max_degree` avoiding every leading
    /// monomial as a factor, indexed by degree and sorted by the order.
    pub fn normal_words(&self, max_degree: usize) -> Vec<Vec<Word>> {
        let weights = self.kind.order.weights().to_vec();
        let leading = self.leading_monomials();
        let mut by_degree: Vec<Vec<Word>> = vec![Vec::new(); max_degree + 1];
        let mut stack: Vec<Word> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            let d = self.kind.order.degree(&w);
            by_degree[d].push(w.clone());
            for (l, &wt) in weights.iter().enumerate() {
                if d + wt > max_degree {
                    continue;
                }
                let mut next = w.clone();
                next.push(l as u32);
                // Every proper prefix is already normal, so only suffixes can match.
                if !leading.iter().any(|lm| next.ends_with(lm)) {
                    stack.push(next);
                }
            }
        }
        for words in &mut by_degree {
            words.sort_by_key(|w| self.kind.order.key(w));
        }
        by_degree
    }

    pub fn word_normal_count(&self, degree: usize) -> usize {
        self.normal_words(degree)[degree].len()
    }
}

/// One row of the leading-term selection scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionRow {
    /// Chosen monomial of each relation.
    pub selection: Vec<Word>,
    /// Degree-3 words avoiding every chosen monomial.
    pub degree3_count: usize,
    /// Indices (into the permutation list) of the deglex orders whose
    /// leading monomials are exactly this selection.
    pub realized_by: Vec<usize>,
}

/// Every way of picking one monomial from each relation's support, with the
/// degree-3 dimension of the monomial algebra the picks define and the
/// deglex orders (one per generator permutation) realizing each pick.
pub fn leading_selection_scan(weights: &[usize], relations: &[WordElement]) -> (Vec<Vec<u32>>, Vec<SelectionRow>) {
    let n = weights.len() as u32;
    let permutations = permutations(n);
    let order_picks: Vec<Vec<Word>> = permutations
        .iter()
        .map(|perm| {
            let ord = WordOrder::deglex(weights.to_vec(), perm);
            relations
                .iter()
                .map(|r| r.monomials().max_by_key(|m| ord.key(m)).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    let supports: Vec<Vec<Word>> = relations.iter().map(|r| r.monomials().cloned().collect()).collect();
    let mut rows = Vec::new();
    let mut idx = vec![0usize; supports.len()];
    if supports.iter().any(Vec::is_empty) {
        return (permutations, rows);
    }
    loop {
        let selection: Vec<Word> = idx.iter().zip(&supports).map(|(&i, s)| s[i].clone()).collect();
        let relations: Vec<WordElement> = selection.iter().map(|w| WordElement::monomial(w.clone())).collect();
        let sys = RewritingSystem::from_relations(Words::new(WordOrder::declaration(weights.to_vec())), &relations);
        let degree3_count = count_avoiding(weights, &sys.leading_monomials(), 3);
        let realized_by = order_picks
            .iter()
            .enumerate()
            .filter(|(_, pick)| **pick == selection)
            .map(|(k, _)| k)
            .collect();
        rows.push(SelectionRow {
            selection,
            degree3_count,
            realized_by,
        });
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return (permutations, rows);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < supports[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Words of weighted degree `degree` with no factor in `forbidden`.
pub fn count_avoiding(weights: &[usize], forbidden: &[Word], degree: usize) -> usize {
    let forbidden: BTreeSet<&Word> = forbidden.iter().collect();
    let mut count = 0;
    let mut stack: Vec<(Word, usize)> = vec![(Vec::new(), 0)];
    while let Some((w, d)) = stack.pop() {
        if d == degree {
            count += 1;
            continue;
        }
        for (l, &wt) in weights.iter().enumerate() {
            if d + wt > degree {
                continue;
            }
            let mut next = w.clone();
            next.push(l as u32);
            if !forbidden.iter().any(|f| next.ends_with(f)) {
                stack.push((next, d + wt));
            }
        }
    }
    count
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn el(terms: &[(&[u32], i64)]) -> WordElement {
        WordElement::from_terms(terms.iter().map(|(w, c)| (w.to_vec(), rat(*c))))
    }

    fn sklyanin() -> Vec<WordElement> {
        // a = 0, b = 1, c = 2
        vec![
            el(&[(&[0, 1], 1), (&[1, 0], -1), (&[2, 2], -1)]),
            el(&[(&[1, 2], 1), (&[2, 1], -1), (&[0, 0], -1)]),
            el(&[(&[2, 0], 1), (&[0, 2], -1), (&[1, 1], -1)]),
        ]
    }

    #[test]
    fn sklyanin_dimensions() {
        let kind = Words::new(WordOrder::declaration(vec![1, 1, 1]));
        let sys = RewritingSystem::buchberger(kind, &sklyanin(), 3);
        let counts: Vec<usize> = (0..=3).map(|d| sys.word_normal_count(d)).collect();
        assert_eq!(counts, vec![1, 3, 6, 10]);
    }

    #[test]
    fn monomial_relation_avoids_factor() {
        let kind = Words::new(WordOrder::declaration(vec![1, 1]));
        let sys = RewritingSystem::buchberger(kind, &[el(&[(&[0, 1], 1)])], 5);
        assert_eq!(sys.len(), 1);
        // Words avoiding xy are y^i x^j: d + 1 of them.
        let counts: Vec<usize> = (0..=5).map(|d| sys.word_normal_count(d)).collect();
        assert_eq!(counts, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn nilpotent_generator() {
        let kind = Words::new(WordOrder::declaration(vec![1]));
        let sys = RewritingSystem::buchberger(kind, &[el(&[(&[0, 0], 1)])], 5);
        let counts: Vec<usize> = (0..=5).map(|d| sys.word_normal_count(d)).collect();
        assert_eq!(counts, vec![1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn commutativity_completes() {
        // xy − yx with x > y: normal words y^i x^j, dims d + 1.
        let kind = Words::new(WordOrder::declaration(vec![1, 1]));
        let sys = RewritingSystem::buchberger(kind, &[el(&[(&[0, 1], 1), (&[1, 0], -1)])], 6);
        assert_eq!(sys.word_normal_count(6), 7);
        assert!(sys.critical_survivors(6).is_empty());
    }

    #[test]
    fn sklyanin_selection_scan() {
        let (perms, rows) = leading_selection_scan(&[1, 1, 1], &sklyanin());
        assert_eq!(perms.len(), 6);
        assert_eq!(rows.len(), 27);
        let abc = rows.iter().find(|r| r.realized_by.contains(&0)).unwrap();
        assert_eq!(abc.selection, vec![vec![0, 1], vec![0, 0], vec![0, 2]]);
        assert_eq!(abc.degree3_count, 12);
        for k in 0..6 {
            let row = rows.iter().find(|r| r.realized_by.contains(&k)).unwrap();
            assert_eq!(row.degree3_count, 12, "order {:?}", perms[k]);
        }
    }

    #[test]
    fn monomial_algebra_scan_is_single_row() {
        let rels = vec![el(&[(&[0, 1], 1)]), el(&[(&[1, 1], 1)])];
        let (_, rows) = leading_selection_scan(&[1, 1], &rels);
        assert_eq!(rows.len(), 1);
        let kind = Words::new(WordOrder::declaration(vec![1, 1]));
        let sys = RewritingSystem::buchberger(kind, &rels, 3);
        assert_eq!(rows[0].degree3_count, sys.word_normal_count(3));
        assert_eq!(rows[0].realized_by.len(), 2);
    }

    #[test]
    fn word_overlaps() {
        let kind = Words::new(WordOrder::declaration(vec![1, 1]));
        let ov = kind.overlaps(&vec![0, 0], &vec![0, 0], true);
        assert_eq!(ov.len(), 1);
        assert_eq!(ov[0].multiple, vec![0, 0, 0]);
        let ov = kind.overlaps(&vec![0, 1], &vec![1, 0], false);
        let mults: Vec<Word> = ov.into_iter().map(|o| o.multiple).collect();
        assert_eq!(mults, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert!(kind.overlaps(&vec![0, 0], &vec![1, 1], false).is_empty());
    }

    #[test]
    fn brute_force_selection_count() {
        // Words of length 3 over {a,b,c} with no factor ab, aa or ac.
        let mut brute = 0;
        for w in 0..27u32 {
            let letters = [w / 9, (w / 3) % 3, w % 3];
            let bad = letters.windows(2).any(|p| p[0] == 0);
            if !bad {
                brute += 1;
            }
        }
        assert_eq!(brute, 12);
        assert_eq!(count_avoiding(&[1, 1, 1], &[vec![0, 1], vec![0, 0], vec![0, 2]], 3), 12);
    }
}
