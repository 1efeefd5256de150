//! Bar complexes of weight graded algebras and ns operads, their homology,
//! Koszulness verdicts and the Koszul dual read off the diagonal.
//!
//! Bar factors and bar vertices carry one suspension each. Vertices are
//! ordered by planar preorder, and collapsing the edge above a vertex `v`
//! carries the sign `(−1)^k`, `k` the number of vertices preceding `v`. For
//! algebras this is `(−1)^{i−1}` for merging factors `i` and `i + 1`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::envelope::{AlgebraPresentation, AlgebraQuotient, EnvelopeError, OperadPresentation, OperadQuotient};
use crate::linalg::{LinalgError, Matrix, PrimeField, Rational, Rationals, DEFAULT_PRIME};
use crate::series::TruncatedSeries;
use crate::tree::{compositions, Node, TreeEnumerator, TreeMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarError {
    #[error("d∘d ≠ 0 at grade {n}, syzygy degree {s}")]
    NotAComplex { n: usize, s: usize },
    #[error(transparent)]
    Field(#[from] LinalgError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error("the diagonal is only defined for operads whose generators share one arity")]
    MixedArities,
}

/// Field used for rank computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomologyField {
    Rational,
    Prime(u64),
}

impl Default for HomologyField {
    fn default() -> Self {
        HomologyField::Prime(DEFAULT_PRIME)
    }
}

/// A complex graded by `n` (weight or arity) and syzygy degree `s`, with
/// `d(n, s): C(n, s) → C(n, s − 1)` stored with one row per source basis
/// element.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    bases: BTreeMap<(usize, usize), Vec<String>>,
    differentials: BTreeMap<(usize, usize), Matrix<Rationals>>,
    /// Syzygy degree of the diagonal in each grade, if any.
    diagonal: Vec<Option<usize>>,
}

impl ChainComplex {
    pub fn bound(&self) -> usize {
        self.diagonal.len() - 1
    }

    pub fn dim(&self, n: usize, s: usize) -> usize {
        self.bases.get(&(n, s)).map_or(0, Vec::len)
    }

    pub fn basis(&self, n: usize, s: usize) -> &[String] {
        self.bases.get(&(n, s)).map_or(&[], Vec::as_slice)
    }

    pub fn differential(&self, n: usize, s: usize) -> Option<&Matrix<Rationals>> {
        self.differentials.get(&(n, s))
    }

    pub fn diagonal(&self, n: usize) -> Option<usize> {
        self.diagonal.get(n).copied().flatten()
    }

    /// Nonempty `(n, s)` indices.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bases.iter().filter(|(_, b)| !b.is_empty()).map(|(&k, _)| k)
    }

    /// Exact check that `d(n, s − 1) ∘ d(n, s) = 0` everywhere.
    pub fn check_square_zero(&self) -> Result<(), BarError> {
        for (&(n, s), d) in &self.differentials {
            if s < 2 {
                continue;
            }
            if let Some(next) = self.differentials.get(&(n, s - 1)) {
                if !d.mul(next)?.is_zero() {
                    return Err(BarError::NotAComplex { n, s });
                }
            }
        }
        Ok(())
    }

    fn push(&mut self, n: usize, s: usize, basis: Vec<String>, d: Option<Matrix<Rationals>>) {
        self.bases.insert((n, s), basis);
        if let Some(d) = d {
            self.differentials.insert((n, s), d);
        }
    }
}

/// Homology dimensions of a [`ChainComplex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTable {
    pub chain: BTreeMap<(usize, usize), usize>,
    pub homology: BTreeMap<(usize, usize), usize>,
    pub diagonal: Vec<Option<usize>>,
}

impl HomologyTable {
    pub fn bound(&self) -> usize {
        self.diagonal.len() - 1
    }

    pub fn get(&self, n: usize, s: usize) -> usize {
        self.homology.get(&(n, s)).copied().unwrap_or(0)
    }

    fn alternating(map: &BTreeMap<(usize, usize), usize>, n: usize) -> i64 {
        map.range((n, 0)..(n + 1, 0))
            .map(|(&(_, s), &d)| if s % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn euler_chain(&self, n: usize) -> i64 {
        Self::alternating(&self.chain, n)
    }

    pub fn euler_homology(&self, n: usize) -> i64 {
        Self::alternating(&self.homology, n)
    }

    /// `Σₙ χ(n) tⁿ` truncated at the bound.
    pub fn euler_series(&self) -> TruncatedSeries {
        let b = self.bound();
        TruncatedSeries::from_coeffs(b, (0..=b).map(|n| Rational::from_integer(self.euler_homology(n).into())))
    }

    /// Nonzero homology off the diagonal, in index order.
    pub fn off_diagonal(&self) -> Vec<((usize, usize), usize)> {
        self.homology
            .iter()
            .filter(|(&(n, s), &d)| d > 0 && self.diagonal[n] != Some(s))
            .map(|(&k, &d)| (k, d))
            .collect()
    }

    /// `dim H(n, diagonal(n))` for `n = 0..=bound`.
    pub fn dual_from_diagonal(&self) -> Vec<usize> {
        (0..=self.bound())
            .map(|n| self.diagonal[n].map_or(0, |s| self.get(n, s)))
            .collect()
    }
}

/// Whether homology is concentrated on the diagonal up to the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulVerdict {
    pub holds: bool,
    pub bound: usize,
    /// First `(n, s)` off the diagonal with nonzero homology.
    pub offending: Option<(usize, usize)>,
}

pub fn koszulness_from_table(table: &HomologyTable) -> KoszulVerdict {
    let offending = table.off_diagonal().first().map(|&(k, _)| k);
    KoszulVerdict {
        holds: offending.is_none(),
        bound: table.bound(),
        offending,
    }
}

fn rank(m: &Matrix<Rationals>, field: HomologyField) -> Result<usize, BarError> {
    match field {
        HomologyField::Rational => Ok(m.rank()),
        HomologyField::Prime(p) => {
            let f = PrimeField::new(p)?;
            let g = f.clone();
            Ok(m.map_into(f, |x| crate::linalg::Field::from_rational(&g, x))?.rank())
        }
    }
}

/// `dim H(n, s) = dim C(n, s) − rank d(n, s) − rank d(n, s + 1)`, after
/// verifying `d∘d = 0` exactly.
pub fn homology_ranks(c: &ChainComplex, field: HomologyField) -> Result<HomologyTable, BarError> {
    c.check_square_zero()?;
    let mut ranks = HashMap::new();
    for (&k, d) in &c.differentials {
        ranks.insert(k, rank(d, field)?);
    }
    let mut chain = BTreeMap::new();
    let mut homology = BTreeMap::new();
    for (&(n, s), basis) in &c.bases {
        chain.insert((n, s), basis.len());
        let out = ranks.get(&(n, s)).copied().unwrap_or(0);
        let incoming = ranks.get(&(n, s + 1)).copied().unwrap_or(0);
        homology.insert((n, s), basis.len() - out - incoming);
    }
    Ok(HomologyTable {
        chain,
        homology,
        diagonal: c.diagonal.clone(),
    })
}

/// Bar complex of an algebra: tensors `[a₁|…|a_s]` of positive-weight
/// normal words with total weight `w ≤ weight_bound`.
pub fn bar_complex_algebra(a: &AlgebraQuotient, weight_bound: usize) -> Result<ChainComplex, BarError> {
    if weight_bound > a.bound() {
        return Err(EnvelopeError::BoundTooSmall {
            what: "algebra bar complex",
            needed: weight_bound,
            available: a.bound(),
        }
        .into());
    }
    let mut c = ChainComplex {
        bases: BTreeMap::new(),
        differentials: BTreeMap::new(),
        diagonal: (0..=weight_bound).map(Some).collect(),
    };
    c.push(0, 0, vec!["[]".into()], None);
    for w in 1..=weight_bound {
        let mut prev: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
        for s in 1..=w {
            let tensors = algebra_tensors(a, w, s);
            let index: HashMap<Vec<(usize, usize)>, usize> =
                tensors.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
            let labels = tensors
                .iter()
                .map(|t| {
                    let parts: Vec<String> = t.iter().map(|&(wt, i)| a.basis_name(wt, i)).collect();
                    format!("[{}]", parts.join("|"))
                })
                .collect();
            let d = (s >= 2).then(|| {
                let mut triplets = Vec::new();
                for (row, t) in tensors.iter().enumerate() {
                    for i in 0..s - 1 {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        let merged_weight = t[i].0 + t[i + 1].0;
                        for (k, coeff) in a.product(t[i], t[i + 1]).expect("within bound") {
                            let mut target = t[..i].to_vec();
                            target.push((merged_weight, k));
                            target.extend_from_slice(&t[i + 2..]);
                            triplets.push((row, prev[&target], coeff * Rational::from_integer(sign.into())));
                        }
                    }
                }
                Matrix::from_triplets(Rationals, tensors.len(), prev.len(), triplets)
            });
            c.push(w, s, labels, d);
            prev = index;
        }
    }
    Ok(c)
}

fn algebra_tensors(a: &AlgebraQuotient, w: usize, s: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for parts in compositions(w, s) {
        let sizes: Vec<usize> = parts.iter().map(|&p| a.dim(p)).collect();
        if sizes.contains(&0) {
            continue;
        }
        let mut idx = vec![0usize; s];
        'odometer: loop {
            out.push(parts.iter().zip(&idx).map(|(&p, &i)| (p, i)).collect());
            for pos in (0..s).rev() {
                idx[pos] += 1;
                if idx[pos] < sizes[pos] {
                    continue 'odometer;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    out
}

/// Bar complex of an operad: trees with `s` vertices labelled by normal
/// basis elements of arity at least 2, in arities `n ≤ arity_bound`.
///
/// The diagonal is defined when all generators have one arity `k`: there
/// weight and arity are tied by `n − 1 = w(k − 1)`, and the diagonal is `s = w`.
pub fn bar_complex_operad(p: &OperadQuotient, arity_bound: usize) -> Result<ChainComplex, BarError> {
    if arity_bound > p.bound() {
        return Err(EnvelopeError::BoundTooSmall {
            what: "operad bar complex",
            needed: arity_bound,
            available: p.bound(),
        }
        .into());
    }
    let arities = &p.system().kind().arities;
    let uniform = arities.first().filter(|&&k| arities.iter().all(|&a| a == k)).copied();
    let diagonal = (0..=arity_bound)
        .map(|n| match uniform {
            Some(k) if n >= 1 && (n - 1) % (k - 1) == 0 => Some((n - 1) / (k - 1)),
            _ => None,
        })
        .collect();

    // One bar label per normal basis element of arity ≥ 2.
    let mut labels: Vec<(usize, usize)> = Vec::new();
    let mut label_of: HashMap<(usize, usize), u32> = HashMap::new();
    for m in 2..=arity_bound {
        for i in 0..p.dim(m) {
            label_of.insert((m, i), labels.len() as u32);
            labels.push((m, i));
        }
    }
    let names: Vec<String> = labels.iter().map(|&(m, i)| format!("{{{}}}", p.basis_name(m, i))).collect();
    let gens: Vec<(u32, usize)> = labels.iter().enumerate().map(|(l, &(m, _))| (l as u32, m)).collect();
    let mut e = TreeEnumerator::new(gens, |_: &TreeMonomial| true);

    let mut c = ChainComplex {
        bases: BTreeMap::new(),
        differentials: BTreeMap::new(),
        diagonal,
    };
    for n in 1..=arity_bound {
        let mut by_s: BTreeMap<usize, Vec<TreeMonomial>> = BTreeMap::new();
        for t in e.trees(n) {
            by_s.entry(t.weight()).or_default().push(t.clone());
        }
        let max_s = by_s.keys().next_back().copied().unwrap_or(0);
        let mut prev: HashMap<TreeMonomial, usize> = HashMap::new();
        for s in 0..=max_s {
            let trees = by_s.remove(&s).unwrap_or_default();
            let index: HashMap<TreeMonomial, usize> = trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
            let basis = trees.iter().map(|t| t.display(&names).to_string()).collect();
            let d = (s >= 1).then(|| {
                let mut triplets = Vec::new();
                for (row, t) in trees.iter().enumerate() {
                    for (parent, child, slot) in t.internal_edges() {
                        let preceding = t.nodes()[..child].iter().filter(|n| **n != Node::Leaf).count();
                        let sign = Rational::from_integer(if preceding % 2 == 0 { 1 } else { -1 }.into());
                        let x = labels[t.nodes()[parent].label().expect("vertex") as usize];
                        let y = labels[t.nodes()[child].label().expect("vertex") as usize];
                        let m = x.0 + y.0 - 1;
                        for (k, coeff) in p.compose(x, slot, y).expect("within bound") {
                            let target = t.collapse_edge(parent, child, label_of[&(m, k)]);
                            triplets.push((row, prev[&target], &coeff * &sign));
                        }
                    }
                }
                Matrix::from_triplets(Rationals, trees.len(), prev.len(), triplets)
            });
            c.push(n, s, basis, d);
            prev = index;
        }
    }
    Ok(c)
}

/// Koszulness of a quadratic algebra up to `weight_bound`, with its homology table.
pub fn algebra_koszulness(
    a: &AlgebraPresentation,
    weight_bound: usize,
    field: HomologyField,
) -> Result<(HomologyTable, KoszulVerdict), BarError> {
    if !a.is_quadratic() {
        return Err(EnvelopeError::NotQuadratic("Koszulness is tested for quadratic algebras".into()).into());
    }
    let q = a.quotient(weight_bound);
    let table = homology_ranks(&bar_complex_algebra(&q, weight_bound)?, field)?;
    let verdict = koszulness_from_table(&table);
    Ok((table, verdict))
}

/// Koszulness of a quadratic operad with generators of one arity, up to `arity_bound`.
pub fn operad_koszulness(
    p: &OperadPresentation,
    arity_bound: usize,
    field: HomologyField,
) -> Result<(HomologyTable, KoszulVerdict), BarError> {
    if !p.is_quadratic() {
        return Err(EnvelopeError::NotQuadratic("Koszulness is tested for quadratic operads".into()).into());
    }
    if p.uniform_arity().is_none() && !p.arities().is_empty() {
        return Err(BarError::MixedArities);
    }
    let q = p.quotient(arity_bound);
    let table = homology_ranks(&bar_complex_operad(&q, arity_bound)?, field)?;
    let verdict = koszulness_from_table(&table);
    Ok((table, verdict))
}

/// Builds a complex directly from dimensions and matrices; `d[(n, s)]` maps
/// `C(n, s)` to `C(n, s − 1)`, one row per source basis element.
pub fn complex_from_matrices(
    dims: &BTreeMap<(usize, usize), usize>,
    d: BTreeMap<(usize, usize), Matrix<Rationals>>,
    diagonal: Vec<Option<usize>>,
) -> ChainComplex {
    let bases = dims
        .iter()
        .map(|(&(n, s), &k)| ((n, s), (0..k).map(|i| format!("e{n}_{s}_{i}")).collect()))
        .collect();
    ChainComplex {
        bases,
        differentials: d,
        diagonal,
    }
}
