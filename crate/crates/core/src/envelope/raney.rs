//! Raney sequences and the bijection between leftmost-leaf trees and
//! decomposable tensors with a good weight sequence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::Rational;
use crate::series::TruncatedSeries;
use crate::tree::{Node, TreeMonomial};

use super::EnvelopeError;

/// Non-negative integers `k₁..kₙ` with `Σ kᵢ = n − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RaneySequence(Vec<usize>);

impl RaneySequence {
    pub fn new(parts: Vec<usize>) -> Result<Self, EnvelopeError> {
        if parts.is_empty() {
            return Err(EnvelopeError::Raney("empty sequence".into()));
        }
        let sum: usize = parts.iter().sum();
        if sum + 1 != parts.len() {
            return Err(EnvelopeError::Raney(format!(
                "sum {sum} differs from length minus one ({})",
                parts.len() - 1
            )));
        }
        Ok(RaneySequence(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `k₁ + ⋯ + kᵢ ≥ i` for every `i < n`.
    pub fn is_good(&self) -> bool {
        is_good(&self.0)
    }

    pub fn rotate_left(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        let n = v.len();
        v.rotate_left(k % n);
        RaneySequence(v)
    }
}

fn is_good(parts: &[usize]) -> bool {
    let mut sum = 0;
    for (i, &k) in parts.iter().enumerate().take(parts.len().saturating_sub(1)) {
        sum += k;
        if sum < i + 1 {
            return false;
        }
    }
    true
}

/// Smallest `k` such that rotating left by `k` gives a good sequence.
pub fn raney_shift(s: &RaneySequence) -> usize {
    (0..s.len())
        .find(|&k| s.rotate_left(k).is_good())
        .expect("every Raney sequence has a good rotation")
}

/// Good sequences of length `n` whose parts `k` all satisfy `allowed(k)`, in
/// lexicographic order.
pub fn good_sequences(n: usize, allowed: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    fn go(n: usize, allowed: &dyn Fn(usize) -> bool, cur: &mut Vec<usize>, sum: usize, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == n {
            if sum + 1 == n {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = n - 1 - sum;
        for k in 0..=remaining {
            // After position i + 1 the partial sum must reach i + 1, except at the end.
            if i + 1 < n && sum + k < i + 1 {
                continue;
            }
            if !allowed(k) {
                continue;
            }
            cur.push(k);
            go(n, allowed, cur, sum + k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &allowed, &mut Vec::new(), 0, &mut out);
    }
    out
}

/// `Σ_{good k} Π dims[kᵢ]`, dims beyond the slice counted as zero.
pub fn weighted_good_count(dims: &[BigInt], n: usize) -> BigInt {
    let dim = |k: usize| dims.get(k).cloned().unwrap_or_else(BigInt::zero);
    good_sequences(n, |k| !dim(k).is_zero())
        .into_iter()
        .map(|s| s.into_iter().map(dim).product::<BigInt>())
        .sum()
}

/// `(1/n)[u^{n−1}] g(u)ⁿ` for a series with constant term 1.
pub fn lagrange_dimension(g: &TruncatedSeries, n: usize) -> Rational {
    assert!(n >= 1 && n <= g.order() + 1, "needs g up to u^(n-1)");
    g.truncate(n - 1).pow(n).coeff(n - 1) / Rational::from_integer(n.into())
}

/// Leaf `i` carries its parent's label when it is the parent's leftmost
/// input and the unit (`None`) otherwise.
pub fn raney_tensor(t: &TreeMonomial) -> Result<Vec<Option<u32>>, EnvelopeError> {
    let nodes = t.nodes();
    let mut out = Vec::with_capacity(t.arity());
    for (i, node) in nodes.iter().enumerate() {
        match *node {
            Node::Vertex { .. } => {
                if nodes[i + 1] != Node::Leaf {
                    return Err(EnvelopeError::NotLeftmostLeaf);
                }
            }
            Node::Leaf => {
                // The leftmost input of a vertex follows it directly in preorder.
                out.push(if i > 0 { nodes[i - 1].label() } else { None });
            }
        }
    }
    Ok(out)
}

/// Inverse of [`raney_tensor`]: grafts each non-unit factor at its own leaf,
/// left to right.
pub fn tree_from_tensor(v: &[Option<u32>], arity_of: impl Fn(u32) -> usize) -> Result<TreeMonomial, EnvelopeError> {
    let weights = tensor_weights(v, &arity_of);
    RaneySequence::new(weights.clone())?;
    if !is_good(&weights) {
        return Err(EnvelopeError::Raney(format!("weight sequence {weights:?} is not good")));
    }
    let mut t = TreeMonomial::unit();
    for (i, x) in v.iter().enumerate() {
        if let Some(l) = *x {
            t = t
                .graft(i + 1, &TreeMonomial::corolla(l, arity_of(l)))
                .expect("good sequences keep enough leaves");
        }
    }
    Ok(t)
}

/// Weight sequence of a tensor, units weighing zero.
pub fn tensor_weights(v: &[Option<u32>], arity_of: impl Fn(u32) -> usize) -> Vec<usize> {
    v.iter().map(|x| x.map_or(0, |l| arity_of(l) - 1)).collect()
}

/// Catalan numbers `C₀..C_max` as big integers.
pub fn catalan(max: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for n in 1..=max {
        let prev = &c[n - 1];
        c.push(prev * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n + 1));
    }
    c
}
