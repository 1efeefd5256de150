#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nsop::envelope::{AlgebraPresentation, OperadPresentation};
use nsop::linalg::{rat, Rational};
use nsop::rewriting::{OperadElement, WordElement};
use nsop::tree::{Node, TreeEnumerator, TreeMonomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree with `vertices` vertices over generators of the given arities.
pub fn random_tree(rng: &mut impl Rng, arities: &[usize], vertices: usize) -> TreeMonomial {
    let mut t = TreeMonomial::unit();
    for _ in 0..vertices {
        let label = rng.gen_range(0..arities.len());
        let slot = rng.gen_range(1..=t.arity());
        t = t
            .graft(slot, &TreeMonomial::corolla(label as u32, arities[label]))
            .unwrap();
    }
    t
}

/// Quadratic monomial algebra on `gens` weight-one generators whose
/// relations are the given two-letter words.
pub fn monomial_algebra(gens: usize, words: &[(u32, u32)]) -> AlgebraPresentation {
    let names = (0..gens).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let relations = words.iter().map(|&(x, y)| WordElement::monomial(vec![x, y])).collect();
    AlgebraPresentation::new(names, vec![1; gens], relations).unwrap()
}

/// A random quadratic monomial algebra on one or two generators.
pub fn random_monomial_algebra(rng: &mut impl Rng) -> AlgebraPresentation {
    let gens = rng.gen_range(1..=2u32);
    let mut words = Vec::new();
    for x in 0..gens {
        for y in 0..gens {
            if rng.gen_bool(0.4) {
                words.push((x, y));
            }
        }
    }
    monomial_algebra(gens as usize, &words)
}

/// A random quadratic algebra on two generators with one or two relations
/// carrying small integer coefficients.
pub fn random_quadratic_algebra(rng: &mut impl Rng) -> AlgebraPresentation {
    let count = rng.gen_range(1..=2);
    let relations = (0..count)
        .map(|_| {
            WordElement::from_terms((0..4u32).map(|k| (vec![k / 2, k % 2], rat(rng.gen_range(-1..=1)))))
        })
        .filter(|r| !r.is_zero())
        .collect();
    AlgebraPresentation::new(vec!["a".into(), "b".into()], vec![1, 1], relations).unwrap()
}

/// A random quadratic operad on one or two binary generators with one or
/// two relations carrying small integer coefficients.
pub fn random_binary_operad(rng: &mut impl Rng) -> OperadPresentation {
    let gens = rng.gen_range(1..=2u32);
    let shapes = TreeEnumerator::new((0..gens).map(|l| (l, 2)).collect(), |_| true).trees(3).to_vec();
    let count = rng.gen_range(1..=2);
    let relations = (0..count)
        .map(|_| OperadElement::from_terms(shapes.iter().map(|s| (s.clone(), rat(rng.gen_range(-1..=1))))))
        .filter(|e| !e.is_zero())
        .collect();
    let names = (0..gens).map(|i| format!("m{}", i + 1)).collect();
    OperadPresentation::new(names, vec![2; gens as usize], relations).unwrap()
}

pub fn big(v: &[usize]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn q(n: i64) -> Rational {
    rat(n)
}

pub fn vertex_count(t: &TreeMonomial) -> usize {
    t.nodes().iter().filter(|n| **n != Node::Leaf).count()
}

pub fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
