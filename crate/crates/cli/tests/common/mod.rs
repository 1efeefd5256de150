#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nsop::linalg::Rational;
use nsop_cli::document::{Document, FieldSpec, Generator, Kind, Monomial, Options, Summand, Term};

pub const GOLDEN: [(&str, &str); 3] = [
    ("sklyanin", include_str!("../golden/demo_sklyanin.json")),
    ("catalan", include_str!("../golden/demo_catalan.json")),
    ("duality", include_str!("../golden/demo_duality.json")),
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn presentation(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../presentations").join(file)
}

pub fn scratch_file(name: &str, contents: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("nsop-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{}-{name}", COUNTER.fetch_add(1, Ordering::Relaxed)));
    std::fs::write(&path, contents).unwrap();
    path
}

const NAMES: [&str; 8] = ["a", "b", "c", "x", "y", "mu", "nu", "g2"];

fn coefficient(r: &mut ChaCha8Rng) -> Rational {
    let p = loop {
        let p: i64 = r.gen_range(-5..=5);
        if p != 0 {
            break p;
        }
    };
    Rational::new(BigInt::from(p), BigInt::from(r.gen_range(1..=4)))
}

fn random_term(r: &mut ChaCha8Rng, gens: &[Generator], depth: usize) -> (Term, usize) {
    let g = gens.choose(r).unwrap();
    if depth == 0 || r.gen_bool(0.4) {
        return (Term::Gen(g.name.clone()), g.degree);
    }
    let (left, la) = random_term(r, gens, depth - 1);
    let (right, ra) = random_term(r, gens, depth - 1);
    let slot = r.gen_range(1..=la);
    (Term::Compose(Box::new(left), slot, Box::new(right)), la + ra - 1)
}

fn random_monomial(r: &mut ChaCha8Rng, kind: Kind, gens: &[Generator]) -> (Monomial, usize) {
    match kind {
        Kind::Algebra => {
            let len = r.gen_range(1..=3);
            let word: Vec<&Generator> = (0..len).map(|_| gens.choose(r).unwrap()).collect();
            let w = word.iter().map(|g| g.degree).sum();
            (Monomial::Word(word.iter().map(|g| g.name.clone()).collect()), w)
        }
        Kind::Operad => {
            let (t, a) = random_term(r, gens, 2);
            (Monomial::Tree(t), a)
        }
    }
}

/// A document the parser accepts: homogeneous relations, nonzero
/// coefficients, valid slots.
pub fn random_document(r: &mut ChaCha8Rng) -> Document {
    let kind = if r.gen_bool(0.5) { Kind::Algebra } else { Kind::Operad };
    let n = r.gen_range(1..=3);
    let mut names = NAMES.to_vec();
    names.shuffle(r);
    let generators: Vec<Generator> = names[..n]
        .iter()
        .map(|name| Generator {
            name: name.to_string(),
            degree: match kind {
                Kind::Algebra => r.gen_range(1..=3),
                Kind::Operad => r.gen_range(2..=3),
            },
        })
        .collect();
    let relations = (0..r.gen_range(0..=3))
        .map(|_| {
            let (first, size) = random_monomial(r, kind, &generators);
            let mut terms = vec![Summand { coeff: coefficient(r), monomial: first }];
            for _ in 0..20 {
                if terms.len() == 3 {
                    break;
                }
                let (m, s) = random_monomial(r, kind, &generators);
                if s == size {
                    terms.push(Summand { coeff: coefficient(r), monomial: m });
                }
            }
            terms
        })
        .collect();
    let mut options = Options::default();
    if r.gen_bool(0.3) {
        options.arity = Some(r.gen_range(1..=7));
    }
    if r.gen_bool(0.3) {
        options.weight = Some(r.gen_range(0..=7));
    }
    if r.gen_bool(0.3) {
        let mut order: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        order.shuffle(r);
        options.order = Some(order);
    }
    if r.gen_bool(0.3) {
        options.field = Some([FieldSpec::Rational, FieldSpec::Prime(2), FieldSpec::Prime(32003)].choose(r).unwrap().clone());
    }
    Document {
        kind,
        name: format!("D{}", r.gen_range(0..1000)),
        generators,
        relations,
        options,
    }
}

const ALPHABET: &[char] = &[
    'a', 'b', 'x', 'o', '1', '2', '0', '9', '*', '+', '-', '/', '(', ')', ',', ':', '=', '>', '#', ' ', '\n', '.', '−', '∘', 'é',
];

/// One to three random edits: deletions, insertions, substitutions,
/// duplicated or dropped spans.
pub fn mutate(text: &str, r: &mut ChaCha8Rng) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    for _ in 0..r.gen_range(1..=3) {
        let len = chars.len();
        let at = r.gen_range(0..=len);
        match r.gen_range(0..5) {
            0 if at < len => {
                chars.remove(at);
            }
            1 => chars.insert(at, *ALPHABET.choose(r).unwrap()),
            2 if at < len => chars[at] = *ALPHABET.choose(r).unwrap(),
            3 => {
                let end = (at + r.gen_range(1..8)).min(len);
                let span: Vec<char> = chars[at..end].to_vec();
                let to = r.gen_range(0..=len);
                chars.splice(to..to, span);
            }
            _ => {
                let end = (at + r.gen_range(1..8)).min(len);
                chars.drain(at..end);
            }
        }
    }
    chars.into_iter().collect()
}
