//! Named presentations used by demos and tests.

use crate::envelope::{AlgebraPresentation, OperadPresentation};
use crate::linalg::rat;
use crate::rewriting::{OperadElement, WordElement};
use crate::tree::TreeMonomial;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// `k[x]`, one generator of weight 1 and no relations.
pub fn polynomial() -> AlgebraPresentation {
    AlgebraPresentation::new(names(&["x"]), vec![1], vec![]).expect("valid")
}

/// `k[x]/(x²)`.
pub fn dual_numbers() -> AlgebraPresentation {
    AlgebraPresentation::new(names(&["x"]), vec![1], vec![WordElement::monomial(vec![0, 0])]).expect("valid")
}

/// Free algebra on `n` weight-one generators `x1..xn`.
pub fn free_algebra(n: usize) -> AlgebraPresentation {
    let list: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    AlgebraPresentation::new(list, vec![1; n], vec![]).expect("valid")
}

/// The Sklyanin algebra with `ab − ba = c²`, `bc − cb = a²`, `ca − ac = b²`.
pub fn sklyanin() -> AlgebraPresentation {
    let rel = |x: u32, y: u32, z: u32| {
        WordElement::from_terms([(vec![x, y], rat(1)), (vec![y, x], rat(-1)), (vec![z, z], rat(-1))])
    };
    AlgebraPresentation::new(names(&["a", "b", "c"]), vec![1, 1, 1], vec![rel(0, 1, 2), rel(1, 2, 0), rel(2, 0, 1)])
        .expect("valid")
}

/// The ns associative operad: one binary generator, `m∘₁m − m∘₂m`.
pub fn associative() -> OperadPresentation {
    let m = TreeMonomial::corolla(0, 2);
    let left = m.graft(1, &m).expect("binary");
    let right = m.graft(2, &m).expect("binary");
    let rel = OperadElement::from_terms([(left, rat(1)), (right, rat(-1))]);
    OperadPresentation::new(names(&["m"]), vec![2], vec![rel]).expect("valid")
}

/// Free ns operad on one binary generator.
pub fn free_binary() -> OperadPresentation {
    OperadPresentation::new(names(&["m"]), vec![2], vec![]).expect("valid")
}
