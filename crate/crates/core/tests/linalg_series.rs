use num_traits::{One, Zero};
use proptest::prelude::*;

use nsop::linalg::{annihilator, intersect, rank_of, rat, span_basis, Matrix, PrimeField, Rational, Rationals};
use nsop::series::{check_backelin, check_gk, TruncatedSeries};

fn det(m: &[Vec<Rational>]) -> Rational {
    // Laplace expansion along the first row.
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest `k` with a nonzero `k × k` minor.
fn rank_by_minors(rows: &[Vec<Rational>], cols: usize) -> usize {
    let r = rows.len();
    for k in (1..=r.min(cols)).rev() {
        for rs in subsets(r, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<Rational>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn matrix_strategy() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (Just(c), prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    })
}

fn to_rat(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (prop_oneof![Just(1i64), Just(-1), 2i64..=3], prop::collection::vec(-3i64..=3, order - 1)).prop_map(move |(lin, rest)| {
        let mut c = vec![0, lin];
        c.extend(rest);
        TruncatedSeries::from_integers(order, &c)
    })
}

proptest! {
    #[test]
    fn rank_equals_largest_nonzero_minor((cols, rows) in matrix_strategy()) {
        let q = to_rat(&rows);
        let m = Matrix::from_rows(Rationals, cols, q.clone()).unwrap();
        prop_assert_eq!(m.rank(), rank_by_minors(&q, cols));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated((cols, rows) in matrix_strategy()) {
        let q = to_rat(&rows);
        let m = Matrix::from_rows(Rationals, cols, q.clone()).unwrap();
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len() + m.rank(), cols);
        for v in &ker {
            for row in &q {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
        let (r, k) = m.rref();
        prop_assert_eq!(r.rref().0, r.clone());
        prop_assert_eq!(k, m.rank());
    }

    #[test]
    fn intersection_dimension_formula((cols, u) in matrix_strategy(), seed in prop::collection::vec(-2i64..=2, 16)) {
        let u = to_rat(&u);
        let w: Vec<Vec<Rational>> = seed.chunks(cols).take(3).filter(|c| c.len() == cols).map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
        let f = Rationals;
        let du = rank_of(&f, &u, cols).unwrap();
        let dw = rank_of(&f, &w, cols).unwrap();
        let mut both = u.clone();
        both.extend(w.iter().cloned());
        let dsum = rank_of(&f, &both, cols).unwrap();
        let inter = intersect(&f, &u, &w, cols).unwrap();
        prop_assert_eq!(inter.len() + dsum, du + dw);
        // Every common vector lies in both spans.
        for v in &inter {
            let mut uv = span_basis(&f, &u, cols).unwrap();
            uv.push(v.clone());
            prop_assert_eq!(rank_of(&f, &uv, cols).unwrap(), du);
        }
        let ann = annihilator(&f, &u, cols).unwrap();
        prop_assert_eq!(ann.len() + du, cols);
    }

    #[test]
    fn prime_field_rank_never_exceeds_rational_rank((cols, rows) in matrix_strategy()) {
        let m = Matrix::from_rows(Rationals, cols, to_rat(&rows)).unwrap();
        let f = PrimeField::new(32003).unwrap();
        let g = f.clone();
        let mp = m.map_into(f, |x| nsop::linalg::Field::from_rational(&g, x)).unwrap();
        // Entries are tiny, so no minor vanishes mod p unless it vanishes over Q.
        prop_assert_eq!(mp.rank(), m.rank());
    }

    #[test]
    fn lagrange_agrees_with_inversion(f in series_strategy(12)) {
        let inv = f.invert_composition().unwrap();
        for n in 1..=12 {
            prop_assert_eq!(f.lagrange_coefficient(n).unwrap(), inv.coeff(n));
        }
        let t = TruncatedSeries::t(12);
        prop_assert_eq!(f.compose(&inv).unwrap(), t.clone());
        prop_assert_eq!(inv.compose(&f).unwrap(), t);
        prop_assert!(check_gk(&f, &inv).unwrap().holds);
    }

    #[test]
    fn composition_is_associative(f in series_strategy(8), g in series_strategy(8), h in series_strategy(8)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reciprocal_satisfies_backelin(c in prop::collection::vec(-3i64..=3, 10)) {
        let mut coeffs = vec![1];
        coeffs.extend(c);
        let g = TruncatedSeries::from_integers(10, &coeffs);
        let r = g.reciprocal().unwrap();
        prop_assert!(check_backelin(&g, &r).unwrap().holds);
        prop_assert_eq!(g.try_mul(&r).unwrap(), TruncatedSeries::one(10));
    }
}

#[test]
fn catalan_from_lagrange() {
    let f = TruncatedSeries::from_integers(12, &[0, 1, -1]);
    let got: Vec<Rational> = (1..=7).map(|n| f.lagrange_coefficient(n).unwrap()).collect();
    let want: Vec<Rational> = [1, 1, 2, 5, 14, 42, 132].iter().map(|&x| rat(x)).collect();
    assert_eq!(got, want);
}

#[test]
fn associative_operad_pair() {
    let assoc = TruncatedSeries::from_integers(10, &[0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
    let dual = TruncatedSeries::from_integers(10, &[0, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1]);
    assert!(check_gk(&assoc, &dual).unwrap().holds);
}

#[test]
fn failing_identity_reports_first_power() {
    let g = TruncatedSeries::from_integers(6, &[1, 1]);
    let wrong = TruncatedSeries::from_integers(6, &[1, -1, 1, -1, 0]);
    let v = check_backelin(&g, &wrong).unwrap();
    // (1 + t)(1 − t + t² − t³) = 1 − t⁴.
    assert!(!v.holds);
    assert_eq!(v.first_failure, Some(4));
}
