//! Bundled scenarios that run without input documents.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use nsop::catalog;
use nsop::envelope::raney::{catalan as catalan_numbers, good_sequences, lagrange_dimension, weighted_good_count};
use nsop::envelope::{
    leftmost_leaf_trees, quadratic_dual_algebra, quadratic_dual_operad_dims, raney_shift, u_max, u_max_quadratic, u_min,
    u_min_quadratic, AlgebraPresentation, RaneySequence,
};
use nsop::linalg::Rational;
use nsop::rewriting::word::{leading_selection_scan, Word};
use nsop::rewriting::RewritingSystem;
use nsop::series::{check_backelin, check_gk, TruncatedSeries};

use crate::commands::{big_cell, rational_cell, CliError};
use crate::report::{Report, Table};

const SKLYANIN_DIMS: [usize; 4] = [1, 3, 6, 10];

fn named(a: &AlgebraPresentation) -> &'static str {
    if a.relations().is_empty() {
        "k[x]"
    } else {
        "k[x]/(x^2)"
    }
}

/// `k[x]`: envelope dimensions three ways, Catalan numbers by Lagrange
/// inversion, and the functional equation for the max-envelope pair.
pub fn catalan(n: usize) -> Result<Report, CliError> {
    let a = catalog::polynomial();
    let q = a.quotient(n - 1);
    let cat = catalan_numbers(n);
    let mut r = Report::default();
    r.config("algebra", "k[x]");
    r.config("arity", n);

    let env = u_max(&q, n)?;
    let oq = env.quotient();
    let dims: Vec<BigInt> = q.dims().iter().map(|&d| BigInt::from(d)).collect();
    let g = q.hilbert_series();
    let mut t = Table::new("max envelope", &["arity", "groebner", "leftmost_leaf", "raney", "lagrange", "catalan"]);
    let mut agree = true;
    let mut is_catalan = true;
    for k in 1..=n {
        let gb = oq.dim(k);
        let ll = leftmost_leaf_trees(&env.generators(), k).len();
        let ra = weighted_good_count(&dims, k);
        let la = lagrange_dimension(&g, k);
        agree &= BigInt::from(gb) == ra && BigInt::from(ll) == ra && Rational::from_integer(ra.clone()) == la;
        is_catalan &= BigInt::from(gb) == cat[k - 1];
        t.push(vec![k.into(), gb.into(), ll.into(), big_cell(&ra), rational_cell(&la), big_cell(&cat[k - 1])]);
    }
    r.table(t);
    r.verdict("max envelope dimensions agree three ways", agree, "");
    r.verdict("max envelope dimensions are Catalan numbers", is_catalan, "");

    let umin = u_min(&q, n)?.quotient();
    let mut t = Table::new("min envelope", &["arity", "groebner", "algebra_dim"]);
    let mut ok = true;
    for k in 1..=n {
        ok &= umin.dim(k) == q.dim(k - 1);
        t.push(vec![k.into(), umin.dim(k).into(), q.dim(k - 1).into()]);
    }
    r.table(t);
    r.verdict("min envelope dimensions follow the algebra", ok, "");

    let f = TruncatedSeries::from_integers(n, &[0, 1, -1]);
    let mut t = Table::new("lagrange t - t^2", &["n", "coefficient"]);
    let mut ok = true;
    for k in 1..=n {
        let c = f.lagrange_coefficient(k)?;
        ok &= Rational::from_integer(cat[k - 1].clone()) == c;
        t.push(vec![k.into(), rational_cell(&c)]);
    }
    r.table(t);
    r.verdict("lagrange inversion of t - t^2 gives Catalan numbers", ok, "");

    let order = 10;
    let cat10 = catalan_numbers(order);
    let gp = TruncatedSeries::from_coeffs(
        order,
        (0..=order).map(|k| if k == 0 { Rational::from_integer(0.into()) } else { Rational::from_integer(cat10[k - 1].clone()) }),
    );
    let v = check_gk(&gp, &TruncatedSeries::from_integers(order, &[0, 1, -1]))?;
    r.verdict("g(t - t^2) = t for the Catalan series", v.holds, format!("to order {order}"));
    Ok(r)
}

fn word_text(names: &[String], w: &Word) -> String {
    w.iter().map(|&l| names[l as usize].as_str()).collect::<Vec<_>>().join("*")
}

/// The Sklyanin algebra: dimensions to weight 3 and the degree-3 count of
/// every leading-monomial selection, compared against each deglex order.
pub fn sklyanin() -> Result<Report, CliError> {
    let a = catalog::sklyanin();
    let names = a.names().to_vec();
    let q = a.quotient(3);
    let mut r = Report::default();
    r.config("algebra", "sklyanin");
    r.config("weight", 3);
    let dims = q.dims();
    let mut t = Table::new("algebra dims", &["weight", "dim"]);
    for (w, &d) in dims.iter().enumerate() {
        t.push(vec![w.into(), d.into()]);
    }
    r.table(t);
    r.verdict("dimensions 1 3 6 10", dims == SKLYANIN_DIMS, "");

    let (perms, rows) = leading_selection_scan(a.weights(), a.relations());
    let perm_text = |k: usize| perms[k].iter().map(|&l| names[l as usize].as_str()).collect::<Vec<_>>().join(">");
    let mut t = Table::new("orders", &["order", "leading", "degree3"]);
    let mut counts = Vec::new();
    for k in 0..perms.len() {
        let row = rows.iter().find(|row| row.realized_by.contains(&k)).expect("every order picks a selection");
        counts.push(row.degree3_count);
        let sel = row.selection.iter().map(|w| word_text(&names, w)).collect::<Vec<_>>().join(", ");
        t.push(vec![perm_text(k).into(), sel.into(), row.degree3_count.into()]);
    }
    r.table(t);

    let mut t = Table::new("selections", &["index", "leading", "degree3", "realized_by"]);
    for (i, row) in rows.iter().enumerate() {
        let sel = row.selection.iter().map(|w| word_text(&names, w)).collect::<Vec<_>>().join(", ");
        let by = row.realized_by.iter().map(|&k| perm_text(k)).collect::<Vec<_>>().join(" ");
        t.push(vec![(i + 1).into(), sel.into(), row.degree3_count.into(), by.into()]);
    }
    r.table(t);
    r.verdict("selections scanned", rows.len() == 27, format!("{} of 27", rows.len()));
    let dim3 = dims[3];
    let every = counts.iter().all(|&c| c > dim3);
    let min = counts.iter().min().copied().unwrap_or(0);
    r.verdict(
        "count > 10 for every order",
        every,
        format!("smallest degree-3 count over the {} deglex orders is {min}, dim A(3) = {dim3}", counts.len()),
    );
    Ok(r)
}

/// Koszul dual dimensions of the envelopes of `k[x]` and `k[x]/(x²)`.
pub fn duality(n: usize) -> Result<Report, CliError> {
    let mut r = Report::default();
    r.config("arity", n);
    for a in [catalog::polynomial(), catalog::dual_numbers()] {
        let name = named(&a);
        let d = quadratic_dual_algebra(&a, n)?;
        let dual_dims: Vec<BigInt> = d.dims.iter().map(|&x| BigInt::from(x)).collect();
        let umin = quadratic_dual_operad_dims(&u_min_quadratic(&a)?, n)?;
        let umax = quadratic_dual_operad_dims(&u_max_quadratic(&a)?, n)?;
        let mut t = Table::new(
            &format!("{name} duals"),
            &["arity", "dual_algebra", "min_dual", "raney_count", "max_dual", "top_weight_only"],
        );
        let (mut min_ok, mut max_ok, mut top_ok) = (true, true, true);
        for k in 1..=n {
            let rc = weighted_good_count(&dual_dims, k);
            let top = umin.weights(k).iter().chain(&umax.weights(k)).all(|&w| w == k - 1);
            min_ok &= BigInt::from(umin.total(k)) == rc;
            max_ok &= umax.total(k) == d.dims[k - 1];
            top_ok &= top;
            t.push(vec![
                k.into(),
                d.dims[k - 1].into(),
                umin.total(k).into(),
                big_cell(&rc),
                umax.total(k).into(),
                top.into(),
            ]);
        }
        r.table(t);
        r.verdict(&format!("{name}: min-envelope dual equals the Raney count"), min_ok, "");
        r.verdict(&format!("{name}: max-envelope dual equals A!(n-1)"), max_ok, "");
        r.verdict(&format!("{name}: duals sit in top weight"), top_ok, "");
        let g = a.quotient(n).hilbert_series();
        let v = check_backelin(&g, &d.euler)?;
        r.verdict(&format!("{name}: g_A(t) g_A!(-t) = 1"), v.holds, "");
    }
    Ok(r)
}

/// Cyclic rotations of every sequence of `n` non-negative integers summing
/// to `n − 1`, and good-sequence counts.
pub fn raney(n: usize) -> Result<Report, CliError> {
    let mut r = Report::default();
    r.config("max_length", n);
    let cat = catalan_numbers(n);
    let mut t = Table::new("good sequences", &["n", "sequences", "classes", "good", "catalan"]);
    let (mut unique, mut counts) = (true, true);
    for k in 1..=n {
        let all = sequences_with_sum(k - 1, k);
        let mut classes = BTreeSet::new();
        for parts in &all {
            let s = RaneySequence::new(parts.clone())?;
            let good: BTreeSet<Vec<usize>> = (0..k).map(|j| s.rotate_left(j)).filter(|x| x.is_good()).map(|x| x.parts().to_vec()).collect();
            unique &= good.len() == 1 && s.rotate_left(raney_shift(&s)).is_good();
            classes.insert(good.into_iter().next().unwrap_or_default());
        }
        let good = good_sequences(k, |_| true).len();
        counts &= BigInt::from(good) == cat[k - 1] && classes.len() == good;
        t.push(vec![k.into(), all.len().into(), classes.len().into(), good.into(), big_cell(&cat[k - 1])]);
    }
    r.table(t);
    r.verdict("every rotation class has exactly one good sequence", unique, format!("n <= {n}"));
    r.verdict("good sequences are counted by Catalan numbers", counts, "");
    Ok(r)
}

fn sequences_with_sum(total: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            sequences_with_sum(total - first, len - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Defining relations of both envelopes have no critical survivors.
pub fn envelope_closure(a: &AlgebraPresentation, algebra_bound: usize, arity_bound: usize) -> Result<bool, CliError> {
    let q = a.quotient(algebra_bound);
    for env in [u_min(&q, arity_bound)?, u_max(&q, arity_bound)?] {
        let sys = RewritingSystem::from_relations(env.presentation.tree_kind(), env.presentation.relations());
        if !sys.critical_survivors(arity_bound).is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
