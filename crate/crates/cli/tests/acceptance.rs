//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;

use nsop::bar::{algebra_koszulness, operad_koszulness, HomologyField};
use nsop::catalog;
use nsop::envelope::raney::{good_sequences, lagrange_dimension, weighted_good_count};
use nsop::envelope::{
    quadratic_dual_algebra, quadratic_dual_operad_dims, raney_shift, u_max, u_max_basis, u_max_quadratic, u_min,
    u_min_quadratic, AlgebraPresentation, RaneySequence,
};
use nsop::linalg::Rational;
use nsop::rewriting::WordElement;
use nsop::series::{check_backelin, check_gk, TruncatedSeries};
use nsop_cli::demos;
use nsop_cli::parse_document;

use common::{mutate, random_document, rng, GOLDEN};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:.2?}, limit {limit:?}"))?;
    Ok(spent)
}

/// `C(2m, m) / (m + 1)` by the product formula.
fn catalan(m: usize) -> BigInt {
    let mut c = BigInt::from(1);
    for k in 0..m {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

fn rat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn lagrange_inversion() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let order = 12;
    for trial in 0..20 {
        let mut coeffs = vec![0i64, if r.gen_bool(0.5) { 1 } else { -1 }];
        coeffs.extend((2..=order).map(|_| r.gen_range(-4..=4)));
        let f = TruncatedSeries::from_integers(order, &coeffs);
        let inverse = f.invert_composition().map_err(|e| e.to_string())?;
        for n in 1..=order {
            let c = f.lagrange_coefficient(n).map_err(|e| e.to_string())?;
            ensure(c == inverse.coeff(n), || format!("series {trial} {coeffs:?} differs at t^{n}"))?;
        }
    }
    let f = TruncatedSeries::from_integers(order, &[0, 1, -1]);
    for (n, expect) in [1, 1, 2, 5, 14, 42, 132].into_iter().enumerate() {
        let c = f.lagrange_coefficient(n + 1).map_err(|e| e.to_string())?;
        ensure(c == rat(expect.into()), || format!("t - t^2: coefficient {} is {c}", n + 1))?;
    }
    let spent = within(start, Duration::from_secs(5))?;
    Ok(format!("20 random series to order 12 and t - t^2 in {spent:.2?}"))
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Partial sums of `parts[..k]` stay at least `k` for every proper prefix.
fn good_by_prefix_sums(parts: &[usize]) -> bool {
    let mut sum = 0;
    for (k, &p) in parts.iter().enumerate().take(parts.len() - 1) {
        sum += p;
        if sum < k + 1 {
            return false;
        }
    }
    true
}

fn raney_lemma() -> Outcome {
    let mut sequences = 0;
    for n in 1..=8 {
        let all = compositions(n - 1, n);
        sequences += all.len();
        let mut good = 0usize;
        for parts in &all {
            let s = RaneySequence::new(parts.clone()).map_err(|e| e.to_string())?;
            let rotations: BTreeSet<Vec<usize>> =
                (0..n).map(|j| s.rotate_left(j)).filter(|x| x.is_good()).map(|x| x.parts().to_vec()).collect();
            ensure(rotations.len() == 1, || format!("{parts:?} has {} good rotations", rotations.len()))?;
            ensure(s.rotate_left(raney_shift(&s)).is_good(), || format!("shift of {parts:?} is not good"))?;
            ensure(s.is_good() == good_by_prefix_sums(parts), || format!("goodness of {parts:?}"))?;
            good += s.is_good() as usize;
        }
        let cat = catalan(n - 1);
        ensure(BigInt::from(good) == cat, || format!("n = {n}: {good} good sequences"))?;
        let listed = good_sequences(n, |_| true).len();
        ensure(BigInt::from(listed) == cat, || format!("n = {n}: {listed} listed good sequences"))?;
    }
    Ok(format!("{sequences} sequences, n <= 8"))
}

fn envelope_bases() -> Outcome {
    let named = [(catalog::polynomial(), 7), (catalog::dual_numbers(), 7), (catalog::sklyanin(), 4)];
    for (a, bound) in &named {
        let q = a.quotient(bound - 1);
        let umin = u_min(&q, *bound).map_err(|e| e.to_string())?.quotient();
        for n in 1..=*bound {
            ensure(umin.dim(n) == q.dim(n - 1), || format!("min envelope dim at arity {n}"))?;
        }
        let env = u_max(&q, *bound).map_err(|e| e.to_string())?;
        let gb = env.quotient();
        let dims: Vec<BigInt> = q.dims().iter().map(|&d| BigInt::from(d)).collect();
        let g = q.hilbert_series();
        for n in 1..=*bound {
            let by_gb = gb.dim(n);
            let by_trees = u_max_basis(&env, n).len();
            let by_raney = weighted_good_count(&dims, n);
            let by_lagrange = lagrange_dimension(&g, n);
            ensure(
                by_gb == by_trees && BigInt::from(by_gb) == by_raney && rat(by_raney.clone()) == by_lagrange,
                || format!("arity {n}: {by_gb} {by_trees} {by_raney} {by_lagrange}"),
            )?;
        }
    }
    let umax_poly = u_max(&catalog::polynomial().quotient(6), 7).map_err(|e| e.to_string())?.quotient();
    for n in 1..=7 {
        ensure(BigInt::from(umax_poly.dim(n)) == catalan(n - 1), || format!("k[x] max envelope at arity {n}"))?;
    }
    let sk = u_max(&catalog::sklyanin().quotient(3), 4).map_err(|e| e.to_string())?.quotient();
    ensure(sk.dims()[1..] == [1, 3, 15, 91], || format!("Sklyanin max envelope {:?}", sk.dims()))?;
    Ok("three named algebras; Sklyanin max envelope 1 3 15 91".into())
}

fn random_monomial_algebra(r: &mut impl Rng) -> AlgebraPresentation {
    let gens = r.gen_range(1..=2u32);
    let mut relations = Vec::new();
    for x in 0..gens {
        for y in 0..gens {
            if r.gen_bool(0.5) {
                relations.push(WordElement::monomial(vec![x, y]));
            }
        }
    }
    let names = (0..gens).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    AlgebraPresentation::new(names, vec![1; gens as usize], relations).expect("valid monomial algebra")
}

fn diamond_closure() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let mut inputs: Vec<(AlgebraPresentation, usize)> = (0..10).map(|_| (random_monomial_algebra(&mut r), 7)).collect();
    inputs.push((catalog::polynomial(), 7));
    inputs.push((catalog::dual_numbers(), 7));
    inputs.push((catalog::sklyanin(), 4));
    for (k, (a, bound)) in inputs.iter().enumerate() {
        let closed = demos::envelope_closure(a, bound - 1, *bound).map_err(|e| e.to_string())?;
        ensure(closed, || format!("input {k} has critical survivors below arity {bound}"))?;
    }
    Ok(format!("13 algebras, no survivors, {:.2?}", start.elapsed()))
}

fn sklyanin_demo() -> Outcome {
    let start = Instant::now();
    let report = demos::sklyanin().map_err(|e| e.to_string())?;
    let spent = within(start, Duration::from_secs(1))?;
    let table = |name: &str| report.tables.iter().find(|t| t.name == name).ok_or(format!("no {name} table"));
    let dims: Vec<String> = table("algebra dims")?.rows.iter().map(|r| format!("{:?}", r[1])).collect();
    ensure(dims == ["Int(1)", "Int(3)", "Int(6)", "Int(10)"], || format!("dims {dims:?}"))?;
    let orders = table("orders")?;
    ensure(orders.rows.len() == 6, || "expected 6 orders".into())?;
    ensure(orders.rows.iter().all(|r| format!("{:?}", r[2]) == "Int(12)"), || "order counts differ from 12".into())?;
    let selections = table("selections")?;
    ensure(selections.rows.len() == 27, || format!("{} selections", selections.rows.len()))?;
    ensure(report.all_hold(), || "a demo verdict fails".into())?;
    Ok(format!("dims 1 3 6 10, six orders give 12 > 10, 27 selections, {spent:.2?}"))
}

fn right_inverse() -> Outcome {
    for (a, w) in [(catalog::polynomial(), 4), (catalog::dual_numbers(), 4), (catalog::sklyanin(), 3)] {
        let q = a.quotient(w);
        let table = q.multiplication_table(w).map_err(|e| e.to_string())?;
        let umin = u_min(&q, w + 1).map_err(|e| e.to_string())?.quotient();
        let forgot = umin.forget_to_algebra(w).map_err(|e| e.to_string())?;
        ensure(forgot == table, || format!("structure constants differ for {:?}", a.names()))?;
    }
    Ok("k[x] and k[x]/(x^2) to weight 4, Sklyanin to weight 3".into())
}

fn duality_dims() -> Outcome {
    let arity = 7;
    for (a, min_expect) in [
        (catalog::polynomial(), (1..=arity).map(|_| BigInt::from(1)).collect::<Vec<_>>()),
        (catalog::dual_numbers(), (1..=arity).map(|n| catalan(n - 1)).collect()),
    ] {
        let d = quadratic_dual_algebra(&a, arity).map_err(|e| e.to_string())?;
        let dual_dims: Vec<BigInt> = d.dims.iter().map(|&x| BigInt::from(x)).collect();
        let umin = quadratic_dual_operad_dims(&u_min_quadratic(&a).map_err(|e| e.to_string())?, arity).map_err(|e| e.to_string())?;
        let umax = quadratic_dual_operad_dims(&u_max_quadratic(&a).map_err(|e| e.to_string())?, arity).map_err(|e| e.to_string())?;
        for n in 1..=arity {
            let count = weighted_good_count(&dual_dims, n);
            ensure(BigInt::from(umin.total(n)) == count, || format!("{:?} min dual at arity {n}", a.relations().len()))?;
            ensure(count == min_expect[n - 1], || format!("Raney count at arity {n} is {count}"))?;
            ensure(umax.total(n) == d.dims[n - 1], || format!("max dual at arity {n}"))?;
            ensure(umax.weights(n).iter().all(|&w| w == n - 1), || format!("max dual off top weight at arity {n}"))?;
        }
    }
    Ok("k[x] and k[x]/(x^2) to arity 7".into())
}

fn functional_equations() -> Outcome {
    let order = 10;
    let err = |e: nsop::series::SeriesError| e.to_string();
    let cat = TruncatedSeries::from_coeffs(order, (0..=order).map(|n| if n == 0 { rat(0.into()) } else { rat(catalan(n - 1)) }));
    let v = check_gk(&cat, &TruncatedSeries::from_integers(order, &[0, 1, -1])).map_err(err)?;
    ensure(v.holds, || format!("Catalan pair fails at {:?}", v.first_failure))?;
    let assoc = TruncatedSeries::from_coeffs(order, (0..=order).map(|n| rat((n.min(1) as i64).into())));
    let assoc_dual = TruncatedSeries::from_coeffs(order, (0..=order).map(|n| {
        if n == 0 {
            rat(0.into())
        } else if n % 2 == 1 {
            rat(1.into())
        } else {
            rat((-1).into())
        }
    }));
    let v = check_gk(&assoc, &assoc_dual).map_err(err)?;
    ensure(v.holds, || format!("associative pair fails at {:?}", v.first_failure))?;
    for a in [catalog::polynomial(), catalog::dual_numbers()] {
        let g = a.quotient(order).hilbert_series();
        let d = quadratic_dual_algebra(&a, order).map_err(|e| e.to_string())?;
        let v = check_backelin(&g, &d.euler).map_err(err)?;
        ensure(v.holds, || format!("Backelin fails at {:?}", v.first_failure))?;
    }
    Ok("Catalan and associative pairs, Backelin for k<x> and k[x]/(x^2), order 10".into())
}

fn bar_homology() -> Outcome {
    let start = Instant::now();
    let field = HomologyField::Rational;
    let e = |e: nsop::bar::BarError| e.to_string();

    let (t, v) = algebra_koszulness(&catalog::dual_numbers(), 6, field).map_err(e)?;
    ensure(v.holds && t.dual_from_diagonal() == vec![1; 7], || "k[x]/(x^2)".into())?;
    let (t, v) = algebra_koszulness(&catalog::free_algebra(1), 6, field).map_err(e)?;
    ensure(v.holds && t.dual_from_diagonal() == vec![1, 1, 0, 0, 0, 0, 0], || "k<x>".into())?;
    let p = u_min_quadratic(&catalog::dual_numbers()).map_err(|e| e.to_string())?;
    let (t, v) = operad_koszulness(&p, 6, field).map_err(e)?;
    let cats: Vec<BigInt> = (0..=6).map(|n| if n == 0 { BigInt::from(0) } else { catalan(n - 1) }).collect();
    let diag: Vec<BigInt> = t.dual_from_diagonal().into_iter().map(BigInt::from).collect();
    ensure(v.holds && diag == cats, || format!("min envelope of k[x]/(x^2): {diag:?}"))?;

    let mut r = rng(9);
    let mut algebras = vec![catalog::polynomial(), catalog::dual_numbers(), catalog::sklyanin(), catalog::free_algebra(2)];
    algebras.extend((0..5).map(|_| random_monomial_algebra(&mut r)));
    for a in &algebras {
        let (t, _) = algebra_koszulness(a, 4, field).map_err(e)?;
        let dual = quadratic_dual_algebra(a, 4).map_err(|e| e.to_string())?;
        ensure(t.dual_from_diagonal() == dual.dims, || format!("algebra diagonal {:?}", a.names()))?;
    }
    let mut operads = vec![catalog::associative(), catalog::free_binary()];
    for a in [catalog::polynomial(), catalog::dual_numbers(), catalog::sklyanin()] {
        operads.push(u_min_quadratic(&a).map_err(|e| e.to_string())?);
        operads.push(u_max_quadratic(&a).map_err(|e| e.to_string())?);
    }
    for (k, p) in operads.iter().enumerate() {
        let (t, _) = operad_koszulness(p, 5, field).map_err(e)?;
        let d = quadratic_dual_operad_dims(p, 5).map_err(|e| e.to_string())?;
        let expect: Vec<usize> = (0..=5).map(|n| d.total(n)).collect();
        ensure(t.dual_from_diagonal() == expect, || format!("operad {k}: {:?} vs {expect:?}", t.dual_from_diagonal()))?;
    }
    let spent = within(start, Duration::from_secs(60))?;
    Ok(format!("d^2 = 0 on every complex, 3 Koszul verdicts, {} diagonals, {spent:.2?}", algebras.len() + operads.len()))
}

fn cli_golden_and_fuzz() -> Outcome {
    for (name, golden) in GOLDEN {
        let out = nsop_cli::run(["nsop", "demo", name, "--format", "json"]);
        ensure(out.code == 0 && out.stdout == golden, || format!("demo {name} differs from its golden file"))?;
    }
    let mut r = rng(10);
    let mut crashes = 0;
    let mut corpus = Vec::new();
    for _ in 0..50 {
        let doc = random_document(&mut r);
        let text = doc.to_string();
        ensure(parse_document(&text).as_ref() == Ok(&doc), || format!("round trip fails on\n{text}"))?;
        corpus.push(text);
    }
    for k in 0..2000 {
        let text = mutate(&corpus[k % corpus.len()], &mut r);
        match catch_unwind(|| parse_document(&text)) {
            Err(_) => crashes += 1,
            Ok(Ok(doc)) => {
                ensure(parse_document(&doc.to_string()).as_ref() == Ok(&doc), || format!("unstable reprint of {text:?}"))?;
            }
            Ok(Err(_)) => {}
        }
    }
    ensure(crashes == 0, || format!("{crashes} parser crashes"))?;
    Ok("3 golden files, 50 round trips, 2000 mutants without crashes".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Lagrange inversion", lagrange_inversion),
        ("Raney lemma", raney_lemma),
        ("envelope bases", envelope_bases),
        ("Diamond Lemma closure", diamond_closure),
        ("Sklyanin demo", sklyanin_demo),
        ("right inverse", right_inverse),
        ("duality dims", duality_dims),
        ("functional equations", functional_equations),
        ("bar homology", bar_homology),
        ("CLI", cli_golden_and_fuzz),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of 10 pass in {:.2?}", 10 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
