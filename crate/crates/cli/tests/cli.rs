mod common;

use std::path::PathBuf;

use nsop::bar::BarError;
use nsop_cli::document::{Kind, Monomial};
use nsop_cli::{parse_document, run, CliError};

use common::{mutate, presentation, random_document, rng, scratch_file, GOLDEN};

fn nsop(args: &[&str]) -> nsop_cli::Outcome {
    run(std::iter::once("nsop").chain(args.iter().copied()))
}

fn table_column(json: &serde_json::Value, table: &str, column: usize) -> Vec<serde_json::Value> {
    let t = json["tables"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["name"] == table)
        .unwrap_or_else(|| panic!("no table {table}"));
    t["rows"].as_array().unwrap().iter().map(|r| r[column].clone()).collect()
}

fn json_of(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = nsop(&a);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn demo_json_matches_golden_files() {
    for (name, golden) in GOLDEN {
        let out = nsop(&["demo", name, "--format", "json"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout == *golden, "demo {name} drifted from its golden file");
    }
}

#[test]
fn free_algebra_has_no_relations() {
    let d = parse_document("algebra Free generators x:1 relations").unwrap();
    assert_eq!(d.kind, Kind::Algebra);
    assert_eq!(d.generators.len(), 1);
    assert!(d.relations.is_empty());
}

#[test]
fn sklyanin_document_has_three_quadratic_relations() {
    let d = parse_document(&std::fs::read_to_string(presentation("sklyanin.nsop")).unwrap()).unwrap();
    assert_eq!(d.generators.len(), 3);
    assert_eq!(d.relations.len(), 3);
    for r in &d.relations {
        for s in r {
            let Monomial::Word(w) = &s.monomial else { panic!("algebra relation with a tree") };
            assert_eq!(w.len(), 2);
        }
    }
}

#[test]
fn random_documents_round_trip() {
    let mut r = rng(11);
    for _ in 0..50 {
        let doc = random_document(&mut r);
        let text = doc.to_string();
        let back = parse_document(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(back, doc, "{text}");
    }
}

#[test]
fn mutated_documents_fail_with_positions_or_reprint_stably() {
    let mut r = rng(12);
    let mut corpus: Vec<String> = ["sklyanin.nsop", "associative.nsop", "commutative_plane.nsop", "umax_polynomial.nsop"]
        .iter()
        .map(|f| std::fs::read_to_string(presentation(f)).unwrap())
        .collect();
    corpus.extend((0..20).map(|_| random_document(&mut r).to_string()));
    let lines = |t: &str| t.split('\n').count();
    for k in 0..3000 {
        let base = &corpus[k % corpus.len()];
        let text = mutate(base, &mut r);
        match std::panic::catch_unwind(|| parse_document(&text)) {
            Err(_) => panic!("parser panicked on {text:?}"),
            Ok(Ok(doc)) => {
                let printed = doc.to_string();
                assert_eq!(parse_document(&printed).as_ref(), Ok(&doc), "{text:?}");
            }
            Ok(Err(e)) => {
                assert!(e.line >= 1 && e.line <= lines(&text), "{e} in {text:?}");
                assert!(e.column >= 1);
                assert!(!e.to_string().is_empty());
            }
        }
    }
}

#[test]
fn cli_on_mutated_documents_exits_zero_or_one() {
    let mut r = rng(13);
    let base = std::fs::read_to_string(presentation("sklyanin.nsop")).unwrap();
    for _ in 0..60 {
        let path = scratch_file("mutant.nsop", &mutate(&base, &mut r));
        let p = path.to_str().unwrap();
        let out = nsop(&["dims", p, "--weight", "3"]);
        assert!(out.code == 0 || out.code == 1, "{}", out.stderr);
        if out.code == 1 {
            assert!(out.stderr.starts_with("error: "));
        }
    }
}

#[test]
fn every_number_in_text_appears_in_json() {
    let sk = presentation("sklyanin.nsop");
    let assoc = presentation("associative.nsop");
    let poly = presentation("polynomial.nsop");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["demo", "sklyanin"],
        vec!["demo", "catalan"],
        vec!["demo", "duality"],
        vec!["demo", "raney", "--arity", "6"],
        vec!["dims", sk.to_str().unwrap()],
        vec!["gb", assoc.to_str().unwrap()],
        vec!["umax", poly.to_str().unwrap(), "--arity", "5"],
        vec!["koszul", assoc.to_str().unwrap(), "--arity", "5"],
        vec!["lagrange", "--series", "t - t^2 + 1/2 t^3", "--order", "8"],
        vec!["raney", "--seq", "0,2,0,1"],
    ];
    for args in invocations {
        let text = nsop(&args);
        let mut a = args.clone();
        a.extend(["--format", "json"]);
        let json = nsop(&a);
        assert_eq!((text.code, json.code), (0, 0));
        let mut number = String::new();
        for c in text.stdout.chars().chain([' ']) {
            if c.is_ascii_digit() {
                number.push(c);
            } else if !number.is_empty() {
                assert!(json.stdout.contains(&number), "{number} missing from JSON of {args:?}");
                number.clear();
            }
        }
    }
}

#[test]
fn identical_invocations_give_identical_reports() {
    let a = nsop(&["demo", "sklyanin", "--format", "json", "--timing"]);
    let b = nsop(&["demo", "sklyanin", "--format", "json", "--timing"]);
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        assert!(v["timing_ms"].is_number());
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
    let poly = presentation("polynomial.nsop");
    let p = poly.to_str().unwrap();
    assert_eq!(nsop(&["umin", p, "--arity", "5"]), nsop(&["umin", p, "--arity", "5"]));
}

#[test]
fn umax_of_polynomial_document_has_catalan_dims() {
    let j = json_of(&["dims", presentation("umax_polynomial.nsop").to_str().unwrap(), "--arity", "5"]);
    assert_eq!(table_column(&j, "dims", 1), [1, 1, 2, 5, 14].map(serde_json::Value::from));
}

#[test]
fn emitted_envelope_document_is_the_checked_in_one() {
    let out = nsop(&["umax", presentation("polynomial.nsop").to_str().unwrap(), "--arity", "5", "--emit"]);
    assert_eq!(out.code, 0);
    let checked_in = std::fs::read_to_string(presentation("umax_polynomial.nsop")).unwrap();
    assert_eq!(parse_document(&out.stdout).unwrap(), parse_document(&checked_in).unwrap());
}

#[test]
fn lagrange_verb_gives_catalan_numbers() {
    let j = json_of(&["lagrange", "--series", "t - t^2", "--order", "8"]);
    let catalan = [1, 1, 2, 5, 14, 42, 132, 429].map(|c| serde_json::Value::from(c.to_string()));
    let as_text = |v: Vec<serde_json::Value>| -> Vec<serde_json::Value> {
        v.into_iter().map(|x| serde_json::Value::from(x.to_string().trim_matches('"').to_string())).collect()
    };
    assert_eq!(as_text(table_column(&j, "inverse", 1)), catalan);
    assert_eq!(as_text(table_column(&j, "inverse", 2)), catalan);
    assert!(j["verdicts"][0]["holds"].as_bool().unwrap());
}

#[test]
fn failing_series_identity_is_reported_not_an_error() {
    let j = json_of(&["series-gk", "--series", "t + t^2", "--dual", "t - t^2"]);
    assert_eq!(j["verdicts"][0]["holds"], false);
    assert!(j["verdicts"][0]["detail"].as_str().unwrap().contains("t^3"));
}

#[test]
fn input_errors_exit_one() {
    let bad = scratch_file("bad.nsop", "algebra A generators x:1 relations x*y");
    let out = nsop(&["dims", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("bad.nsop:1:"), "{}", out.stderr);

    let missing = PathBuf::from("/nonexistent/doc.nsop");
    assert_eq!(nsop(&["dims", missing.to_str().unwrap()]).code, 1);
    assert_eq!(nsop(&["frobnicate"]).code, 1);
    assert_eq!(nsop(&["demo", "catalan", "--field", "4"]).code, 1);
    assert_eq!(nsop(&["lagrange", "--series", "1 + t", "--order", "4"]).code, 1);
    assert_eq!(nsop(&["raney", "--seq", "0,0"]).code, 1);
    let sk = presentation("sklyanin.nsop");
    assert_eq!(nsop(&["dims", sk.to_str().unwrap(), "--order", "a>b"]).code, 1);
}

#[test]
fn broken_complexes_exit_two() {
    let e = CliError::from(BarError::NotAComplex { n: 3, s: 2 });
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn help_exits_zero() {
    let out = nsop(&["--help"]);
    assert_eq!(out.code, 0);
    for verb in ["dims", "gb", "dual", "umin", "umax", "forget", "bar", "koszul", "series-gk", "series-backelin", "lagrange", "raney", "demo"] {
        assert!(out.stdout.contains(verb), "{verb}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch_file("report.json", "");
    let out = nsop(&["demo", "sklyanin", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), GOLDEN[0].1);
}

#[test]
fn sklyanin_demo_table_shapes() {
    let j = json_of(&["demo", "sklyanin"]);
    assert_eq!(table_column(&j, "algebra dims", 1), [1, 3, 6, 10].map(serde_json::Value::from));
    assert_eq!(table_column(&j, "orders", 2), vec![serde_json::Value::from(12); 6]);
    let realized = table_column(&j, "selections", 3);
    assert_eq!(realized.len(), 27);
    let orders: usize = realized.iter().map(|v| v.as_str().unwrap().split_whitespace().count()).sum();
    assert_eq!(orders, 6);
    let verdict = j["verdicts"].as_array().unwrap().iter().find(|v| v["name"] == "count > 10 for every order").unwrap();
    assert_eq!(verdict["holds"], true);
}
