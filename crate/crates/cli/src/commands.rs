//! Verb dispatch: documents and flags in, [`Report`]s out.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use nsop::bar::{
    bar_complex_algebra, bar_complex_operad, homology_ranks, koszulness_from_table, BarError, ChainComplex, HomologyField,
    HomologyTable,
};
use nsop::envelope::raney::{lagrange_dimension, weighted_good_count};
use nsop::envelope::{
    leftmost_leaf_trees, quadratic_dual_algebra, quadratic_dual_operad_dims, raney_shift, u_max, u_min, AlgebraPresentation,
    AlgebraQuotient, Envelope, EnvelopeError, OperadPresentation, OperadQuotient, RaneySequence,
};
use nsop::linalg::Rational;
use nsop::rewriting::{RewritingSystem, WordOrder, Words};
use nsop::series::{check_backelin, check_gk, SeriesError, TruncatedSeries};
use nsop::tree::MonomialOrder;

use crate::demos;
use crate::document::{format_relation, Document, FieldSpec, Kind, Monomial, Summand, Term};
use crate::parser::{parse_document, parse_field, parse_series};
use crate::report::{Cell, Format, Report, Table};

pub const DEFAULT_WEIGHT: usize = 5;
pub const DEFAULT_ARITY: usize = 6;
pub const DEFAULT_SERIES_ORDER: usize = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Consistency(_) => 2,
        }
    }
}

impl From<EnvelopeError> for CliError {
    fn from(e: EnvelopeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<BarError> for CliError {
    fn from(e: BarError) -> Self {
        match e {
            BarError::NotAComplex { .. } => CliError::Consistency(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "nsop", version, about = "Enveloping operads, Gröbner bases and Koszul duality for graded algebras and ns operads")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Arity bound for operads and envelopes.
    #[arg(long, global = true)]
    pub arity: Option<usize>,
    /// Weight bound for algebras.
    #[arg(long, global = true)]
    pub weight: Option<usize>,
    /// Generator order such as `a>b>c`; truncation order for series verbs.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// `rational` or a prime.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// A polynomial in `t`, e.g. `t - t^2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub series: Option<String>,
    /// Second series for the functional-equation checks.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub dual: Option<String>,
    /// Comma-separated sequence for `raney`.
    #[arg(long, global = true)]
    pub seq: Option<String>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Print the resulting presentation document instead of a report.
    #[arg(long, global = true)]
    pub emit: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Verb {
    /// Dimensions of the presented algebra or operad.
    Dims { document: PathBuf },
    /// Reduced Gröbner basis up to the bound.
    Gb { document: PathBuf },
    /// Koszul dual dimensions of a quadratic presentation.
    Dual { document: PathBuf },
    /// Min-envelope operad of an algebra.
    Umin { document: PathBuf },
    /// Max-envelope operad of an algebra.
    Umax { document: PathBuf },
    /// Algebra recovered from the min-envelope through the first slot.
    Forget { document: PathBuf },
    /// Bar complex homology.
    Bar { document: PathBuf },
    /// Diagonal concentration of bar homology.
    Koszul { document: PathBuf },
    /// Checks `g(h(t)) = t`.
    SeriesGk,
    /// Checks `g(t) h(t) = 1`.
    SeriesBackelin,
    /// Lagrange inversion against direct inversion.
    Lagrange,
    /// Cyclic rotations of a sequence, or good-sequence counts.
    Raney,
    /// Bundled scenarios.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Catalan,
    Sklyanin,
    Duality,
    Raney,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match render(&cli) {
        Ok(text) => match &cli.flags.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome { code: 0, stdout: String::new(), stderr: String::new() },
                Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) },
            },
            None => Outcome { code: 0, stdout: text, stderr: String::new() },
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(cli: &Cli) -> CResult<String> {
    if let Some(text) = &cli.flags.field {
        parse_field(text).map_err(CliError::Input)?;
    }
    if cli.flags.emit {
        return emit_document(cli).map(|d| d.to_string());
    }
    let start = Instant::now();
    let mut report = execute(cli)?;
    if cli.flags.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let format = match cli.flags.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    Ok(report.emit(format))
}

/// The invocation minus output-only flags.
pub fn echo(cli: &Cli) -> String {
    let (verb, doc): (&str, Option<&Path>) = match &cli.verb {
        Verb::Dims { document } => ("dims", Some(document)),
        Verb::Gb { document } => ("gb", Some(document)),
        Verb::Dual { document } => ("dual", Some(document)),
        Verb::Umin { document } => ("umin", Some(document)),
        Verb::Umax { document } => ("umax", Some(document)),
        Verb::Forget { document } => ("forget", Some(document)),
        Verb::Bar { document } => ("bar", Some(document)),
        Verb::Koszul { document } => ("koszul", Some(document)),
        Verb::SeriesGk => ("series-gk", None),
        Verb::SeriesBackelin => ("series-backelin", None),
        Verb::Lagrange => ("lagrange", None),
        Verb::Raney => ("raney", None),
        Verb::Demo { name } => (
            match name {
                DemoName::Catalan => "demo catalan",
                DemoName::Sklyanin => "demo sklyanin",
                DemoName::Duality => "demo duality",
                DemoName::Raney => "demo raney",
            },
            None,
        ),
    };
    let mut parts = vec![verb.to_string()];
    if let Some(d) = doc {
        parts.push(d.display().to_string());
    }
    let f = &cli.flags;
    let mut flag = |name: &str, v: Option<String>| {
        if let Some(v) = v {
            parts.push(format!("--{name} {}", if v.contains(' ') { format!("{v:?}") } else { v }));
        }
    };
    flag("arity", f.arity.map(|x| x.to_string()));
    flag("weight", f.weight.map(|x| x.to_string()));
    flag("order", f.order.clone());
    flag("field", f.field.clone());
    flag("series", f.series.clone());
    flag("dual", f.dual.clone());
    flag("seq", f.seq.clone());
    parts.join(" ")
}

pub fn execute(cli: &Cli) -> CResult<Report> {
    let mut report = Report::new(echo(cli));
    let f = &cli.flags;
    match &cli.verb {
        Verb::Dims { document } => dims(&load(document)?, f, &mut report)?,
        Verb::Gb { document } => gb(&load(document)?, f, &mut report)?,
        Verb::Dual { document } => dual(&load(document)?, f, &mut report)?,
        Verb::Umin { document } => envelope(&load(document)?, f, false, &mut report)?,
        Verb::Umax { document } => envelope(&load(document)?, f, true, &mut report)?,
        Verb::Forget { document } => forget(&load(document)?, f, &mut report)?,
        Verb::Bar { document } => bar(&load(document)?, f, false, &mut report)?,
        Verb::Koszul { document } => bar(&load(document)?, f, true, &mut report)?,
        Verb::SeriesGk => series_check(f, true, &mut report)?,
        Verb::SeriesBackelin => series_check(f, false, &mut report)?,
        Verb::Lagrange => lagrange(f, &mut report)?,
        Verb::Raney => raney(f, &mut report)?,
        Verb::Demo { name } => {
            let inner = match name {
                DemoName::Catalan => demos::catalan(f.arity.unwrap_or(7))?,
                DemoName::Sklyanin => demos::sklyanin()?,
                DemoName::Duality => demos::duality(f.arity.unwrap_or(7))?,
                DemoName::Raney => demos::raney(f.arity.unwrap_or(8))?,
            };
            report.config = inner.config;
            report.tables = inner.tables;
            report.verdicts = inner.verdicts;
        }
    }
    Ok(report)
}

pub fn load(path: &Path) -> CResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| CliError::Input(format!("{}:{e}", path.display())))
}

fn weight_bound(doc: &Document, f: &Flags) -> usize {
    f.weight.or(doc.options.weight).unwrap_or(DEFAULT_WEIGHT)
}

fn arity_bound(doc: &Document, f: &Flags) -> usize {
    f.arity.or(doc.options.arity).unwrap_or(DEFAULT_ARITY)
}

fn field(doc: Option<&Document>, f: &Flags) -> CResult<HomologyField> {
    if let Some(text) = &f.field {
        return parse_field(text).map(|s| s.homology_field()).map_err(CliError::Input);
    }
    Ok(doc
        .and_then(|d| d.options.field.as_ref())
        .map_or(HomologyField::default(), FieldSpec::homology_field))
}

fn field_name(h: HomologyField) -> String {
    match h {
        HomologyField::Rational => "rational".into(),
        HomologyField::Prime(p) => format!("F_{p}"),
    }
}

/// Order permutation as labels, greatest first, from the flag or document.
fn order(doc: &Document, f: &Flags) -> CResult<Option<Vec<u32>>> {
    let names: Option<Vec<String>> = match &f.order {
        Some(text) => Some(text.split('>').map(|s| s.trim().to_string()).collect()),
        None => doc.options.order.clone(),
    };
    names.map(|n| doc.order_labels(&n).map_err(CliError::Input)).transpose()
}

fn order_text(doc: &Document, perm: &Option<Vec<u32>>) -> String {
    match perm {
        Some(p) => p.iter().map(|&l| doc.generators[l as usize].name.as_str()).collect::<Vec<_>>().join(">"),
        None => "declaration".into(),
    }
}

fn algebra(doc: &Document) -> CResult<AlgebraPresentation> {
    if doc.kind != Kind::Algebra {
        return Err(CliError::Input("this verb needs an algebra document".into()));
    }
    Ok(doc.to_algebra()?)
}

fn operad(doc: &Document) -> CResult<OperadPresentation> {
    Ok(doc.to_operad()?)
}

fn algebra_quotient(doc: &Document, f: &Flags, bound: usize) -> CResult<(AlgebraPresentation, AlgebraQuotient)> {
    let a = algebra(doc)?;
    let q = match order(doc, f)? {
        Some(p) => a.quotient_with_order(Words::new(WordOrder::deglex(a.weights().to_vec(), &p)), bound),
        None => a.quotient(bound),
    };
    Ok((a, q))
}

fn operad_quotient(doc: &Document, f: &Flags, bound: usize) -> CResult<(OperadPresentation, OperadQuotient)> {
    let p = operad(doc)?;
    let q = match order(doc, f)? {
        Some(perm) => p.quotient_with_order(MonomialOrder::path_deglex(&perm), bound),
        None => p.quotient(bound),
    };
    Ok((p, q))
}

pub fn rational_cell(r: &Rational) -> Cell {
    if r.is_integer() {
        if let Some(n) = r.to_integer().to_i128() {
            return Cell::Int(n);
        }
    }
    Cell::Text(r.to_string())
}

pub fn big_cell(n: &BigInt) -> Cell {
    n.to_i128().map_or_else(|| Cell::Text(n.to_string()), Cell::Int)
}

fn word_summands(names: &[String], terms: Vec<(&Vec<u32>, &Rational)>) -> Vec<Summand> {
    terms
        .into_iter()
        .map(|(w, c)| Summand {
            coeff: c.clone(),
            monomial: Monomial::Word(w.iter().map(|&l| names[l as usize].clone()).collect()),
        })
        .collect()
}

fn tree_summands(names: &[String], terms: Vec<(&nsop::tree::TreeMonomial, &Rational)>) -> Vec<Summand> {
    terms
        .into_iter()
        .map(|(t, c)| Summand {
            coeff: c.clone(),
            monomial: Monomial::Tree(Term::from_tree(t, names)),
        })
        .collect()
}

fn word_rules(sys: &RewritingSystem<Words>, names: &[String]) -> Table {
    let mut t = Table::new("groebner basis", &["index", "relation"]);
    for (i, r) in sys.rules().iter().enumerate() {
        t.push(vec![(i + 1).into(), format_relation(&word_summands(names, sys.sorted_terms(&r.element))).into()]);
    }
    t
}

fn tree_rules(sys: &RewritingSystem<nsop::rewriting::Trees>, names: &[String]) -> Table {
    let mut t = Table::new("groebner basis", &["index", "relation", "canonical"]);
    for (i, (r, canonical)) in sys.rules().iter().zip(sys.dump(names)).enumerate() {
        t.push(vec![
            (i + 1).into(),
            format_relation(&tree_summands(names, sys.sorted_terms(&r.element))).into(),
            canonical.into(),
        ]);
    }
    t
}

fn dims_table(label: &str, dims: &[usize], from: usize) -> Table {
    let mut t = Table::new("dims", &[label, "dim"]);
    for (n, &d) in dims.iter().enumerate().skip(from) {
        t.push(vec![n.into(), d.into()]);
    }
    t
}

fn dims(doc: &Document, f: &Flags, r: &mut Report) -> CResult<()> {
    match doc.kind {
        Kind::Algebra => {
            let w = weight_bound(doc, f);
            let (_, q) = algebra_quotient(doc, f, w)?;
            r.config("weight", w);
            r.config("order", order_text(doc, &order(doc, f)?));
            r.table(dims_table("weight", &q.dims(), 0));
        }
        Kind::Operad => {
            let n = arity_bound(doc, f);
            let (_, q) = operad_quotient(doc, f, n)?;
            r.config("arity", n);
            r.config("order", order_text(doc, &order(doc, f)?));
            r.table(dims_table("arity", &q.dims(), 1));
        }
    }
    Ok(())
}

fn gb(doc: &Document, f: &Flags, r: &mut Report) -> CResult<()> {
    let names = doc.names();
    let (bound, survivors) = match doc.kind {
        Kind::Algebra => {
            let w = weight_bound(doc, f);
            let (_, q) = algebra_quotient(doc, f, w)?;
            r.config("weight", w);
            r.table(word_rules(q.system(), &names));
            (w, q.system().critical_survivors(w).len())
        }
        Kind::Operad => {
            let n = arity_bound(doc, f);
            let (_, q) = operad_quotient(doc, f, n)?;
            r.config("arity", n);
            r.table(tree_rules(q.system(), &names));
            (n, q.system().critical_survivors(n).len())
        }
    };
    r.config("order", order_text(doc, &order(doc, f)?));
    r.verdict(
        "critical pairs resolve",
        survivors == 0,
        format!("{survivors} S-polynomial survivors up to {bound}"),
    );
    Ok(())
}

fn dual(doc: &Document, f: &Flags, r: &mut Report) -> CResult<()> {
    match doc.kind {
        Kind::Algebra => {
            let w = weight_bound(doc, f);
            let a = algebra(doc)?;
            let d = quadratic_dual_algebra(&a, w)?;
            r.config("weight", w);
            r.table(dims_table("weight", &d.dims, 0));
            let printed = Document::from_algebra(&format!("{}_dual", doc.name), &d.presentation);
            let mut rel = Table::new("dual relations", &["index", "relation"]);
            for (i, s) in printed.relations.iter().enumerate() {
                rel.push(vec![(i + 1).into(), format_relation(s).into()]);
            }
            r.table(rel);
            let g = a.quotient(w).hilbert_series();
            let v = check_backelin(&g, &d.euler)?;
            r.verdict("g_A(t) g_A!(-t) = 1", v.holds, failure_detail(v.first_failure));
        }
        Kind::Operad => {
            let n = arity_bound(doc, f);
            let p = operad(doc)?;
            let d = quadratic_dual_operad_dims(&p, n)?;
            r.config("arity", n);
            let mut t = Table::new("dims", &["arity", "weight", "dim"]);
            for (&(a, w), &dim) in &d.dims {
                t.push(vec![a.into(), w.into(), dim.into()]);
            }
            r.table(t);
            let g = dims_series(&p.quotient(n).dims(), n);
            let v = check_gk(&g, &d.euler)?;
            r.verdict("g_P(g_P!(t)) = t", v.holds, failure_detail(v.first_failure));
        }
    }
    Ok(())
}

fn emit_document(cli: &Cli) -> CResult<Document> {
    let f = &cli.flags;
    match &cli.verb {
        Verb::Umin { document } | Verb::Umax { document } => {
            let doc = load(document)?;
            let n = arity_bound(&doc, f);
            let (_, q) = algebra_quotient(&doc, f, n.saturating_sub(1))?;
            let max = matches!(cli.verb, Verb::Umax { .. });
            let env = if max { u_max(&q, n)? } else { u_min(&q, n)? };
            let mut out = Document::from_operad(&format!("{}_{}", if max { "umax" } else { "umin" }, doc.name), &env.presentation);
            out.options.arity = Some(n);
            Ok(out)
        }
        Verb::Dual { document } => {
            let doc = load(document)?;
            let d = quadratic_dual_algebra(&algebra(&doc)?, weight_bound(&doc, f))?;
            Ok(Document::from_algebra(&format!("{}_dual", doc.name), &d.presentation))
        }
        _ => Err(CliError::Input("--emit applies to umin, umax and dual".into())),
    }
}

fn envelope(doc: &Document, f: &Flags, max: bool, r: &mut Report) -> CResult<()> {
    let n = arity_bound(doc, f);
    if n < 2 {
        return Err(CliError::Input("envelopes need an arity bound of at least 2".into()));
    }
    let (_, q) = algebra_quotient(doc, f, n - 1)?;
    let env: Envelope = if max { u_max(&q, n)? } else { u_min(&q, n)? };
    let oq = env.quotient();
    r.config("arity", n);
    r.config("kind", if max { "max" } else { "min" });
    let mut gens = Table::new("generators", &["name", "arity", "weight"]);
    for (l, name) in env.presentation.names().iter().enumerate() {
        gens.push(vec![name.as_str().into(), env.presentation.arities()[l].into(), env.weight_of(l as u32).into()]);
    }
    r.table(gens);
    let mut ok = true;
    if max {
        let dims = q.dims().iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>();
        let g = q.hilbert_series();
        let mut t = Table::new("dims", &["arity", "dim", "leftmost_leaf", "raney", "lagrange"]);
        for k in 1..=n {
            let ll = leftmost_leaf_trees(&env.generators(), k).len();
            let ra = weighted_good_count(&dims, k);
            let la = lagrange_dimension(&g, k);
            ok &= BigInt::from(ll) == ra && BigInt::from(oq.dim(k)) == ra && Rational::from_integer(ra.clone()) == la;
            t.push(vec![k.into(), oq.dim(k).into(), ll.into(), big_cell(&ra), rational_cell(&la)]);
        }
        r.table(t);
        r.verdict("dimension counts agree", ok, "normal forms, leftmost-leaf trees, Raney sum, Lagrange coefficient");
    } else {
        let mut t = Table::new("dims", &["arity", "dim", "algebra_dim"]);
        for k in 1..=n {
            ok &= oq.dim(k) == q.dim(k - 1);
            t.push(vec![k.into(), oq.dim(k).into(), q.dim(k - 1).into()]);
        }
        r.table(t);
        r.verdict("dim U(n) = dim A(n-1)", ok, "");
    }
    let sys = RewritingSystem::from_relations(env.presentation.tree_kind(), env.presentation.relations());
    let survivors = sys.critical_survivors(n).len();
    r.verdict(
        "defining relations form a Groebner basis",
        survivors == 0,
        format!("{survivors} S-polynomial survivors up to arity {n}"),
    );
    Ok(())
}

fn format_combination(terms: &BTreeMap<String, Rational>) -> String {
    let summands: Vec<Summand> = terms
        .iter()
        .map(|(name, c)| Summand {
            coeff: c.clone(),
            monomial: Monomial::Word(vec![name.clone()]),
        })
        .collect();
    format_relation(&summands)
}

fn forget(doc: &Document, f: &Flags, r: &mut Report) -> CResult<()> {
    let w = weight_bound(doc, f);
    let (_, q) = algebra_quotient(doc, f, w)?;
    let table = q.multiplication_table(w)?;
    let umin = u_min(&q, w + 1)?.quotient();
    let recovered = umin.forget_to_algebra(w)?;
    r.config("weight", w);
    let mut t = Table::new("products", &["left", "right", "product"]);
    for ((x, y), p) in &recovered.products {
        t.push(vec![x.as_str().into(), y.as_str().into(), format_combination(p).into()]);
    }
    r.table(t);
    r.verdict("structure constants match the algebra", recovered == table, format!("weights up to {w}"));
    Ok(())
}

fn homology_table(c: &ChainComplex, h: &HomologyTable, label: &str) -> Table {
    let mut t = Table::new("homology", &[label, "s", "chain", "homology", "diagonal"]);
    for (&(n, s), &d) in &h.chain {
        t.push(vec![n.into(), s.into(), d.into(), h.get(n, s).into(), (c.diagonal(n) == Some(s)).into()]);
    }
    t
}

fn bar(doc: &Document, f: &Flags, koszul: bool, r: &mut Report) -> CResult<()> {
    let field = field(Some(doc), f)?;
    let (label, bound) = match doc.kind {
        Kind::Algebra => ("weight", weight_bound(doc, f)),
        Kind::Operad => ("arity", arity_bound(doc, f)),
    };
    let (complex, expected, series) = match doc.kind {
        Kind::Algebra => {
            let (a, q) = algebra_quotient(doc, f, bound)?;
            if koszul && !a.is_quadratic() {
                return Err(CliError::Input("koszul needs weight-one generators and quadratic relations".into()));
            }
            let expected = koszul.then(|| quadratic_dual_algebra(&a, bound)).transpose()?.map(|d| d.dims);
            (bar_complex_algebra(&q, bound)?, expected, (q.hilbert_series(), true))
        }
        Kind::Operad => {
            let (p, q) = operad_quotient(doc, f, bound)?;
            if koszul && !p.is_quadratic() {
                return Err(CliError::Input("koszul needs quadratic relations".into()));
            }
            let expected = koszul
                .then(|| quadratic_dual_operad_dims(&p, bound))
                .transpose()?
                .map(|d| (0..=bound).map(|n| d.total(n)).collect::<Vec<_>>());
            (bar_complex_operad(&q, bound)?, expected, (dims_series(&q.dims(), bound), false))
        }
    };
    let h = homology_ranks(&complex, field)?;
    r.config(label, bound);
    r.config("field", field_name(field));
    r.config("order", order_text(doc, &order(doc, f)?));
    r.table(homology_table(&complex, &h, label));
    r.verdict("d^2 = 0", true, "checked exactly over the rationals");
    let v = koszulness_from_table(&h);
    let detail = match v.offending {
        Some((n, s)) => format!("nonzero homology at ({label} {n}, s {s})"),
        None => format!("up to {label} {bound}"),
    };
    r.verdict("homology concentrated on the diagonal", v.holds, detail);
    if let Some(expected) = expected {
        let got = h.dual_from_diagonal();
        let mut t = Table::new("diagonal", &[label, "diagonal_dim", "dual_dim"]);
        let from = usize::from(doc.kind == Kind::Operad);
        for n in from..=bound {
            t.push(vec![n.into(), got[n].into(), expected[n].into()]);
        }
        r.table(t);
        r.verdict("diagonal matches the quadratic dual", got == expected, "");
        let (g, is_algebra) = series;
        let e = h.euler_series();
        let v = if is_algebra { check_backelin(&g, &e)? } else { check_gk(&g, &e)? };
        let name = if is_algebra { "g_A(t) * euler(B) = 1" } else { "g_P(euler(B)) = t" };
        r.verdict(name, v.holds, failure_detail(v.first_failure));
    }
    Ok(())
}

fn dims_series(dims: &[usize], order: usize) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(order, dims.iter().map(|&d| Rational::from_integer(d.into())))
}

fn failure_detail(first: Option<usize>) -> String {
    match first {
        Some(k) => format!("first failure at t^{k}"),
        None => String::new(),
    }
}

fn series_order(f: &Flags) -> CResult<usize> {
    match &f.order {
        Some(o) => o.trim().parse().map_err(|_| CliError::Input(format!("--order must be a truncation order here, got {o}"))),
        None => Ok(DEFAULT_SERIES_ORDER),
    }
}

fn required_series(which: &str, text: &Option<String>, order: usize) -> CResult<TruncatedSeries> {
    let text = text.as_ref().ok_or_else(|| CliError::Input(format!("--{which} is required")))?;
    parse_series(text, order).map_err(CliError::Input)
}

fn series_check(f: &Flags, gk: bool, r: &mut Report) -> CResult<()> {
    let n = series_order(f)?;
    let g = required_series("series", &f.series, n)?;
    let h = required_series("dual", &f.dual, n)?;
    r.config("order", n);
    let (lhs, v, name) = if gk {
        (g.compose(&h)?, check_gk(&g, &h)?, "g(h(t)) = t")
    } else {
        (g.try_mul(&h)?, check_backelin(&g, &h)?, "g(t) h(t) = 1")
    };
    let mut t = Table::new("coefficients", &["power", "value"]);
    for k in 0..=n {
        t.push(vec![k.into(), rational_cell(&lhs.coeff(k))]);
    }
    r.table(t);
    r.verdict(name, v.holds, failure_detail(v.first_failure));
    Ok(())
}

fn lagrange(f: &Flags, r: &mut Report) -> CResult<()> {
    let n = series_order(f)?;
    let s = required_series("series", &f.series, n)?;
    let inv = s.invert_composition()?;
    r.config("order", n);
    let mut t = Table::new("inverse", &["n", "lagrange", "inverse"]);
    let mut ok = true;
    for k in 1..=n {
        let l = s.lagrange_coefficient(k)?;
        ok &= l == inv.coeff(k);
        t.push(vec![k.into(), rational_cell(&l), rational_cell(&inv.coeff(k))]);
    }
    r.table(t);
    r.verdict("lagrange coefficients equal the compositional inverse", ok, format!("n = 1..{n}"));
    Ok(())
}

fn raney(f: &Flags, r: &mut Report) -> CResult<()> {
    let Some(text) = &f.seq else {
        let n = f.arity.unwrap_or(8);
        let inner = demos::raney(n)?;
        r.config = inner.config;
        r.tables = inner.tables;
        r.verdicts = inner.verdicts;
        return Ok(());
    };
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| CliError::Input(format!("bad sequence entry {p:?}"))))
        .collect::<CResult<_>>()?;
    let s = RaneySequence::new(parts)?;
    let shift = raney_shift(&s);
    r.config("shift", shift);
    let mut t = Table::new("rotations", &["shift", "sequence", "good"]);
    let mut good = 0;
    for k in 0..s.len() {
        let rot = s.rotate_left(k);
        good += usize::from(rot.is_good());
        let seq = rot.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        t.push(vec![k.into(), seq.into(), rot.is_good().into()]);
    }
    r.table(t);
    // Periodic sequences repeat their good rotation, so count distinct ones.
    let distinct: std::collections::BTreeSet<Vec<usize>> =
        (0..s.len()).map(|k| s.rotate_left(k)).filter(|x| x.is_good()).map(|x| x.parts().to_vec()).collect();
    r.verdict("exactly one good rotation", distinct.len() == 1 && good >= 1, format!("smallest good shift {shift}"));
    Ok(())
}
