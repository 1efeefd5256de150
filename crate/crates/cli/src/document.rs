//! Presentation documents and their canonical printed form.

use std::fmt::{self, Write as _};

use num_traits::{One, Signed, Zero};

use nsop::bar::HomologyField;
use nsop::envelope::{AlgebraPresentation, EnvelopeError, OperadPresentation};
use nsop::linalg::Rational;
use nsop::rewriting::{OperadElement, WordElement};
use nsop::tree::{Node, TreeMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Operad,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Operad => "operad",
        }
    }
}

/// A generator with its weight (algebras) or arity (operads).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// Tree term: a generator, or `(left o slot right)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Gen(String),
    Compose(Box<Term>, usize, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Monomial {
    Word(Vec<String>),
    Tree(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub coeff: Rational,
    pub monomial: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn homology_field(&self) -> HomologyField {
        match self {
            FieldSpec::Rational => HomologyField::Rational,
            FieldSpec::Prime(p) => HomologyField::Prime(*p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub arity: Option<usize>,
    pub weight: Option<usize>,
    /// Generator names, greatest first.
    pub order: Option<Vec<String>>,
    pub field: Option<FieldSpec>,
}

impl Options {
    pub fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub kind: Kind,
    pub name: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<Vec<Summand>>,
    pub options: Options,
}

impl Term {
    pub fn arity(&self, arity_of: &impl Fn(&str) -> Option<usize>) -> Option<usize> {
        match self {
            Term::Gen(g) => arity_of(g),
            Term::Compose(a, _, b) => Some(a.arity(arity_of)? + b.arity(arity_of)? - 1),
        }
    }

    fn to_tree(&self, index_of: &impl Fn(&str) -> (u32, usize)) -> TreeMonomial {
        match self {
            Term::Gen(g) => {
                let (l, a) = index_of(g);
                TreeMonomial::corolla(l, a)
            }
            Term::Compose(a, i, b) => a
                .to_tree(index_of)
                .graft(*i, &b.to_tree(index_of))
                .expect("slots are checked when parsing"),
        }
    }

    /// Term for a tree monomial, grafting children from the last slot down
    /// so earlier slot numbers stay valid.
    pub fn from_tree(t: &TreeMonomial, names: &[String]) -> Term {
        fn build(t: &TreeMonomial, pos: usize, names: &[String]) -> Term {
            let label = t.nodes()[pos].label().expect("terms are rooted at a vertex");
            let mut term = Term::Gen(names[label as usize].clone());
            for (k, c) in t.children(pos).into_iter().enumerate().rev() {
                if t.nodes()[c] != Node::Leaf {
                    term = Term::Compose(Box::new(term), k + 1, Box::new(build(t, c, names)));
                }
            }
            term
        }
        build(t, 0, names)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(g) => write!(f, "{g}"),
            Term::Compose(a, i, b) => write!(f, "({a} o {i} {b})"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Word(w) => write!(f, "{}", w.join("*")),
            Monomial::Tree(t) => write!(f, "{t}"),
        }
    }
}

/// `a*b - 2 b*a + 1/3 c*c`.
pub fn format_relation(terms: &[Summand]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, s) in terms.iter().enumerate() {
        let neg = s.coeff.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = s.coeff.abs();
        if !abs.is_one() {
            write!(out, "{abs} ").unwrap();
        }
        write!(out, "{}", s.monomial).unwrap();
    }
    out
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.kind.keyword(), self.name)?;
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
        writeln!(f, "generators {}", gens.join(", "))?;
        writeln!(f, "relations")?;
        let n = self.relations.len();
        for (i, r) in self.relations.iter().enumerate() {
            writeln!(f, "  {}{}", format_relation(r), if i + 1 < n { "," } else { "" })?;
        }
        if !self.options.is_empty() {
            writeln!(f, "options")?;
            let o = &self.options;
            if let Some(a) = o.arity {
                writeln!(f, "  arity = {a}")?;
            }
            if let Some(w) = o.weight {
                writeln!(f, "  weight = {w}")?;
            }
            if let Some(ord) = &o.order {
                writeln!(f, "  order = {}", ord.join(" > "))?;
            }
            if let Some(fs) = &o.field {
                writeln!(f, "  field = {fs}")?;
            }
        }
        Ok(())
    }
}

impl Document {
    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    fn index(&self, name: &str) -> u32 {
        self.generators.iter().position(|g| g.name == name).expect("generators are resolved when parsing") as u32
    }

    /// Order permutation as label indices, greatest first.
    pub fn order_labels(&self, order: &[String]) -> Result<Vec<u32>, String> {
        let mut out = Vec::new();
        for n in order {
            match self.generators.iter().position(|g| &g.name == n) {
                Some(i) if !out.contains(&(i as u32)) => out.push(i as u32),
                Some(_) => return Err(format!("generator {n} repeated in order")),
                None => return Err(format!("unknown generator {n} in order")),
            }
        }
        if out.len() != self.generators.len() {
            return Err("order must list every generator exactly once".into());
        }
        Ok(out)
    }

    pub fn to_algebra(&self) -> Result<AlgebraPresentation, EnvelopeError> {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                WordElement::from_terms(r.iter().map(|s| match &s.monomial {
                    Monomial::Word(w) => (w.iter().map(|x| self.index(x)).collect(), s.coeff.clone()),
                    Monomial::Tree(_) => unreachable!("algebra documents hold words"),
                }))
            })
            .filter(|e| !e.is_zero())
            .collect();
        AlgebraPresentation::new(self.names(), self.generators.iter().map(|g| g.degree).collect(), relations)
    }

    pub fn to_operad(&self) -> Result<OperadPresentation, EnvelopeError> {
        let lookup = |n: &str| {
            let i = self.index(n);
            (i, self.generators[i as usize].degree)
        };
        let relations = self
            .relations
            .iter()
            .map(|r| {
                OperadElement::from_terms(r.iter().map(|s| match &s.monomial {
                    Monomial::Tree(t) => (t.to_tree(&lookup), s.coeff.clone()),
                    Monomial::Word(_) => unreachable!("operad documents hold trees"),
                }))
            })
            .filter(|e| !e.is_zero())
            .collect();
        OperadPresentation::new(self.names(), self.generators.iter().map(|g| g.degree).collect(), relations)
    }

    pub fn from_algebra(name: &str, a: &AlgebraPresentation) -> Document {
        let names = a.names();
        Document {
            kind: Kind::Algebra,
            name: name.into(),
            generators: names
                .iter()
                .zip(a.weights())
                .map(|(n, &w)| Generator { name: n.clone(), degree: w })
                .collect(),
            relations: a
                .relations()
                .iter()
                .map(|r| {
                    sorted_desc(r.terms().map(|(w, c)| Summand {
                        coeff: c.clone(),
                        monomial: Monomial::Word(w.iter().map(|&l| names[l as usize].clone()).collect()),
                    }))
                })
                .collect(),
            options: Options::default(),
        }
    }

    pub fn from_operad(name: &str, p: &OperadPresentation) -> Document {
        let names = p.names();
        let order = p.tree_kind();
        Document {
            kind: Kind::Operad,
            name: name.into(),
            generators: names
                .iter()
                .zip(p.arities())
                .map(|(n, &a)| Generator { name: n.clone(), degree: a })
                .collect(),
            relations: p
                .relations()
                .iter()
                .map(|r| {
                    let mut terms: Vec<(&TreeMonomial, &Rational)> = r.terms().collect();
                    terms.sort_by_key(|(t, _)| std::cmp::Reverse(nsop::rewriting::MonomialKind::key(&order, t)));
                    terms
                        .into_iter()
                        .map(|(t, c)| Summand {
                            coeff: c.clone(),
                            monomial: Monomial::Tree(Term::from_tree(t, names)),
                        })
                        .collect()
                })
                .collect(),
            options: Options::default(),
        }
    }
}

fn sorted_desc(terms: impl Iterator<Item = Summand>) -> Vec<Summand> {
    let mut v: Vec<Summand> = terms.filter(|s| !s.coeff.is_zero()).collect();
    v.sort_by(|a, b| match (&a.monomial, &b.monomial) {
        (Monomial::Word(x), Monomial::Word(y)) => (y.len(), y).cmp(&(x.len(), x)),
        _ => std::cmp::Ordering::Equal,
    });
    v
}
