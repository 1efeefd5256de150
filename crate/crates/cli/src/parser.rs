//! Lexer and recursive-descent parser for presentation documents.
//!
//! ```text
//! document   := header generators relations options?
//! header     := ("algebra" | "operad") IDENT
//! generators := "generators" gen ("," gen)*        gen := IDENT ":" NAT
//! relations  := "relations" (expr ("," expr)* ","?)?
//! expr       := ["-"] summand (("+" | "-") summand)*
//! summand    := [NAT ["/" NAT] ["*"]] monomial
//! monomial   := IDENT ("*" IDENT)*                       (algebras)
//!             | IDENT | "(" monomial "o" NAT monomial ")" (operads)
//! options    := "options" (key "=" value)*
//! ```
//!
//! Commas between relations may be omitted unless the next relation starts
//! with a minus sign. `o` and `o<digits>` are reserved for composition.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use nsop::linalg::Rational;

use crate::document::{Document, FieldSpec, Generator, Kind, Monomial, Options, Summand, Term};

/// Largest accepted generator weight or arity.
const MAX_DEGREE: usize = 64;

const KEYWORDS: [&str; 5] = ["algebra", "operad", "generators", "relations", "options"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Character(char),
    #[error("decimal literals are not allowed; write p/q")]
    Decimal,
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator {0} declared twice")]
    Duplicate(String),
    #[error("{0} is a reserved word")]
    Reserved(String),
    #[error("{0}")]
    Degree(String),
    #[error("slot {slot} does not exist on a term of arity {arity}")]
    Slot { slot: usize, arity: usize },
    #[error("inhomogeneous relation: {what} {first} and {second}")]
    Inhomogeneous { what: &'static str, first: usize, second: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{0}")]
    Option(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigInt),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let err = |kind| ParseError { line: l, column: col, kind };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_whitespace() {
            bump(&mut chars);
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_') {
                s.push(bump(&mut chars));
            }
            out.push(Spanned { tok: Tok::Ident(s), line: l, column: col });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            if chars.peek() == Some(&'.') {
                return Err(err(ParseErrorKind::Decimal));
            }
            out.push(Spanned { tok: Tok::Nat(s.parse().unwrap()), line: l, column: col });
        } else {
            let sym = match c {
                '\u{2212}' | '\u{2013}' => '-',
                '\u{2218}' => 'o',
                c if ",:*/+-()=>".contains(c) => c,
                c => return Err(err(ParseErrorKind::Character(c))),
            };
            bump(&mut chars);
            let tok = if sym == 'o' { Tok::Ident("o".into()) } else { Tok::Sym(sym) };
            out.push(Spanned { tok, line: l, column: col });
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

fn is_reserved(s: &str) -> bool {
    KEYWORDS.contains(&s) || (s.starts_with('o') && s[1..].chars().all(|c| c.is_ascii_digit()))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    kind: Kind,
    degrees: HashMap<String, usize>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.column)
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.here();
        ParseError { line, column, kind }
    }

    fn expected(&self, what: &str) -> ParseError {
        self.error_here(ParseErrorKind::Syntax {
            expected: what.into(),
            found: self.peek().describe(),
        })
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.expected(&format!("`{c}`")))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.at_keyword(kw) {
            self.next();
            Ok(())
        } else {
            Err(self.expected(&format!("`{kw}`")))
        }
    }

    fn name(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if is_reserved(&s) => Err(self.error_here(ParseErrorKind::Reserved(s))),
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.expected(what)),
        }
    }

    fn nat(&mut self, what: &str) -> PResult<usize> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                let v = usize::try_from(&n).map_err(|_| self.error_here(ParseErrorKind::Degree(format!("{n} is too large"))))?;
                self.next();
                Ok(v)
            }
            _ => Err(self.expected(what)),
        }
    }

    fn generator_ref(&mut self) -> PResult<String> {
        let (line, column) = self.here();
        let name = self.name("a generator")?;
        if !self.degrees.contains_key(&name) {
            return Err(ParseError { line, column, kind: ParseErrorKind::UnknownGenerator(name) });
        }
        Ok(name)
    }

    fn header(&mut self) -> PResult<(Kind, String)> {
        let kind = if self.at_keyword("algebra") {
            Kind::Algebra
        } else if self.at_keyword("operad") {
            Kind::Operad
        } else {
            return Err(self.expected("`algebra` or `operad`"));
        };
        self.next();
        Ok((kind, self.name("a document name")?))
    }

    fn generators(&mut self) -> PResult<Vec<Generator>> {
        self.expect_keyword("generators")?;
        let mut out = Vec::new();
        loop {
            let (line, column) = self.here();
            let name = self.name("a generator name")?;
            if self.degrees.contains_key(&name) {
                return Err(ParseError { line, column, kind: ParseErrorKind::Duplicate(name) });
            }
            self.expect_sym(':')?;
            let (dl, dc) = self.here();
            let degree = self.nat(if self.kind == Kind::Algebra { "a weight" } else { "an arity" })?;
            let bad = match self.kind {
                _ if degree > MAX_DEGREE => Some("degree too large"),
                Kind::Algebra if degree == 0 => Some("algebra generators need weight at least 1"),
                Kind::Operad if degree < 2 => Some("operad generators need arity at least 2"),
                _ => None,
            };
            if let Some(msg) = bad {
                return Err(ParseError { line: dl, column: dc, kind: ParseErrorKind::Degree(msg.into()) });
            }
            self.degrees.insert(name.clone(), degree);
            out.push(Generator { name, degree });
            if !self.eat_sym(',') {
                return Ok(out);
            }
        }
    }

    fn coefficient(&mut self) -> PResult<Option<Rational>> {
        let Tok::Nat(p) = self.peek().clone() else {
            return Ok(None);
        };
        self.next();
        let mut c = Rational::from_integer(p);
        if self.eat_sym('/') {
            let Tok::Nat(q) = self.peek().clone() else {
                return Err(self.expected("a denominator"));
            };
            if q.is_zero() {
                return Err(self.error_here(ParseErrorKind::ZeroDenominator));
            }
            self.next();
            c /= Rational::from_integer(q);
        }
        self.eat_sym('*');
        Ok(Some(c))
    }

    /// Returns the term and its arity.
    fn tree_term(&mut self) -> PResult<(Term, usize)> {
        if self.eat_sym('(') {
            let (left, la) = self.tree_term()?;
            let slot = match self.peek().clone() {
                Tok::Ident(s) if s == "o" => {
                    self.next();
                    self.nat("a slot number")?
                }
                Tok::Ident(s) if is_reserved(&s) && s.starts_with('o') => {
                    self.next();
                    s[1..].parse().map_err(|_| self.expected("a slot number"))?
                }
                _ => return Err(self.expected("`o`")),
            };
            let (sl, sc) = self.here();
            let (right, ra) = self.tree_term()?;
            self.expect_sym(')')?;
            if slot == 0 || slot > la {
                return Err(ParseError { line: sl, column: sc, kind: ParseErrorKind::Slot { slot, arity: la } });
            }
            Ok((Term::Compose(Box::new(left), slot, Box::new(right)), la + ra - 1))
        } else {
            let g = self.generator_ref()?;
            let a = self.degrees[&g];
            Ok((Term::Gen(g), a))
        }
    }

    /// Returns the monomial and its weight (algebras) or arity (operads).
    fn monomial(&mut self) -> PResult<(Monomial, usize)> {
        match self.kind {
            Kind::Algebra => {
                let mut word = vec![self.generator_ref()?];
                while *self.peek() == Tok::Sym('*') {
                    self.next();
                    word.push(self.generator_ref()?);
                }
                let w = word.iter().map(|g| self.degrees[g]).sum();
                Ok((Monomial::Word(word), w))
            }
            Kind::Operad => {
                let (t, a) = self.tree_term()?;
                Ok((Monomial::Tree(t), a))
            }
        }
    }

    fn summand(&mut self, negative: bool) -> PResult<(Summand, usize, (usize, usize))> {
        let at = self.here();
        let coeff = self.coefficient()?.unwrap_or_else(Rational::one);
        let (monomial, size) = self.monomial()?;
        let coeff = if negative { -coeff } else { coeff };
        Ok((Summand { coeff, monomial }, size, at))
    }

    fn starts_summand(&self) -> bool {
        match self.peek() {
            Tok::Nat(_) | Tok::Sym('(') => true,
            Tok::Ident(s) => !KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn expression(&mut self) -> PResult<Vec<Summand>> {
        let negative = self.eat_sym('-');
        let (first, size, _) = self.summand(negative)?;
        let mut terms = vec![first];
        loop {
            let negative = match self.peek() {
                Tok::Sym('+') => false,
                Tok::Sym('-') => true,
                _ => return Ok(terms),
            };
            self.next();
            let (s, sz, (line, column)) = self.summand(negative)?;
            if sz != size {
                let what = if self.kind == Kind::Algebra { "weights" } else { "arities" };
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::Inhomogeneous { what, first: size, second: sz },
                });
            }
            terms.push(s);
        }
    }

    fn relations(&mut self) -> PResult<Vec<Vec<Summand>>> {
        self.expect_keyword("relations")?;
        let mut out = Vec::new();
        let mut after_separator = true;
        loop {
            // An expression consumes every `+`/`-` that follows it, so a
            // relation opening with `-` is only recognized after a comma.
            let starts = self.starts_summand() || (after_separator && *self.peek() == Tok::Sym('-'));
            if !starts {
                return Ok(out);
            }
            out.push(self.expression()?);
            after_separator = self.eat_sym(',');
        }
    }

    fn options(&mut self, names: &[Generator]) -> PResult<Options> {
        let mut o = Options::default();
        if !self.at_keyword("options") {
            return Ok(o);
        }
        self.next();
        while let Tok::Ident(key) = self.peek().clone() {
            let (line, column) = self.here();
            let dup = |o: &Options| match key.as_str() {
                "arity" => o.arity.is_some(),
                "weight" => o.weight.is_some(),
                "order" => o.order.is_some(),
                "field" => o.field.is_some(),
                _ => false,
            };
            if dup(&o) {
                return Err(ParseError { line, column, kind: ParseErrorKind::Option(format!("option {key} given twice")) });
            }
            self.next();
            self.expect_sym('=')?;
            match key.as_str() {
                "arity" => o.arity = Some(self.nat("an arity bound")?),
                "weight" => o.weight = Some(self.nat("a weight bound")?),
                "order" => {
                    let mut perm = vec![self.generator_ref()?];
                    while self.eat_sym('>') {
                        perm.push(self.generator_ref()?);
                    }
                    let mut sorted = perm.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != perm.len() || perm.len() != names.len() {
                        return Err(ParseError {
                            line,
                            column,
                            kind: ParseErrorKind::Option("order must list every generator exactly once".into()),
                        });
                    }
                    o.order = Some(perm);
                }
                "field" => {
                    o.field = Some(match self.peek().clone() {
                        Tok::Ident(s) if s == "rational" => {
                            self.next();
                            FieldSpec::Rational
                        }
                        Tok::Nat(_) => {
                            let (l, c) = self.here();
                            let p = self.nat("a prime")?;
                            parse_prime(p).map_err(|m| ParseError { line: l, column: c, kind: ParseErrorKind::Option(m) })?
                        }
                        _ => return Err(self.expected("`rational` or a prime")),
                    })
                }
                _ => {
                    return Err(ParseError {
                        line,
                        column,
                        kind: ParseErrorKind::Option(format!("unknown option {key}")),
                    })
                }
            }
        }
        Ok(o)
    }
}

/// A field choice from its textual form: `rational` or a prime.
pub fn parse_field(text: &str) -> Result<FieldSpec, String> {
    if text == "rational" {
        return Ok(FieldSpec::Rational);
    }
    let p: usize = text.parse().map_err(|_| format!("field must be `rational` or a prime, got {text}"))?;
    parse_prime(p)
}

fn parse_prime(p: usize) -> Result<FieldSpec, String> {
    let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if is_prime && p < (1 << 31) {
        Ok(FieldSpec::Prime(p as u64))
    } else {
        Err(format!("{p} is not a prime below 2^31"))
    }
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        kind: Kind::Algebra,
        degrees: HashMap::new(),
    };
    let (kind, name) = p.header()?;
    p.kind = kind;
    let generators = p.generators()?;
    let relations = p.relations()?;
    let options = p.options(&generators)?;
    if *p.peek() != Tok::Eof {
        return Err(p.expected("a relation, `options` or end of input"));
    }
    Ok(Document { kind, name, generators, relations, options })
}

/// Parses a polynomial in `t` such as `t - t^2 + 3/2 t^4`.
pub fn parse_series(text: &str, order: usize) -> Result<nsop::series::TruncatedSeries, String> {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let cleaned = text.replace(['\u{2212}', '\u{2013}'], "-");
    let mut rest = cleaned.trim();
    if rest.is_empty() {
        return Err("empty series".into());
    }
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Rational::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if !first {
            return Err(format!("expected + or - before {rest:?}"));
        }
        first = false;
        let end = rest
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map_or(rest.len(), |(k, _)| k);
        let term = rest[..end].trim();
        rest = rest[end..].trim_start();
        let (coef, power) = parse_series_term(term)?;
        if power <= order {
            coeffs[power] += sign * coef;
        }
    }
    Ok(nsop::series::TruncatedSeries::from_coeffs(order, coeffs))
}

fn parse_series_term(term: &str) -> Result<(Rational, usize), String> {
    let bad = || format!("cannot read series term {term:?}");
    let (coef_part, var_part) = match term.find('t') {
        Some(k) => (term[..k].trim().trim_end_matches('*').trim(), Some(term[k + 1..].trim())),
        None => (term, None),
    };
    let coef = if coef_part.is_empty() {
        Rational::one()
    } else {
        if coef_part.contains('.') {
            return Err("decimal literals are not allowed; write p/q".into());
        }
        coef_part.parse::<Rational>().map_err(|_| bad())?
    };
    let power = match var_part {
        None => 0,
        Some("") => 1,
        Some(v) => v.strip_prefix('^').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?,
    };
    Ok((coef, power))
}
