//! Exact linear algebra over the rationals and over prime fields.
//!
//! Matrices pick a dense or sparse layout from their fill ratio at
//! construction time; every algorithm works on sparse rows internally, so the
//! layout never shows up in results. Elimination is fraction-free: rows are
//! combined as `p·r − c·s` and then rescaled by [`Field::normalize_row`]
//! (primitive integer rows over Q), and pivots are divided out only once the
//! echelon form is complete.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Default modulus of the prime-field fast path.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected vectors of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rational {value} has no image in F_{prime}")]
    NotRepresentable { value: String, prime: u64 },
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A coefficient field together with its arithmetic.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem, LinalgError>;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rational(&rat(n))
            .expect("integers are representable in every supported field")
    }

    /// Rescales a nonzero sparse row to a canonical representative of its line.
    fn normalize_row(&self, row: &mut [(usize, Self::Elem)]);
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational, LinalgError> {
        Ok(q.clone())
    }

    /// Clears denominators, divides by the content and makes the leading
    /// entry positive.
    fn normalize_row(&self, row: &mut [(usize, Rational)]) {
        if row.is_empty() {
            return;
        }
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut content = BigInt::zero();
        for (_, q) in row.iter_mut() {
            let n = q.numer() * (&lcm / q.denom());
            content = content.gcd(&n);
            *q = Rational::from_integer(n);
        }
        if row[0].1.is_negative() {
            content = -content;
        }
        if !content.is_one() {
            let c = Rational::from_integer(content);
            for (_, q) in row.iter_mut() {
                *q = &*q / &c;
            }
        }
    }
}

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !is_prime || p > u32::MAX as u64 {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits in u64")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, q: &Rational) -> Result<u64, LinalgError> {
        let d = self.reduce_int(q.denom());
        if d == 0 {
            return Err(LinalgError::NotRepresentable {
                value: q.to_string(),
                prime: self.p,
            });
        }
        Ok(self.mul(&self.reduce_int(q.numer()), &self.inv(&d)))
    }

    fn normalize_row(&self, row: &mut [(usize, u64)]) {
        if let Some((_, lead)) = row.first() {
            if *lead != 1 {
                let s = self.inv(lead);
                for (_, x) in row.iter_mut() {
                    *x = *x * s % self.p;
                }
            }
        }
    }
}

type SparseRow<E> = Vec<(usize, E)>;

#[derive(Debug, Clone, PartialEq)]
enum Storage<E> {
    Dense(Vec<E>),
    Sparse(Vec<SparseRow<E>>),
}

/// A rows × cols matrix over a [`Field`].
#[derive(Debug, Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    storage: Storage<F::Elem>,
}

/// Fill ratio below which a matrix is stored sparsely.
const SPARSE_THRESHOLD: f64 = 0.25;

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            storage: Storage::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        Self::from_sparse_rows(field, n, (0..n).map(|i| vec![(i, one.clone())]).collect())
    }

    /// Builds a matrix from dense rows; all rows must have length `cols`.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, LinalgError> {
        let mut sparse = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            sparse.push(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !field.is_zero(x))
                    .collect(),
            );
        }
        Ok(Self::from_sparse_rows(field, cols, sparse))
    }

    /// Builds a matrix from (row, col, value) triplets; repeated positions add up.
    pub fn from_triplets(
        field: F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F::Elem)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, F::Elem>> = vec![BTreeMap::new(); rows];
        for (r, c, x) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            let slot = acc[r].entry(c).or_insert_with(|| field.zero());
            *slot = field.add(slot, &x);
        }
        let sparse = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, x)| !field.is_zero(x)).collect())
            .collect();
        Self::from_sparse_rows(field, cols, sparse)
    }

    fn from_sparse_rows(field: F, cols: usize, rows: Vec<SparseRow<F::Elem>>) -> Self {
        let nrows = rows.len();
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let cells = nrows * cols;
        let storage = if cells == 0 || (nnz as f64) < SPARSE_THRESHOLD * cells as f64 {
            Storage::Sparse(rows)
        } else {
            let mut dense = vec![field.zero(); cells];
            for (r, row) in rows.into_iter().enumerate() {
                for (c, x) in row {
                    dense[r * cols + c] = x;
                }
            }
            Storage::Dense(dense)
        };
        Matrix {
            field,
            rows: nrows,
            cols,
            storage,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols + c].clone(),
            Storage::Sparse(rows) => rows[r]
                .iter()
                .find(|(j, _)| *j == c)
                .map(|(_, x)| x.clone())
                .unwrap_or_else(|| self.field.zero()),
        }
    }

    fn sparse_row(&self, r: usize) -> SparseRow<F::Elem> {
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols..(r + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, x)| !self.field.is_zero(x))
                .map(|(c, x)| (c, x.clone()))
                .collect(),
            Storage::Sparse(rows) => rows[r].clone(),
        }
    }

    fn sparse_rows(&self) -> Vec<SparseRow<F::Elem>> {
        (0..self.rows).map(|r| self.sparse_row(r)).collect()
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows)
            .map(|r| {
                let mut row = vec![self.field.zero(); self.cols];
                for (c, x) in self.sparse_row(r) {
                    row[c] = x;
                }
                row
            })
            .collect()
    }

    pub fn nonzero_count(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|x| !self.field.is_zero(x)).count(),
            Storage::Sparse(rows) => rows.iter().map(Vec::len).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_count() == 0
    }

    pub fn transpose(&self) -> Self {
        let triplets = (0..self.rows)
            .flat_map(|r| self.sparse_row(r).into_iter().map(move |(c, x)| (c, r, x)));
        Self::from_triplets(self.field.clone(), self.cols, self.rows, triplets)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let f = &self.field;
        let rhs_rows = rhs.sparse_rows();
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
            for (k, a) in self.sparse_row(r) {
                for (c, b) in &rhs_rows[k] {
                    let slot = acc.entry(*c).or_insert_with(|| f.zero());
                    *slot = f.add(slot, &f.mul(&a, b));
                }
            }
            out.push(acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect());
        }
        Ok(Self::from_sparse_rows(f.clone(), rhs.cols, out))
    }

    /// Converts every entry through `target.from_rational`-style mapping.
    pub fn map_into<G: Field>(
        &self,
        target: G,
        convert: impl Fn(&F::Elem) -> Result<G::Elem, LinalgError>,
    ) -> Result<Matrix<G>, LinalgError> {
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::new();
            for (c, x) in self.sparse_row(r) {
                let y = convert(&x)?;
                if !target.is_zero(&y) {
                    row.push((c, y));
                }
            }
            rows.push(row);
        }
        Ok(Matrix::from_sparse_rows(target, self.cols, rows))
    }

    pub fn rank(&self) -> usize {
        Echelon::build(&self.field, self.sparse_rows()).pivots.len()
    }

    /// Reduced row-echelon form and rank. Zero rows are dropped from the
    /// returned matrix, which therefore has `rank` rows.
    pub fn rref(&self) -> (Self, usize) {
        let rows = Echelon::build(&self.field, self.sparse_rows()).reduced(&self.field);
        let rank = rows.len();
        (Self::from_sparse_rows(self.field.clone(), self.cols, rows), rank)
    }

    /// Column positions of the pivots of the reduced row-echelon form.
    pub fn pivot_columns(&self) -> Vec<usize> {
        Echelon::build(&self.field, self.sparse_rows())
            .pivots
            .keys()
            .copied()
            .collect()
    }

    /// A basis of `{v : self · v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let rows = Echelon::build(f, self.sparse_rows()).reduced(f);
        let pivot_of: BTreeMap<usize, &SparseRow<F::Elem>> =
            rows.iter().map(|r| (r[0].0, r)).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_of.contains_key(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (&pc, row) in &pivot_of {
                if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                    v[pc] = f.neg(x);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.sparse_rows() == other.sparse_rows()
    }
}

/// Row echelon form keyed by pivot column; every stored row is normalized.
struct Echelon<E> {
    pivots: BTreeMap<usize, SparseRow<E>>,
}

impl<E: Clone> Echelon<E> {
    fn build<F: Field<Elem = E>>(f: &F, rows: Vec<SparseRow<E>>) -> Self {
        let mut pivots: BTreeMap<usize, SparseRow<E>> = BTreeMap::new();
        for mut row in rows {
            if row.is_empty() {
                continue;
            }
            f.normalize_row(&mut row);
            while let Some(&(lead, _)) = row.first() {
                match pivots.get(&lead) {
                    Some(p) => {
                        row = eliminate(f, &row, p, lead);
                        f.normalize_row(&mut row);
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        Echelon { pivots }
    }

    /// Back-substitutes and divides out the pivots.
    fn reduced<F: Field<Elem = E>>(mut self, f: &F) -> Vec<SparseRow<E>> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for (i, &pc) in cols.iter().enumerate().rev() {
            let pivot_row = self.pivots[&pc].clone();
            for &other in &cols[..i] {
                let row = self.pivots.get_mut(&other).unwrap();
                if row.iter().any(|(c, _)| *c == pc) {
                    let mut r = eliminate(f, row, &pivot_row, pc);
                    f.normalize_row(&mut r);
                    *row = r;
                }
            }
        }
        self.pivots
            .into_values()
            .map(|row| {
                let s = f.inv(&row[0].1);
                row.into_iter().map(|(c, x)| (c, f.mul(&x, &s))).collect()
            })
            .collect()
    }
}

/// `p·row − c·pivot` where `p` is the pivot's entry and `c` the row's entry at `col`.
fn eliminate<F: Field>(f: &F, row: &[(usize, F::Elem)], pivot: &[(usize, F::Elem)], col: usize) -> SparseRow<F::Elem> {
    let p = pivot
        .iter()
        .find(|(c, _)| *c == col)
        .map(|(_, x)| x.clone())
        .expect("pivot row has an entry at its pivot column");
    let c = row
        .iter()
        .find(|(j, _)| *j == col)
        .map(|(_, x)| x.clone())
        .unwrap_or_else(|| f.zero());
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let (col, val) = match (row.get(i), pivot.get(j)) {
            (Some((a, x)), Some((b, y))) if a == b => {
                i += 1;
                j += 1;
                (*a, f.sub(&f.mul(&p, x), &f.mul(&c, y)))
            }
            (Some((a, x)), Some((b, _))) if a < b => {
                i += 1;
                (*a, f.mul(&p, x))
            }
            (Some((a, x)), None) => {
                i += 1;
                (*a, f.mul(&p, x))
            }
            (_, Some((b, y))) => {
                j += 1;
                (*b, f.neg(&f.mul(&c, y)))
            }
            (None, None) => unreachable!(),
        };
        if !f.is_zero(&val) {
            out.push((col, val));
        }
    }
    out
}

fn check_lengths<E>(vectors: &[Vec<E>], ambient: usize) -> Result<(), LinalgError> {
    match vectors.iter().find(|v| v.len() != ambient) {
        Some(v) => Err(LinalgError::DimensionMismatch {
            expected: ambient,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

/// Canonical (reduced row-echelon) basis of the span of `vectors`.
pub fn span_basis<F: Field>(f: &F, vectors: &[Vec<F::Elem>], ambient: usize) -> Result<Vec<Vec<F::Elem>>, LinalgError> {
    check_lengths(vectors, ambient)?;
    let m = Matrix::from_rows(f.clone(), ambient, vectors.to_vec())?;
    Ok(m.rref().0.to_dense_rows())
}

/// Basis of `span(u) ∩ span(w)` inside `f^ambient`.
pub fn intersect<F: Field>(
    f: &F,
    u: &[Vec<F::Elem>],
    w: &[Vec<F::Elem>],
    ambient: usize,
) -> Result<Vec<Vec<F::Elem>>, LinalgError> {
    check_lengths(u, ambient)?;
    check_lengths(w, ambient)?;
    if u.is_empty() || w.is_empty() {
        return Ok(Vec::new());
    }
    // Columns are the u_i followed by the w_j; a kernel vector (α, β)
    // gives the common element Σ α_i u_i = −Σ β_j w_j.
    let ncols = u.len() + w.len();
    let triplets = u
        .iter()
        .chain(w.iter())
        .enumerate()
        .flat_map(|(j, v)| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(move |(i, x)| (i, j, x.clone()))
        });
    let m = Matrix::from_triplets(f.clone(), ambient, ncols, triplets);
    let common: Vec<Vec<F::Elem>> = m
        .kernel_basis()
        .into_iter()
        .map(|k| {
            let mut v = vec![f.zero(); ambient];
            for (alpha, ui) in k.iter().zip(u) {
                if f.is_zero(alpha) {
                    continue;
                }
                for (slot, x) in v.iter_mut().zip(ui) {
                    *slot = f.add(slot, &f.mul(alpha, x));
                }
            }
            v
        })
        .collect();
    span_basis(f, &common, ambient)
}

/// Basis of the annihilator of `span(u)` in the dual space, written in the
/// dual basis: covectors `φ` with `Σ φ_i v_i = 0` for every `v` in `u`.
pub fn annihilator<F: Field>(f: &F, u: &[Vec<F::Elem>], ambient: usize) -> Result<Vec<Vec<F::Elem>>, LinalgError> {
    check_lengths(u, ambient)?;
    let m = Matrix::from_rows(f.clone(), ambient, u.to_vec())?;
    Ok(m.kernel_basis())
}

pub fn rank_of<F: Field>(f: &F, vectors: &[Vec<F::Elem>], ambient: usize) -> Result<usize, LinalgError> {
    check_lengths(vectors, ambient)?;
    Ok(Matrix::from_rows(f.clone(), ambient, vectors.to_vec())?.rank())
}
