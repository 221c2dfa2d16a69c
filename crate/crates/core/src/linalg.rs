//! Exact scalars over ℚ and 𝔽_p, dense matrices, and the subquotient
//! machinery every homology and page computation is built on.
//!
//! Scalars are always [`BigRational`]. Over a prime field the value is kept
//! as an integer residue in `[0, p)`, so the same storage serves both fields
//! and all arithmetic goes through [`Field`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Parse(format!("{p} is not a prime")))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    /// Parses `Q`, `F<p>` or `Fp:<p>`.
    pub fn parse(text: &str) -> Result<Field> {
        let t = text.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown field `{t}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field `{t}`")))?;
        Field::prime(p)
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    /// `(-1)^k` as a field element.
    pub fn sign(self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_int(-1)
        }
    }

    /// Brings an arbitrary rational into canonical form for this field.
    ///
    /// Panics over 𝔽_p if the denominator is divisible by `p`; parsing rejects
    /// such input before it reaches here.
    pub fn reduce(self, x: Scalar) -> Scalar {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = x.numer().mod_floor(&pb);
                let den = x.denom().mod_floor(&pb);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let den_inv = den.modpow(&(&pb - 2u32), &pb);
                Scalar::from_integer((num * den_inv).mod_floor(&pb))
            }
        }
    }

    fn residue(self, x: BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::from_integer(x),
            Field::Prime(p) => Scalar::from_integer(x.mod_floor(&BigInt::from(p))),
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(_) => self.residue(a.numer() + b.numer()),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(_) => self.residue(a.numer() - b.numer()),
        }
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(_) => self.residue(a.numer() * b.numer()),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(_) => self.residue(-a.numer()),
        }
    }

    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                Some(Scalar::from_integer(a.numer().modpow(&(&pb - 2u32), &pb)))
            }
        }
    }

    /// Parses a scalar written as `a`, `-a` or `a/b`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::Parse(format!("malformed scalar `{t}`"));
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        if let Field::Prime(p) = self {
            if (&d % BigInt::from(p)).is_zero() {
                return Err(Error::Parse(format!(
                    "scalar `{t}` has a denominator divisible by {p}"
                )));
            }
        }
        Ok(self.reduce(Scalar::new(n, d)))
    }

    /// Canonical text form: `a` or `a/b` in lowest terms, residues in `[0, p)`.
    pub fn format_scalar(self, x: &Scalar) -> String {
        if x.is_integer() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Dense row-major matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>], cols: usize) -> Matrix {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, field.reduce(x.clone()));
            }
        }
        m
    }

    /// Builds a matrix from small integer entries, handy in tests and builtins.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, field.from_int(x));
            }
        }
        m
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(&self.data[k], x);
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let p = f.mul(a, b);
                        out.add_to(i, j, &p);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            if !x.is_zero() {
                *x = f.mul(x, c);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x = f.add(x, y);
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form by Gauss–Jordan elimination. The pivot in
    /// each column is the first remaining row with a nonzero entry, so the
    /// result is reproducible. Returns the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            let mut support = Vec::new();
            for j in c..m.cols {
                let k = r * m.cols + j;
                if !m.data[k].is_zero() {
                    m.data[k] = f.mul(&m.data[k], &inv);
                    support.push(j);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for &j in &support {
                    let delta = f.mul(&factor, &m.data[r * m.cols + j]);
                    let k = i * m.cols + j;
                    m.data[k] = f.sub(&m.data[k], &delta);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the null space, one per free column, in
    /// increasing free-column order.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (col, &j) in free.iter().enumerate() {
            k.set(j, col, f.one());
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, j);
                if !x.is_zero() {
                    k.set(p, col, f.neg(x));
                }
            }
        }
        k
    }

    /// A basis of the column space chosen among the original columns.
    pub fn column_space_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Indices of a maximal linearly independent set of columns, greedy from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        self.solve_many(&rhs).pop().unwrap()
    }

    /// Solves `self · x = b` for every column `b` of `rhs` with a single elimination.
    pub fn solve_many(&self, rhs: &Matrix) -> Vec<Option<Vec<Scalar>>> {
        assert_eq!(self.rows, rhs.rows);
        let f = self.field;
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        let n = self.cols;
        let pivot_rows: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &c)| c < n)
            .map(|(i, &c)| (i, c))
            .collect();
        let rank = pivot_rows.len();
        (0..rhs.cols)
            .map(|k| {
                let col = n + k;
                if (rank..r.rows).any(|i| !r.get(i, col).is_zero()) {
                    return None;
                }
                let mut x = vec![f.zero(); n];
                for &(i, c) in &pivot_rows {
                    x[c] = r.get(i, col).clone();
                }
                Some(x)
            })
            .collect()
    }
}

/// `Z / B` for subspaces `B ⊆ Z` of a common ambient space, with chosen
/// lifts of a basis of the quotient.
#[derive(Clone, Debug)]
pub struct Subquotient {
    field: Field,
    ambient_dim: usize,
    cycles: Matrix,
    boundaries: Matrix,
    representatives: Matrix,
}

impl Subquotient {
    /// `z_span` and `b_span` are spanning sets given as matrix columns; they
    /// need not be independent.
    pub fn new(z_span: &Matrix, b_span: &Matrix) -> Result<Subquotient> {
        let field = z_span.field();
        let ambient_dim = z_span.rows();
        assert_eq!(b_span.rows(), ambient_dim);
        let cycles = z_span.column_space_basis();
        let boundaries = b_span.column_space_basis();
        if boundaries.cols() > 0 {
            let inside = cycles.solve_many(&boundaries);
            if let Some(j) = inside.iter().position(Option::is_none) {
                return Err(Error::Inconsistent(format!(
                    "boundary vector {j} does not lie in the cycle space"
                )));
            }
        }
        let joined = boundaries.hstack(&cycles);
        let reps: Vec<usize> = joined
            .independent_columns()
            .into_iter()
            .filter(|&j| j >= boundaries.cols())
            .collect();
        let representatives = joined.select_columns(&reps);
        Ok(Subquotient {
            field,
            ambient_dim,
            cycles,
            boundaries,
            representatives,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    pub fn cycles(&self) -> &Matrix {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Matrix {
        &self.boundaries
    }

    pub fn representatives(&self) -> &Matrix {
        &self.representatives
    }

    pub fn representative(&self, i: usize) -> Vec<Scalar> {
        self.representatives.column(i)
    }

    /// Coordinates of the class of each column of `vectors` with respect to
    /// the representatives; `None` when that column is not in `Z`.
    pub fn classes_of(&self, vectors: &Matrix) -> Vec<Option<Vec<Scalar>>> {
        let nb = self.boundaries.cols();
        let basis = self.boundaries.hstack(&self.representatives);
        basis
            .solve_many(vectors)
            .into_iter()
            .map(|x| x.map(|x| x[nb..].to_vec()))
            .collect()
    }

    pub fn class_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let m = Matrix::from_columns(self.field, self.ambient_dim, &[v.to_vec()]);
        self.classes_of(&m).pop().unwrap()
    }

    /// Whether `v` lies in `B`.
    pub fn is_boundary(&self, v: &[Scalar]) -> bool {
        match self.class_of(v) {
            Some(c) => c.iter().all(Zero::is_zero),
            None => false,
        }
    }
}

/// Sparse vector keyed by basis index; zero entries are never stored.
pub type SVec = std::collections::BTreeMap<usize, Scalar>;

/// `acc += c · v`.
pub fn axpy(f: Field, acc: &mut SVec, c: &Scalar, v: &SVec) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in v {
        add_entry(f, acc, i, &f.mul(c, x));
    }
}

/// `acc[i] += x`.
pub fn add_entry(f: Field, acc: &mut SVec, i: usize, x: &Scalar) {
    if x.is_zero() {
        return;
    }
    let y = match acc.get(&i) {
        Some(old) => f.add(old, x),
        None => x.clone(),
    };
    if y.is_zero() {
        acc.remove(&i);
    } else {
        acc.insert(i, y);
    }
}

pub fn dense(v: &SVec, dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

pub fn sparse(v: &[Scalar]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Small integers print faster in diagnostics.
pub fn scalar_to_i64(x: &Scalar) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn scalar_is_negative(x: &Scalar) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(Q, 2).rank(), 2);
        assert_eq!(Matrix::zeros(Q, 3, 4).rank(), 0);
        let f2 = Field::Prime(2);
        assert_eq!(Matrix::from_ints(f2, &[&[1, 1], &[1, 1]]).rank(), 1);
        // 2 vanishes in characteristic 2 only
        let m = Matrix::from_ints(Q, &[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::from_ints(f2, &[&[1, 1], &[1, -1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(Q, 3, 3).kernel_basis().cols(), 3);
        let m = Matrix::from_ints(Q, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert_eq!(Q.add(&v[0], &v[1]), Q.zero());
        assert!(!v[0].is_zero());
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![Q.from_int(3), Q.from_int(-1)];
        assert_eq!(Matrix::identity(Q, 2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(Q, 2, 2).solve(&b), None);
        let half = Matrix::from_ints(Q, &[&[2]]).solve(&[Q.one()]).unwrap();
        assert_eq!(half[0], Scalar::new(1.into(), 2.into()));
    }

    #[test]
    fn subquotient_examples() {
        let full = Matrix::identity(Q, 2);
        let none = Matrix::zeros(Q, 2, 0);
        assert_eq!(Subquotient::new(&full, &none).unwrap().dim(), 2);

        let line = Matrix::from_ints(Q, &[&[1], &[2]]);
        assert_eq!(Subquotient::new(&line, &line).unwrap().dim(), 0);

        let plane = Matrix::from_ints(Q, &[&[1, 0], &[0, 1], &[0, 0]]);
        let e1 = Matrix::from_ints(Q, &[&[1], &[0], &[0]]);
        let sq = Subquotient::new(&plane, &e1).unwrap();
        assert_eq!(sq.dim(), 1);
        let e2 = [Q.zero(), Q.one(), Q.zero()];
        assert_eq!(sq.class_of(&e2), Some(vec![Q.one()]));
        let e1_plus_e2 = [Q.one(), Q.one(), Q.zero()];
        assert_eq!(sq.class_of(&e1_plus_e2), Some(vec![Q.one()]));
        assert!(sq.is_boundary(&[Q.from_int(5), Q.zero(), Q.zero()]));
    }

    #[test]
    fn subquotient_rejects_boundaries_outside_cycles() {
        let e1 = Matrix::from_ints(Q, &[&[1], &[0]]);
        let e2 = Matrix::from_ints(Q, &[&[0], &[1]]);
        assert!(matches!(
            Subquotient::new(&e1, &e2),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let x = f5.parse_scalar("3/2").unwrap();
        assert_eq!(x, f5.from_int(4));
        assert_eq!(f5.inv(&f5.from_int(2)), Some(f5.from_int(3)));
        assert_eq!(f5.neg(&f5.one()), f5.from_int(4));
        assert!(f5.parse_scalar("1/5").is_err());
        assert!(Field::prime(4).is_err());
        assert_eq!(Field::parse("F2").unwrap(), Field::Prime(2));
        assert_eq!(Field::parse("Fp:7").unwrap(), Field::Prime(7));
        assert_eq!(Field::parse("Q").unwrap(), Q);
        assert_eq!(Q.format_scalar(&Q.parse_scalar("-6/4").unwrap()), "-3/2");
    }
}
