//! Exact dense linear algebra over a prime field `F_p`.
//!
//! Every Hom, Ext and translate computation in this crate reduces to kernels,
//! ranks and linear solves of small dense matrices. Entries are residues in
//! `[0, p)` stored as `u32`; products are taken in `u64` so any prime below
//! `2^31` is safe. Elimination always pivots on the first nonzero entry of a
//! column, which makes every result (echelon forms, kernel bases, particular
//! solutions) a deterministic function of the input.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default characteristic used when no `--field` is given.
pub const DEFAULT_PRIME: u32 = 32003;

/// A residue in `[0, p)`. The modulus lives in the surrounding [`PrimeField`].
pub type FieldElement = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrices are over different fields (F_{0} vs F_{1})")]
    FieldMismatch(u32, u32),
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> FieldElement {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(&self, mut base: FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = 1u32 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense row-major matrix over a prime field. Zero-sized shapes are legal and
/// stand for zero maps between zero-dimensional spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix {}x{} over {} [",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing each entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, field.reduce(v));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        debug_assert!(v < self.field.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != rhs.field {
            return Err(LinalgError::FieldMismatch(self.field.p, rhs.field.p));
        }
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let p = self.field.p as u64;
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        let mut acc = vec![0u64; rhs.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * rhs.get(k, c) as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.set(r, c, v as u32);
            }
        }
        Ok(out)
    }

    /// `self * rhs`, panicking on shape mismatch. For internal call sites whose
    /// shapes are fixed by construction.
    pub(crate) fn dot(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).expect("shape mismatch in internal product")
    }

    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let p = self.field.p as u64;
        Ok((0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p);
                s as u32
            })
            .collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: FieldElement) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { data, ..*self }
    }

    /// Stacks `blocks` along the diagonal.
    pub fn block_diagonal(field: PrimeField, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Horizontal concatenation; all parts must share the row count.
    pub fn hconcat(field: PrimeField, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in parts {
            assert_eq!(b.rows, rows);
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, c0 + c, b.get(r, c));
                }
            }
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form in place. Returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..self.cols {
                    self.data
                        .swap(src * self.cols + c, pivot_row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(pivot_row, col));
            for c in col..self.cols {
                let v = self.get(pivot_row, c);
                self.set(pivot_row, c, f.mul(v, inv));
            }
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(pivot_row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self * v = 0}`, one vector per free
    /// column, with a `1` in that free column (reduced echelon shape).
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// A solution of `self * x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(row, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `self * X = rhs` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for c in 0..rhs.cols {
            cols.push(self.solve(&rhs.column(c)).ok()??);
        }
        Some(Matrix::from_columns(self.field, self.cols, &cols))
    }
}

/// Rank of a family of vectors of equal length `dim`.
pub fn span_rank(field: PrimeField, dim: usize, vectors: &[Vec<FieldElement>]) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    let mut m = Matrix::zeros(field, vectors.len(), dim);
    for (r, v) in vectors.iter().enumerate() {
        for (c, &x) in v.iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m.rank()
}

/// A basis (as columns of reduced shape) of the span of `vectors`.
pub fn span_basis(
    field: PrimeField,
    dim: usize,
    vectors: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    let mut m = Matrix::zeros(field, vectors.len(), dim);
    for (r, v) in vectors.iter().enumerate() {
        for (c, &x) in v.iter().enumerate() {
            m.set(r, c, x);
        }
    }
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Extends a basis of a subspace `sub` of `F_p^dim` by standard basis vectors
/// to a basis of the whole space, returning only the added vectors.
pub fn complement_basis(
    field: PrimeField,
    dim: usize,
    sub: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    let mut current: Vec<Vec<FieldElement>> = span_basis(field, dim, sub);
    let mut rank = current.len();
    let mut added = Vec::new();
    for i in 0..dim {
        if rank == dim {
            break;
        }
        let mut e = vec![0; dim];
        e[i] = 1;
        current.push(e.clone());
        let r = span_rank(field, dim, &current);
        if r > rank {
            rank = r;
            added.push(e);
        } else {
            current.pop();
        }
    }
    added
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn rank_examples() {
        let k = f(32003);
        assert_eq!(Matrix::identity(k, 3).rank(), 3);
        assert_eq!(Matrix::zeros(k, 2, 5).rank(), 0);
        assert_eq!(Matrix::from_rows(k, &[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = f(32003);
        assert!(Matrix::identity(k, 3).kernel_basis().is_empty());
        let z = Matrix::zeros(k, 2, 3).kernel_basis();
        assert_eq!(z, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let ker = Matrix::from_rows(k, &[vec![1, 1, 0]]).kernel_basis();
        assert_eq!(ker.len(), 2);
        assert_eq!(ker[0], vec![32002, 1, 0]);
        assert_eq!(ker[1], vec![0, 0, 1]);
    }

    #[test]
    fn solve_examples() {
        let k = f(32003);
        let b = vec![5, 7, 11];
        assert_eq!(Matrix::identity(k, 3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(k, 2, 2).solve(&[1, 0]).unwrap(), None);
        assert_eq!(
            Matrix::from_rows(f(5), &[vec![2]]).solve(&[1]).unwrap(),
            Some(vec![3])
        );
        assert!(Matrix::identity(k, 2).solve(&[1]).is_err());
    }

    #[test]
    fn empty_shapes_are_zero_maps() {
        let k = f(3);
        let m = Matrix::zeros(k, 0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 4);
        let n = Matrix::zeros(k, 3, 0);
        assert_eq!(n.solve(&[0, 0, 0]).unwrap(), Some(vec![]));
        assert_eq!(n.solve(&[0, 1, 0]).unwrap(), None);
        assert_eq!(m.mul(&Matrix::zeros(k, 4, 2)).unwrap().shape(), (0, 2));
    }

    #[test]
    fn complement_fills_space() {
        let k = f(7);
        let sub = vec![vec![1, 1, 0]];
        let comp = complement_basis(k, 3, &sub);
        assert_eq!(comp.len(), 2);
        let mut all = sub.clone();
        all.extend(comp);
        assert_eq!(span_rank(k, 3, &all), 3);
    }

    fn arb_matrix() -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
        (
            prop::sample::select(vec![2u64, 3, 5, 32003]),
            1usize..6,
            1usize..6,
        )
            .prop_flat_map(|(p, r, c)| {
                (
                    Just(p),
                    prop::collection::vec(prop::collection::vec(-4i64..5, c), r),
                )
            })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank((p, rows) in arb_matrix()) {
            let m = Matrix::from_rows(f(p), &rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity((p, rows) in arb_matrix()) {
            let m = Matrix::from_rows(f(p), &rows);
            let ker = m.kernel_basis();
            prop_assert_eq!(m.cols(), m.rank() + ker.len());
            for v in &ker {
                prop_assert!(m.apply(v).unwrap().iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn solve_is_exact((p, rows) in arb_matrix(), seed in prop::collection::vec(0i64..100, 6)) {
            let k = f(p);
            let m = Matrix::from_rows(k, &rows);
            // b in the column space: always solvable
            let x0: Vec<u32> = (0..m.cols()).map(|i| k.reduce(seed[i])).collect();
            let b = m.apply(&x0).unwrap();
            let x = m.solve(&b).unwrap().expect("consistent system");
            prop_assert_eq!(m.apply(&x).unwrap(), b);
            // arbitrary b: any returned solution is exact
            let b2: Vec<u32> = (0..m.rows()).map(|i| k.reduce(seed[i] * 7 + 1)).collect();
            if let Some(x) = m.solve(&b2).unwrap() {
                prop_assert_eq!(m.apply(&x).unwrap(), b2);
            }
        }
    }
}
