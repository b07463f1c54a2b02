//! Exact linear algebra over a prime field.
//!
//! Matrices are dense and row-major with entries stored as reduced residues.
//! Every routine is deterministic: elimination always picks the leftmost
//! column with a nonzero entry and, within it, the smallest available row.
//! Matrices with zero rows or zero columns are legal and stand for the zero
//! maps to and from the zero space.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field `F_p` with `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u32,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: Self::DEFAULT_P }
    }
}

impl FieldSpec {
    pub const DEFAULT_P: u32 = 101;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(FieldSpec { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        ((a as u64 + p - b as u64) % p) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// A subspace given by the independent columns of `basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub basis: Matrix,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.cols
    }
}

/// Quotient of the codomain by the image of a matrix.
///
/// `projection` is `dim x rows` with `projection * m = 0`, and `section` is a
/// `rows x dim` choice of standard basis vectors with
/// `projection * section = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    pub dim: usize,
    pub projection: Matrix,
    pub section: Matrix,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed rows, reducing every entry mod p.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c) % field.p);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// A single column vector.
    pub fn column_vector(field: FieldSpec, entries: &[u32]) -> Self {
        Self::from_fn(field, entries.len(), 1, |r, _| entries[r])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let f = self.field;
        let p = f.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let acc = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
        }
        Matrix {
            rows: self.rows,
            cols: other.cols,
            field: f,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = self.field;
        Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let f = self.field;
        Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Horizontal concatenation; all blocks must have `rows` rows.
    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must have `cols` columns.
    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.set_block(off, 0, b);
            off += b.rows;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c))
    }

    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(r, prow);
            let inv = f.inv(m.get(prow, col));
            m.scale_row(prow, inv);
            for other in 0..m.rows {
                if other != prow {
                    let factor = m.get(other, col);
                    if factor != 0 {
                        m.add_row_multiple(other, prow, f.neg(factor));
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        let f = self.field;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul(*v, s);
        }
    }

    /// `row[dst] += s * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, s: u32) {
        let f = self.field;
        for c in 0..self.cols {
            let v = f.mul(self.data[src * self.cols + c], s);
            let d = &mut self.data[dst * self.cols + c];
            *d = f.add(*d, v);
        }
    }

    pub fn kernel_basis(&self) -> SubspaceBasis {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(reduced.get(i, fc)));
            }
        }
        SubspaceBasis {
            ambient_dim: self.cols,
            basis,
        }
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn image_basis(&self) -> SubspaceBasis {
        let pivots = self.rref().pivots;
        SubspaceBasis {
            ambient_dim: self.rows,
            basis: self.select_columns(&pivots),
        }
    }

    pub fn cokernel(&self) -> Cokernel {
        let f = self.field;
        let n = self.rows;
        let aug = Matrix::hstack(f, n, &[self, &Matrix::identity(f, n)]);
        let Rref {
            reduced,
            pivots,
            rank,
        } = aug.rref();
        debug_assert_eq!(rank, n);
        let split = pivots.iter().position(|&c| c >= self.cols).unwrap_or(n);
        let complement: Vec<usize> = pivots[split..].iter().map(|&c| c - self.cols).collect();
        let dim = complement.len();
        let projection = reduced.block(split, self.cols, dim, n);
        let mut section = Matrix::zeros(f, n, dim);
        for (k, &i) in complement.iter().enumerate() {
            section.set(i, k, 1);
        }
        Cokernel {
            dim,
            projection,
            section,
        }
    }

    /// Solves `self * X = rhs`, setting free variables to zero.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "solve: {:?} against right-hand side {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let f = self.field;
        let aug = Matrix::hstack(f, self.rows, &[self, rhs]);
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zeros(f, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, reduced.get(i, self.cols + j));
            }
        }
        Ok(x)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_isomorphism() {
            return None;
        }
        self.solve(&Matrix::identity(self.field, self.rows)).ok()
    }
}

impl fmt::Display for Matrix {
    /// Row-major literal: `[1 0 ; 2 3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, " ;")?;
            }
            for c in 0..self.cols {
                if r == 0 && c == 0 {
                    write!(f, "{}", self.get(r, c))?;
                } else {
                    write!(f, " {}", self.get(r, c))?;
                }
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}
