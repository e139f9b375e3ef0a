//! Exact arithmetic and linear algebra over the prime field F_d.
//!
//! Elements are stored as `u32` values reduced into `[0, d)`. Matrices are
//! dense and row-major. Nothing here allocates beyond the matrix itself, and
//! every value is immutable once built.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::check_cap;

/// Largest supported local dimension.
pub const MAX_DIM: u32 = 97;

/// A prime local dimension `d` with `2 <= d <= 97`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeDimension(u32);

fn is_prime(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Binary and unary field operations, see [`PrimeDimension::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    /// Multiplicative inverse of the first operand; the second is ignored.
    Inv,
    /// Additive inverse of the first operand; the second is ignored.
    Neg,
}

impl PrimeDimension {
    pub fn new(d: u32) -> Result<Self> {
        if d > MAX_DIM {
            return Err(Error::DimensionTooLarge(d));
        }
        if !is_prime(d) {
            return Err(Error::NotPrime(d));
        }
        Ok(Self(d))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary signed integer into `[0, d)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }

    /// Multiplicative inverse via Fermat: `a^(d-2)`.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a % self.0 == 0 {
            return Err(Error::InverseOfZero(self.0));
        }
        Ok(self.pow(a, self.0 - 2))
    }

    pub fn pow(self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Applies `op` to field elements `a` and `b`, which must lie in `[0, d)`.
    pub fn apply(self, op: FieldOp, a: u32, b: u32) -> Result<u32> {
        if a >= self.0 || b >= self.0 {
            return Err(Error::InvalidArgument(format!(
                "operands ({a}, {b}) not reduced mod {}",
                self.0
            )));
        }
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Inv => self.inv(a)?,
            FieldOp::Neg => self.neg(a),
        })
    }
}

impl fmt::Display for PrimeDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Row vector over F_d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldVector {
    entries: Vec<u32>,
    dim: PrimeDimension,
}

impl FieldVector {
    /// Builds a vector, reducing every entry mod d.
    pub fn new(dim: PrimeDimension, entries: impl IntoIterator<Item = u32>) -> Self {
        let entries = entries.into_iter().map(|x| x % dim.get()).collect();
        Self { entries, dim }
    }

    pub fn zeros(dim: PrimeDimension, len: usize) -> Self {
        Self { entries: vec![0; len], dim }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> PrimeDimension {
        self.dim
    }

    /// `self · m` over F_d.
    pub fn mul_mat(&self, m: &FieldMatrix) -> Result<FieldVector> {
        mat_vec_mul(self, m)
    }
}

/// Dense row-major matrix over F_d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    dim: PrimeDimension,
}

impl FieldMatrix {
    pub fn zeros(dim: PrimeDimension, rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols], dim }
    }

    pub fn identity(dim: PrimeDimension, k: usize) -> Self {
        let mut m = Self::zeros(dim, k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from row-major entries, reducing each mod d.
    pub fn from_row_major(
        dim: PrimeDimension,
        rows: usize,
        cols: usize,
        entries: Vec<u32>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|x| x % dim.get()).collect();
        Ok(Self { rows, cols, entries, dim })
    }

    /// Builds from nested rows; all rows must share a length.
    pub fn from_rows(dim: PrimeDimension, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_row_major(dim, rows.len(), cols, rows.concat())
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
    pub fn dim(&self) -> PrimeDimension {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.dim.get();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Submatrix on the given row and column index lists (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.dim, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.entries[i * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &FieldMatrix) -> Result<Self> {
        if self.rows != other.rows || self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "hconcat of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(other.row(r));
        }
        Ok(Self { rows: self.rows, cols, entries, dim: self.dim })
    }

    /// Stacks `self` on top of `other`.
    pub fn vconcat(&self, other: &FieldMatrix) -> Result<Self> {
        if self.cols != other.cols || self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "vconcat of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, entries, dim: self.dim })
    }

    /// Row echelon form with first-nonzero pivoting. Returns the reduced matrix
    /// and its pivot columns.
    pub fn row_echelon(&self) -> (FieldMatrix, Vec<usize>) {
        let d = self.dim;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    m.entries.swap(src * m.cols + c, pivot_row * m.cols + c);
                }
            }
            let inv = d.inv(m.get(pivot_row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                let v = d.mul(m.get(pivot_row, c), inv);
                m.entries[pivot_row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = d.sub(m.get(r, c), d.mul(factor, m.get(pivot_row, c)));
                    m.entries[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        mat_rank(self)
    }

    /// Determinant of a square matrix over F_d.
    pub fn determinant(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let d = self.dim;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return Ok(0);
            };
            if src != col {
                for c in 0..n {
                    m.entries.swap(src * n + c, col * n + c);
                }
                det = d.neg(det);
            }
            let p = m.get(col, col);
            det = d.mul(det, p);
            let inv = d.inv(p)?;
            for r in col + 1..n {
                let factor = d.mul(m.get(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let v = d.sub(m.get(r, c), d.mul(factor, m.get(col, c)));
                    m.entries[r * n + c] = v;
                }
            }
        }
        Ok(det)
    }
}

impl Serialize for FieldMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank over F_d.
pub fn mat_rank(m: &FieldMatrix) -> usize {
    m.row_echelon().1.len()
}

/// Row-vector times matrix, `(v · m) mod d`.
pub fn mat_vec_mul(v: &FieldVector, m: &FieldMatrix) -> Result<FieldVector> {
    if v.len() != m.rows() || v.dim() != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} times {}x{} matrix",
            v.len(),
            m.rows(),
            m.cols()
        )));
    }
    let mut out = vec![0u32; m.cols()];
    row_times(m, v.entries(), &mut out);
    Ok(FieldVector { entries: out, dim: m.dim() })
}

/// Writes `coeffs · m` into `out` without allocating.
#[inline]
pub(crate) fn row_times(m: &FieldMatrix, coeffs: &[u32], out: &mut [u32]) {
    let d = m.dim().get() as u64;
    out.iter_mut().for_each(|x| *x = 0);
    let mut acc = vec![0u64; m.cols()];
    for (r, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (a, &x) in acc.iter_mut().zip(m.row(r)) {
            *a += c as u64 * x as u64;
        }
    }
    for (o, a) in out.iter_mut().zip(acc) {
        *o = (a % d) as u32;
    }
}

/// Iterator over all of `[0, d)^length` in lexicographic order, last
/// coordinate fastest.
#[derive(Debug, Clone)]
pub struct VectorStream {
    dim: PrimeDimension,
    current: Vec<u32>,
    remaining: usize,
}

impl Iterator for VectorStream {
    type Item = FieldVector;

    fn next(&mut self) -> Option<FieldVector> {
        if self.remaining == 0 {
            return None;
        }
        let out = FieldVector { entries: self.current.clone(), dim: self.dim };
        self.remaining -= 1;
        advance(&mut self.current, self.dim.get());
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for VectorStream {}

/// Odometer increment, last coordinate fastest. Returns false on wrap-around.
#[inline]
pub(crate) fn advance(digits: &mut [u32], d: u32) -> bool {
    for x in digits.iter_mut().rev() {
        *x += 1;
        if *x < d {
            return true;
        }
        *x = 0;
    }
    false
}

/// Enumerates every vector of the given length over F_d.
pub fn enumerate_vectors(length: usize, dim: PrimeDimension) -> Result<VectorStream> {
    let count = check_cap(dim.get() as u64, length)?;
    Ok(VectorStream { dim, current: vec![0; length], remaining: count })
}
