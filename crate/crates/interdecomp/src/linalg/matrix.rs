//! Dense matrices over the exact rationals.
//!
//! Row-major storage. Arithmetic panics on shape mismatch — matrices built
//! from user input are shape-checked at the deserialization boundary, so a
//! mismatch inside the algorithms is a programming error, not an input error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::{format_rat, Rat};

/// Dense rational matrix. Zero-row and zero-column shapes are legal and show
/// up routinely as degenerate blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl Matrix {
    /// All-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from explicit rows. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows in matrix literal");
            entries.extend(row);
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    /// Builds a matrix entry by entry from a closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[Rat]) -> Self {
        Matrix::from_fn(diag.len(), diag.len(), |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                Rat::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        self.entries[r * self.cols + c] = v;
    }

    /// The `r`-th row as a slice.
    pub fn row(&self, r: usize) -> &[Rat] {
        assert!(r < self.rows, "row index out of range");
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// The `c`-th column as an owned vector.
    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, k: &Rat) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * k)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// True when the matrix is square and `m·m = m`.
    pub fn is_projector(&self) -> bool {
        self.is_square() && self * self == *self
    }

    /// Matrix-vector product `self · v`. Panics if `v.len() != cols`.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length does not match columns");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rat::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Stacks matrices vertically. All blocks must share a column count.
    pub fn vstack(blocks: &[Matrix]) -> Matrix {
        assert!(!blocks.is_empty(), "vstack of no blocks is ambiguous");
        let cols = blocks[0].cols;
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack blocks disagree on column count");
            entries.extend(b.entries.iter().cloned());
            rows += b.rows;
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Stacks matrices horizontally. All blocks must share a row count.
    pub fn hstack(blocks: &[Matrix]) -> Matrix {
        assert!(!blocks.is_empty(), "hstack of no blocks is ambiguous");
        let rows = blocks[0].rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack blocks disagree on row count");
            for r in 0..rows {
                for c in 0..b.cols {
                    m.set(r, offset + c, b.get(r, c).clone());
                }
            }
            offset += b.cols;
        }
        m
    }

    /// Assembles a block matrix from a grid of blocks. Row `i` of the grid
    /// must agree on block heights, column `j` on block widths.
    pub fn from_blocks(grid: &[Vec<Matrix>]) -> Matrix {
        assert!(!grid.is_empty(), "empty block grid");
        let rows_per_band: Vec<Matrix> = grid
            .iter()
            .map(|band| Matrix::hstack(&band.iter().cloned().collect::<Vec<_>>()))
            .collect();
        Matrix::vstack(&rows_per_band)
    }

    /// Copies the rectangle `[r0, r1) × [c0, c1)`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Matrix::from_fn(r1 - r0, c1 - c0, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Reduced row echelon form together with the pivot column indices.
    ///
    /// The result is canonical: two matrices have the same row space exactly
    /// when their reduced forms are identical.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // Find a row at or below `pivot_row` with a nonzero entry in `col`.
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(r) = found else { continue };
            m.swap_rows(pivot_row, r);
            let inv = {
                let p = m.get(pivot_row, col).clone();
                p.recip()
            };
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &(m.get(pivot_row, c) * &factor);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    /// Row rank (= column rank).
    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "only square matrices can be inverted");
        let n = self.rows;
        let aug = Matrix::hstack(&[self.clone(), Matrix::identity(n)]);
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(red.submatrix(0, n, n, 2 * n))
    }

    /// Basis of the null space `{v : self·v = 0}`, one vector per row.
    /// The basis is produced from the free columns of the reduced form.
    pub fn kernel_basis(&self) -> Matrix {
        let (red, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, Rat::one());
            for (prow, &pcol) in pivots.iter().enumerate() {
                basis.set(k, pcol, -red.get(prow, fc).clone());
            }
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let cols = self.cols;
            self.entries.swap(a * cols + c, b * cols + c);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in add"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in sub"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - rhs.get(r, c))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.get(r, c).clone())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c) + &(a * rhs.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}
