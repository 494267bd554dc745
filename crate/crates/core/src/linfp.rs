//! Exact dense linear algebra over the prime field `F_p`.
//!
//! Everything downstream reduces to `rank`, `kernel_basis` and `solve`,
//! all computed by Gaussian elimination with first-nonzero pivoting, so
//! results are deterministic and exact. Matrices are dense and row-major;
//! the instances this crate works with are tiny (a handful of dimensions
//! per degree), so no sparse machinery is warranted.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Arithmetic context for `F_p` with `2 <= p < 2^31`.
///
/// The bound on `p` keeps every product of two reduced residues below
/// `2^62`, so all intermediate arithmetic fits in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
}

impl FieldCtx {
    /// Checks the range bound and primality (trial division).
    pub fn new(p: u64) -> Result<FieldCtx, Error> {
        if p < 2 || p >= 1 << 31 {
            return Err(Error::InvalidModulus(p));
        }
        let mut k = 2u64;
        while k * k <= p {
            if p % k == 0 {
                return Err(Error::NotPrime(p));
            }
            k += 1;
        }
        Ok(FieldCtx { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    /// Inverse of a nonzero residue, by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Reduce an arbitrary u64 into `[0, p)`.
    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }
}

/// Dense row-major matrix of reduced residues mod `p`.
///
/// Zero-sized shapes (`0 x n`, `n x 0`) are legal and show up routinely
/// as empty degrees of a complex; every operation handles them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, validating the length and
    /// that every entry is a reduced residue.
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<u64>,
        ctx: &FieldCtx,
    ) -> Result<Matrix, Error> {
        if entries.len() != rows * cols {
            return Err(Error::Invariant(alloc::format!(
                "matrix entries length {} != {rows} x {cols}",
                entries.len()
            )));
        }
        for (k, &e) in entries.iter().enumerate() {
            if e >= ctx.modulus() {
                return Err(Error::EntryRange {
                    row: k / cols.max(1),
                    col: k % cols.max(1),
                    value: e,
                });
            }
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from explicit rows, reducing entries mod `p`. The column
    /// count is taken from the first row; an empty slice gives `0 x 0`.
    pub fn from_rows(data: &[Vec<u64>], ctx: &FieldCtx) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows * cols);
        for row in data {
            assert!(row.len() == cols, "ragged rows: {} vs {}", row.len(), cols);
            entries.extend(row.iter().map(|&e| ctx.reduce(e)));
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix, ctx: &FieldCtx) -> Matrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch in add"
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ctx.add(a, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix, ctx: &FieldCtx) -> Matrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch in sub"
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ctx.sub(a, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Matrix {
        let entries = self.entries.iter().map(|&a| ctx.neg(a)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, c: u64, ctx: &FieldCtx) -> Matrix {
        let c = ctx.reduce(c);
        let entries = self.entries.iter().map(|&a| ctx.mul(a, c)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &Matrix, ctx: &FieldCtx) -> Matrix {
        assert!(
            self.cols == other.rows,
            "shape mismatch in mul: {}x{} . {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ctx.add(out.at(i, j), ctx.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows, "row mismatch in hstack");
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j));
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert!(self.cols == other.cols, "col mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Assembles a block matrix from a grid of blocks. Row heights and
    /// column widths must be consistent along each band.
    pub fn from_blocks(grid: &[Vec<Matrix>]) -> Matrix {
        if grid.is_empty() {
            return Matrix::zeros(0, 0);
        }
        let block_cols = grid[0].len();
        assert!(
            grid.iter().all(|r| r.len() == block_cols),
            "ragged block grid"
        );
        let heights: Vec<usize> = grid
            .iter()
            .map(|r| r.first().map_or(0, Matrix::rows))
            .collect();
        let widths: Vec<usize> = if block_cols == 0 {
            Vec::new()
        } else {
            grid[0].iter().map(Matrix::cols).collect()
        };
        for (bi, row) in grid.iter().enumerate() {
            for (bj, blk) in row.iter().enumerate() {
                assert!(
                    blk.rows() == heights[bi] && blk.cols() == widths[bj],
                    "block ({bi},{bj}) is {}x{}, expected {}x{}",
                    blk.rows(),
                    blk.cols(),
                    heights[bi],
                    widths[bj]
                );
            }
        }
        let total_rows: usize = heights.iter().sum();
        let total_cols: usize = widths.iter().sum();
        let mut out = Matrix::zeros(total_rows, total_cols);
        let mut roff = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut coff = 0;
            for blk in row {
                for i in 0..blk.rows() {
                    for j in 0..blk.cols() {
                        out.set(roff + i, coff + j, blk.at(i, j));
                    }
                }
                coff += blk.cols();
            }
            roff += heights[bi];
        }
        out
    }

    /// Copies the rectangle `[r0, r1) x [c0, c1)`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut out = Matrix::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.at(i, j));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    /// First-nonzero pivoting: scan columns left to right and take the
    /// first row with a nonzero entry, so the output is deterministic.
    pub fn rref(&self, ctx: &FieldCtx) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = ctx.inv(m.at(r, c));
            for j in c..m.cols {
                let v = ctx.mul(m.at(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c) == 0 {
                    continue;
                }
                let factor = m.at(i, c);
                for j in c..m.cols {
                    let v = ctx.sub(m.at(i, j), ctx.mul(factor, m.at(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.rref(ctx).1.len()
    }

    /// Basis of the right kernel, as columns. The number of columns is
    /// `cols - rank`; `self . kernel_basis(..) == 0` exactly.
    pub fn kernel_basis(&self, ctx: &FieldCtx) -> Matrix {
        let (r, pivots) = self.rref(ctx);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, ctx.neg(r.at(pi, fc)));
            }
        }
        out
    }

    /// A particular solution `X` of `self . X = rhs`, or `None` if the
    /// system is inconsistent. Free variables are set to zero, so the
    /// output is deterministic. Panics if the row counts differ.
    pub fn solve(&self, rhs: &Matrix, ctx: &FieldCtx) -> Option<Matrix> {
        assert!(
            self.rows == rhs.rows,
            "solve: A has {} rows, B has {}",
            self.rows,
            rhs.rows
        );
        let (r, pivots) = self.hstack(rhs).rref(ctx);
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.at(pi, self.cols + j));
            }
        }
        Some(x)
    }

    /// Two-sided inverse, when the matrix is square and nonsingular.
    pub fn inverse(&self, ctx: &FieldCtx) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Matrix::identity(self.rows), ctx)
    }
}
