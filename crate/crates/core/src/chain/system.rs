//! Flattening of graded matrix equations into one linear system over
//! `F_p`. Unknowns are families of matrices indexed by degree; equations
//! are sums of one-sided products `L . X(n)` and `X(n) . R`. Used by the
//! hom-space basis, the chain homotopy solver and the lifting solver.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::linfp::{FieldCtx, Matrix};

/// Shapes and column offsets for the unknown blocks, one per degree.
/// Empty blocks are dropped so they contribute no unknowns.
pub(crate) struct BlockLayout {
    blocks: BTreeMap<i64, (usize, usize)>,
    offsets: BTreeMap<i64, usize>,
    total: usize,
}

impl BlockLayout {
    pub fn new(blocks: BTreeMap<i64, (usize, usize)>) -> BlockLayout {
        let blocks: BTreeMap<i64, (usize, usize)> = blocks
            .into_iter()
            .filter(|&(_, (r, c))| r > 0 && c > 0)
            .collect();
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for (&n, &(r, c)) in &blocks {
            offsets.insert(n, total);
            total += r * c;
        }
        BlockLayout {
            blocks,
            offsets,
            total,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    fn col_of(&self, deg: i64, i: usize, j: usize) -> Option<usize> {
        let &(r, c) = self.blocks.get(&deg)?;
        debug_assert!(i < r && j < c);
        Some(self.offsets[&deg] + i * c + j)
    }

    /// Reassembles one column of a solution matrix into per-degree blocks.
    fn unflatten(&self, solution: &Matrix, col: usize) -> BTreeMap<i64, Matrix> {
        let mut out = BTreeMap::new();
        for (&n, &(r, c)) in &self.blocks {
            let base = self.offsets[&n];
            let mut m = Matrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, solution.at(base + i * c + j, col));
                }
            }
            out.insert(n, m);
        }
        out
    }
}

/// One summand of a matrix equation: either `coeff . X(var_deg)` or
/// `X(var_deg) . coeff`, possibly negated.
pub(crate) struct Term<'a> {
    coeff: &'a Matrix,
    var_deg: i64,
    left: bool,
    negate: bool,
}

impl<'a> Term<'a> {
    pub fn left(coeff: &'a Matrix, var_deg: i64, negate: bool) -> Term<'a> {
        Term {
            coeff,
            var_deg,
            left: true,
            negate,
        }
    }

    pub fn right(coeff: &'a Matrix, var_deg: i64, negate: bool) -> Term<'a> {
        Term {
            coeff,
            var_deg,
            left: false,
            negate,
        }
    }
}

pub(crate) struct LinSystem {
    layout: BlockLayout,
    rows: Vec<u64>,
    rhs: Vec<u64>,
    n_rows: usize,
}

impl LinSystem {
    pub fn new(layout: BlockLayout) -> LinSystem {
        LinSystem {
            layout,
            rows: Vec::new(),
            rhs: Vec::new(),
            n_rows: 0,
        }
    }

    /// Appends the equation block `sum of terms = rhs` of the given
    /// shape. Terms whose unknown block is empty contribute nothing; a
    /// row with no coefficients but nonzero right-hand side makes the
    /// system inconsistent, as it should.
    pub fn add_matrix_eq(
        &mut self,
        shape: (usize, usize),
        terms: &[Term<'_>],
        rhs: &Matrix,
        ctx: &FieldCtx,
    ) {
        let (rows, cols) = shape;
        assert!((rhs.rows(), rhs.cols()) == shape, "rhs shape mismatch");
        let width = self.layout.total();
        let base = self.rows.len();
        self.rows.resize(base + rows * cols * width, 0);
        for term in terms {
            if term.left {
                // coeff . X : coeff is rows x vr, X is vr x cols
                let vr = term.coeff.cols();
                for i in 0..rows {
                    for k in 0..vr {
                        let a = term.coeff.at(i, k);
                        if a == 0 {
                            continue;
                        }
                        let a = if term.negate { ctx.neg(a) } else { a };
                        for j in 0..cols {
                            if let Some(col) = self.layout.col_of(term.var_deg, k, j) {
                                let idx = base + (i * cols + j) * width + col;
                                self.rows[idx] = ctx.add(self.rows[idx], a);
                            }
                        }
                    }
                }
            } else {
                // X . coeff : X is rows x vc, coeff is vc x cols
                let vc = term.coeff.rows();
                for k in 0..vc {
                    for j in 0..cols {
                        let a = term.coeff.at(k, j);
                        if a == 0 {
                            continue;
                        }
                        let a = if term.negate { ctx.neg(a) } else { a };
                        for i in 0..rows {
                            if let Some(col) = self.layout.col_of(term.var_deg, i, k) {
                                let idx = base + (i * cols + j) * width + col;
                                self.rows[idx] = ctx.add(self.rows[idx], a);
                            }
                        }
                    }
                }
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                self.rhs.push(rhs.at(i, j));
            }
        }
        self.n_rows += rows * cols;
    }

    fn coefficient_matrix(&self, ctx: &FieldCtx) -> (Matrix, Matrix) {
        let a = Matrix::new(self.n_rows, self.layout.total(), self.rows.clone(), ctx)
            .expect("coefficient entries are reduced");
        let b =
            Matrix::new(self.n_rows, 1, self.rhs.clone(), ctx).expect("rhs entries are reduced");
        (a, b)
    }

    /// A particular solution, as per-degree blocks.
    pub fn solve_particular(&self, ctx: &FieldCtx) -> Option<BTreeMap<i64, Matrix>> {
        let (a, b) = self.coefficient_matrix(ctx);
        let x = a.solve(&b, ctx)?;
        Some(self.layout.unflatten(&x, 0))
    }

    /// A basis of the homogeneous solution space.
    pub fn kernel(&self, ctx: &FieldCtx) -> Vec<BTreeMap<i64, Matrix>> {
        let (a, _) = self.coefficient_matrix(ctx);
        let k = a.kernel_basis(ctx);
        (0..k.cols())
            .map(|c| self.layout.unflatten(&k, c))
            .collect()
    }
}
