use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linfp::{FieldCtx, Matrix};

use super::map::ChainMap;

/// A finitely supported, integer-graded chain complex over `F_p`.
///
/// `d(n)` maps degree `n` to degree `n - 1` and has shape
/// `dim(n-1) x dim(n)`. Negative degrees are permitted. Storage is
/// normalized: dimensions are kept only where nonzero and differentials
/// exactly where both endpoint degrees are nonzero, so structural
/// equality coincides with equality of complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ctx: FieldCtx,
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix>,
}

impl ChainComplex {
    /// Validates shapes and `d(n-1) . d(n) = 0`, then normalizes.
    pub fn new(
        ctx: FieldCtx,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<ChainComplex, Error> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim_of = |n: i64| dims.get(&n).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (n, m) in diffs {
            let expected = (dim_of(n - 1), dim_of(n));
            if (m.rows(), m.cols()) != expected {
                return Err(Error::Shape {
                    what: "differential",
                    degree: n,
                    expected,
                    got: (m.rows(), m.cols()),
                });
            }
            if expected.0 > 0 && expected.1 > 0 {
                kept.insert(n, m);
            }
        }
        // Fill in zero differentials where support is adjacent but no
        // matrix was given.
        for (&n, &d) in &dims {
            if d > 0 && dim_of(n - 1) > 0 {
                kept.entry(n)
                    .or_insert_with(|| Matrix::zeros(dim_of(n - 1), d));
            }
        }
        let complex = ChainComplex {
            ctx,
            dims,
            diffs: kept,
        };
        for n in complex.degrees_with_diff() {
            if complex.dim(n - 2) > 0 {
                let dd = complex.d(n - 1).mul(&complex.d(n), &ctx);
                if !dd.is_zero() {
                    return Err(Error::DifferentialSquare { degree: n });
                }
            }
        }
        Ok(complex)
    }

    pub fn zero(ctx: FieldCtx) -> ChainComplex {
        ChainComplex {
            ctx,
            dims: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// The sphere `S(n)`: one copy of `F_p` in degree `n`.
    pub fn sphere(ctx: FieldCtx, n: i64) -> ChainComplex {
        let mut dims = BTreeMap::new();
        dims.insert(n, 1);
        ChainComplex {
            ctx,
            dims,
            diffs: BTreeMap::new(),
        }
    }

    /// The disc `D(n)`: `F_p` in degrees `n` and `n - 1` with identity
    /// differential. Acyclic.
    pub fn disc(ctx: FieldCtx, n: i64) -> ChainComplex {
        let mut dims = BTreeMap::new();
        dims.insert(n, 1);
        dims.insert(n - 1, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(n, Matrix::identity(1));
        ChainComplex { ctx, dims, diffs }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// The differential out of degree `n`, zero-filled when absent.
    pub fn d(&self, n: i64) -> Matrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(n - 1), self.dim(n)))
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        let lo = self.dims.keys().next()?;
        let hi = self.dims.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.dims.is_empty()
    }

    fn degrees_with_diff(&self) -> Vec<i64> {
        self.diffs.keys().copied().collect()
    }

    /// Dimensions of the homology `H_n = ker d(n) / im d(n+1)`, with zero
    /// entries omitted.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&n, &dim) in &self.dims {
            let h = dim - self.d(n).rank(&self.ctx) - self.d(n + 1).rank(&self.ctx);
            if h > 0 {
                out.insert(n, h);
            }
        }
        out
    }

    /// Transport along a degreewise change of basis: for invertible
    /// `u(n)` the new complex has `d'(n) = u(n-1) . d(n) . u(n)^-1` and
    /// the returned map `u : self -> new` is an isomorphism. Degrees
    /// missing from `u` keep the identity.
    pub fn change_basis(
        &self,
        u: &BTreeMap<i64, Matrix>,
    ) -> Result<(ChainComplex, ChainMap), Error> {
        let u_at = |n: i64| -> Result<Matrix, Error> {
            match u.get(&n) {
                Some(m) => {
                    if (m.rows(), m.cols()) != (self.dim(n), self.dim(n)) {
                        return Err(Error::Shape {
                            what: "change of basis",
                            degree: n,
                            expected: (self.dim(n), self.dim(n)),
                            got: (m.rows(), m.cols()),
                        });
                    }
                    Ok(m.clone())
                }
                None => Ok(Matrix::identity(self.dim(n))),
            }
        };
        let mut diffs = BTreeMap::new();
        for (&n, d) in &self.diffs {
            let inv = u_at(n)?
                .inverse(&self.ctx)
                .ok_or(Error::Invariant(alloc::format!(
                    "change of basis at degree {n} is singular"
                )))?;
            diffs.insert(n, u_at(n - 1)?.mul(d, &self.ctx).mul(&inv, &self.ctx));
        }
        let twisted = ChainComplex::new(self.ctx, self.dims.clone(), diffs)?;
        let mut maps = BTreeMap::new();
        for &n in self.dims.keys() {
            let m = u_at(n)?;
            if m.inverse(&self.ctx).is_none() {
                return Err(Error::Invariant(alloc::format!(
                    "change of basis at degree {n} is singular"
                )));
            }
            maps.insert(n, m);
        }
        let iso = ChainMap::new(self.clone(), twisted.clone(), maps)?;
        Ok((twisted, iso))
    }

    /// Direct sum with its coordinate injections and projections.
    pub fn direct_sum(parts: &[&ChainComplex]) -> Result<DirectSum, Error> {
        let ctx = match parts.first() {
            Some(c) => *c.ctx(),
            None => return Err(Error::Invariant("direct sum of no complexes".into())),
        };
        if parts.iter().any(|c| *c.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for c in parts {
            for (&n, &d) in &c.dims {
                *dims.entry(n).or_insert(0) += d;
            }
        }
        let mut diffs = BTreeMap::new();
        for (&n, &d) in &dims {
            let prev = dims.get(&(n - 1)).copied().unwrap_or(0);
            if d == 0 || prev == 0 {
                continue;
            }
            let grid: Vec<Vec<Matrix>> = parts
                .iter()
                .enumerate()
                .map(|(i, ci)| {
                    parts
                        .iter()
                        .enumerate()
                        .map(|(j, cj)| {
                            if i == j {
                                ci.d(n)
                            } else {
                                Matrix::zeros(ci.dim(n - 1), cj.dim(n))
                            }
                        })
                        .collect()
                })
                .collect();
            diffs.insert(n, Matrix::from_blocks(&grid));
        }
        let sum = ChainComplex::new(ctx, dims, diffs)?;
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            let offset_at = |n: i64| -> usize { parts[..k].iter().map(|c| c.dim(n)).sum() };
            let mut inj = BTreeMap::new();
            let mut proj = BTreeMap::new();
            for &n in sum.dims.keys() {
                let (total, slot, off) = (sum.dim(n), part.dim(n), offset_at(n));
                let mut jm = Matrix::zeros(total, slot);
                let mut pm = Matrix::zeros(slot, total);
                for i in 0..slot {
                    // identity block at the part's offset
                    jm = set_entry(jm, off + i, i);
                    pm = set_entry(pm, i, off + i);
                }
                inj.insert(n, jm);
                proj.insert(n, pm);
            }
            injections.push(ChainMap::new((*part).clone(), sum.clone(), inj)?);
            projections.push(ChainMap::new(sum.clone(), (*part).clone(), proj)?);
        }
        Ok(DirectSum {
            complex: sum,
            injections,
            projections,
        })
    }
}

fn set_entry(mut m: Matrix, i: usize, j: usize) -> Matrix {
    m.set(i, j, 1);
    m
}

/// A direct sum `⊕ X_k` together with the coordinate maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub complex: ChainComplex,
    pub injections: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}
