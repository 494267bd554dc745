use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linfp::{FieldCtx, Matrix};

use super::complex::ChainComplex;
use super::degree_window;
use super::system::{BlockLayout, LinSystem, Term};

/// A chain map `f : src -> tgt`, i.e. a graded family of matrices
/// commuting with the differentials: `tgt.d(n) . f(n) = f(n-1) . src.d(n)`.
///
/// Storage is normalized to the degrees where both endpoints are nonzero,
/// so structural equality is equality of maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    src: ChainComplex,
    tgt: ChainComplex,
    maps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Validates shapes and exact commutation with the differentials.
    /// Degrees missing from `maps` are taken to be zero.
    pub fn new(
        src: ChainComplex,
        tgt: ChainComplex,
        maps: BTreeMap<i64, Matrix>,
    ) -> Result<ChainMap, Error> {
        if src.ctx() != tgt.ctx() {
            return Err(Error::ContextMismatch);
        }
        let mut kept = BTreeMap::new();
        for (n, m) in maps {
            let expected = (tgt.dim(n), src.dim(n));
            if (m.rows(), m.cols()) != expected {
                return Err(Error::Shape {
                    what: "chain map component",
                    degree: n,
                    expected,
                    got: (m.rows(), m.cols()),
                });
            }
            if expected.0 > 0 && expected.1 > 0 {
                kept.insert(n, m);
            }
        }
        for (&n, &d) in src.dims() {
            if d > 0 && tgt.dim(n) > 0 {
                kept.entry(n)
                    .or_insert_with(|| Matrix::zeros(tgt.dim(n), d));
            }
        }
        let f = ChainMap {
            src,
            tgt,
            maps: kept,
        };
        let ctx = *f.src.ctx();
        for n in degree_window(&[&f.src, &f.tgt]) {
            if f.tgt.dim(n - 1) == 0 || f.src.dim(n) == 0 {
                continue;
            }
            let lhs = f.tgt.d(n).mul(&f.at(n), &ctx);
            let rhs = f.at(n - 1).mul(&f.src.d(n), &ctx);
            if lhs != rhs {
                return Err(Error::NotChainMap { degree: n });
            }
        }
        Ok(f)
    }

    pub fn identity(x: &ChainComplex) -> ChainMap {
        let maps = x
            .support()
            .map(|n| (n, Matrix::identity(x.dim(n))))
            .collect();
        ChainMap {
            src: x.clone(),
            tgt: x.clone(),
            maps,
        }
    }

    pub fn zero(src: &ChainComplex, tgt: &ChainComplex) -> Result<ChainMap, Error> {
        ChainMap::new(src.clone(), tgt.clone(), BTreeMap::new())
    }

    pub fn src(&self) -> &ChainComplex {
        &self.src
    }

    pub fn tgt(&self) -> &ChainComplex {
        &self.tgt
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.src.ctx()
    }

    /// The component at degree `n`, zero-filled when absent.
    pub fn at(&self, n: i64) -> Matrix {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.tgt.dim(n), self.src.dim(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.maps
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap, Error> {
        if other.tgt != self.src {
            return Err(Error::EndpointMismatch {
                what: "compose: inner target != outer source",
            });
        }
        let ctx = *self.ctx();
        let mut maps = BTreeMap::new();
        for n in degree_window(&[&other.src, &self.tgt]) {
            if other.src.dim(n) > 0 && self.tgt.dim(n) > 0 {
                maps.insert(n, self.at(n).mul(&other.at(n), &ctx));
            }
        }
        ChainMap::new(other.src.clone(), self.tgt.clone(), maps)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap, Error> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::EndpointMismatch {
                what: "add: maps have different endpoints",
            });
        }
        let ctx = *self.ctx();
        let maps = self
            .maps
            .iter()
            .map(|(&n, m)| (n, m.add(&other.at(n), &ctx)))
            .collect();
        ChainMap::new(self.src.clone(), self.tgt.clone(), maps)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap, Error> {
        self.add(&other.scale(self.ctx().neg(1)))
    }

    pub fn scale(&self, c: u64) -> ChainMap {
        let ctx = *self.ctx();
        let maps = self
            .maps
            .iter()
            .map(|(&n, m)| (n, m.scale(c, &ctx)))
            .collect();
        ChainMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            maps,
        }
    }

    /// Degreewise surjectivity.
    pub fn is_fibration(&self) -> bool {
        let ctx = *self.ctx();
        self.tgt
            .support()
            .all(|n| self.at(n).rank(&ctx) == self.tgt.dim(n))
    }

    /// Degreewise injectivity.
    pub fn is_cofibration(&self) -> bool {
        let ctx = *self.ctx();
        self.src
            .support()
            .all(|n| self.at(n).rank(&ctx) == self.src.dim(n))
    }

    /// Degreewise bijectivity.
    pub fn is_iso(&self) -> bool {
        self.src.dims() == self.tgt.dims() && self.is_fibration() && self.is_cofibration()
    }

    /// Quasi-isomorphism test via acyclicity of the mapping cone. This
    /// avoids choosing bases for homology; [`ChainMap::is_weq_via_homology`]
    /// is the independent cross-check route.
    pub fn is_weq(&self) -> bool {
        cone(self).homology_dims().is_empty()
    }

    /// Quasi-isomorphism test by comparing induced maps on homology via
    /// rank computations, without choosing quotient bases. Kept as a
    /// cross-validation of [`ChainMap::is_weq`].
    pub fn is_weq_via_homology(&self) -> bool {
        let ctx = *self.ctx();
        for n in degree_window(&[&self.src, &self.tgt]) {
            // cycles of the source, pushed forward
            let zx = self.src.d(n).kernel_basis(&ctx);
            let fz = self.at(n).mul(&zx, &ctx);
            let by = self.tgt.d(n + 1);
            let span = by.hstack(&fz);
            let r_span = span.rank(&ctx);
            let r_by = by.rank(&ctx);
            let h_src = zx.cols() - self.src.d(n + 1).rank(&ctx);
            let h_tgt = self.tgt.d(n).kernel_basis(&ctx).cols() - r_by;
            // injective: rank of the induced map equals dim H_n(src)
            if r_span - r_by != h_src {
                return false;
            }
            // surjective: image spans all of H_n(tgt)
            if r_span - r_by != h_tgt {
                return false;
            }
        }
        true
    }
}

/// The mapping cone of `f : X -> Y`, with `C(f)_n = X_(n-1) + Y_n` and
/// `d(x, y) = (-dx, dy - f x)`. Acyclic exactly when `f` is a
/// quasi-isomorphism.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let ctx = *f.ctx();
    let (x, y) = (f.src(), f.tgt());
    let mut dims = BTreeMap::new();
    for n in degree_window(&[x, y]) {
        let d = x.dim(n - 1) + y.dim(n);
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let rows = x.dim(n - 2) + y.dim(n - 1);
        if rows == 0 {
            continue;
        }
        let grid = [
            [x.d(n - 1).neg(&ctx), Matrix::zeros(x.dim(n - 2), y.dim(n))],
            [f.at(n - 1).neg(&ctx), y.d(n)],
        ];
        diffs.insert(
            n,
            Matrix::from_blocks(&[grid[0].to_vec(), grid[1].to_vec()]),
        );
    }
    ChainComplex::new(ctx, dims, diffs).expect("mapping cone squares to zero")
}

/// A basis of the space of chain maps `X -> Y`, computed as the kernel of
/// the flattened commutation constraints. Random chain maps are linear
/// combinations of these.
pub fn hom_basis(x: &ChainComplex, y: &ChainComplex) -> Result<Vec<ChainMap>, Error> {
    if x.ctx() != y.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = *x.ctx();
    let window = degree_window(&[x, y]);
    let layout = BlockLayout::new(window.iter().map(|&n| (n, (y.dim(n), x.dim(n)))).collect());
    let mut sys = LinSystem::new(layout);
    for &n in &window {
        let shape = (y.dim(n - 1), x.dim(n));
        if shape.0 == 0 || shape.1 == 0 {
            continue;
        }
        let dy = y.d(n);
        let dx = x.d(n);
        sys.add_matrix_eq(
            shape,
            &[Term::left(&dy, n, false), Term::right(&dx, n - 1, true)],
            &Matrix::zeros(shape.0, shape.1),
            &ctx,
        );
    }
    sys.kernel(&ctx)
        .into_iter()
        .map(|blocks| ChainMap::new(x.clone(), y.clone(), blocks))
        .collect()
}

/// Whether two parallel maps induce the same map on all homology groups:
/// their difference must send cycles into boundaries.
pub fn induce_same_homology(a: &ChainMap, b: &ChainMap) -> Result<bool, Error> {
    let diff = a.sub(b)?;
    let ctx = *diff.ctx();
    for n in degree_window(&[diff.src(), diff.tgt()]) {
        let cycles = diff.src().d(n).kernel_basis(&ctx);
        let image = diff.at(n).mul(&cycles, &ctx);
        let boundaries = diff.tgt().d(n + 1);
        if boundaries.hstack(&image).rank(&ctx) != boundaries.rank(&ctx) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A chain homotopy witnessing `f - g = d . h + h . d`, with
/// `h(n) : tgt_(n+1) x src_n`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    f: ChainMap,
    g: ChainMap,
    h: BTreeMap<i64, Matrix>,
}

impl ChainHomotopy {
    pub fn new(f: ChainMap, g: ChainMap, h: BTreeMap<i64, Matrix>) -> Result<ChainHomotopy, Error> {
        if f.src() != g.src() || f.tgt() != g.tgt() {
            return Err(Error::EndpointMismatch {
                what: "homotopy between maps with different endpoints",
            });
        }
        let ctx = *f.ctx();
        let (src, tgt) = (f.src().clone(), f.tgt().clone());
        let mut kept = BTreeMap::new();
        for (n, m) in h {
            let expected = (tgt.dim(n + 1), src.dim(n));
            if (m.rows(), m.cols()) != expected {
                return Err(Error::Shape {
                    what: "homotopy component",
                    degree: n,
                    expected,
                    got: (m.rows(), m.cols()),
                });
            }
            if expected.0 > 0 && expected.1 > 0 {
                kept.insert(n, m);
            }
        }
        let witness = ChainHomotopy { f, g, h: kept };
        for n in degree_window(&[&src, &tgt]) {
            if src.dim(n) == 0 || tgt.dim(n) == 0 {
                continue;
            }
            let lhs = witness.f.at(n).sub(&witness.g.at(n), &ctx);
            let rhs = tgt
                .d(n + 1)
                .mul(&witness.h_at(n), &ctx)
                .add(&witness.h_at(n - 1).mul(&src.d(n), &ctx), &ctx);
            if lhs != rhs {
                return Err(Error::NotChainHomotopy { degree: n });
            }
        }
        Ok(witness)
    }

    pub fn h_at(&self, n: i64) -> Matrix {
        self.h
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.f.tgt().dim(n + 1), self.f.src().dim(n)))
    }

    pub fn maps(&self) -> (&ChainMap, &ChainMap) {
        (&self.f, &self.g)
    }
}

/// Solves `d . h + h . d = f - g` as one flat linear system over all
/// degrees. Returns the witness when the maps are chain homotopic,
/// `None` when they are not.
pub fn chain_homotopy(f: &ChainMap, g: &ChainMap) -> Result<Option<ChainHomotopy>, Error> {
    if f.src() != g.src() || f.tgt() != g.tgt() {
        return Err(Error::EndpointMismatch {
            what: "chain_homotopy on maps with different endpoints",
        });
    }
    let ctx = *f.ctx();
    let (src, tgt) = (f.src(), f.tgt());
    let window = degree_window(&[src, tgt]);
    let layout = BlockLayout::new(
        window
            .iter()
            .map(|&n| (n, (tgt.dim(n + 1), src.dim(n))))
            .collect(),
    );
    let mut sys = LinSystem::new(layout);
    for &n in &window {
        let shape = (tgt.dim(n), src.dim(n));
        if shape.0 == 0 || shape.1 == 0 {
            continue;
        }
        let d_in = tgt.d(n + 1);
        let d_out = src.d(n);
        let rhs = f.at(n).sub(&g.at(n), &ctx);
        sys.add_matrix_eq(
            shape,
            &[
                Term::left(&d_in, n, false),
                Term::right(&d_out, n - 1, false),
            ],
            &rhs,
            &ctx,
        );
    }
    match sys.solve_particular(&ctx) {
        Some(blocks) => Ok(Some(ChainHomotopy::new(f.clone(), g.clone(), blocks)?)),
        None => Ok(None),
    }
}
