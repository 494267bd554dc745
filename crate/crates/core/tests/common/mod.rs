//! Proptest strategies for random chain complexes, maps and cospans.
//!
//! Complexes are built degreewise from an entropy stream: the
//! differential out of degree `n` is a random matrix whose columns land
//! in the kernel of the previous differential, so `d . d = 0` holds by
//! construction and every finitely supported complex is reachable.
//! Chain maps are random linear combinations of a basis of the chain hom
//! space.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use std::collections::BTreeMap;

use hopull_core::chain::{hom_basis, ChainComplex, ChainMap};
use hopull_core::cospan::Cospan;
use hopull_core::linfp::{FieldCtx, Matrix};
use proptest::prelude::*;

/// Cyclic reader over proptest-provided entropy words.
pub struct Entropy {
    words: Vec<u64>,
    cursor: usize,
}

impl Entropy {
    pub fn new(words: Vec<u64>) -> Entropy {
        Entropy {
            words: if words.is_empty() { vec![0] } else { words },
            cursor: 0,
        }
    }

    pub fn next(&mut self) -> u64 {
        let w = self.words[self.cursor % self.words.len()];
        self.cursor += 1;
        w
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, ctx: &FieldCtx) -> Matrix {
        let entries = (0..rows * cols)
            .map(|_| self.next() % ctx.modulus())
            .collect();
        Matrix::new(rows, cols, entries, ctx).unwrap()
    }
}

/// Builds a complex with the given per-degree dimensions starting at
/// `deg_lo`, filling differentials from the entropy stream.
pub fn build_complex(ctx: FieldCtx, deg_lo: i64, dims: &[usize], e: &mut Entropy) -> ChainComplex {
    let mut dim_map = BTreeMap::new();
    for (k, &d) in dims.iter().enumerate() {
        if d > 0 {
            dim_map.insert(deg_lo + k as i64, d);
        }
    }
    let dim_of = |n: i64| dim_map.get(&n).copied().unwrap_or(0);
    let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
    let degrees: Vec<i64> = dim_map.keys().copied().collect();
    for &n in &degrees {
        if dim_of(n - 1) == 0 {
            continue;
        }
        let prev = diffs
            .get(&(n - 1))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(dim_of(n - 2), dim_of(n - 1)));
        let kernel = prev.kernel_basis(&ctx);
        let coeff = e.matrix(kernel.cols(), dim_of(n), &ctx);
        diffs.insert(n, kernel.mul(&coeff, &ctx));
    }
    ChainComplex::new(ctx, dim_map, diffs).expect("kernel construction squares to zero")
}

/// A random chain map `x -> y`: a random combination of the hom basis.
pub fn build_map(x: &ChainComplex, y: &ChainComplex, e: &mut Entropy) -> ChainMap {
    let ctx = *x.ctx();
    let basis = hom_basis(x, y).expect("same context");
    let mut f = ChainMap::zero(x, y).expect("zero map");
    for b in &basis {
        let c = e.next() % ctx.modulus();
        if c != 0 {
            f = f.add(&b.scale(c)).expect("same endpoints");
        }
    }
    f
}

/// A random invertible matrix as a product of unit-triangular factors
/// with nonzero diagonal scaling, so no rejection sampling is needed.
pub fn build_invertible(d: usize, ctx: &FieldCtx, e: &mut Entropy) -> Matrix {
    let p = ctx.modulus();
    let mut lower = vec![0u64; d * d];
    let mut upper = vec![0u64; d * d];
    for i in 0..d {
        for j in 0..d {
            if i == j {
                lower[i * d + j] = 1 + e.next() % (p - 1);
                upper[i * d + j] = 1;
            } else if i > j {
                lower[i * d + j] = e.next() % p;
            } else {
                upper[i * d + j] = e.next() % p;
            }
        }
    }
    let l = Matrix::new(d, d, lower, ctx).unwrap();
    let u = Matrix::new(d, d, upper, ctx).unwrap();
    l.mul(&u, ctx)
}

/// A random degreewise-invertible change of basis for `x`.
pub fn build_change_of_basis(x: &ChainComplex, e: &mut Entropy) -> BTreeMap<i64, Matrix> {
    let ctx = *x.ctx();
    x.support()
        .map(|n| (n, build_invertible(x.dim(n), &ctx, e)))
        .collect()
}

/// A random acyclic complex: a sum of discs, twisted by a random change
/// of basis so its differentials are generic matrices of full rank.
pub fn build_acyclic(ctx: FieldCtx, deg_lo: i64, count: usize, e: &mut Entropy) -> ChainComplex {
    if count == 0 {
        return ChainComplex::zero(ctx);
    }
    let discs: Vec<ChainComplex> = (0..count)
        .map(|k| ChainComplex::disc(ctx, deg_lo + 1 + (k as i64 % 3)))
        .collect();
    let refs: Vec<&ChainComplex> = discs.iter().collect();
    let sum = ChainComplex::direct_sum(&refs).unwrap().complex;
    let u = build_change_of_basis(&sum, e);
    sum.change_basis(&u).unwrap().0
}

/// A random fibration onto `base`: the projection `base + acyclic -> base`
/// precomposed with a random isomorphism of the source.
pub fn build_fibration_onto(base: &ChainComplex, e: &mut Entropy) -> ChainMap {
    let ctx = *base.ctx();
    let lo = base.support_bounds().map_or(0, |(a, _)| a);
    let pad = build_acyclic(ctx, lo, 1 + (e.next() % 2) as usize, e);
    let sum = ChainComplex::direct_sum(&[base, &pad]).unwrap();
    let proj = sum.projections[0].clone();
    let u = build_change_of_basis(&sum.complex, e);
    let (_, iso) = sum.complex.change_basis(&u).unwrap();
    let iso_inv = invert_iso(&iso);
    proj.compose(&iso_inv).expect("twisted projection")
}

/// A random weak equivalence out of `x`: the inclusion into `x + acyclic`
/// postcomposed with a random isomorphism of the target.
pub fn build_weq_from(x: &ChainComplex, e: &mut Entropy) -> ChainMap {
    let ctx = *x.ctx();
    let lo = x.support_bounds().map_or(0, |(a, _)| a);
    let pad = build_acyclic(ctx, lo, 1 + (e.next() % 2) as usize, e);
    let sum = ChainComplex::direct_sum(&[x, &pad]).unwrap();
    let incl = sum.injections[0].clone();
    let u = build_change_of_basis(&sum.complex, e);
    let (_, iso) = sum.complex.change_basis(&u).unwrap();
    iso.compose(&incl).expect("twisted inclusion")
}

/// Inverts a degreewise isomorphism.
pub fn invert_iso(iso: &ChainMap) -> ChainMap {
    let ctx = *iso.ctx();
    let mut maps = BTreeMap::new();
    for n in iso.tgt().support() {
        maps.insert(n, iso.at(n).inverse(&ctx).expect("isomorphism component"));
    }
    ChainMap::new(iso.tgt().clone(), iso.src().clone(), maps).expect("inverse chain map")
}

/// A random cospan over a random target `d`.
pub fn build_cospan(ctx: FieldCtx, deg_lo: i64, dims: &[usize], e: &mut Entropy) -> Cospan {
    let d = build_complex(ctx, deg_lo, dims, e);
    let b_dims: Vec<usize> = dims
        .iter()
        .map(|&k| (k + 1) / 2 + (e.next() % 2) as usize)
        .collect();
    let c_dims: Vec<usize> = dims
        .iter()
        .map(|&k| k / 2 + (e.next() % 2) as usize)
        .collect();
    let b = build_complex(ctx, deg_lo, &b_dims, e);
    let c = build_complex(ctx, deg_lo, &c_dims, e);
    let f = build_map(&b, &d, e);
    let g = build_map(&c, &d, e);
    Cospan::new(g, f).expect("legs share the target")
}

prop_compose! {
    pub fn arb_setup()(
        p in prop::sample::select(vec![2u64, 3, 5]),
        deg_lo in -3i64..1,
        dims in prop::collection::vec(0usize..4, 1..4),
        words in prop::collection::vec(any::<u64>(), 64),
    ) -> (FieldCtx, i64, Vec<usize>, Vec<u64>) {
        (FieldCtx::new(p).unwrap(), deg_lo, dims, words)
    }
}
