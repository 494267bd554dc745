use alloc::collections::BTreeMap;
use alloc::vec;

use crate::error::Error;
use crate::linfp::Matrix;

use super::complex::ChainComplex;
use super::degree_window;
use super::map::ChainMap;

/// A path object `P(Y)` with `P(n) = Y(n) + Y(n) + Y(n+1)` and
/// `d(a, b, c) = (da, db, a - b - dc)`.
///
/// `unit : Y -> P` is `(id, id, 0)`, a weak equivalence; `proj : P -> Y + Y`
/// drops the third summand and is a degreewise surjection with
/// `proj . unit` the diagonal.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub path: ChainComplex,
    pub unit: ChainMap,
    pub proj: ChainMap,
}

pub fn path_object(y: &ChainComplex) -> PathObject {
    let ctx = *y.ctx();
    let mut dims = BTreeMap::new();
    for n in degree_window(&[y]) {
        let d = 2 * y.dim(n) + y.dim(n + 1);
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let rows = 2 * y.dim(n - 1) + y.dim(n);
        if rows == 0 {
            continue;
        }
        let (yn, yn1) = (y.dim(n), y.dim(n + 1));
        let ym = y.dim(n - 1);
        let grid = vec![
            vec![y.d(n), Matrix::zeros(ym, yn), Matrix::zeros(ym, yn1)],
            vec![Matrix::zeros(ym, yn), y.d(n), Matrix::zeros(ym, yn1)],
            vec![
                Matrix::identity(yn),
                Matrix::identity(yn).neg(&ctx),
                y.d(n + 1).neg(&ctx),
            ],
        ];
        diffs.insert(n, Matrix::from_blocks(&grid));
    }
    let path = ChainComplex::new(ctx, dims, diffs).expect("path object squares to zero");

    let mut unit_maps = BTreeMap::new();
    for n in path.support() {
        let (yn, yn1) = (y.dim(n), y.dim(n + 1));
        let block = Matrix::from_blocks(&[
            vec![Matrix::identity(yn)],
            vec![Matrix::identity(yn)],
            vec![Matrix::zeros(yn1, yn)],
        ]);
        unit_maps.insert(n, block);
    }
    let unit = ChainMap::new(y.clone(), path.clone(), unit_maps).expect("path unit is a chain map");

    let double = ChainComplex::direct_sum(&[y, y])
        .expect("same context")
        .complex;
    let mut proj_maps = BTreeMap::new();
    for n in path.support() {
        let (yn, yn1) = (y.dim(n), y.dim(n + 1));
        let block = Matrix::from_blocks(&[
            vec![
                Matrix::identity(yn),
                Matrix::zeros(yn, yn),
                Matrix::zeros(yn, yn1),
            ],
            vec![
                Matrix::zeros(yn, yn),
                Matrix::identity(yn),
                Matrix::zeros(yn, yn1),
            ],
        ]);
        proj_maps.insert(n, block);
    }
    let proj =
        ChainMap::new(path.clone(), double, proj_maps).expect("path projection is a chain map");

    PathObject { path, unit, proj }
}

/// A trivial cofibration - fibration factorization `q . i = f` through
/// the mapping path space.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub mid: ChainComplex,
    /// `i : src -> mid`, degreewise injective and a weak equivalence.
    pub i: ChainMap,
    /// `q : mid -> tgt`, degreewise surjective.
    pub q: ChainMap,
}

/// Factors `f : X -> Y` through the mapping path space
/// `N_f = X x_Y P(Y)`, realized with explicit coordinates
/// `N(n) = X(n) + Y(n) + Y(n+1)` and `d(x, b, c) = (dx, db, f x - b - dc)`.
/// The inclusion is `x -> (x, f x, 0)` and the fibration `(x, b, c) -> b`.
///
/// The construction is strictly functorial: a commuting square of maps
/// induces a map of mapping path spaces via [`factorize_morphism`], with
/// both naturality identities holding on the nose.
pub fn factorize(f: &ChainMap) -> Factorization {
    let ctx = *f.ctx();
    let (x, y) = (f.src(), f.tgt());
    let mut dims = BTreeMap::new();
    for n in degree_window(&[x, y]) {
        let d = x.dim(n) + y.dim(n) + y.dim(n + 1);
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let rows = x.dim(n - 1) + y.dim(n - 1) + y.dim(n);
        if rows == 0 {
            continue;
        }
        let (xn, yn, yn1) = (x.dim(n), y.dim(n), y.dim(n + 1));
        let (xm, ym) = (x.dim(n - 1), y.dim(n - 1));
        let grid = vec![
            vec![x.d(n), Matrix::zeros(xm, yn), Matrix::zeros(xm, yn1)],
            vec![Matrix::zeros(ym, xn), y.d(n), Matrix::zeros(ym, yn1)],
            vec![
                f.at(n),
                Matrix::identity(yn).neg(&ctx),
                y.d(n + 1).neg(&ctx),
            ],
        ];
        diffs.insert(n, Matrix::from_blocks(&grid));
    }
    let mid = ChainComplex::new(ctx, dims, diffs).expect("mapping path space squares to zero");

    let mut i_maps = BTreeMap::new();
    let mut q_maps = BTreeMap::new();
    for n in mid.support() {
        let (xn, yn, yn1) = (x.dim(n), y.dim(n), y.dim(n + 1));
        i_maps.insert(
            n,
            Matrix::from_blocks(&[
                vec![Matrix::identity(xn)],
                vec![f.at(n)],
                vec![Matrix::zeros(yn1, xn)],
            ]),
        );
        q_maps.insert(
            n,
            Matrix::from_blocks(&[vec![
                Matrix::zeros(yn, xn),
                Matrix::identity(yn),
                Matrix::zeros(yn, yn1),
            ]]),
        );
    }
    let i = ChainMap::new(x.clone(), mid.clone(), i_maps).expect("mapping path inclusion");
    let q = ChainMap::new(mid.clone(), y.clone(), q_maps).expect("mapping path fibration");
    Factorization { mid, i, q }
}

/// The map of mapping path spaces induced by a commuting square
/// `b . f = f2 . a` with `f : X -> Y`, `f2 : X' -> Y'`, `a : X -> X'`,
/// `b : Y -> Y'`. Satisfies `m . i_f = i_f2 . a` and `q_f2 . m = b . q_f`
/// exactly.
pub fn factorize_morphism(
    f: &ChainMap,
    f2: &ChainMap,
    a: &ChainMap,
    b: &ChainMap,
) -> Result<ChainMap, Error> {
    if a.src() != f.src() || b.src() != f.tgt() || a.tgt() != f2.src() || b.tgt() != f2.tgt() {
        return Err(Error::EndpointMismatch {
            what: "factorize_morphism square endpoints",
        });
    }
    if b.compose(f)? != f2.compose(a)? {
        return Err(Error::NonCommuting {
            what: "factorize_morphism input square",
        });
    }
    let n_f = factorize(f);
    let n_f2 = factorize(f2);
    let (x, y) = (f.src(), f.tgt());
    let (x2, y2) = (f2.src(), f2.tgt());
    let mut maps = BTreeMap::new();
    for n in n_f.mid.support() {
        let (xn, yn, yn1) = (x.dim(n), y.dim(n), y.dim(n + 1));
        let (x2n, y2n, y2n1) = (x2.dim(n), y2.dim(n), y2.dim(n + 1));
        let grid = vec![
            vec![a.at(n), Matrix::zeros(x2n, yn), Matrix::zeros(x2n, yn1)],
            vec![Matrix::zeros(y2n, xn), b.at(n), Matrix::zeros(y2n, yn1)],
            vec![
                Matrix::zeros(y2n1, xn),
                Matrix::zeros(y2n1, yn),
                b.at(n + 1),
            ],
        ];
        maps.insert(n, Matrix::from_blocks(&grid));
    }
    ChainMap::new(n_f.mid.clone(), n_f2.mid.clone(), maps)
}
