use alloc::collections::BTreeMap;

use crate::error::Error;
use crate::linfp::Matrix;

use super::complex::ChainComplex;
use super::degree_window;
use super::map::ChainMap;

/// The strict pullback of a cospan `f : B -> D <- C : g`, computed
/// degreewise as the kernel of `(b, c) -> f b - g c` with the
/// differential restricted along the kernel inclusion.
#[derive(Clone, Debug)]
pub struct Pullback {
    f: ChainMap,
    g: ChainMap,
    pub apex: ChainComplex,
    /// Projection onto the source of `f`.
    pub to_first: ChainMap,
    /// Projection onto the source of `g`.
    pub to_second: ChainMap,
}

pub fn pullback(f: &ChainMap, g: &ChainMap) -> Result<Pullback, Error> {
    if f.tgt() != g.tgt() {
        return Err(Error::EndpointMismatch {
            what: "pullback legs must share their target",
        });
    }
    let ctx = *f.ctx();
    let (b, c) = (f.src(), g.src());
    // kernel inclusions per degree
    let mut kernels: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for n in degree_window(&[b, c, f.tgt()]) {
        let combined = f.at(n).hstack(&g.at(n).neg(&ctx));
        let k = combined.kernel_basis(&ctx);
        if k.cols() > 0 {
            dims.insert(n, k.cols());
        }
        kernels.insert(n, k);
    }
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let k_here = &kernels[&n];
        let k_prev = &kernels[&(n - 1)];
        if k_prev.cols() == 0 {
            continue;
        }
        let d_sum = Matrix::from_blocks(&[
            alloc::vec![b.d(n), Matrix::zeros(b.dim(n - 1), c.dim(n))],
            alloc::vec![Matrix::zeros(c.dim(n - 1), b.dim(n)), c.d(n)],
        ]);
        let rhs = d_sum.mul(k_here, &ctx);
        let d = k_prev
            .solve(&rhs, &ctx)
            .expect("differential preserves the pullback kernel");
        diffs.insert(n, d);
    }
    let apex = ChainComplex::new(ctx, dims, diffs)?;
    let mut to_b = BTreeMap::new();
    let mut to_c = BTreeMap::new();
    for &n in kernels.keys() {
        let k = &kernels[&n];
        if k.cols() == 0 {
            continue;
        }
        to_b.insert(n, k.submatrix(0, b.dim(n), 0, k.cols()));
        to_c.insert(n, k.submatrix(b.dim(n), b.dim(n) + c.dim(n), 0, k.cols()));
    }
    let to_first = ChainMap::new(apex.clone(), b.clone(), to_b)?;
    let to_second = ChainMap::new(apex.clone(), c.clone(), to_c)?;
    debug_assert_eq!(
        f.compose(&to_first).unwrap(),
        g.compose(&to_second).unwrap(),
        "pullback square must commute"
    );
    Ok(Pullback {
        f: f.clone(),
        g: g.clone(),
        apex,
        to_first,
        to_second,
    })
}

/// The unique map `w : A -> P` with `to_first . w = u` and
/// `to_second . w = v`, given `f . u = g . v`. Uniqueness holds because
/// the two projections are jointly injective.
pub fn universal_into_pullback(
    u: &ChainMap,
    v: &ChainMap,
    pb: &Pullback,
) -> Result<ChainMap, Error> {
    if u.src() != v.src() {
        return Err(Error::EndpointMismatch {
            what: "universal maps must share their source",
        });
    }
    if u.tgt() != pb.f.src() || v.tgt() != pb.g.src() {
        return Err(Error::EndpointMismatch {
            what: "universal maps must land in the pullback legs",
        });
    }
    if pb.f.compose(u)? != pb.g.compose(v)? {
        return Err(Error::NonCommuting {
            what: "f . u != g . v into pullback",
        });
    }
    let ctx = *u.ctx();
    let mut maps = BTreeMap::new();
    for n in pb.apex.support() {
        let k = pb.to_first.at(n).vstack(&pb.to_second.at(n));
        let rhs = u.at(n).vstack(&v.at(n));
        let w = k
            .solve(&rhs, &ctx)
            .expect("commuting cone factors through the kernel");
        maps.insert(n, w);
    }
    ChainMap::new(u.src().clone(), pb.apex.clone(), maps)
}

/// The strict pushout of a span `D <- C -> C'` (`g : C -> D`,
/// `h : C -> C'`), computed degreewise as the cokernel of
/// `c -> (g c, -h c)`, presented by a surjection with the cokernel as
/// deterministic left-kernel basis.
#[derive(Clone, Debug)]
pub struct Pushout {
    g: ChainMap,
    h: ChainMap,
    pub apex: ChainComplex,
    /// Structure map from the target of `g`.
    pub from_first: ChainMap,
    /// Structure map from the target of `h`.
    pub from_second: ChainMap,
}

pub fn pushout(g: &ChainMap, h: &ChainMap) -> Result<Pushout, Error> {
    if g.src() != h.src() {
        return Err(Error::EndpointMismatch {
            what: "pushout legs must share their source",
        });
    }
    let ctx = *g.ctx();
    let (d, c2) = (g.tgt(), h.tgt());
    // surjections (d + c2)(n) ->> coker per degree
    let mut projections: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for n in degree_window(&[g.src(), d, c2]) {
        let m = g.at(n).vstack(&h.at(n).neg(&ctx));
        let pi = m.transpose().kernel_basis(&ctx).transpose();
        if pi.rows() > 0 {
            dims.insert(n, pi.rows());
        }
        projections.insert(n, pi);
    }
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let pi_here = &projections[&n];
        let pi_prev = &projections[&(n - 1)];
        if pi_prev.rows() == 0 {
            continue;
        }
        let d_sum = Matrix::from_blocks(&[
            alloc::vec![d.d(n), Matrix::zeros(d.dim(n - 1), c2.dim(n))],
            alloc::vec![Matrix::zeros(c2.dim(n - 1), d.dim(n)), c2.d(n)],
        ]);
        // d_Q . pi = pi_prev . d_sum, solved through transposition since
        // pi is surjective.
        let rhs = d_sum.transpose().mul(&pi_prev.transpose(), &ctx);
        let dq = pi_here
            .transpose()
            .solve(&rhs, &ctx)
            .expect("differential descends to the cokernel")
            .transpose();
        diffs.insert(n, dq);
    }
    let apex = ChainComplex::new(ctx, dims, diffs)?;
    let mut from_d = BTreeMap::new();
    let mut from_c2 = BTreeMap::new();
    for &n in projections.keys() {
        let pi = &projections[&n];
        if pi.rows() == 0 {
            continue;
        }
        from_d.insert(n, pi.submatrix(0, pi.rows(), 0, d.dim(n)));
        from_c2.insert(
            n,
            pi.submatrix(0, pi.rows(), d.dim(n), d.dim(n) + c2.dim(n)),
        );
    }
    let from_first = ChainMap::new(d.clone(), apex.clone(), from_d)?;
    let from_second = ChainMap::new(c2.clone(), apex.clone(), from_c2)?;
    debug_assert_eq!(
        from_first.compose(g).unwrap(),
        from_second.compose(h).unwrap(),
        "pushout square must commute"
    );
    Ok(Pushout {
        g: g.clone(),
        h: h.clone(),
        apex,
        from_first,
        from_second,
    })
}

/// The unique map `w : Q -> T` with `w . from_first = a` and
/// `w . from_second = b`, given `a . g = b . h`.
pub fn universal_from_pushout(a: &ChainMap, b: &ChainMap, po: &Pushout) -> Result<ChainMap, Error> {
    if a.tgt() != b.tgt() {
        return Err(Error::EndpointMismatch {
            what: "universal maps must share their target",
        });
    }
    if a.src() != po.g.tgt() || b.src() != po.h.tgt() {
        return Err(Error::EndpointMismatch {
            what: "universal maps must come from the pushout legs",
        });
    }
    if a.compose(&po.g)? != b.compose(&po.h)? {
        return Err(Error::NonCommuting {
            what: "a . g != b . h out of pushout",
        });
    }
    let ctx = *a.ctx();
    let mut maps = BTreeMap::new();
    for n in po.apex.support() {
        let pi = po.from_first.at(n).hstack(&po.from_second.at(n));
        let combined = a.at(n).hstack(&b.at(n));
        // w . pi = combined, solved through transposition.
        let w = pi
            .transpose()
            .solve(&combined.transpose(), &ctx)
            .expect("commuting cocone factors through the cokernel")
            .transpose();
        maps.insert(n, w);
    }
    ChainMap::new(po.apex.clone(), a.tgt().clone(), maps)
}
