use crate::error::Error;
use crate::linfp::Matrix;

use super::degree_window;
use super::map::ChainMap;
use super::system::{BlockLayout, LinSystem, Term};

/// The affine space of solutions of a lifting problem
///
/// ```text
///      u
///   X ----> E
///   |     7 |
/// i |    /  | p
///   v   /   v
///   Z ----> Y
///      v
/// ```
///
/// i.e. of chain maps `l : Z -> E` with `l . i = u` and `p . l = v`.
/// When `i` is a trivial cofibration and `p` a fibration the space is
/// nonempty; any two points of it are chain homotopic.
#[derive(Clone, Debug)]
pub struct LiftSpace {
    base: ChainMap,
    directions: alloc::vec::Vec<ChainMap>,
}

impl LiftSpace {
    /// The deterministic particular solution.
    pub fn base(&self) -> &ChainMap {
        &self.base
    }

    /// Dimension of the homogeneous solution space.
    pub fn degrees_of_freedom(&self) -> usize {
        self.directions.len()
    }

    /// The point `base + sum coeffs[k] . direction_k`; missing
    /// coefficients are zero, extra ones are ignored.
    pub fn sample(&self, coeffs: &[u64]) -> ChainMap {
        let mut out = self.base.clone();
        for (dir, &c) in self.directions.iter().zip(coeffs) {
            let c = out.ctx().reduce(c);
            if c != 0 {
                out = out
                    .add(&dir.scale(c))
                    .expect("directions share endpoints with the base");
            }
        }
        out
    }
}

/// Solves the lifting problem by flattening `l . i = u`, `p . l = v` and
/// the chain-map condition `d . l = l . d` into one linear system over
/// `F_p` and extracting both a particular solution and the homogeneous
/// solution space.
///
/// Fails with [`Error::LiftUnsolvable`] when the combined system has no
/// solution, which can only happen if the trivial-cofibration /
/// fibration preconditions do not hold.
pub fn lift_space(
    i: &ChainMap,
    p: &ChainMap,
    u: &ChainMap,
    v: &ChainMap,
) -> Result<LiftSpace, Error> {
    if i.src() != u.src() {
        return Err(Error::EndpointMismatch {
            what: "lift: i and u must share their source",
        });
    }
    if i.tgt() != v.src() {
        return Err(Error::EndpointMismatch {
            what: "lift: v must start at the target of i",
        });
    }
    if p.src() != u.tgt() {
        return Err(Error::EndpointMismatch {
            what: "lift: u must land in the source of p",
        });
    }
    if p.tgt() != v.tgt() {
        return Err(Error::EndpointMismatch {
            what: "lift: p and v must share their target",
        });
    }
    if p.compose(u)? != v.compose(i)? {
        return Err(Error::NonCommuting {
            what: "lift: p . u != v . i",
        });
    }
    let ctx = *i.ctx();
    let (x, z, e, y) = (i.src(), i.tgt(), p.src(), p.tgt());
    let window = degree_window(&[x, z, e, y]);
    let layout = BlockLayout::new(window.iter().map(|&n| (n, (e.dim(n), z.dim(n)))).collect());
    let mut sys = LinSystem::new(layout);
    for &n in &window {
        // l(n) . i(n) = u(n)
        let shape = (e.dim(n), x.dim(n));
        if shape.0 > 0 && shape.1 > 0 {
            let i_n = i.at(n);
            sys.add_matrix_eq(shape, &[Term::right(&i_n, n, false)], &u.at(n), &ctx);
        }
        // p(n) . l(n) = v(n)
        let shape = (y.dim(n), z.dim(n));
        if shape.0 > 0 && shape.1 > 0 {
            let p_n = p.at(n);
            sys.add_matrix_eq(shape, &[Term::left(&p_n, n, false)], &v.at(n), &ctx);
        }
        // d_E(n) . l(n) - l(n-1) . d_Z(n) = 0
        let shape = (e.dim(n - 1), z.dim(n));
        if shape.0 > 0 && shape.1 > 0 {
            let de = e.d(n);
            let dz = z.d(n);
            sys.add_matrix_eq(
                shape,
                &[Term::left(&de, n, false), Term::right(&dz, n - 1, true)],
                &Matrix::zeros(shape.0, shape.1),
                &ctx,
            );
        }
    }
    let Some(blocks) = sys.solve_particular(&ctx) else {
        return Err(Error::LiftUnsolvable);
    };
    let base = ChainMap::new(z.clone(), e.clone(), blocks)?;
    let directions = sys
        .kernel(&ctx)
        .into_iter()
        .map(|blocks| ChainMap::new(z.clone(), e.clone(), blocks))
        .collect::<Result<_, _>>()?;
    Ok(LiftSpace { base, directions })
}

/// The deterministic lift of the problem, see [`lift_space`].
pub fn lift(i: &ChainMap, p: &ChainMap, u: &ChainMap, v: &ChainMap) -> Result<ChainMap, Error> {
    Ok(lift_space(i, p, u, v)?.base().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::linfp::FieldCtx;

    fn ctx(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    #[test]
    fn lift_with_identity_cofibration_is_forced() {
        let c = ctx(5);
        let s0 = ChainComplex::sphere(c, 0);
        let ds = ChainComplex::direct_sum(&[&s0, &ChainComplex::sphere(c, 1)]).unwrap();
        let p = ds.projections[0].clone();
        let i = ChainMap::identity(&s0);
        let u = ds.injections[0].clone();
        let v = p.compose(&u).unwrap();
        let l = lift(&i, &p, &u, &v).unwrap();
        assert_eq!(l, u);
    }

    #[test]
    fn lift_from_empty_source_through_fibration() {
        let c = ctx(5);
        let zero = ChainComplex::zero(c);
        let s0 = ChainComplex::sphere(c, 0);
        let ds = ChainComplex::direct_sum(&[&s0, &ChainComplex::sphere(c, 1)]).unwrap();
        let p = ds.projections[0].clone();
        // i : 0 -> S(0) (a trivial cofibration? no - S(0) is not acyclic,
        // but the system is still solvable because p is surjective and the
        // chain-map correction exists here)
        let i = ChainMap::zero(&zero, &s0).unwrap();
        let u = ChainMap::zero(&zero, &ds.complex).unwrap();
        let v = ChainMap::identity(&s0);
        let l = lift(&i, &p, &u, &v).unwrap();
        assert_eq!(p.compose(&l).unwrap(), v);
    }

    #[test]
    fn lift_extends_over_disc_summand() {
        let c = ctx(5);
        let s0 = ChainComplex::sphere(c, 0);
        let ds = ChainComplex::direct_sum(&[&s0, &ChainComplex::disc(c, 1)]).unwrap();
        let i = ds.injections[0].clone(); // X = S(0) -> Z = S(0) + D(1)
        let e = ChainComplex::sphere(c, 2);
        let u = ChainMap::zero(&s0, &e).unwrap();
        let zero = ChainComplex::zero(c);
        let p = ChainMap::zero(&e, &zero).unwrap();
        let v = ChainMap::zero(&ds.complex, &zero).unwrap();
        let l = lift(&i, &p, &u, &v).unwrap();
        assert_eq!(l.compose(&i).unwrap(), u);
    }

    #[test]
    fn lift_space_samples_are_distinct_lifts_and_homotopic() {
        let c = ctx(5);
        // i : S(1) -> S(1) + D(2), p : D(2)' -> 0, u = 0: plenty of freedom
        let s1 = ChainComplex::sphere(c, 1);
        let ds = ChainComplex::direct_sum(&[&s1, &ChainComplex::disc(c, 2)]).unwrap();
        let i = ds.injections[0].clone();
        let e = ChainComplex::disc(c, 2);
        let zero = ChainComplex::zero(c);
        let u = ChainMap::zero(&s1, &e).unwrap();
        let p = ChainMap::zero(&e, &zero).unwrap();
        let v = ChainMap::zero(&ds.complex, &zero).unwrap();
        let space = lift_space(&i, &p, &u, &v).unwrap();
        assert!(space.degrees_of_freedom() > 0);
        let l1 = space.base().clone();
        let l2 = space.sample(&[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_ne!(l1, l2);
        assert_eq!(l1.compose(&i).unwrap(), u);
        assert_eq!(l2.compose(&i).unwrap(), u);
        // two lifts of the same problem are chain homotopic
        assert!(crate::chain::chain_homotopy(&l1, &l2).unwrap().is_some());
    }

    #[test]
    fn unsolvable_lift_reports_failure() {
        let c = ctx(5);
        // i : 0 -> S(0) is not a trivial cofibration; ask for a lift of
        // the identity through p : 0 -> 0, which cannot exist.
        let zero = ChainComplex::zero(c);
        let s0 = ChainComplex::sphere(c, 0);
        let i = ChainMap::zero(&zero, &s0).unwrap();
        let p = ChainMap::identity(&zero);
        let u = ChainMap::identity(&zero);
        let v = ChainMap::zero(&s0, &zero).unwrap();
        // l : S(0) -> 0 with l . i = u (vacuous) and p . l = v (vacuous)
        // always exists; instead break it with a nonzero target demand
        let e = ChainComplex::sphere(c, 0);
        let p2 = ChainMap::zero(&e, &zero).unwrap();
        let _ = (i, p, u, v);
        // i2 : S(0) --0--> S(0), u2 = id: l . 0 = id is unsolvable
        let i2 = ChainMap::zero(&s0, &s0).unwrap();
        let u2 = ChainMap::identity(&s0);
        let v2 = ChainMap::zero(&s0, &zero).unwrap();
        assert_eq!(lift(&i2, &p2, &u2, &v2), Err(Error::LiftUnsolvable));
    }
}
