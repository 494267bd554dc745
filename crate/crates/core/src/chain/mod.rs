//! The ambient model category: finitely supported chain complexes over
//! `F_p`.
//!
//! Weak equivalences are quasi-isomorphisms (tested through acyclicity of
//! the mapping cone), fibrations are degreewise surjections, cofibrations
//! degreewise injections. Every object is fibrant and cofibrant; the
//! terminal object is the zero complex. The module provides the
//! functorial trivial cofibration - fibration factorization through the
//! mapping path space, path objects, strict pullbacks and pushouts with
//! their universal morphisms, chain homotopies and a lifting solver.
//!
//! All values are immutable after construction and every operation is a
//! pure function.

mod complex;
mod factor;
mod lift;
mod limits;
mod map;
pub(crate) mod system;

pub use complex::{ChainComplex, DirectSum};
pub use factor::{factorize, factorize_morphism, path_object, Factorization, PathObject};
pub use lift::{lift, lift_space, LiftSpace};
pub use limits::{
    pullback, pushout, universal_from_pushout, universal_into_pullback, Pullback, Pushout,
};
pub use map::{chain_homotopy, cone, hom_basis, induce_same_homology, ChainHomotopy, ChainMap};

use alloc::vec::Vec;

/// Degrees at which any of the given complexes can carry nonzero data,
/// padded by one on each side so differentials and homotopies in and out
/// of the support are covered. Empty if all complexes are zero.
pub(crate) fn degree_window(complexes: &[&ChainComplex]) -> Vec<i64> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for c in complexes {
        if let Some((a, b)) = c.support_bounds() {
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    if lo > hi {
        Vec::new()
    } else {
        (lo - 1..=hi + 1).collect()
    }
}
