//! Exact computational homotopy theory for chain complexes over a prime
//! field.
//!
//! The ambient model category is the category of finitely supported,
//! unbounded chain complexes of `F_p`-vector spaces, with
//! quasi-isomorphisms as weak equivalences, degreewise surjections as
//! fibrations and degreewise injections as cofibrations. Every object is
//! fibrant and cofibrant and the category is right proper, so all the
//! machinery built on top of it reduces to exact linear algebra mod `p`.
//!
//! The crate is organized bottom-up:
//!
//! - [`linfp`]: dense Gaussian elimination over `F_p` (rank, kernel,
//!   solve);
//! - [`chain`]: complexes, chain maps, homotopies, path objects, the
//!   mapping-path-space factorization, strict pullbacks/pushouts and a
//!   lifting solver;
//! - [`cospan`]: the category of cospans `C -> D <- B` with its three
//!   model structures (injective and the two Reedy structures), their
//!   fibration/cofibration classifiers and fibrant replacement;
//! - [`hopull`]: homotopy pullbacks per structure, model squares,
//!   homotopy fiber squares, the pasting law and verdict transfer along
//!   weak equivalences.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the CLI
//! live in the companion `hopull-cli` crate.
//!
//! ```
//! use hopull_core::chain::{ChainComplex, ChainMap};
//! use hopull_core::cospan::{Cospan, ReplaceMode, SigmaTag};
//! use hopull_core::hopull::{cocone_oracle, homotopy_pullback, is_model_square_full, pullback_square};
//! use hopull_core::linfp::FieldCtx;
//!
//! // the cospan  0 -> S(0) <<- S(0) + S(1)  with the projection as
//! // second leg
//! let ctx = FieldCtx::new(5)?;
//! let s0 = ChainComplex::sphere(ctx, 0);
//! let sum = ChainComplex::direct_sum(&[&s0, &ChainComplex::sphere(ctx, 1)])?;
//! let x = Cospan::new(
//!     ChainMap::zero(&ChainComplex::zero(ctx), &s0)?,
//!     sum.projections[0].clone(),
//! )?;
//!
//! // its homotopy pullback is the strict fiber S(1), under every
//! // structure, matching the independent cocone homology
//! let hopb = homotopy_pullback(&x, SigmaTag::ReeI, ReplaceMode::Local)?;
//! assert_eq!(hopb.homology, cocone_oracle(&x));
//! assert_eq!(hopb.homology.get(&1), Some(&1));
//!
//! // and the strict-pullback square over the fibration leg is a model
//! // square
//! assert!(is_model_square_full(&pullback_square(&x)?)?);
//! # Ok::<(), hopull_core::Error>(())
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chain;
pub mod cospan;
mod error;
pub mod hopull;
pub mod linfp;

pub use error::Error;
