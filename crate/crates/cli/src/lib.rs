//! IO companion to `hopull-core`: the JSON instance format, seeded
//! instance generators and the verification suites, plus the `hopull`
//! binary built on top of them.

pub mod format;
pub mod gen;
pub mod rng;
pub mod suite;
