use alloc::string::String;
use core::fmt;

/// Errors raised when constructing or combining objects whose invariants
/// do not hold. Messages name the failing identity so callers can report
/// exactly which algebraic condition broke.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Modulus outside the supported range `2 <= p < 2^31`.
    InvalidModulus(u64),
    /// Modulus failed the trial-division primality check.
    NotPrime(u64),
    /// Two objects built over different field contexts were combined.
    ContextMismatch,
    /// A matrix was given with a shape other than the required one.
    Shape {
        what: &'static str,
        degree: i64,
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// A matrix entry was not a reduced residue mod p.
    EntryRange { row: usize, col: usize, value: u64 },
    /// `d(n-1) . d(n) != 0` at the named degree.
    DifferentialSquare { degree: i64 },
    /// `tgt.d(n) . f(n) != f(n-1) . src.d(n)` at the named degree.
    NotChainMap { degree: i64 },
    /// `f(n) - g(n) != d.h(n) + h(n-1).d` at the named degree.
    NotChainHomotopy { degree: i64 },
    /// Maps that were required to share a source or target do not.
    EndpointMismatch { what: &'static str },
    /// A square of maps that must commute exactly does not.
    NonCommuting { what: &'static str },
    /// The combined lifting system has no solution; the stated
    /// trivial-cofibration / fibration preconditions cannot all hold.
    LiftUnsolvable,
    /// A replacement pair fed to the lifting machinery is inconsistent
    /// (different sources or different model structures).
    ReplacementMismatch { what: &'static str },
    /// A connecting map that must be a weak equivalence is not.
    NotWeakEquivalence { what: &'static str },
    /// Free-form invariant violation with a description of the identity.
    Invariant(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(p) => {
                write!(f, "modulus {p} outside supported range 2 <= p < 2^31")
            }
            Error::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            Error::ContextMismatch => write!(f, "field contexts differ"),
            Error::Shape {
                what,
                degree,
                expected,
                got,
            } => write!(
                f,
                "{what} at degree {degree}: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            Error::EntryRange { row, col, value } => {
                write!(
                    f,
                    "entry ({row},{col}) = {value} is not a reduced residue mod p"
                )
            }
            Error::DifferentialSquare { degree } => {
                write!(f, "d({}) . d({degree}) != 0", degree - 1)
            }
            Error::NotChainMap { degree } => {
                write!(
                    f,
                    "tgt.d({degree}) . f({degree}) != f({}) . src.d({degree})",
                    degree - 1
                )
            }
            Error::NotChainHomotopy { degree } => write!(
                f,
                "f({degree}) - g({degree}) != d({}) . h({degree}) + h({}) . d({degree})",
                degree + 1,
                degree - 1
            ),
            Error::EndpointMismatch { what } => write!(f, "source/target mismatch: {what}"),
            Error::NonCommuting { what } => write!(f, "square does not commute: {what}"),
            Error::LiftUnsolvable => write!(f, "lifting system has no solution"),
            Error::ReplacementMismatch { what } => write!(f, "replacement pair mismatch: {what}"),
            Error::NotWeakEquivalence { what } => write!(f, "not a weak equivalence: {what}"),
            Error::Invariant(msg) => write!(f, "invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
