//! Exact verification toolkit for semiorthogonal geometry on flag varieties.
//!
//! The crate computes, over a field of characteristic zero:
//!
//! * Littlewood-Richardson products, Weyl dimensions and the two classical
//!   plethysms `Sym^t(Λ²V)` and `Sym^t(Sym²V)` ([`partitions`]);
//! * equivariant bundles on products of partial flag varieties of `GL(n)`,
//!   parsed from a small expression language and normalized into
//!   irreducible summands ([`varieties`]);
//! * sheaf cohomology and relative pushforwards of those bundles by the
//!   Borel-Bott-Weil theorem ([`bbw`]);
//! * the finite checklists behind categorical and noncommutative resolutions
//!   built from Lefschetz decompositions of an exceptional divisor:
//!   exceptionality, semiorthogonality, strictness, K-rank accounting,
//!   tilting with a certified termination bound, crepancy arithmetic and
//!   graded dimensions of the resolution algebra ([`lefschetz`]);
//! * ready-made scenarios for cones over Veronese, Segre, anticanonical and
//!   Grassmannian embeddings, and for Pfaffian varieties ([`scenarios`]).
//!
//! Everything is exact: weights are machine integers, dimensions are
//! arbitrary-precision naturals, and every verdict either carries a witness
//! or names the assumption it relies on.

pub mod bbw;
pub mod lefschetz;
pub mod partitions;
pub mod scenarios;
pub mod varieties;

/// Errors shared by all modules.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Malformed input to a library operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Expression or descriptor text that does not conform to the grammar.
    /// `pos` is a byte offset into the offending string.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A request outside the supported calculus (e.g. a general plethysm).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A tilting check whose certified bound does not exist.
    #[error("unbounded check: {0}")]
    Unbounded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
