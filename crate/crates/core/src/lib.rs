//! Exact computation in the Riordan group.
//!
//! Power series are truncated at an explicit order and carry exact rational
//! coefficients. On top of the series ring sit Riordan elements `(g, f)`,
//! their matrices, involution checks, the conjugation construction
//! `(g, f)^-1 · P · (g(-x), f(-x))` for pseudo-involutions `P`, and tools for
//! continued-fraction and B-sequence analysis.

pub mod analysis;
pub mod cli;
pub mod construct;
pub mod expr;
pub mod rational;
pub mod riordan;
pub mod series;

pub use analysis::{BSequence, JFraction};
pub use construct::{FamilyParams, OrthoRecurrence};
pub use expr::{parse, Expr, ParseError};
pub use rational::Rational;
pub use riordan::{RiordanElement, TriangleMatrix};
pub use series::{SeriesError, TruncatedSeries};

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("g(0) must be nonzero")]
    InvalidG,
    #[error("f must satisfy f(0) = 0 and f'(0) != 0: {0}")]
    InvalidF(&'static str),
    #[error("{rows} rows need truncation order at least {needed}, have {order}")]
    OrderTooSmall { rows: usize, needed: usize, order: usize },
    #[error("P is not a pseudo-involution: (g, -f)^2 differs from (1, x) at order {order}")]
    NotPseudoInvolution { order: usize },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("continued fraction expansion needs g(0) = 1, got {0}")]
    NonUnitConstant(String),
    #[error("B-sequence needs f(0) = 0 and f'(0) = 1, got f'(0) = {0}")]
    BadNormalization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
