//! Error types shared across the library.

use thiserror::Error;

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }

    /// Same error shifted to a different line (used when a sub-parser works on
    /// a single line of a larger file).
    pub fn at_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

/// Failures of Laurent polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("not Alexander-like: {0}")]
    NotAlexanderLike(String),
}

/// Failures of planar diagram operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("unknown component '{0}'")]
    UnknownComponent(String),
    #[error("linking number needs two distinct components, got '{0}' twice")]
    SameComponent(String),
    #[error("not a knot: the diagram has {0} components")]
    NotAKnot(usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Failures of polyhedron operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedronError {
    #[error("region '{0}' has no gleam assigned or does not exist")]
    MissingRegion(String),
    #[error("polyhedron has boundary regions: {0}")]
    HasBoundary(String),
    #[error("invalid polyhedron: {0}")]
    Invalid(String),
    #[error("region '{0}' is internal and cannot be collapsed")]
    NotCollapsible(String),
    #[error("region '{0}' is a boundary region")]
    BoundaryRegion(String),
}

/// Failures of the shadow-to-Kirby gleam ledger.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShadowError {
    #[error("unknown region '{0}'")]
    UnknownRegion(String),
    #[error("region '{0}' is internal and cannot be collapsed")]
    NotCollapsible(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("invalid ledger: {0}")]
    Invalid(String),
    #[error(transparent)]
    Polyhedron(#[from] PolyhedronError),
}

/// Failures of Kirby diagram moves.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KirbyError {
    #[error("'{0}' is not a 2-handle")]
    NotTwoHandle(String),
    #[error("'{0}' is not a 1-handle")]
    NotOneHandle(String),
    #[error("cannot blow down '{0}': {1}")]
    NotBlowDownable(String, String),
    #[error("cannot cancel '{0}' against '{1}': {2}")]
    NotCancellable(String, String, String),
    #[error("framing is not an integer at the given parameters: {0}")]
    NonIntegralFraming(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

/// Failures of Legendrian front operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LegendrianError {
    #[error("parameters outside the cork regime: {0}")]
    OutOfRegime(String),
    #[error("invalid front: {0}")]
    Invalid(String),
}

/// Failures of family-level computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter m must be nonzero")]
    ZeroParameter,
    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("parameters outside the cork regime: {0}")]
    OutOfRegime(String),
    #[error(transparent)]
    Kirby(#[from] KirbyError),
    #[error(transparent)]
    Legendrian(#[from] LegendrianError),
    #[error(transparent)]
    Polyhedron(#[from] PolyhedronError),
}
