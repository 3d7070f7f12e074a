use thiserror::Error;

/// Errors raised by the toolkit. Every variant is a domain error; none of
/// them indicates a panic-worthy condition in the caller.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("rows are linearly dependent over the rationals")]
    DependentRows,

    #[error("not a sublattice: {0}")]
    NotSublattice(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),

    #[error("invalid projector: {0}")]
    InvalidProjector(String),

    #[error("operators do not commute: {0} and {1}")]
    NonCommuting(String, String),

    #[error("operator {0} does not preserve the lattice")]
    NotStable(String),

    #[error("projector is not in the rational Hecke algebra")]
    ProjectorOutsideAlgebra,

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("no congruent eigensystem at p = {0}")]
    NoCongruentEigensystem(u64),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("invalid weight data: {0}")]
    InvalidWeights(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("desk-scale bound exceeded: {0}")]
    DeskScale(String),
}

pub type Result<T> = std::result::Result<T, Error>;
