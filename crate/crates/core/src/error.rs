use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("invalid rational literal `{0}`")]
    Rational(String),
    #[error("invalid polynomial record: {0}")]
    Record(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("multi-index has length {got}, expected {expected}")]
    IndexLength { got: usize, expected: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("unsupported space: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("polynomial degree {degree} exceeds truncation degree {max}")]
    DegreeExceedsTruncation { degree: u32, max: usize },
    #[error("point lies outside the open unit ball (|z|^2 = {0})")]
    OutsideBall(f64),
    #[error("exact weights are not available for this space")]
    NoExactWeights,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubspaceError {
    #[error("element is not in the subspace (relative residual {0:e})")]
    NotInSubspace(f64),
    #[error("subspace is not valuation homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("decomposition does not match the subspace: {0}")]
    InconsistentDecomposition(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CheckError {
    #[error("reconstruction step {m} failed: {reason} (residual {residual:e})")]
    ReconstructionStep { m: usize, reason: String, residual: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("quadrature and moment routes disagree by {0:e}")]
    RouteDisagreement(f64),
    #[error("internal inconsistency: {0}")]
    Integrity(String),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("instance exceeds exact-oracle bounds: {0}")]
    SizeBound(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}
