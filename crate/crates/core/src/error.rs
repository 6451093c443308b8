use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NotFinite { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix of size {size} cannot be split into n x n blocks")]
    OddDimension { size: usize },
    #[error("tolerance {name} = {value} must lie in (0, 1e-3]")]
    InvalidTolerance { name: &'static str, value: f64 },
    #[error("matrix is not Hermitian (max defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("{op} did not converge")]
    NoConvergence { op: &'static str },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric (defect {defect:e} at ({row}, {col}))")]
    NotSymmetric { defect: f64, row: usize, col: usize },
    #[error("imaginary part is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    ImaginaryPartNotPD { min_eigenvalue: f64 },
    #[error("imaginary part is not negative definite (largest eigenvalue {max_eigenvalue:e})")]
    ImaginaryPartNotND { max_eigenvalue: f64 },
    #[error("matrix is not a real symplectic matrix")]
    NotRealSymplectic,
    #[error("matrix is not a purely imaginary symplectic matrix")]
    NotPurelyImaginarySymplectic,
    #[error("matrix is neither symplectic nor antisymplectic")]
    NotInEitherGroup,
    #[error("matrix is not a conjugated translation: {0}")]
    WrongShape(String),
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("vector norm {norm} exceeds 1")]
    NotInUnitBall { norm: f64 },
    #[error("action is not defined at stage {stage}: denominator CZ+D is singular")]
    ChainBreak { stage: usize },
    #[error("image left the expected half space: {0}")]
    LeftSpace(String),
    #[error("path needs at least two points")]
    ShortPath,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("document error: {0}")]
    Document(String),
}
