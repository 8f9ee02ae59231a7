use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a polygon needs at least 3 vertices, got {len}")]
    TooFewVertices { len: usize },

    #[error("entry {index} is not a finite complex number")]
    NonFinite { index: usize },

    #[error("size mismatch: expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("polygon is degenerate: all vertices coincide")]
    DegeneratePolygon,

    #[error("no weight is exactly zero; the closed-form spectrum needs one")]
    NoZeroWeight,

    #[error("eigenvalue for weight {index} is clustered with another eigenvalue")]
    DegenerateSpectrum { index: usize },

    #[error("eigenvector recurrence divides by the zero weight at index {index}")]
    ZeroDivision { index: usize },

    #[error("index {index} is out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("root finder did not converge after {sweeps} sweeps (worst residual {residual:e})")]
    ConvergenceFailure { sweeps: usize, residual: f64 },

    #[error("vertices {index} and {next} coincide (0-based, cyclic)", next = .index + 1)]
    DuplicateConsecutiveVertices { index: usize },

    #[error("polygon is not anchored: its first vertex must be exactly 0")]
    NotAnchored,

    #[error("competing eigenvalue {index} equals the target's own eigenvalue; no scaling separates them")]
    TargetEigenvalueCollision { index: usize },

    #[error("the competing eigenvalue vanishes, so the one-step scaling is undefined")]
    ZeroCompetingEigenvalue,

    #[error("triangle design needs exactly 3 vertices, got {len}")]
    NotATriangle { len: usize },
}
