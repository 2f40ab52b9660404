//! Crate-wide error type for construction and validation failures.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("matrix is not square: {rows} rows, {cols} cols")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max |M - M†| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not a ±1 involution (max |M² - 1| = {deviation:.3e})")]
    NotInvolution { deviation: f64 },

    #[error("matrix is not unitary (max |U U† - 1| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (‖ψ‖ = {norm})")]
    NotNormalized { norm: f64 },

    #[error("not a density matrix: {reason}")]
    NotDensity { reason: String },

    #[error("malformed behavior: {reason}")]
    BadBehavior { reason: String },

    #[error("invalid parameters: {reason}")]
    BadParams { reason: String },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    EigNoConvergence { sweeps: usize },

    #[error("NPA level {level} outside supported range {min}..={max}")]
    LevelRange { level: usize, min: usize, max: usize },

    #[error("json: {0}")]
    Json(String),
}
