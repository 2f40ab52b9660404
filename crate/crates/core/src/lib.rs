//! Certification toolkit for the tripartite Hardy paradox: exact small-
//! dimension operator algebra, Hardy-probability maximization, the
//! 26-dimensional correlation geometry with LP certificates, SWAP-isometry
//! fidelity figures of merit, and NPA moment-matrix relaxations with a dense
//! interior-point SDP solver.
//!
//! Core numerics are generic over the floating scalar ([`scalar::Scalar`],
//! `f32`/`f64`); the simplex is additionally generic over an exact rational
//! scalar for auditable certificates.

pub mod eig;
pub mod error;
pub mod geometry;
pub mod hardy;
pub mod matrix;
pub mod npa;
pub mod quantum;
pub mod scalar;
pub mod swap;
pub mod word;

pub use error::CoreError;

/// Concrete `f64` aliases for the main domain types.
pub type CMatrix64 = matrix::CMatrix<f64>;
pub type Observable64 = quantum::Observable<f64>;
pub type Realization64 = quantum::Realization<f64>;
pub type Behavior64 = quantum::Behavior<f64>;

/// Concrete `f32` aliases (numerically coarse; mainly proves scalar
/// genericity).
pub type CMatrix32 = matrix::CMatrix<f32>;
pub type Observable32 = quantum::Observable<f32>;
pub type Realization32 = quantum::Realization<f32>;
pub type Behavior32 = quantum::Behavior<f32>;
