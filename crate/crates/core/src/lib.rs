//! Exact mod-p computations for two-dimensional Galois data: Serre weights,
//! tame inertial types, Kisin module matrices with their shapes and gauges,
//! the tangent-space injectivity system, and the Jordan–Hölder structure of
//! the multiplicity-one quotient `D̃₀`.
//!
//! All arithmetic is exact over finite fields. Enumerations that fan out
//! over many independent instances go through [`sweep`], which uses rayon
//! when the `parallel` feature is on and a plain loop otherwise.

pub mod d0;
pub mod field;
pub mod kisin;
pub mod laurent;
pub mod linalg;
pub mod mat2;
pub mod oracle;
pub mod rho;
pub mod sample;
pub mod shape;
pub mod sweep;
pub mod tangent;
pub mod weyl;

pub use field::{field_arith, frobenius, Field, FieldElement, FieldOp};
pub use laurent::{phi_twist, Coefficient, DualNumber, LaurentPoly, Valuation};
pub use mat2::{mat2_arith, Mat2, MatOp, MatResult};
pub use rho::{Mode, RhoBar};
pub use weyl::{AffineWeylElt, ExtendedWeylElt, Perm, SerreWeightLabel, Weight};

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input.
    Invalid,
    /// Input is well formed but outside the hypotheses of the construction.
    Precondition,
    /// An internal consistency check failed.
    Internal,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not invertible over F((v)): {0}")]
    Singular(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidField(_) | Error::FieldMismatch | Error::Invalid(_) => ErrorKind::Invalid,
            Error::DivisionByZero | Error::Singular(_) | Error::Precondition(_) => ErrorKind::Precondition,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
