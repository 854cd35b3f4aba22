use thiserror::Error;

use crate::algebra::Context;
use crate::calculus::Form;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: Context, right: Context },

    #[error("matrix size mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },

    #[error("generator is not anti-hermitian (X† + X = {residual})")]
    NotAntiHermitian { residual: String },

    #[error("expected a form of degree {expected}, found components in degrees {found:?}")]
    WrongDegree { expected: u8, found: Vec<u8> },

    #[error("1-form is not closed: d(ω) = {}", .witness.render())]
    NotClosed { witness: Box<Form> },

    #[error("current is not conserved{}: d★J = {}", step_suffix(*.step), .residual.render())]
    NotConserved { step: Option<usize>, residual: Box<Form> },

    #[error("gauge field is not harmonic: d★A = {}", .residual.render())]
    NotHarmonic { residual: Box<Form> },

    #[error("gauge field is not flat: F = {}", .residual.render())]
    NotFlat { residual: Box<Form> },

    #[error("λ² = 1 is a pole of the Lax pair")]
    PoleAtUnitLambda,

    #[error("seed does not solve the wave equation: □(seed) = {residual}")]
    SeedNotHarmonic { residual: String },

    #[error("order-{order} source is not anti-hermitian; no anti-hermitian correction exists (source = {residual})")]
    ObstructionNonintegrable { order: u32, residual: String },

    #[error("generalized inverse check failed: S·a - 1 = {residual}")]
    InvalidInversePair { residual: String },

    #[error("Hodge table is not invertible")]
    StarNotInvertible,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("literal t^{exponent} exceeds truncation order {order}")]
    OrderExceeded { exponent: u32, order: u32 },

    #[error("{0}")]
    Unsupported(String),

    #[error("invalid model: {0}")]
    Model(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn step_suffix(step: Option<usize>) -> String {
    step.map(|m| format!(" at step {m}")).unwrap_or_default()
}

impl Error {
    /// Errors caused by malformed input rather than by a failed check.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::OrderExceeded { .. }
                | Error::Model(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::Unsupported(_)
                | Error::ContextMismatch { .. }
                | Error::ShapeMismatch { .. }
        )
    }
}
