use thiserror::Error;

/// Errors raised by the reconstruction, interpolation and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnoError {
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("shape mismatch: {what} (expected {expected}, found {found})")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("stencil out of range: {0}")]
    StencilOutOfRange(String),

    #[error("order must be at least 1 (got {0})")]
    InvalidOrder(usize),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("cannot parse {input:?} as a scalar: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = EnoError> = std::result::Result<T, E>;

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        Err(EnoError::InvalidOrder(order))
    } else {
        Ok(())
    }
}
