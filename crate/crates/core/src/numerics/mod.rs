//! Scalar backends and divided differences.

mod divided;
mod scalar;

pub use divided::{symmetric_divided_difference, DividedDifferenceTable};
pub(crate) use divided::check_strictly_increasing;
pub use scalar::{parse_exact, Backend, Exact, Scalar, Sign, FLOAT_SIGN_TOLERANCE};
