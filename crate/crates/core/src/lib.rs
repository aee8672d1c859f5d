//! Essentially non-oscillatory (ENO) reconstruction and interpolation on
//! non-uniform one-dimensional meshes.
//!
//! Every algorithm is generic over [`Scalar`], implemented for `f64` and for
//! exact rationals ([`Exact`]). The exact backend makes sign and bound checks
//! free of round-off, which is what the [`stability`] and [`harness`]
//! modules rely on.

pub mod error;
pub mod grid;
pub mod harness;
pub mod interpolation;
pub mod numerics;
pub mod reconstruction;
pub mod stability;
pub mod stencil;

pub use error::{EnoError, Result};
pub use grid::{primitive_from_averages, CellAverageField, Mesh, PointValueField};
pub use interpolation::{interpolant_at_node, midpoint_traces, select_signature_pointwise, EnoInterpolation};
pub use numerics::{
    symmetric_divided_difference, Backend, DividedDifferenceTable, Exact, Scalar, Sign,
};
pub use reconstruction::{
    cell_mean, cell_mean_by_quadrature, interface_traces, newton_interpolant, reconstruct_cell, select_signature,
    CellPolynomial, EnoReconstruction,
};
pub use stability::{
    sign_report, BoundTable, InterfaceTrace, InterfaceTraceList, SignReport, TraceKind, Verdict,
};
pub use stencil::{NewtonPolynomial, PointSignature, Signature, StencilSignature};
