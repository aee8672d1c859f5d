//! Sign-property verdicts, telescoped jump oracles and jump bounds.

pub mod bounds;
pub mod jumps;
pub mod report;
mod traces;
pub mod verify;

pub use bounds::{
    bound_constants_recursive, interpolation_bound, reconstruction_bound, uniform_interpolation_bound,
    uniform_reconstruction_bound, BoundTable, InterpolationBounds, ReconstructionBounds,
};
pub use jumps::{
    interpolation_geometric_factor, interpolation_jump_terms, interpolation_sign_factor,
    reconstruction_geometric_factor, reconstruction_jump_terms, reconstruction_sign_factor,
    telescoped_jump_interpolation, telescoped_jump_reconstruction, JumpTerm,
};
pub use report::{sign_report, verdict, InterfaceVerdict, SignReport, Verdict};
pub use traces::{InterfaceTrace, InterfaceTraceList, TraceKind};
pub use verify::{verify_interpolation, verify_reconstruction, VerificationReport};
