use serde::{Deserialize, Serialize};

use crate::numerics::Scalar;
use crate::stencil::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    /// Traces of the reconstruction from cell averages, at cell interfaces.
    Reconstruction,
    /// Traces of the interpolant of point values, at node midpoints.
    Interpolation,
}

impl std::fmt::Display for TraceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TraceKind::Reconstruction => f.write_str("reconstruction"),
            TraceKind::Interpolation => f.write_str("interpolation"),
        }
    }
}

impl std::str::FromStr for TraceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reconstruction" => Ok(TraceKind::Reconstruction),
            "interpolation" => Ok(TraceKind::Interpolation),
            other => Err(format!(
                "unknown kind {other:?} (expected reconstruction or interpolation)"
            )),
        }
    }
}

/// One-sided values at a single interface between cells (or nodes) `index`
/// and `index + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceTrace<T> {
    pub index: usize,
    pub location: T,
    /// Value from the left cell's polynomial, `v^-`.
    pub left: T,
    /// Value from the right cell's polynomial, `v^+`.
    pub right: T,
    /// Jump of the underlying data across the interface.
    pub data_jump: T,
    pub left_signature: Signature,
    pub right_signature: Signature,
}

impl<T: Scalar> InterfaceTrace<T> {
    /// `v^+ - v^-`.
    pub fn jump(&self) -> T {
        self.right.clone() - self.left.clone()
    }

    /// Relative jump, or `None` when the data is continuous here.
    pub fn ratio(&self) -> Option<T> {
        if self.data_jump.is_zero() {
            None
        } else {
            Some(self.jump() / self.data_jump.clone())
        }
    }

    /// Magnitude used to separate round-off from genuine jumps.
    pub fn scale(&self) -> T {
        T::max_of(
            T::max_of(self.left.abs(), self.right.abs()),
            self.data_jump.abs(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceTraceList<T> {
    pub kind: TraceKind,
    pub order: usize,
    pub entries: Vec<InterfaceTrace<T>>,
}

impl<T: Scalar> InterfaceTraceList<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, InterfaceTrace<T>> {
        self.entries.iter()
    }
}
