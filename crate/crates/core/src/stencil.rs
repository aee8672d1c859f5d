//! Stencil signatures and Newton-form interpolants shared by ENO
//! reconstruction and ENO interpolation.

use std::fmt;

use crate::error::{EnoError, Result};
use crate::numerics::{DividedDifferenceTable, Scalar};

/// Offsets `k_1, ..., k_p` chosen by the ENO selection loop.
///
/// `k_1 = 0` and each stage either keeps the offset or moves it one point
/// to the left. For reconstruction the offset `k_j` stands for the
/// half-integer offset `k_j - 1/2`, measured in interfaces from the cell's
/// left edge; for interpolation it is the node offset itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    offsets: Vec<i64>,
}

/// Signature of a reconstruction stencil (interface-indexed).
pub type StencilSignature = Signature;
/// Signature of an interpolation stencil (node-indexed).
pub type PointSignature = Signature;

impl Signature {
    pub fn new(offsets: Vec<i64>) -> Result<Self> {
        match offsets.first() {
            None => return Err(EnoError::InvalidSignature("empty signature".into())),
            Some(&k) if k != 0 => {
                return Err(EnoError::InvalidSignature(format!(
                    "first offset must be 0, got {k}"
                )))
            }
            _ => {}
        }
        for (j, w) in offsets.windows(2).enumerate() {
            if w[1] != w[0] && w[1] != w[0] - 1 {
                return Err(EnoError::InvalidSignature(format!(
                    "offset {} -> {} at stage {} is neither a keep nor a single left shift",
                    w[0],
                    w[1],
                    j + 1
                )));
            }
        }
        Ok(Self { offsets })
    }

    /// Rightmost stencil of order `p`: every stage keeps.
    pub fn rightmost(order: usize) -> Self {
        Self {
            offsets: vec![0; order],
        }
    }

    /// Leftmost stencil of order `p`: every stage shifts.
    pub fn leftmost(order: usize) -> Self {
        Self {
            offsets: (0..order as i64).map(|j| -j).collect(),
        }
    }

    /// Any stencil with the given final offset, reached by shifting as
    /// early as possible.
    pub fn with_final_offset(order: usize, final_offset: i64) -> Result<Self> {
        let shifts = -final_offset;
        if final_offset > 0 || shifts >= order as i64 {
            return Err(EnoError::InvalidSignature(format!(
                "final offset {final_offset} impossible for order {order}"
            )));
        }
        Self::new(
            (0..order as i64)
                .map(|j| -(j.min(shifts)))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn final_offset(&self) -> i64 {
        *self.offsets.last().expect("signatures are never empty")
    }

    /// Absolute point indices in order of appearance.
    ///
    /// `anchor` is the index the offsets are measured from and `initial_len`
    /// is the size of the stage-1 stencil (2 interfaces for reconstruction,
    /// 1 node for interpolation).
    pub fn appearance_order(&self, anchor: i64, initial_len: usize) -> Vec<i64> {
        let mut points: Vec<i64> = (0..initial_len as i64).map(|m| anchor + m).collect();
        for (j, w) in self.offsets.windows(2).enumerate() {
            let len = (j + initial_len) as i64;
            if w[1] < w[0] {
                points.push(anchor + w[1]);
            } else {
                points.push(anchor + w[0] + len);
            }
        }
        points
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in &self.offsets {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::str::FromStr for Signature {
    type Err = EnoError;

    fn from_str(s: &str) -> Result<Self> {
        let offsets = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| EnoError::InvalidSignature(format!("bad offset {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(offsets)
    }
}

/// Interpolant in Newton form with nodes in order of appearance:
/// `P(x) = sum_j c_j prod_{m<j} (x - z_m)`, where `c_j` is the divided
/// difference over `z_0..z_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolynomial<T> {
    nodes: Vec<T>,
    coefficients: Vec<T>,
}

impl<T: Scalar> NewtonPolynomial<T> {
    /// Builds the interpolant through the table points with the given
    /// indices, which must form a consecutive block at every prefix.
    pub fn from_table(table: &DividedDifferenceTable<T>, appearance: &[i64]) -> Result<Self> {
        let mut nodes = Vec::with_capacity(appearance.len());
        let mut coefficients = Vec::with_capacity(appearance.len());
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for (j, &idx) in appearance.iter().enumerate() {
            lo = lo.min(idx);
            hi = hi.max(idx);
            if hi - lo != j as i64 {
                return Err(EnoError::InvalidSignature(format!(
                    "stencil prefix {:?} is not a consecutive block",
                    &appearance[..=j]
                )));
            }
            coefficients.push(table.entry(lo, j)?.clone());
            let x = usize::try_from(idx)
                .ok()
                .and_then(|i| table.points().get(i))
                .ok_or_else(|| EnoError::StencilOutOfRange(format!("point {idx} outside data")))?;
            nodes.push(x.clone());
        }
        Ok(Self { nodes, coefficients })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// Nominal degree (number of nodes minus one).
    pub fn degree(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn evaluate(&self, x: &T) -> T {
        let Some((last, rest)) = self.coefficients.split_last() else {
            return T::zero();
        };
        rest.iter()
            .zip(&self.nodes)
            .rev()
            .fold(last.clone(), |acc, (c, z)| acc * (x.clone() - z.clone()) + c.clone())
    }

    pub fn derivative(&self, x: &T) -> T {
        self.evaluate_with_derivative(x).1
    }

    /// Nested evaluation of the product form and its derivative.
    pub fn evaluate_with_derivative(&self, x: &T) -> (T, T) {
        let n = self.coefficients.len();
        if n == 0 {
            return (T::zero(), T::zero());
        }
        let mut value = self.coefficients[n - 1].clone();
        let mut slope = T::zero();
        for j in (0..n - 1).rev() {
            let factor = x.clone() - self.nodes[j].clone();
            slope = slope * factor.clone() + value.clone();
            value = value * factor + self.coefficients[j].clone();
        }
        (value, slope)
    }

    /// Power-basis coefficients `a_k` with `P(x) = sum_k a_k (x - center)^k`.
    pub fn power_coefficients(&self, center: &T) -> Vec<T> {
        let n = self.coefficients.len();
        let mut acc: Vec<T> = Vec::with_capacity(n);
        if n == 0 {
            return acc;
        }
        acc.push(self.coefficients[n - 1].clone());
        for j in (0..n - 1).rev() {
            // acc <- acc * (y + (center - z_j)) + c_j, with y = x - center.
            let shift = center.clone() - self.nodes[j].clone();
            let mut next = vec![T::zero(); acc.len() + 1];
            for (k, a) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + a.clone();
                next[k] = next[k].clone() + a.clone() * shift.clone();
            }
            next[0] = next[0].clone() + self.coefficients[j].clone();
            acc = next;
        }
        acc
    }
}
