//! ENO interpolation of point values.
//!
//! Node `i` starts from the one-point stencil `{x_i}` and grows one node per
//! stage toward the smaller divided difference, with the same strict
//! comparison as the reconstruction. The resulting polynomial has degree at
//! most `p - 1` and is traced at the midpoints `(x_i + x_{i+1}) / 2`.

use std::ops::RangeInclusive;

use crate::error::{check_order, EnoError, Result};
use crate::grid::PointValueField;
use crate::numerics::{DividedDifferenceTable, Scalar};
use crate::stability::{InterfaceTrace, InterfaceTraceList, TraceKind};
use crate::stencil::{NewtonPolynomial, PointSignature};

#[derive(Debug, Clone)]
pub struct EnoInterpolation<T> {
    field: PointValueField<T>,
    table: DividedDifferenceTable<T>,
    order: usize,
}

impl<T: Scalar> EnoInterpolation<T> {
    pub fn new(field: &PointValueField<T>, order: usize) -> Result<Self> {
        check_order(order)?;
        let table = DividedDifferenceTable::with_max_order(field.nodes(), field.values(), order)?;
        Ok(Self {
            field: field.clone(),
            table,
            order,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> &PointValueField<T> {
        &self.field
    }

    /// Divided differences of the data, up to order `p`.
    pub fn table(&self) -> &DividedDifferenceTable<T> {
        &self.table
    }

    /// Nodes whose window `i-p+1 ..= i+p-1` exists.
    pub fn interpolable_nodes(&self) -> Option<RangeInclusive<usize>> {
        let n = self.field.len();
        let p = self.order;
        (n + 2 > 2 * p).then(|| p - 1..=n - p)
    }

    /// Left nodes `i` of the midpoints `x_{i+1/2}` with full windows on both
    /// sides.
    pub fn interior_midpoints(&self) -> Option<RangeInclusive<usize>> {
        let n = self.field.len();
        let p = self.order;
        (n >= 2 * p).then(|| p - 1..=n - p - 1)
    }

    fn check_node(&self, node: usize) -> Result<()> {
        match self.interpolable_nodes() {
            Some(r) if r.contains(&node) => Ok(()),
            _ => Err(EnoError::StencilOutOfRange(format!(
                "node {node} of {} has no full order-{} window",
                self.field.len(),
                self.order
            ))),
        }
    }

    pub fn signature(&self, node: usize) -> Result<PointSignature> {
        self.check_node(node)?;
        select_on_table(&self.table, node, self.order)
    }

    pub fn interpolant_for(
        &self,
        node: usize,
        signature: &PointSignature,
    ) -> Result<NewtonPolynomial<T>> {
        if signature.order() != self.order {
            return Err(EnoError::InvalidSignature(format!(
                "signature has order {} but the interpolation has order {}",
                signature.order(),
                self.order
            )));
        }
        NewtonPolynomial::from_table(&self.table, &signature.appearance_order(node as i64, 1))
    }

    pub fn interpolant(&self, node: usize) -> Result<NewtonPolynomial<T>> {
        let sig = self.signature(node)?;
        self.interpolant_for(node, &sig)
    }

    /// `(x_i + x_{i+1}) / 2`.
    pub fn midpoint(&self, node: usize) -> T {
        midpoint(self.field.nodes(), node)
    }

    pub fn traces(&self) -> Result<InterfaceTraceList<T>> {
        self.traces_with(|node| self.signature(node))
    }

    pub fn traces_with<F>(&self, mut choose: F) -> Result<InterfaceTraceList<T>>
    where
        F: FnMut(usize) -> Result<PointSignature>,
    {
        let range = self.interior_midpoints().ok_or_else(|| {
            EnoError::StencilOutOfRange(format!(
                "order {} midpoint traces need at least {} nodes, got {}",
                self.order,
                2 * self.order,
                self.field.len()
            ))
        })?;
        let values = self.field.values();
        let mut entries = Vec::with_capacity(range.clone().count());
        let mut carried: Option<(PointSignature, NewtonPolynomial<T>)> = None;
        for i in range {
            let (left_sig, left_poly) = match carried.take() {
                Some(prev) => prev,
                None => {
                    let s = choose(i)?;
                    let poly = self.interpolant_for(i, &s)?;
                    (s, poly)
                }
            };
            let right_sig = choose(i + 1)?;
            let right_poly = self.interpolant_for(i + 1, &right_sig)?;
            let x = self.midpoint(i);
            entries.push(InterfaceTrace {
                index: i,
                left: left_poly.evaluate(&x),
                right: right_poly.evaluate(&x),
                location: x,
                data_jump: values[i + 1].clone() - values[i].clone(),
                left_signature: left_sig,
                right_signature: right_sig.clone(),
            });
            carried = Some((right_sig, right_poly));
        }
        Ok(InterfaceTraceList {
            kind: TraceKind::Interpolation,
            order: self.order,
            entries,
        })
    }
}

pub(crate) fn midpoint<T: Scalar>(nodes: &[T], i: usize) -> T {
    (nodes[i].clone() + nodes[i + 1].clone()) / T::from_i64(2)
}

pub(crate) fn select_on_table<T: Scalar>(
    table: &DividedDifferenceTable<T>,
    node: usize,
    order: usize,
) -> Result<PointSignature> {
    let i = node as i64;
    let mut offsets = Vec::with_capacity(order);
    let mut k = 0i64;
    offsets.push(k);
    for j in 1..order {
        let left = table.entry(i + k - 1, j)?;
        let right = table.entry(i + k, j)?;
        if left.abs() < right.abs() {
            k -= 1;
        }
        offsets.push(k);
    }
    PointSignature::new(offsets)
}

/// Selects the ENO signature of `node`.
pub fn select_signature_pointwise<T: Scalar>(
    field: &PointValueField<T>,
    node: usize,
    order: usize,
) -> Result<PointSignature> {
    EnoInterpolation::new(field, order)?.signature(node)
}

/// ENO interpolant at `node` (degree at most `p - 1`).
pub fn interpolant_at_node<T: Scalar>(
    field: &PointValueField<T>,
    node: usize,
    order: usize,
) -> Result<NewtonPolynomial<T>> {
    EnoInterpolation::new(field, order)?.interpolant(node)
}

/// One-sided traces at all interior midpoints.
pub fn midpoint_traces<T: Scalar>(
    field: &PointValueField<T>,
    order: usize,
) -> Result<InterfaceTraceList<T>> {
    EnoInterpolation::new(field, order)?.traces()
}
