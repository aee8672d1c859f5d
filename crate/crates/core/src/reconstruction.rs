//! ENO reconstruction from cell averages.
//!
//! The reconstruction runs on the primitive `V` sampled at the interfaces.
//! For cell `i` the stencil starts as the two interfaces `{i, i+1}` and
//! grows one interface per stage. At each stage the left-extended and
//! right-extended divided differences are compared. The stencil moves left
//! only when the left one is strictly smaller in magnitude, so ties keep the
//! current stencil. The cell polynomial is the derivative of the
//! interpolant `F_i` of `V` on the final stencil.

use std::ops::RangeInclusive;

use crate::error::{check_order, EnoError, Result};
use crate::grid::{primitive_from_averages, CellAverageField, Mesh, PointValueField};
use crate::numerics::{DividedDifferenceTable, Scalar};
use crate::stability::{InterfaceTrace, InterfaceTraceList, TraceKind};
use crate::stencil::{NewtonPolynomial, StencilSignature};

/// Polynomial `f_i = F_i'` on a single cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellPolynomial<T> {
    cell: usize,
    left_edge: T,
    primitive: NewtonPolynomial<T>,
}

impl<T: Scalar> CellPolynomial<T> {
    pub fn cell(&self) -> usize {
        self.cell
    }

    /// The interpolant `F_i` of the primitive.
    pub fn primitive_interpolant(&self) -> &NewtonPolynomial<T> {
        &self.primitive
    }

    pub fn evaluate(&self, x: &T) -> T {
        self.primitive.derivative(x)
    }

    /// Coefficients `b_k` with `f_i(x) = sum_k b_k (x - x_{i-1/2})^k`.
    pub fn power_coefficients(&self) -> Vec<T> {
        self.primitive
            .power_coefficients(&self.left_edge)
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * T::from_i64(k as i64))
            .collect()
    }
}

/// ENO reconstruction context for one field and one order.
#[derive(Debug, Clone)]
pub struct EnoReconstruction<T> {
    field: CellAverageField<T>,
    primitive: PointValueField<T>,
    table: DividedDifferenceTable<T>,
    order: usize,
}

impl<T: Scalar> EnoReconstruction<T> {
    pub fn new(field: &CellAverageField<T>, order: usize) -> Result<Self> {
        Self::with_base(field, order, T::zero())
    }

    /// Same as [`new`](Self::new) with the primitive anchored at `base`.
    pub fn with_base(field: &CellAverageField<T>, order: usize, base: T) -> Result<Self> {
        check_order(order)?;
        let primitive = primitive_from_averages(field, base);
        let table =
            DividedDifferenceTable::with_max_order(primitive.nodes(), primitive.values(), order + 1)?;
        Ok(Self {
            field: field.clone(),
            primitive,
            table,
            order,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> &CellAverageField<T> {
        &self.field
    }

    pub fn mesh(&self) -> &Mesh<T> {
        self.field.mesh()
    }

    pub fn primitive(&self) -> &PointValueField<T> {
        &self.primitive
    }

    /// Divided differences of the primitive, up to order `p + 1`.
    pub fn table(&self) -> &DividedDifferenceTable<T> {
        &self.table
    }

    /// Cells whose full candidate window `i-p+1 ..= i+p` (interfaces) exists.
    pub fn reconstructible_cells(&self) -> Option<RangeInclusive<usize>> {
        let n = self.field.cell_count();
        let p = self.order;
        (n + 1 >= 2 * p).then(|| p - 1..=n - p)
    }

    /// Left cells `i` of the interfaces `i + 1/2` with full windows on both
    /// sides.
    pub fn interior_interfaces(&self) -> Option<RangeInclusive<usize>> {
        let n = self.field.cell_count();
        let p = self.order;
        (n >= 2 * p).then(|| p - 1..=n - p - 1)
    }

    fn check_cell(&self, cell: usize) -> Result<()> {
        match self.reconstructible_cells() {
            Some(r) if r.contains(&cell) => Ok(()),
            _ => Err(EnoError::StencilOutOfRange(format!(
                "cell {cell} of {} has no full order-{} window (needs interfaces {}..={})",
                self.field.cell_count(),
                self.order,
                cell as i64 - self.order as i64 + 1,
                cell + self.order
            ))),
        }
    }

    /// ENO stencil selection for `cell`.
    pub fn signature(&self, cell: usize) -> Result<StencilSignature> {
        self.check_cell(cell)?;
        select_on_table(&self.table, cell, self.order)
    }

    /// Newton interpolant of `V` on the stencil described by `signature`.
    pub fn interpolant_for(
        &self,
        cell: usize,
        signature: &StencilSignature,
    ) -> Result<NewtonPolynomial<T>> {
        if signature.order() != self.order {
            return Err(EnoError::InvalidSignature(format!(
                "signature has order {} but the reconstruction has order {}",
                signature.order(),
                self.order
            )));
        }
        NewtonPolynomial::from_table(&self.table, &signature.appearance_order(cell as i64, 2))
    }

    pub fn interpolant(&self, cell: usize) -> Result<NewtonPolynomial<T>> {
        let sig = self.signature(cell)?;
        self.interpolant_for(cell, &sig)
    }

    pub fn cell_polynomial_for(
        &self,
        cell: usize,
        signature: &StencilSignature,
    ) -> Result<CellPolynomial<T>> {
        Ok(CellPolynomial {
            cell,
            left_edge: self.mesh().interface(cell).clone(),
            primitive: self.interpolant_for(cell, signature)?,
        })
    }

    pub fn cell_polynomial(&self, cell: usize) -> Result<CellPolynomial<T>> {
        let sig = self.signature(cell)?;
        self.cell_polynomial_for(cell, &sig)
    }

    /// ENO traces at every interior interface.
    pub fn traces(&self) -> Result<InterfaceTraceList<T>> {
        self.traces_with(|cell| self.signature(cell))
    }

    /// Traces with caller-chosen stencils, e.g. to show that non-ENO choices
    /// can break the sign property.
    pub fn traces_with<F>(&self, mut choose: F) -> Result<InterfaceTraceList<T>>
    where
        F: FnMut(usize) -> Result<StencilSignature>,
    {
        let range = self.interior_interfaces().ok_or_else(|| {
            EnoError::StencilOutOfRange(format!(
                "order {} traces need at least {} cells, got {}",
                self.order,
                2 * self.order,
                self.field.cell_count()
            ))
        })?;
        let mut entries = Vec::with_capacity(range.clone().count());
        let mut right_cell: Option<(StencilSignature, CellPolynomial<T>)> = None;
        for i in range {
            let (left_sig, left_poly) = match right_cell.take() {
                Some(prev) => prev,
                None => {
                    let s = choose(i)?;
                    let poly = self.cell_polynomial_for(i, &s)?;
                    (s, poly)
                }
            };
            let right_sig = choose(i + 1)?;
            let right_poly = self.cell_polynomial_for(i + 1, &right_sig)?;
            let x = self.mesh().interface(i + 1).clone();
            let averages = self.field.averages();
            entries.push(InterfaceTrace {
                index: i,
                left: left_poly.evaluate(&x),
                right: right_poly.evaluate(&x),
                location: x,
                data_jump: averages[i + 1].clone() - averages[i].clone(),
                left_signature: left_sig,
                right_signature: right_sig.clone(),
            });
            right_cell = Some((right_sig, right_poly));
        }
        Ok(InterfaceTraceList {
            kind: TraceKind::Reconstruction,
            order: self.order,
            entries,
        })
    }
}

/// Stencil selection on a divided-difference table of the primitive.
pub(crate) fn select_on_table<T: Scalar>(
    table: &DividedDifferenceTable<T>,
    cell: usize,
    order: usize,
) -> Result<StencilSignature> {
    let i = cell as i64;
    let mut offsets = Vec::with_capacity(order);
    let mut k = 0i64;
    offsets.push(k);
    for j in 1..order {
        let left = table.entry(i + k - 1, j + 1)?;
        let right = table.entry(i + k, j + 1)?;
        if left.abs() < right.abs() {
            k -= 1;
        }
        offsets.push(k);
    }
    StencilSignature::new(offsets)
}

fn check_window(primitive: &PointValueField<impl Scalar>, cell: usize, order: usize) -> Result<()> {
    let n_cells = primitive.len().saturating_sub(1);
    if order == 0 {
        return Err(EnoError::InvalidOrder(order));
    }
    if cell + 1 < order || cell + order > n_cells {
        return Err(EnoError::StencilOutOfRange(format!(
            "cell {cell} of {n_cells} has no full order-{order} window"
        )));
    }
    Ok(())
}

/// Selects the ENO signature of `cell` from the primitive's interface values.
pub fn select_signature<T: Scalar>(
    primitive: &PointValueField<T>,
    cell: usize,
    order: usize,
) -> Result<StencilSignature> {
    check_window(primitive, cell, order)?;
    let table = DividedDifferenceTable::with_max_order(primitive.nodes(), primitive.values(), order)?;
    select_on_table(&table, cell, order)
}

/// Interpolant `F_i` of the primitive on the stencil of `signature`.
pub fn newton_interpolant<T: Scalar>(
    primitive: &PointValueField<T>,
    signature: &StencilSignature,
    cell: usize,
) -> Result<NewtonPolynomial<T>> {
    check_window(primitive, cell, signature.order())?;
    let table =
        DividedDifferenceTable::with_max_order(primitive.nodes(), primitive.values(), signature.order())?;
    NewtonPolynomial::from_table(&table, &signature.appearance_order(cell as i64, 2))
}

/// ENO cell polynomial `f_i` of order `p` (degree at most `p - 1`).
pub fn reconstruct_cell<T: Scalar>(
    primitive: &PointValueField<T>,
    cell: usize,
    order: usize,
) -> Result<CellPolynomial<T>> {
    let signature = select_signature(primitive, cell, order)?;
    Ok(CellPolynomial {
        cell,
        left_edge: primitive.nodes()[cell].clone(),
        primitive: newton_interpolant(primitive, &signature, cell)?,
    })
}

/// One-sided ENO traces at all interior interfaces of `field`.
pub fn interface_traces<T: Scalar>(
    field: &CellAverageField<T>,
    order: usize,
) -> Result<InterfaceTraceList<T>> {
    EnoReconstruction::new(field, order)?.traces()
}

/// Mean of `poly` over its cell: the primitive interpolant's increment
/// across the cell divided by the width.
pub fn cell_mean<T: Scalar>(poly: &CellPolynomial<T>, mesh: &Mesh<T>) -> T {
    let cell = poly.cell();
    let f = poly.primitive_interpolant();
    let (a, b) = (mesh.interface(cell), mesh.interface(cell + 1));
    (f.evaluate(b) - f.evaluate(a)) / mesh.width(cell)
}

/// Mean of `poly` over its cell from the power-basis form, integrated term
/// by term.
pub fn cell_mean_by_quadrature<T: Scalar>(poly: &CellPolynomial<T>, mesh: &Mesh<T>) -> T {
    let width = mesh.width(poly.cell());
    let mut integral = T::zero();
    let mut power = width.clone();
    for (k, b) in poly.power_coefficients().into_iter().enumerate() {
        integral = integral + b * power.clone() / T::from_i64(k as i64 + 1);
        power = power * width.clone();
    }
    integral / width
}
