//! Interface jumps as telescoping sums of higher divided differences.
//!
//! Moving a stencil one point to the right changes the one-sided value at a
//! fixed interface by a single top-order divided difference times a purely
//! geometric factor. Summing those steps from the left cell's stencil to the
//! right cell's stencil gives the jump without evaluating either polynomial,
//! which makes it an independent check on the direct traces.

use crate::error::{EnoError, Result};
use crate::grid::PointValueField;
use crate::interpolation::midpoint;
use crate::numerics::{DividedDifferenceTable, Scalar, Sign};
use crate::stencil::Signature;

/// One summand of a telescoped jump.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpTerm<T> {
    /// First point of the divided-difference window.
    pub start: i64,
    pub divided_difference: T,
    pub geometric_factor: T,
    /// Signed contribution to the jump.
    pub value: T,
}

/// `(x_{t+p+1} - x_t) * prod'_{m=0}^{p-1} (x_{i+1} - x_{t+m+1})`, skipping
/// the zero factor, for the interface `x_{i+1}` between cells `i` and `i+1`.
///
/// Panics if the window `t ..= t+p+1` is outside `interfaces`.
pub fn reconstruction_geometric_factor<T: Scalar>(
    interfaces: &[T],
    cell: usize,
    start: i64,
    order: usize,
) -> T {
    let x = |k: i64| interfaces[usize::try_from(k).expect("window start is non-negative")].clone();
    let at = x(cell as i64 + 1);
    let spread = x(start + order as i64 + 1) - x(start);
    (0..order as i64)
        .map(|m| at.clone() - x(start + m + 1))
        .filter(|f| !f.is_zero())
        .fold(spread, |acc, f| acc * f)
}

/// `(x_{t+p} - x_t) * prod_{m=1}^{p-1} (x_{i+1/2} - x_{t+m})` for the
/// midpoint between nodes `i` and `i+1`.
///
/// Panics if the window `t ..= t+p` is outside `nodes`.
pub fn interpolation_geometric_factor<T: Scalar>(
    nodes: &[T],
    node: usize,
    start: i64,
    order: usize,
) -> T {
    let x = |k: i64| nodes[usize::try_from(k).expect("window start is non-negative")].clone();
    let mid = midpoint(nodes, node);
    let spread = x(start + order as i64) - x(start);
    (1..order as i64).fold(spread, |acc, m| acc * (mid.clone() - x(start + m)))
}

/// Predicted sign of [`reconstruction_geometric_factor`]:
/// `(-1)^{t - i - 1 + p}`.
pub fn reconstruction_sign_factor(cell: usize, start: i64, order: usize) -> Sign {
    Sign::alternating(start - cell as i64 - 1 + order as i64)
}

/// Predicted sign of [`interpolation_geometric_factor`]: `(-1)^{t - i + p + 1}`.
pub fn interpolation_sign_factor(node: usize, start: i64, order: usize) -> Sign {
    Sign::alternating(start - node as i64 + order as i64 + 1)
}

fn check_orders(left: &Signature, right: &Signature, order: usize) -> Result<()> {
    if left.order() != order || right.order() != order {
        return Err(EnoError::InvalidSignature(format!(
            "signatures of order {} and {} used for an order-{order} jump",
            left.order(),
            right.order()
        )));
    }
    Ok(())
}

/// Walks stencil starts from `a` to `b`; a right-to-left walk flips signs.
fn telescope<T: Scalar>(
    a: i64,
    b: i64,
    mut term: impl FnMut(i64) -> Result<(T, T)>,
) -> Result<Vec<JumpTerm<T>>> {
    let (lo, hi, flip) = if a <= b { (a, b, false) } else { (b, a, true) };
    (lo..hi)
        .map(|t| {
            let (dd, g) = term(t)?;
            let v = dd.clone() * g.clone();
            Ok(JumpTerm {
                start: t,
                divided_difference: dd,
                geometric_factor: g,
                value: if flip { -v } else { v },
            })
        })
        .collect()
}

/// Telescoped reconstruction jump terms at the interface between `cell` and
/// `cell + 1`, from a divided-difference table of the primitive holding
/// order `p + 1`.
pub fn reconstruction_jump_terms<T: Scalar>(
    table: &DividedDifferenceTable<T>,
    left: &Signature,
    right: &Signature,
    cell: usize,
    order: usize,
) -> Result<Vec<JumpTerm<T>>> {
    check_orders(left, right, order)?;
    let a = cell as i64 + left.final_offset();
    let b = cell as i64 + 1 + right.final_offset();
    telescope(a, b, |t| {
        let dd = table.entry(t, order + 1)?.clone();
        let g = reconstruction_geometric_factor(table.points(), cell, t, order);
        Ok((dd, g))
    })
}

/// Telescoped interpolation jump terms at the midpoint between `node` and
/// `node + 1`, from a divided-difference table of the data holding order `p`.
pub fn interpolation_jump_terms<T: Scalar>(
    table: &DividedDifferenceTable<T>,
    left: &Signature,
    right: &Signature,
    node: usize,
    order: usize,
) -> Result<Vec<JumpTerm<T>>> {
    check_orders(left, right, order)?;
    let a = node as i64 + left.final_offset();
    let b = node as i64 + 1 + right.final_offset();
    telescope(a, b, |t| {
        let dd = table.entry(t, order)?.clone();
        let g = interpolation_geometric_factor(table.points(), node, t, order);
        Ok((dd, g))
    })
}

pub fn sum_terms<T: Scalar>(terms: &[JumpTerm<T>]) -> T {
    terms
        .iter()
        .fold(T::zero(), |acc, t| acc + t.value.clone())
}

/// Reconstruction jump `v^+ - v^-` at the interface between `cell` and
/// `cell + 1`, computed from `(p+1)`-th divided differences of the
/// primitive.
pub fn telescoped_jump_reconstruction<T: Scalar>(
    primitive: &PointValueField<T>,
    left: &Signature,
    right: &Signature,
    cell: usize,
    order: usize,
) -> Result<T> {
    let table =
        DividedDifferenceTable::with_max_order(primitive.nodes(), primitive.values(), order + 1)?;
    Ok(sum_terms(&reconstruction_jump_terms(&table, left, right, cell, order)?))
}

/// Interpolation jump `w^+ - w^-` at the midpoint between `node` and
/// `node + 1`.
pub fn telescoped_jump_interpolation<T: Scalar>(
    field: &PointValueField<T>,
    left: &Signature,
    right: &Signature,
    node: usize,
    order: usize,
) -> Result<T> {
    let table = DividedDifferenceTable::with_max_order(field.nodes(), field.values(), order)?;
    Ok(sum_terms(&interpolation_jump_terms(&table, left, right, node, order)?))
}
