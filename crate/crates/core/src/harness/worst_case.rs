//! Perturbed-step averages that drive the reconstruction jump at `x = 4`
//! to the uniform-mesh bound.
//!
//! Cells carry integer labels `j` and span `[j - 1, j)`, so the target
//! interface lies between cells labelled 4 and 5. The labels run from
//! `5 - n/2` to `4 + n/2` (rounded down), centring the interface.

use serde::{Deserialize, Serialize};

use crate::error::{check_order, EnoError, Result};
use crate::grid::{CellAverageField, Mesh};
use crate::numerics::Scalar;
use crate::reconstruction::EnoReconstruction;
use crate::stability::InterfaceTrace;

pub const DEFAULT_EPSILON: f64 = 1e-10;

/// Location of the interface where the extremal jump appears.
pub const TARGET_INTERFACE: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WorstCaseLayout {
    /// `0` on even labels, `1` on odd labels `>= 5`, `1 - eps` on odd labels
    /// `<= 3`. Attains the bound under the strict stencil comparison.
    #[default]
    Attaining,
    /// `0` on odd labels, `1` on even labels `<= 4`, `1 - eps` on even labels
    /// `> 4`. Its first stencil choice at the target is a tie, so with
    /// ties kept on the right the bound is not reached.
    Mirror,
}

/// Smallest default cell count for order `p`.
pub fn default_cell_count(order: usize) -> usize {
    (2 * order + 10).max(20)
}

fn first_label(n_cells: usize) -> i64 {
    5 - (n_cells / 2) as i64
}

/// Index of the left cell of the target interface.
pub fn target_cell(n_cells: usize) -> usize {
    (TARGET_INTERFACE - first_label(n_cells)) as usize
}

pub fn worst_case_averages<T: Scalar>(
    order: usize,
    epsilon: T,
    n_cells: usize,
) -> Result<CellAverageField<T>> {
    worst_case_averages_with(order, epsilon, n_cells, WorstCaseLayout::Attaining)
}

pub fn worst_case_averages_with<T: Scalar>(
    order: usize,
    epsilon: T,
    n_cells: usize,
    layout: WorstCaseLayout,
) -> Result<CellAverageField<T>> {
    check_order(order)?;
    if n_cells < 2 * order + 10 {
        return Err(EnoError::StencilOutOfRange(format!(
            "the order-{order} worst case needs at least {} cells, got {n_cells}",
            2 * order + 10
        )));
    }
    let start = first_label(n_cells);
    let mesh = Mesh::uniform(T::from_i64(start - 1), T::one(), n_cells)?;
    let one = T::one();
    let low = one.clone() - epsilon;
    let averages = (start..start + n_cells as i64)
        .map(|j| match layout {
            WorstCaseLayout::Attaining if j.rem_euclid(2) == 0 => T::zero(),
            WorstCaseLayout::Attaining if j >= 5 => one.clone(),
            WorstCaseLayout::Attaining => low.clone(),
            WorstCaseLayout::Mirror if j.rem_euclid(2) == 1 => T::zero(),
            WorstCaseLayout::Mirror if j <= 4 => one.clone(),
            WorstCaseLayout::Mirror => low.clone(),
        })
        .collect();
    CellAverageField::new(mesh, averages)
}

/// Traces and relative jump at `x = 4`.
#[derive(Debug, Clone, PartialEq)]
pub struct WorstCaseRun<T> {
    pub field: CellAverageField<T>,
    pub trace: InterfaceTrace<T>,
    pub ratio: T,
}

/// Reconstructs `field` with order `p` and measures the jump at `x = 4`.
pub fn ratio_at_target<T: Scalar>(field: &CellAverageField<T>, order: usize) -> Result<WorstCaseRun<T>> {
    let x = field.mesh().interfaces();
    let target = T::from_i64(TARGET_INTERFACE);
    let cell = x
        .iter()
        .position(|v| *v == target)
        .and_then(|k| k.checked_sub(1))
        .ok_or_else(|| EnoError::InvalidMesh("no interior interface at x = 4".into()))?;
    let eno = EnoReconstruction::new(field, order)?;
    let trace = eno
        .traces()?
        .entries
        .into_iter()
        .find(|t| t.index == cell)
        .ok_or_else(|| {
            EnoError::StencilOutOfRange(format!("x = 4 is not an interior interface for order {order}"))
        })?;
    let ratio = trace
        .ratio()
        .ok_or_else(|| EnoError::InvalidMesh("the data is continuous at x = 4".into()))?;
    Ok(WorstCaseRun {
        field: field.clone(),
        trace,
        ratio,
    })
}

/// Builds the attaining construction and measures it.
pub fn run_worst_case<T: Scalar>(order: usize, epsilon: T, n_cells: usize) -> Result<WorstCaseRun<T>> {
    let field = worst_case_averages(order, epsilon, n_cells)?;
    ratio_at_target(&field, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Exact;
    use crate::stability::uniform_reconstruction_bound;

    #[test]
    fn layout_and_labels() {
        let f = worst_case_averages(2, 0.25, 20).unwrap();
        assert_eq!(f.mesh().interfaces()[0], -6.0);
        assert_eq!(target_cell(20), 9);
        assert_eq!(f.mesh().interfaces()[10], 4.0);
        // labels 4 and 5
        assert_eq!((f.averages()[9], f.averages()[10]), (0.0, 1.0));
        // label 3 and 6
        assert_eq!((f.averages()[8], f.averages()[11]), (0.75, 0.0));
        let g = worst_case_averages_with(2, 0.25, 21, WorstCaseLayout::Mirror).unwrap();
        assert_eq!(target_cell(21), 9);
        assert_eq!((g.averages()[9], g.averages()[10]), (1.0, 0.0));
        assert_eq!(g.averages()[11], 0.75);
    }

    fn tiny() -> (Exact, Exact) {
        let e = Exact::parse_scalar("1e-30").unwrap();
        let tol = e.clone() * Exact::from_i64(100_000);
        (e, tol)
    }

    #[test]
    fn exact_ratios_approach_the_uniform_bounds() {
        let (eps, tol) = tiny();
        for p in 1..=6 {
            let n = default_cell_count(p);
            let run = run_worst_case(p, eps.clone(), n).unwrap();
            let bound = uniform_reconstruction_bound(p).unwrap();
            assert!(run.ratio <= bound, "p={p}");
            assert!(bound - run.ratio < tol, "p={p}");
        }
    }

    #[test]
    fn float_ratios_with_the_default_epsilon() {
        let expected = [1.0, 2.0, 10.0 / 3.0, 16.0 / 3.0, 128.0 / 15.0];
        for (p, want) in (1..=5).zip(expected) {
            let run = run_worst_case(p, DEFAULT_EPSILON, default_cell_count(p)).unwrap();
            assert!((run.ratio - want).abs() < 1e-6, "p={p}: {}", run.ratio);
        }
    }

    #[test]
    fn mirror_layout_stalls_under_strict_comparison() {
        let (eps, tol) = tiny();
        let expected = [(2, 1, 1), (3, 4, 3), (4, 2, 1), (5, 16, 5), (6, 16, 3)];
        for (p, n, d) in expected {
            let f = worst_case_averages_with(p, eps.clone(), default_cell_count(p), WorstCaseLayout::Mirror)
                .unwrap();
            let r = ratio_at_target(&f, p).unwrap().ratio;
            assert!((r - Exact::from_ratio(n, d)).abs() < tol, "p={p}");
        }
    }

    #[test]
    fn without_perturbation_the_bound_is_missed() {
        for p in 3..=5 {
            let r = run_worst_case(p, Exact::from_i64(0), default_cell_count(p)).unwrap();
            assert!(r.ratio < uniform_reconstruction_bound(p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn too_few_cells() {
        assert!(matches!(
            worst_case_averages(5, 1e-10, 19),
            Err(EnoError::StencilOutOfRange(_))
        ));
    }
}
