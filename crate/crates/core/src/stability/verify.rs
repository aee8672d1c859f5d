//! Full stability audit of one field: sign verdicts, the telescoped-jump
//! cross-check, termwise signs, the mesh bound and (for cell averages)
//! conservation.

use crate::error::Result;
use crate::grid::{CellAverageField, PointValueField};
use crate::interpolation::EnoInterpolation;
use crate::numerics::{Exact, Scalar, Sign};
use crate::reconstruction::{cell_mean, EnoReconstruction};
use crate::stability::bounds::{InterpolationBounds, ReconstructionBounds};
use crate::stability::jumps::{interpolation_jump_terms, reconstruction_jump_terms, sum_terms, JumpTerm};
use crate::stability::report::{sign_report, SignReport};
use crate::stability::{InterfaceTrace, InterfaceTraceList};

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    pub traces: InterfaceTraceList<T>,
    pub signs: SignReport<T>,
    /// Mesh bound at each interface, aligned with `traces`.
    pub bounds: Vec<Exact>,
    pub max_bound: Exact,
    /// Interfaces where the telescoped jump differs from `v^+ - v^-`.
    pub oracle_mismatches: Vec<usize>,
    /// Interfaces with a telescoping summand against the data jump.
    pub termwise_violations: Vec<usize>,
    /// Interfaces whose ratio exceeds the local bound.
    pub bound_exceedances: Vec<usize>,
    /// Cells whose polynomial mean differs from the cell average.
    pub conservation_failures: Vec<usize>,
}

impl<T: Scalar> VerificationReport<T> {
    pub fn is_clean(&self) -> bool {
        self.signs.violations == 0
            && self.oracle_mismatches.is_empty()
            && self.termwise_violations.is_empty()
            && self.bound_exceedances.is_empty()
            && self.conservation_failures.is_empty()
    }

    /// Total count of failed checks of every kind.
    pub fn failure_count(&self) -> usize {
        self.signs.violations
            + self.oracle_mismatches.len()
            + self.termwise_violations.len()
            + self.bound_exceedances.len()
            + self.conservation_failures.len()
    }

    /// Ratio of each interface as an exact rational, with its bound.
    pub fn ratios_with_bounds(&self) -> impl Iterator<Item = (usize, Option<T>, &Exact)> + '_ {
        self.traces
            .iter()
            .zip(&self.bounds)
            .map(|(t, b)| (t.index, t.ratio(), b))
    }
}

struct Checks {
    oracle_mismatches: Vec<usize>,
    termwise_violations: Vec<usize>,
    bound_exceedances: Vec<usize>,
}

fn check_interface<T: Scalar>(
    trace: &InterfaceTrace<T>,
    terms: &[JumpTerm<T>],
    bound: &Exact,
    checks: &mut Checks,
) {
    let scale = trace.scale();
    let jump = trace.jump();
    if !sum_terms(terms).agrees_with(&jump, &scale) {
        checks.oracle_mismatches.push(trace.index);
    }
    let data = trace.data_jump.sign();
    let opposes = |s: Sign| s != Sign::Zero && s != data;
    if terms.iter().any(|t| opposes(t.value.sign_above_noise(&scale))) {
        checks.termwise_violations.push(trace.index);
    }
    if data != Sign::Zero {
        let excess = jump.abs() - T::from_exact(bound) * trace.data_jump.abs();
        if excess.sign_above_noise(&scale) == Sign::Positive {
            checks.bound_exceedances.push(trace.index);
        }
    }
}

fn assemble<T: Scalar>(
    traces: InterfaceTraceList<T>,
    bounds: Vec<Exact>,
    checks: Checks,
    conservation_failures: Vec<usize>,
) -> VerificationReport<T> {
    let max_bound = bounds
        .iter()
        .cloned()
        .reduce(|a, b| if b > a { b } else { a })
        .unwrap_or_else(Exact::zero);
    VerificationReport {
        signs: sign_report(&traces),
        traces,
        bounds,
        max_bound,
        oracle_mismatches: checks.oracle_mismatches,
        termwise_violations: checks.termwise_violations,
        bound_exceedances: checks.bound_exceedances,
        conservation_failures,
    }
}

pub fn verify_reconstruction<T: Scalar>(
    field: &CellAverageField<T>,
    order: usize,
) -> Result<VerificationReport<T>> {
    let eno = EnoReconstruction::new(field, order)?;
    let traces = eno.traces()?;
    let bounds_on_mesh = ReconstructionBounds::new(field.mesh().interfaces(), order)?;
    let mut checks = Checks {
        oracle_mismatches: Vec::new(),
        termwise_violations: Vec::new(),
        bound_exceedances: Vec::new(),
    };
    let mut bounds = Vec::with_capacity(traces.len());
    for t in traces.iter() {
        let terms = reconstruction_jump_terms(
            eno.table(),
            &t.left_signature,
            &t.right_signature,
            t.index,
            order,
        )?;
        let bound = bounds_on_mesh.at(t.index)?.bound;
        check_interface(t, &terms, &bound, &mut checks);
        bounds.push(bound);
    }
    let mut conservation_failures = Vec::new();
    // The mean is a derivative of primitive values, so round-off scales with
    // |V| / width.
    let primitive_size = eno
        .primitive()
        .values()
        .iter()
        .fold(T::zero(), |m, v| T::max_of(m, v.abs()));
    if let Some(cells) = eno.reconstructible_cells() {
        for cell in cells {
            let mean = cell_mean(&eno.cell_polynomial(cell)?, field.mesh());
            let avg = &field.averages()[cell];
            let scale = T::max_of(
                T::max_of(mean.abs(), avg.abs()),
                primitive_size.clone() / field.mesh().width(cell),
            );
            if !mean.agrees_with(avg, &scale) {
                conservation_failures.push(cell);
            }
        }
    }
    Ok(assemble(traces, bounds, checks, conservation_failures))
}

pub fn verify_interpolation<T: Scalar>(
    field: &PointValueField<T>,
    order: usize,
) -> Result<VerificationReport<T>> {
    let eno = EnoInterpolation::new(field, order)?;
    let traces = eno.traces()?;
    let bounds_on_nodes = InterpolationBounds::new(field.nodes(), order)?;
    let mut checks = Checks {
        oracle_mismatches: Vec::new(),
        termwise_violations: Vec::new(),
        bound_exceedances: Vec::new(),
    };
    let mut bounds = Vec::with_capacity(traces.len());
    for t in traces.iter() {
        let terms = interpolation_jump_terms(
            eno.table(),
            &t.left_signature,
            &t.right_signature,
            t.index,
            order,
        )?;
        let bound = bounds_on_nodes.at(t.index)?.bound;
        check_interface(t, &terms, &bound, &mut checks);
        bounds.push(bound);
    }
    Ok(assemble(traces, bounds, checks, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Mesh;

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    #[test]
    fn non_uniform_random_like_field_is_clean() {
        let widths: Vec<Exact> = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4]
            .iter()
            .map(|&w| q(w, 3))
            .collect();
        let mesh = Mesh::from_widths(q(0, 1), &widths).unwrap();
        let avgs: Vec<Exact> = [2, -7, 1, 8, -2, 8, 1, -8, 2, 8, 4, -5, 9, 0, 4, -5, 2, 3, 5, -3]
            .iter()
            .map(|&a| q(a, 1))
            .collect();
        let field = CellAverageField::new(mesh.clone(), avgs.clone()).unwrap();
        let points = PointValueField::new(mesh.interfaces()[..20].to_vec(), avgs).unwrap();
        for p in 1..=6 {
            let r = verify_reconstruction(&field, p).unwrap();
            assert!(r.is_clean(), "p={p}: {r:?}");
            assert_eq!(r.traces.len(), 20 - 2 * p + 1);
            let r = verify_interpolation(&points, p).unwrap();
            assert!(r.is_clean(), "p={p}: {r:?}");
        }
    }

    #[test]
    fn float_backend_is_clean_on_the_same_data() {
        let mesh = Mesh::from_widths(0.0, &[0.5, 1.5, 0.75, 1.0, 2.0, 0.5, 1.25, 1.0, 0.5, 1.0, 1.5, 0.75]).unwrap();
        let field = CellAverageField::new(mesh, vec![1.0, 3.0, -2.0, 0.5, 0.5, 4.0, -1.0, 2.0, 2.5, -3.0, 0.0, 1.0]).unwrap();
        for p in 1..=5 {
            let r = verify_reconstruction(&field, p).unwrap();
            assert!(r.is_clean(), "p={p}: {r:?}");
        }
    }
}
