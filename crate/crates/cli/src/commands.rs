use std::io::Write;
use std::path::{Path, PathBuf};

use eno_core::harness::{
    convergence_study, default_cell_count, fuzz_sign_property, ratio_at_target, sine_wave, worst_case_averages_with,
    FuzzConfig, WorstCaseLayout,
};
use eno_core::stability::{
    uniform_interpolation_bound, uniform_reconstruction_bound, verify_interpolation, verify_reconstruction,
    InterpolationBounds, ReconstructionBounds, VerificationReport,
};
use eno_core::{
    Backend, EnoError, EnoInterpolation, EnoReconstruction, Exact, InterfaceTraceList, Scalar, TraceKind,
};
use serde::Serialize;

use crate::error::CliError;
use crate::input::{read_cell_averages, read_point_values};

/// Destination of a command's main output.
pub struct Sink(pub Option<PathBuf>);

impl Sink {
    pub fn write(&self, text: &str) -> Result<(), CliError> {
        match &self.0 {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::Io(format!("stdout: {e}")))
            }
        }
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Io(format!("csv output: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text(value: &impl Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(format!("json output: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Bounds are exact; float runs print them as the nearest double.
fn show_exact(backend: Backend, v: &Exact) -> String {
    match backend {
        Backend::Exact => v.to_canonical_string(),
        Backend::Float => f64::from_exact(v).to_canonical_string(),
    }
}

fn trace_rows<T: Scalar>(traces: &InterfaceTraceList<T>) -> Vec<Vec<String>> {
    traces
        .iter()
        .map(|t| {
            let ratio = match t.ratio() {
                Some(r) => r.to_canonical_string(),
                None => eno_core::stability::verdict(t).tag().to_string(),
            };
            vec![
                t.location.to_canonical_string(),
                t.left.to_canonical_string(),
                t.right.to_canonical_string(),
                t.data_jump.to_canonical_string(),
                ratio,
                t.left_signature.to_string(),
                t.right_signature.to_string(),
            ]
        })
        .collect()
}

const TRACE_HEADER: [&str; 7] = ["x", "v_minus", "v_plus", "data_jump", "ratio", "sig_left", "sig_right"];

pub fn reconstruct<T: Scalar>(input: &Path, order: usize, sink: &Sink) -> Result<(), CliError> {
    let field = read_cell_averages::<T>(input)?;
    let traces = EnoReconstruction::new(&field, order)?.traces()?;
    sink.write(&csv_text(&TRACE_HEADER, trace_rows(&traces))?)
}

pub fn interpolate<T: Scalar>(input: &Path, order: usize, sink: &Sink) -> Result<(), CliError> {
    let field = read_point_values::<T>(input)?;
    let traces = EnoInterpolation::new(&field, order)?.traces()?;
    sink.write(&csv_text(&TRACE_HEADER, trace_rows(&traces))?)
}

#[derive(Serialize)]
struct InterfaceSummary {
    index: usize,
    x: String,
    verdict: &'static str,
    ratio: Option<String>,
    bound: String,
}

#[derive(Serialize)]
struct VerifySummary {
    kind: TraceKind,
    order: usize,
    backend: Backend,
    interfaces: usize,
    violations: usize,
    same_sign: usize,
    continuous: usize,
    max_ratio: Option<String>,
    bound: String,
    oracle_mismatches: usize,
    termwise_violations: usize,
    bound_exceedances: usize,
    conservation_failures: usize,
    verdicts: Vec<InterfaceSummary>,
}

fn summarize<T: Scalar>(kind: TraceKind, order: usize, r: &VerificationReport<T>) -> VerifySummary {
    VerifySummary {
        kind,
        order,
        backend: T::BACKEND,
        interfaces: r.traces.len(),
        violations: r.signs.violations,
        same_sign: r.signs.same_sign,
        continuous: r.signs.continuous,
        max_ratio: r.signs.max_ratio.as_ref().map(Scalar::to_canonical_string),
        bound: show_exact(T::BACKEND, &r.max_bound),
        oracle_mismatches: r.oracle_mismatches.len(),
        termwise_violations: r.termwise_violations.len(),
        bound_exceedances: r.bound_exceedances.len(),
        conservation_failures: r.conservation_failures.len(),
        verdicts: r
            .traces
            .iter()
            .zip(&r.signs.interfaces)
            .zip(&r.bounds)
            .map(|((t, v), b)| InterfaceSummary {
                index: t.index,
                x: t.location.to_canonical_string(),
                verdict: v.verdict.tag(),
                ratio: v.ratio.as_ref().map(Scalar::to_canonical_string),
                bound: show_exact(T::BACKEND, b),
            })
            .collect(),
    }
}

pub fn verify<T: Scalar>(input: &Path, kind: TraceKind, order: usize, sink: &Sink) -> Result<(), CliError> {
    let report = match kind {
        TraceKind::Reconstruction => verify_reconstruction(&read_cell_averages::<T>(input)?, order)?,
        TraceKind::Interpolation => verify_interpolation(&read_point_values::<T>(input)?, order)?,
    };
    let summary = summarize(kind, order, &report);
    sink.write(&json_text(&summary)?)?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(CliError::Violations(format!(
            "{} failed checks ({} sign violations)",
            report.failure_count(),
            report.signs.violations
        )))
    }
}

fn uniform_bound(kind: TraceKind, order: usize) -> Result<Exact, EnoError> {
    match kind {
        TraceKind::Reconstruction => uniform_reconstruction_bound(order),
        TraceKind::Interpolation => uniform_interpolation_bound(order),
    }
}

pub fn uniform_bounds(kinds: &[TraceKind], order: usize, sink: &Sink) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &kind in kinds {
        for p in 1..=order {
            let b = uniform_bound(kind, p)?;
            rows.push(vec![
                kind.to_string(),
                p.to_string(),
                b.to_canonical_string(),
                f64::from_exact(&b).to_canonical_string(),
            ]);
        }
    }
    sink.write(&csv_text(&["kind", "order", "bound", "decimal"], rows)?)
}

pub fn mesh_bounds<T: Scalar>(input: &Path, kind: TraceKind, order: usize, sink: &Sink) -> Result<(), CliError> {
    let mut rows = Vec::new();
    match kind {
        TraceKind::Reconstruction => {
            let field = read_cell_averages::<T>(input)?;
            let range = EnoReconstruction::new(&field, order)?
                .interior_interfaces()
                .ok_or_else(|| too_short(order, field.cell_count()))?;
            let bounds = ReconstructionBounds::new(field.mesh().interfaces(), order)?;
            for i in range {
                let b = bounds.at(i)?.bound;
                rows.push(bound_row(i, field.mesh().interface(i + 1), &b));
            }
        }
        TraceKind::Interpolation => {
            let field = read_point_values::<T>(input)?;
            let range = EnoInterpolation::new(&field, order)?
                .interior_midpoints()
                .ok_or_else(|| too_short(order, field.len()))?;
            let bounds = InterpolationBounds::new(field.nodes(), order)?;
            let two = T::from_i64(2);
            for i in range {
                let b = bounds.at(i)?.bound;
                let mid = (field.nodes()[i].clone() + field.nodes()[i + 1].clone()) / two.clone();
                rows.push(bound_row(i, &mid, &b));
            }
        }
    }
    sink.write(&csv_text(&["index", "x", "bound", "decimal"], rows)?)
}

fn bound_row<T: Scalar>(index: usize, x: &T, b: &Exact) -> Vec<String> {
    vec![
        index.to_string(),
        x.to_canonical_string(),
        b.to_canonical_string(),
        f64::from_exact(b).to_canonical_string(),
    ]
}

fn too_short(order: usize, len: usize) -> EnoError {
    EnoError::StencilOutOfRange(format!("order {order} needs at least {} cells or nodes, got {len}", 2 * order))
}

#[derive(Serialize)]
struct WorstCaseSummary {
    order: usize,
    backend: Backend,
    epsilon: String,
    cells: usize,
    x: String,
    v_minus: String,
    v_plus: String,
    data_jump: String,
    ratio: String,
    bound: String,
    bound_decimal: String,
    sig_left: String,
    sig_right: String,
}

pub fn worst_case<T: Scalar>(
    order: usize,
    epsilon: &str,
    cells: Option<usize>,
    layout: WorstCaseLayout,
    table: Option<&Path>,
    sink: &Sink,
) -> Result<(), CliError> {
    let eps = T::parse_scalar(epsilon)?;
    let n = cells.unwrap_or_else(|| default_cell_count(order));
    let field = worst_case_averages_with(order, eps.clone(), n, layout)?;
    let run = ratio_at_target(&field, order)?;
    if let Some(path) = table {
        let x = field.mesh().interfaces();
        let rows = field.averages().iter().enumerate().map(|(i, a)| {
            vec![
                x[i].to_canonical_string(),
                x[i + 1].to_canonical_string(),
                a.to_canonical_string(),
            ]
        });
        Sink(Some(path.to_path_buf())).write(&csv_text(&["x_left", "x_right", "avg"], rows)?)?;
    }
    let bound = uniform_reconstruction_bound(order)?;
    let t = &run.trace;
    let summary = WorstCaseSummary {
        order,
        backend: T::BACKEND,
        epsilon: eps.to_canonical_string(),
        cells: n,
        x: t.location.to_canonical_string(),
        v_minus: t.left.to_canonical_string(),
        v_plus: t.right.to_canonical_string(),
        data_jump: t.data_jump.to_canonical_string(),
        ratio: run.ratio.to_canonical_string(),
        bound: bound.to_canonical_string(),
        bound_decimal: f64::from_exact(&bound).to_canonical_string(),
        sig_left: t.left_signature.to_string(),
        sig_right: t.right_signature.to_string(),
    };
    sink.write(&json_text(&summary)?)
}

pub fn fuzz(config: &FuzzConfig, sink: &Sink) -> Result<(), CliError> {
    let report = fuzz_sign_property(config)?;
    sink.write(&json_text(&report)?)?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(CliError::Violations(format!(
            "{} of {} runs failed ({} sign violations)",
            report.failing_runs,
            report.trials * report.per_order.len(),
            report.violations
        )))
    }
}

pub fn converge(kind: TraceKind, orders: &[usize], resolutions: &[usize], sink: &Sink) -> Result<(), CliError> {
    let table = convergence_study(&sine_wave, (0.0, 1.0), kind, orders, resolutions)?;
    let rows = table.rows.iter().map(|r| {
        vec![
            r.order.to_string(),
            r.cells.to_string(),
            r.error.to_canonical_string(),
            r.rate.map_or(String::new(), |v| v.to_canonical_string()),
            table.fitted_rate(r.order).map_or(String::new(), |v| v.to_canonical_string()),
        ]
    });
    sink.write(&csv_text(&["order", "cells", "error", "rate", "fitted_rate"], rows)?)
}
