//! Randomized search for sign-property or bound failures.
//!
//! Every trial draws a non-uniform mesh and two data sets (cell averages and
//! point values on the interfaces) from a generator seeded by
//! `(seed, trial)`, then runs the full audit for every order in range. The
//! data are exact rationals, converted to the chosen backend, so float and
//! exact runs see identical inputs.
//!
//! Meshes live on an integer lattice: every gap is an integer in
//! `[L / sqrt(rho), L * sqrt(rho)]` with `L = 2^16`. Dividing by `L` gives
//! gaps in `[1/sqrt(rho), sqrt(rho)]` with denominator `2^16`; stencil
//! choices, ratios and bounds are all invariant under that scaling, and
//! integer points keep the rational arithmetic cheap.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{EnoError, Result};
use crate::grid::{CellAverageField, Mesh, PointValueField};
use crate::numerics::{Backend, Exact, Scalar};
use crate::stability::{verify_interpolation, verify_reconstruction, TraceKind, VerificationReport};

/// Lattice units per unit length.
pub const GAP_DENOMINATOR: i64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueFamily {
    /// I.i.d. integers in `[-8, 8]`.
    #[default]
    UniformIntegers,
    /// `a (-1)^i + b`.
    Alternating,
    /// Two levels with a jump at a random cell.
    Step,
    /// A step plus a small alternating perturbation of random amplitude.
    PerturbedStep,
    /// One of the above per trial.
    Mixed,
}

impl std::str::FromStr for ValueFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "uniform-integers" | "uniform" => Ok(ValueFamily::UniformIntegers),
            "alternating" => Ok(ValueFamily::Alternating),
            "step" => Ok(ValueFamily::Step),
            "perturbed-step" => Ok(ValueFamily::PerturbedStep),
            "mixed" => Ok(ValueFamily::Mixed),
            other => Err(format!("unknown value family {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub cells: usize,
    pub min_order: usize,
    pub max_order: usize,
    /// Largest ratio between neighbouring cell widths.
    pub mesh_ratio: f64,
    pub backend: Backend,
    pub values: ValueFamily,
    pub kinds: Vec<TraceKind>,
    /// Witnesses kept in the report.
    pub max_witnesses: usize,
    #[serde(skip)]
    pub parallel: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            cells: 30,
            min_order: 1,
            max_order: 6,
            mesh_ratio: 4.0,
            backend: Backend::Exact,
            values: ValueFamily::UniformIntegers,
            kinds: vec![TraceKind::Reconstruction, TraceKind::Interpolation],
            max_witnesses: 8,
            parallel: true,
        }
    }
}

impl FuzzConfig {
    pub fn orders(&self) -> RangeInclusive<usize> {
        self.min_order..=self.max_order
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(EnoError::InvalidMesh("at least one trial is required".into()));
        }
        if self.min_order == 0 || self.min_order > self.max_order {
            return Err(EnoError::InvalidOrder(self.min_order));
        }
        if !(self.mesh_ratio.is_finite() && self.mesh_ratio >= 1.0) {
            return Err(EnoError::InvalidMesh(format!(
                "mesh ratio must be a finite number >= 1, got {}",
                self.mesh_ratio
            )));
        }
        if self.cells < 2 * self.max_order {
            return Err(EnoError::StencilOutOfRange(format!(
                "order {} needs at least {} cells per trial, got {}",
                self.max_order,
                2 * self.max_order,
                self.cells
            )));
        }
        Ok(())
    }

    /// Integer gap range `[lo, hi]` in lattice units, so that neighbour
    /// ratios stay within `rho`.
    pub fn gap_range(&self) -> (i64, i64) {
        let d = GAP_DENOMINATOR as f64;
        let root = self.mesh_ratio.sqrt();
        let lo = (d / root).ceil() as i64;
        let hi = ((d * root).floor() as i64).max(lo);
        (lo, hi)
    }
}

/// Inputs of one failing run, as canonical strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub kind: TraceKind,
    pub order: usize,
    /// Interfaces (reconstruction) or nodes (interpolation).
    pub points: Vec<String>,
    pub values: Vec<String>,
    pub failed_checks: Vec<String>,
}

/// Extremes observed for one kind and order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderSummary {
    pub kind: TraceKind,
    pub order: usize,
    pub interfaces: usize,
    pub violations: usize,
    pub max_ratio: String,
    /// Largest local bound met on any trial.
    pub bound: String,
    /// Largest ratio divided by its own interface bound.
    pub max_bound_fraction: String,
    /// Trial attaining `max_bound_fraction`.
    pub tightest_trial: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub backend: Backend,
    pub trials: usize,
    pub cells: usize,
    pub orders: [usize; 2],
    pub mesh_ratio: f64,
    pub values: ValueFamily,
    pub interfaces: usize,
    /// Interfaces whose jump opposes the data jump.
    pub violations: usize,
    pub oracle_mismatches: usize,
    pub termwise_violations: usize,
    pub bound_exceedances: usize,
    pub conservation_failures: usize,
    /// Runs (trial, kind, order) with at least one failed check.
    pub failing_runs: usize,
    pub per_order: Vec<OrderSummary>,
    pub witnesses: Vec<Witness>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.failing_runs == 0
    }
}

#[derive(Debug, Clone)]
struct TrialData {
    interfaces: Vec<Exact>,
    averages: Vec<Exact>,
    point_values: Vec<Exact>,
}

fn draw_values(rng: &mut ChaCha8Rng, family: ValueFamily, n: usize) -> Vec<Exact> {
    let family = match family {
        ValueFamily::Mixed => match rng.gen_range(0..4) {
            0 => ValueFamily::UniformIntegers,
            1 => ValueFamily::Alternating,
            2 => ValueFamily::Step,
            _ => ValueFamily::PerturbedStep,
        },
        f => f,
    };
    let int = |v: i64| Exact::from_i64(v);
    let parity = |i: usize| if i.is_multiple_of(2) { 1 } else { -1 };
    match family {
        ValueFamily::UniformIntegers | ValueFamily::Mixed => {
            (0..n).map(|_| int(rng.gen_range(-8..=8))).collect()
        }
        ValueFamily::Alternating => {
            let a = rng.gen_range(1..=8);
            let b = rng.gen_range(-4..=4);
            (0..n).map(|i| int(a * parity(i) + b)).collect()
        }
        ValueFamily::Step | ValueFamily::PerturbedStep => {
            let at = rng.gen_range(1..n);
            let left = rng.gen_range(-8..=8);
            let mut right = rng.gen_range(-8..=7);
            if right >= left {
                right += 1;
            }
            let amp = if family == ValueFamily::PerturbedStep {
                rng.gen_range(1..=64)
            } else {
                0
            };
            (0..n)
                .map(|i| {
                    let level = if i < at { left } else { right };
                    let wobble = if amp == 0 {
                        0
                    } else {
                        amp * parity(i) + rng.gen_range(-2..=2)
                    };
                    Exact::from_ratio(level * 1024 + wobble, 1024)
                })
                .collect()
        }
    }
}

fn draw_trial(config: &FuzzConfig, trial: usize) -> TrialData {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let (lo, hi) = config.gap_range();
    let mut interfaces = Vec::with_capacity(config.cells + 1);
    let mut x = Exact::from_i64(0);
    interfaces.push(x.clone());
    for _ in 0..config.cells {
        x += Exact::from_i64(rng.gen_range(lo..=hi));
        interfaces.push(x.clone());
    }
    let averages = draw_values(&mut rng, config.values, config.cells);
    let point_values = draw_values(&mut rng, config.values, config.cells + 1);
    TrialData {
        interfaces,
        averages,
        point_values,
    }
}

/// Outcome of one (kind, order) run, reduced to exact quantities.
#[derive(Debug, Clone)]
struct RunOutcome {
    kind: TraceKind,
    order: usize,
    interfaces: usize,
    violations: usize,
    oracle: usize,
    termwise: usize,
    exceed: usize,
    conservation: usize,
    max_ratio: Option<Exact>,
    max_bound: Exact,
    max_fraction: Option<Exact>,
    witness: Option<Witness>,
}

fn outcome<T: Scalar>(
    report: &VerificationReport<T>,
    trial: usize,
    kind: TraceKind,
    order: usize,
    data: (&[Exact], &[Exact]),
) -> RunOutcome {
    let mut max_fraction: Option<Exact> = None;
    for (_, ratio, bound) in report.ratios_with_bounds() {
        if let Some(r) = ratio.and_then(|r| r.to_exact()) {
            let f = r / bound.clone();
            if max_fraction.as_ref().is_none_or(|m| f > *m) {
                max_fraction = Some(f);
            }
        }
    }
    let mut failed = Vec::new();
    if report.signs.violations > 0 {
        failed.push(format!("sign at {:?}", report.signs.violation_indices().collect::<Vec<_>>()));
    }
    for (name, list) in [
        ("oracle", &report.oracle_mismatches),
        ("termwise", &report.termwise_violations),
        ("bound", &report.bound_exceedances),
        ("conservation", &report.conservation_failures),
    ] {
        if !list.is_empty() {
            failed.push(format!("{name} at {list:?}"));
        }
    }
    let witness = (!failed.is_empty()).then(|| Witness {
        trial,
        kind,
        order,
        points: data.0.iter().map(|v| v.to_canonical_string()).collect(),
        values: data.1.iter().map(|v| v.to_canonical_string()).collect(),
        failed_checks: failed,
    });
    RunOutcome {
        kind,
        order,
        interfaces: report.traces.len(),
        violations: report.signs.violations,
        oracle: report.oracle_mismatches.len(),
        termwise: report.termwise_violations.len(),
        exceed: report.bound_exceedances.len(),
        conservation: report.conservation_failures.len(),
        max_ratio: report.signs.max_ratio.as_ref().and_then(|r| r.to_exact()),
        max_bound: report.max_bound.clone(),
        max_fraction,
        witness,
    }
}

fn convert<T: Scalar>(xs: &[Exact]) -> Vec<T> {
    xs.iter().map(T::from_exact).collect()
}

fn run_trial<T: Scalar>(config: &FuzzConfig, trial: usize) -> Result<Vec<RunOutcome>> {
    let data = draw_trial(config, trial);
    let mut out = Vec::new();
    for &kind in &config.kinds {
        for order in config.orders() {
            let report_outcome = match kind {
                TraceKind::Reconstruction => {
                    let mesh = Mesh::new(convert::<T>(&data.interfaces))?;
                    let field = CellAverageField::new(mesh, convert(&data.averages))?;
                    let r = verify_reconstruction(&field, order)?;
                    outcome(&r, trial, kind, order, (&data.interfaces, &data.averages))
                }
                TraceKind::Interpolation => {
                    let field =
                        PointValueField::new(convert::<T>(&data.interfaces), convert(&data.point_values))?;
                    let r = verify_interpolation(&field, order)?;
                    outcome(&r, trial, kind, order, (&data.interfaces, &data.point_values))
                }
            };
            out.push(report_outcome);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct Accumulator {
    kind: TraceKind,
    order: usize,
    interfaces: usize,
    violations: usize,
    max_ratio: Option<Exact>,
    bound: Option<Exact>,
    max_fraction: Option<(Exact, usize)>,
}

fn display(backend: Backend, v: &Exact) -> String {
    match backend {
        Backend::Exact => v.to_canonical_string(),
        Backend::Float => f64::from_exact(v).to_canonical_string(),
    }
}

fn keep_max(slot: &mut Option<Exact>, v: Exact) {
    if slot.as_ref().is_none_or(|m| v > *m) {
        *slot = Some(v);
    }
}

fn run_typed<T: Scalar>(config: &FuzzConfig) -> Result<FuzzReport> {
    let trials: Vec<Result<Vec<RunOutcome>>> = if config.parallel {
        (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial::<T>(config, t))
            .collect()
    } else {
        (0..config.trials).map(|t| run_trial::<T>(config, t)).collect()
    };
    let mut report = FuzzReport {
        seed: config.seed,
        backend: config.backend,
        trials: config.trials,
        cells: config.cells,
        orders: [config.min_order, config.max_order],
        mesh_ratio: config.mesh_ratio,
        values: config.values,
        interfaces: 0,
        violations: 0,
        oracle_mismatches: 0,
        termwise_violations: 0,
        bound_exceedances: 0,
        conservation_failures: 0,
        failing_runs: 0,
        per_order: Vec::new(),
        witnesses: Vec::new(),
    };
    let mut acc: Vec<Accumulator> = config
        .kinds
        .iter()
        .flat_map(|&kind| {
            config.orders().map(move |order| Accumulator {
                kind,
                order,
                interfaces: 0,
                violations: 0,
                max_ratio: None,
                bound: None,
                max_fraction: None,
            })
        })
        .collect();
    for (trial, outcomes) in trials.into_iter().enumerate() {
        for o in outcomes? {
            report.interfaces += o.interfaces;
            report.violations += o.violations;
            report.oracle_mismatches += o.oracle;
            report.termwise_violations += o.termwise;
            report.bound_exceedances += o.exceed;
            report.conservation_failures += o.conservation;
            if let Some(w) = o.witness {
                report.failing_runs += 1;
                if report.witnesses.len() < config.max_witnesses {
                    report.witnesses.push(w);
                }
            }
            let slot = acc
                .iter_mut()
                .find(|a| a.kind == o.kind && a.order == o.order)
                .expect("every run has an accumulator");
            slot.interfaces += o.interfaces;
            slot.violations += o.violations;
            if let Some(r) = o.max_ratio {
                keep_max(&mut slot.max_ratio, r);
            }
            keep_max(&mut slot.bound, o.max_bound);
            if let Some(f) = o.max_fraction {
                if slot.max_fraction.as_ref().is_none_or(|(m, _)| f > *m) {
                    slot.max_fraction = Some((f, trial));
                }
            }
        }
    }
    let zero = Exact::zero();
    report.per_order = acc
        .into_iter()
        .map(|a| OrderSummary {
            kind: a.kind,
            order: a.order,
            interfaces: a.interfaces,
            violations: a.violations,
            max_ratio: display(config.backend, a.max_ratio.as_ref().unwrap_or(&zero)),
            bound: display(config.backend, a.bound.as_ref().unwrap_or(&zero)),
            max_bound_fraction: display(
                config.backend,
                a.max_fraction.as_ref().map_or(&zero, |(f, _)| f),
            ),
            tightest_trial: a.max_fraction.map(|(_, t)| t),
        })
        .collect();
    Ok(report)
}

/// Runs the randomized audit. The report depends only on the configuration
/// (not on `parallel` or the thread count).
pub fn fuzz_sign_property(config: &FuzzConfig) -> Result<FuzzReport> {
    config.validate()?;
    match config.backend {
        Backend::Exact => run_typed::<Exact>(config),
        Backend::Float => run_typed::<f64>(config),
    }
}
