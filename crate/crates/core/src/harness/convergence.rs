//! Interface-trace accuracy on smooth periodic data.

use serde::{Deserialize, Serialize};

use crate::error::{check_order, EnoError, Result};
use crate::grid::{CellAverageField, Mesh, PointValueField};
use crate::interpolation::EnoInterpolation;
use crate::numerics::Scalar;
use crate::reconstruction::EnoReconstruction;
use crate::stability::TraceKind;

/// Six-point Gauss-Legendre rule on `[-1, 1]`.
const GAUSS_NODES: [f64; 6] = [
    -0.932_469_514_203_152,
    -0.661_209_386_466_264_5,
    -0.238_619_186_083_196_9,
    0.238_619_186_083_196_9,
    0.661_209_386_466_264_5,
    0.932_469_514_203_152,
];
const GAUSS_WEIGHTS: [f64; 6] = [
    0.171_324_492_379_170_3,
    0.360_761_573_048_138_6,
    0.467_913_934_572_691,
    0.467_913_934_572_691,
    0.360_761_573_048_138_6,
    0.171_324_492_379_170_3,
];

fn cell_average(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    GAUSS_NODES
        .iter()
        .zip(GAUSS_WEIGHTS)
        .map(|(&t, w)| w * f(mid + half * t))
        .sum::<f64>()
        / 2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub order: usize,
    pub cells: usize,
    /// Largest one-sided trace error over all interfaces.
    pub error: f64,
    /// `log(e_prev / e) / log(N / N_prev)`, absent on the coarsest mesh.
    pub rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateTable {
    pub kind: TraceKind,
    pub rows: Vec<RateRow>,
    /// Least-squares slope of `-log e` against `log N`, per order.
    pub fitted: Vec<(usize, f64)>,
}

impl RateTable {
    pub fn fitted_rate(&self, order: usize) -> Option<f64> {
        self.fitted.iter().find(|(p, _)| *p == order).map(|(_, r)| *r)
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    num / den
}

/// Max trace error of an order-`p` reconstruction (or interpolation) of `f`
/// on a uniform `cells`-cell periodic mesh of `[a, b]`.
pub fn periodic_trace_error(
    f: &dyn Fn(f64) -> f64,
    domain: (f64, f64),
    kind: TraceKind,
    order: usize,
    cells: usize,
) -> Result<f64> {
    check_order(order)?;
    let (a, b) = domain;
    let h = (b - a) / cells as f64;
    let ghosts = order;
    let x: Vec<f64> = (0..=cells).map(|k| a + h * k as f64).collect();
    let mut worst = 0.0f64;
    match kind {
        TraceKind::Reconstruction => {
            let averages = (0..cells).map(|i| cell_average(f, x[i], x[i + 1])).collect();
            let field = CellAverageField::new(Mesh::new(x.clone())?, averages)?.periodic_extension(ghosts)?;
            let traces = EnoReconstruction::new(&field, order)?.traces()?;
            for t in traces.iter().filter(|t| t.index + 1 >= ghosts && t.index < ghosts + cells) {
                let exact = f(t.location);
                worst = worst.max((t.left - exact).abs()).max((t.right - exact).abs());
            }
        }
        TraceKind::Interpolation => {
            let values = x[..cells].iter().map(|&v| f(v)).collect();
            let field = PointValueField::new(x[..cells].to_vec(), values)?.periodic_extension(b - a, ghosts)?;
            let traces = EnoInterpolation::new(&field, order)?.traces()?;
            for t in traces.iter().filter(|t| t.index >= ghosts && t.index < ghosts + cells) {
                let exact = f(t.location);
                worst = worst.max((t.left - exact).abs()).max((t.right - exact).abs());
            }
        }
    }
    Ok(worst)
}

/// Errors and observed rates for every order and resolution.
pub fn convergence_study(
    f: &dyn Fn(f64) -> f64,
    domain: (f64, f64),
    kind: TraceKind,
    orders: &[usize],
    resolutions: &[usize],
) -> Result<RateTable> {
    if resolutions.len() < 2 || resolutions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EnoError::InvalidMesh(
            "resolutions must be increasing with at least two entries".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut fitted = Vec::new();
    for &p in orders {
        let mut samples = Vec::with_capacity(resolutions.len());
        let mut prev: Option<(usize, f64)> = None;
        for &n in resolutions {
            let error = periodic_trace_error(f, domain, kind, p, n)?;
            let rate = prev.map(|(m, e)| (e / error).ln() / (n as f64 / m as f64).ln());
            rows.push(RateRow {
                order: p,
                cells: n,
                error,
                rate,
            });
            samples.push(((n as f64).ln(), -error.ln()));
            prev = Some((n, error));
        }
        fitted.push((p, least_squares_slope(&samples)));
    }
    Ok(RateTable { kind, rows, fitted })
}

/// `sin(2 pi x)` on `[0, 1]`.
pub fn sine_wave(x: f64) -> f64 {
    (2.0 * std::f64::consts::PI * x).sin()
}

/// Largest trace error when reconstructing the averages of the polynomial
/// `sum_k coeffs[k] x^k` on `mesh`. Averages come from the exact
/// antiderivative, so an order above the degree reproduces the polynomial.
pub fn polynomial_reproduction_error<T: Scalar>(mesh: &Mesh<T>, coeffs: &[T], order: usize) -> Result<T> {
    let eval = |x: &T| coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone());
    let anti = |x: &T| {
        coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(T::zero(), |acc, (k, c)| acc * x.clone() + c.clone() / T::from_i64(k as i64 + 1))
            * x.clone()
    };
    let xs = mesh.interfaces();
    let averages = (0..mesh.cell_count())
        .map(|i| (anti(&xs[i + 1]) - anti(&xs[i])) / mesh.width(i))
        .collect();
    let field = CellAverageField::new(mesh.clone(), averages)?;
    let traces = EnoReconstruction::new(&field, order)?.traces()?;
    Ok(traces.iter().fold(T::zero(), |worst, t| {
        let exact = eval(&t.location);
        let e = T::max_of((t.left.clone() - exact.clone()).abs(), (t.right.clone() - exact).abs());
        T::max_of(worst, e)
    }))
}
