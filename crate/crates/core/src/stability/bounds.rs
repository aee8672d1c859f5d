//! Upper bounds on the relative interface jump.
//!
//! All constants are exact rationals, whatever backend produced the mesh.

use serde::Serialize;

use crate::error::{check_order, EnoError, Result};
use crate::numerics::{Exact, Scalar};
use crate::stability::jumps::{interpolation_geometric_factor, reconstruction_geometric_factor};
use crate::stability::TraceKind;

/// Per-offset constants and the aggregated bound at one interface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub kind: TraceKind,
    pub order: usize,
    /// Left cell (or node) of the interface.
    pub index: usize,
    /// `(offset, constant)` for every final stencil offset `-p+1 ..= 0`.
    /// Reconstruction offsets are interface-indexed (`k` stands for the
    /// half-integer `k - 1/2`).
    #[serde(serialize_with = "serialize_constants")]
    pub constants: Vec<(i64, Exact)>,
    #[serde(serialize_with = "serialize_exact")]
    pub bound: Exact,
}

fn serialize_exact<S: serde::Serializer>(v: &Exact, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_canonical_string())
}

fn serialize_constants<S: serde::Serializer>(
    v: &[(i64, Exact)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (k, c) in v {
        seq.serialize_element(&(k, c.to_canonical_string()))?;
    }
    seq.end()
}

/// Recursive constants for every stencil start on a point set.
///
/// Level `q` (1-based) holds `C_{t,q}` for `t` in `0..len(level)`.
#[derive(Debug, Clone)]
struct RecursiveConstants {
    levels: Vec<Vec<Exact>>,
}

impl RecursiveConstants {
    /// `C_{t,1} = 1`, `C_{t,q+1} = 2 / (x_{t+q+lead} - x_t) * max(C_{t,q}, C_{t+1,q})`,
    /// where `lead` is 2 for reconstruction and 1 for interpolation.
    fn build(points: &[Exact], order: usize, lead: usize) -> Self {
        let two = Exact::from_i64(2);
        let mut levels: Vec<Vec<Exact>> = Vec::with_capacity(order);
        levels.push(vec![Exact::one(); points.len()]);
        for q in 1..order {
            let prev = &levels[q - 1];
            let len = prev.len().saturating_sub(1).min(points.len().saturating_sub(q + lead));
            let next = (0..len)
                .map(|t| {
                    let spread = points[t + q + lead].clone() - points[t].clone();
                    let m = if prev[t + 1] > prev[t] { &prev[t + 1] } else { &prev[t] };
                    two.clone() / spread * m.clone()
                })
                .collect();
            levels.push(next);
        }
        Self { levels }
    }

    fn get(&self, t: i64, order: usize) -> Option<&Exact> {
        self.levels.get(order - 1)?.get(usize::try_from(t).ok()?)
    }
}

fn exact_points<T: Scalar>(points: &[T]) -> Result<Vec<Exact>> {
    points
        .iter()
        .map(|x| {
            x.to_exact()
                .ok_or_else(|| EnoError::InvalidMesh(format!("non-finite coordinate {x:?}")))
        })
        .collect()
}

/// Mesh-dependent bounds for the reconstruction traces.
#[derive(Debug, Clone)]
pub struct ReconstructionBounds {
    interfaces: Vec<Exact>,
    order: usize,
    constants: RecursiveConstants,
}

impl ReconstructionBounds {
    pub fn new<T: Scalar>(interfaces: &[T], order: usize) -> Result<Self> {
        check_order(order)?;
        let interfaces = exact_points(interfaces)?;
        let constants = RecursiveConstants::build(&interfaces, order, 2);
        Ok(Self {
            interfaces,
            order,
            constants,
        })
    }

    fn cell_count(&self) -> usize {
        self.interfaces.len() - 1
    }

    /// Bound at the interface between cells `cell` and `cell + 1`.
    pub fn at(&self, cell: usize) -> Result<BoundTable> {
        let p = self.order;
        let n = self.cell_count();
        if cell + 1 < p || cell + p + 1 > n {
            return Err(EnoError::StencilOutOfRange(format!(
                "order-{p} bound at interface {} needs cells {}..={} of {n}",
                cell + 1,
                cell as i64 - p as i64 + 1,
                cell + p
            )));
        }
        let mut sum = Exact::zero();
        let mut constants = Vec::with_capacity(p);
        for k in -(p as i64 - 1)..=0 {
            let t = cell as i64 + k;
            let c = self
                .constants
                .get(t, p)
                .expect("window checked above")
                .clone();
            let g = reconstruction_geometric_factor(&self.interfaces, cell, t, p).abs();
            sum += c.clone() * g;
            constants.push((k, c));
        }
        let span = self.interfaces[cell + 2].clone() - self.interfaces[cell].clone();
        Ok(BoundTable {
            kind: TraceKind::Reconstruction,
            order: p,
            index: cell,
            constants,
            bound: sum / span,
        })
    }

    /// Largest bound over all interior interfaces.
    pub fn max_bound(&self) -> Result<Exact> {
        let p = self.order;
        let n = self.cell_count();
        if n < 2 * p {
            return Err(EnoError::StencilOutOfRange(format!(
                "order-{p} bounds need at least {} cells, got {n}",
                2 * p
            )));
        }
        let mut best = Exact::zero();
        for cell in p - 1..=n - p - 1 {
            let b = self.at(cell)?.bound;
            if b > best {
                best = b;
            }
        }
        Ok(best)
    }
}

/// Mesh-dependent bounds for midpoint traces of the interpolant.
#[derive(Debug, Clone)]
pub struct InterpolationBounds {
    nodes: Vec<Exact>,
    order: usize,
    constants: RecursiveConstants,
}

impl InterpolationBounds {
    pub fn new<T: Scalar>(nodes: &[T], order: usize) -> Result<Self> {
        check_order(order)?;
        let nodes = exact_points(nodes)?;
        let constants = RecursiveConstants::build(&nodes, order, 1);
        Ok(Self {
            nodes,
            order,
            constants,
        })
    }

    /// Bound at the midpoint between nodes `node` and `node + 1`.
    pub fn at(&self, node: usize) -> Result<BoundTable> {
        let p = self.order;
        let n = self.nodes.len();
        if node + 1 < p || node + p + 1 > n {
            return Err(EnoError::StencilOutOfRange(format!(
                "order-{p} bound at midpoint {node}+1/2 needs nodes {}..={} of {n}",
                node as i64 - p as i64 + 1,
                node + p
            )));
        }
        let mut sum = Exact::zero();
        let mut constants = Vec::with_capacity(p);
        for k in -(p as i64 - 1)..=0 {
            let t = node as i64 + k;
            let c = self.constants.get(t, p).expect("window checked above").clone();
            let g = interpolation_geometric_factor(&self.nodes, node, t, p).abs();
            sum += c.clone() * g;
            constants.push((k, c));
        }
        let gap = self.nodes[node + 1].clone() - self.nodes[node].clone();
        Ok(BoundTable {
            kind: TraceKind::Interpolation,
            order: p,
            index: node,
            constants,
            bound: sum / gap,
        })
    }

    pub fn max_bound(&self) -> Result<Exact> {
        let p = self.order;
        let n = self.nodes.len();
        if n < 2 * p {
            return Err(EnoError::StencilOutOfRange(format!(
                "order-{p} bounds need at least {} nodes, got {n}",
                2 * p
            )));
        }
        let mut best = Exact::zero();
        for node in p - 1..=n - p - 1 {
            let b = self.at(node)?.bound;
            if b > best {
                best = b;
            }
        }
        Ok(best)
    }
}

/// Per-offset recursive constants at one interface (`kind` selects the
/// reconstruction or interpolation recursion).
pub fn bound_constants_recursive<T: Scalar>(
    points: &[T],
    index: usize,
    order: usize,
    kind: TraceKind,
) -> Result<BoundTable> {
    match kind {
        TraceKind::Reconstruction => ReconstructionBounds::new(points, order)?.at(index),
        TraceKind::Interpolation => InterpolationBounds::new(points, order)?.at(index),
    }
}

/// Largest reconstruction bound over the interior interfaces of a mesh.
pub fn reconstruction_bound<T: Scalar>(interfaces: &[T], order: usize) -> Result<Exact> {
    ReconstructionBounds::new(interfaces, order)?.max_bound()
}

/// Largest interpolation bound over the interior midpoints of a node set.
pub fn interpolation_bound<T: Scalar>(nodes: &[T], order: usize) -> Result<Exact> {
    InterpolationBounds::new(nodes, order)?.max_bound()
}

fn factorial(n: i64) -> Exact {
    (1..=n).fold(Exact::one(), |acc, k| acc * Exact::from_i64(k))
}

fn power_of_two(n: i64) -> Exact {
    (0..n).fold(Exact::one(), |acc, _| acc * Exact::from_i64(2))
}

/// Closed-form reconstruction bound on a uniform mesh:
/// `2^{p-1} / p! * sum_{k=0}^{p-1} k! (p-k-1)!`.
pub fn uniform_reconstruction_bound(order: usize) -> Result<Exact> {
    check_order(order)?;
    let p = order as i64;
    let sum = (0..p).fold(Exact::zero(), |acc, k| acc + factorial(k) * factorial(p - k - 1));
    Ok(power_of_two(p - 1) * sum / factorial(p))
}

/// Closed-form interpolation bound on a uniform mesh:
/// `2^{p-1} / (p-1)! * sum_{r=-p+1}^{0} |prod_{m=1}^{p-1} (1/2 - r - m)|`.
pub fn uniform_interpolation_bound(order: usize) -> Result<Exact> {
    check_order(order)?;
    let p = order as i64;
    let half = Exact::from_ratio(1, 2);
    let sum = (-(p - 1)..=0).fold(Exact::zero(), |acc, r| {
        let prod = (1..p).fold(Exact::one(), |acc, m| {
            acc * (half.clone() - Exact::from_i64(r + m))
        });
        acc + prod.abs()
    });
    let scale = power_of_two(p - 1) / factorial(p - 1);
    Ok(scale * sum)
}
