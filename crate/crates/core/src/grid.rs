//! Meshes, cell-average and point-value fields, and the primitive that links
//! them.
//!
//! Cells are half-open, `I_i = [x_{i-1/2}, x_{i+1/2})`. Interfaces are stored
//! with integer indices: interface `k` is the left edge of cell `k`, so cell
//! `i` spans interfaces `i` and `i + 1`.

use crate::error::{EnoError, Result};
use crate::numerics::{check_strictly_increasing, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh<T> {
    interfaces: Vec<T>,
}

impl<T: Scalar> Mesh<T> {
    pub fn new(interfaces: Vec<T>) -> Result<Self> {
        if interfaces.len() < 2 {
            return Err(EnoError::InvalidMesh(format!(
                "a mesh needs at least two interfaces (got {})",
                interfaces.len()
            )));
        }
        check_strictly_increasing(&interfaces)?;
        Ok(Self { interfaces })
    }

    /// Mesh with `cells` cells of width `h` starting at `origin`.
    pub fn uniform(origin: T, h: T, cells: usize) -> Result<Self> {
        let interfaces = (0..=cells)
            .map(|k| origin.clone() + h.clone() * T::from_i64(k as i64))
            .collect();
        Self::new(interfaces)
    }

    /// Builds a mesh from cell widths, starting at `origin`.
    pub fn from_widths(origin: T, widths: &[T]) -> Result<Self> {
        let mut interfaces = Vec::with_capacity(widths.len() + 1);
        let mut x = origin;
        interfaces.push(x.clone());
        for w in widths {
            x = x + w.clone();
            interfaces.push(x.clone());
        }
        Self::new(interfaces)
    }

    pub fn cell_count(&self) -> usize {
        self.interfaces.len() - 1
    }

    pub fn interfaces(&self) -> &[T] {
        &self.interfaces
    }

    pub fn interface(&self, k: usize) -> &T {
        &self.interfaces[k]
    }

    /// `|I_i|`.
    pub fn width(&self, cell: usize) -> T {
        self.interfaces[cell + 1].clone() - self.interfaces[cell].clone()
    }

    /// `|I_{i+1}| / |I_i|`, for `i + 1 < cell_count`.
    pub fn mesh_ratio(&self, cell: usize) -> T {
        self.width(cell + 1) / self.width(cell)
    }

    /// Largest cell width.
    pub fn max_width(&self) -> T {
        (0..self.cell_count())
            .map(|i| self.width(i))
            .fold(T::zero(), T::max_of)
    }

    pub fn to_backend<U: Scalar>(&self) -> Option<Mesh<U>> {
        let interfaces = convert_all(&self.interfaces)?;
        Some(Mesh { interfaces })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellAverageField<T> {
    mesh: Mesh<T>,
    averages: Vec<T>,
}

impl<T: Scalar> CellAverageField<T> {
    pub fn new(mesh: Mesh<T>, averages: Vec<T>) -> Result<Self> {
        if averages.len() != mesh.cell_count() {
            return Err(EnoError::Shape {
                what: "cell averages",
                expected: mesh.cell_count(),
                found: averages.len(),
            });
        }
        Ok(Self { mesh, averages })
    }

    pub fn mesh(&self) -> &Mesh<T> {
        &self.mesh
    }

    pub fn averages(&self) -> &[T] {
        &self.averages
    }

    pub fn cell_count(&self) -> usize {
        self.averages.len()
    }

    /// Applies `v -> a * v + b` to every average.
    pub fn affine_map(&self, a: &T, b: &T) -> Self {
        Self {
            mesh: self.mesh.clone(),
            averages: self
                .averages
                .iter()
                .map(|v| a.clone() * v.clone() + b.clone())
                .collect(),
        }
    }

    /// Periodic extension by `ghosts` cells on each side; original cell `i`
    /// becomes cell `i + ghosts`.
    pub fn periodic_extension(&self, ghosts: usize) -> Result<Self> {
        let n = self.cell_count();
        if ghosts > n {
            return Err(EnoError::StencilOutOfRange(format!(
                "cannot take {ghosts} periodic ghost cells from {n} cells"
            )));
        }
        let x = self.mesh.interfaces();
        let period = x[n].clone() - x[0].clone();
        let mut interfaces = Vec::with_capacity(n + 2 * ghosts + 1);
        let mut averages = Vec::with_capacity(n + 2 * ghosts);
        for k in n - ghosts..n {
            interfaces.push(x[k].clone() - period.clone());
            averages.push(self.averages[k].clone());
        }
        interfaces.extend(x[..n].iter().cloned());
        averages.extend(self.averages.iter().cloned());
        for k in 0..=ghosts {
            interfaces.push(x[k].clone() + period.clone());
        }
        averages.extend(self.averages[..ghosts].iter().cloned());
        Self::new(Mesh::new(interfaces)?, averages)
    }

    pub fn to_backend<U: Scalar>(&self) -> Option<CellAverageField<U>> {
        Some(CellAverageField {
            mesh: self.mesh.to_backend()?,
            averages: convert_all(&self.averages)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointValueField<T> {
    nodes: Vec<T>,
    values: Vec<T>,
}

impl<T: Scalar> PointValueField<T> {
    pub fn new(nodes: Vec<T>, values: Vec<T>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(EnoError::Shape {
                what: "point values",
                expected: nodes.len(),
                found: values.len(),
            });
        }
        if nodes.is_empty() {
            return Err(EnoError::InvalidMesh("no nodes".into()));
        }
        check_strictly_increasing(&nodes)?;
        Ok(Self { nodes, values })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn affine_map(&self, a: &T, b: &T) -> Self {
        Self {
            nodes: self.nodes.clone(),
            values: self
                .values
                .iter()
                .map(|v| a.clone() * v.clone() + b.clone())
                .collect(),
        }
    }

    /// Periodic extension of data with period `period` (node `k + n` sits
    /// at `x_k + period`); original node `i` becomes node `i + ghosts`.
    pub fn periodic_extension(&self, period: T, ghosts: usize) -> Result<Self> {
        let n = self.len();
        if ghosts > n {
            return Err(EnoError::StencilOutOfRange(format!(
                "cannot take {ghosts} periodic ghost nodes from {n} nodes"
            )));
        }
        let mut nodes = Vec::with_capacity(n + 2 * ghosts);
        let mut values = Vec::with_capacity(n + 2 * ghosts);
        for k in n - ghosts..n {
            nodes.push(self.nodes[k].clone() - period.clone());
            values.push(self.values[k].clone());
        }
        nodes.extend(self.nodes.iter().cloned());
        values.extend(self.values.iter().cloned());
        for k in 0..ghosts {
            nodes.push(self.nodes[k].clone() + period.clone());
            values.push(self.values[k].clone());
        }
        Self::new(nodes, values)
    }

    pub fn to_backend<U: Scalar>(&self) -> Option<PointValueField<U>> {
        Some(PointValueField {
            nodes: convert_all(&self.nodes)?,
            values: convert_all(&self.values)?,
        })
    }
}

fn convert_all<T: Scalar, U: Scalar>(xs: &[T]) -> Option<Vec<U>> {
    xs.iter().map(|x| Some(U::from_exact(&x.to_exact()?))).collect()
}

/// Point values of the primitive `V` at the mesh interfaces:
/// `V[0] = base`, `V[j+1] = V[j] + |I_j| * avg_j`.
pub fn primitive_from_averages<T: Scalar>(field: &CellAverageField<T>, base: T) -> PointValueField<T> {
    let mesh = field.mesh();
    let mut values = Vec::with_capacity(mesh.cell_count() + 1);
    let mut acc = base;
    values.push(acc.clone());
    for (i, avg) in field.averages().iter().enumerate() {
        acc = acc + mesh.width(i) * avg.clone();
        values.push(acc.clone());
    }
    PointValueField {
        nodes: mesh.interfaces().to_vec(),
        values,
    }
}

/// First divided differences of the primitive over each cell, i.e. the
/// recovered cell averages.
pub fn first_differences<T: Scalar>(primitive: &PointValueField<T>) -> Vec<T> {
    primitive
        .nodes()
        .windows(2)
        .zip(primitive.values().windows(2))
        .map(|(x, v)| (v[1].clone() - v[0].clone()) / (x[1].clone() - x[0].clone()))
        .collect()
}

/// Whether `V[x_{i-1/2}, x_{i+1/2}] = avg_i` for every cell; exact for
/// [`crate::numerics::Exact`], up to round-off for floats.
pub fn first_dd_is_average<T: Scalar>(
    primitive: &PointValueField<T>,
    field: &CellAverageField<T>,
) -> bool {
    if primitive.len() != field.cell_count() + 1 || primitive.nodes() != field.mesh().interfaces() {
        return false;
    }
    let values = primitive.values();
    first_differences(primitive)
        .iter()
        .zip(field.averages())
        .enumerate()
        .all(|(i, (dd, avg))| {
            let scale = T::max_of(values[i].abs(), values[i + 1].abs()) / field.mesh().width(i);
            dd.agrees_with(avg, &scale)
        })
}
