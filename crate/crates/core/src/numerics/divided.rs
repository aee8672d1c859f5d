use crate::error::{EnoError, Result};
use crate::numerics::Scalar;

/// Triangular table of divided differences over consecutive windows.
///
/// Level `j` holds `f[x_k, ..., x_{k+j}]` for every `k` with `k + j < n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedDifferenceTable<T> {
    points: Vec<T>,
    levels: Vec<Vec<T>>,
}

impl<T: Scalar> DividedDifferenceTable<T> {
    /// Full table, all orders up to `points.len() - 1`.
    pub fn new(points: &[T], values: &[T]) -> Result<Self> {
        let max = points.len().saturating_sub(1);
        Self::with_max_order(points, values, max)
    }

    /// Table truncated at `max_order` (clamped to `points.len() - 1`).
    pub fn with_max_order(points: &[T], values: &[T], max_order: usize) -> Result<Self> {
        if points.len() != values.len() {
            return Err(EnoError::Shape {
                what: "divided-difference ordinates",
                expected: points.len(),
                found: values.len(),
            });
        }
        if points.is_empty() {
            return Err(EnoError::Shape {
                what: "divided-difference abscissae",
                expected: 1,
                found: 0,
            });
        }
        check_strictly_increasing(points)?;

        let top = max_order.min(points.len() - 1);
        let mut levels: Vec<Vec<T>> = Vec::with_capacity(top + 1);
        levels.push(values.to_vec());
        for j in 1..=top {
            let prev = &levels[j - 1];
            let next: Vec<T> = (0..points.len() - j)
                .map(|k| {
                    (prev[k + 1].clone() - prev[k].clone())
                        / (points[k + j].clone() - points[k].clone())
                })
                .collect();
            levels.push(next);
        }
        Ok(Self {
            points: points.to_vec(),
            levels,
        })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    /// Highest order stored.
    pub fn max_order(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, order: usize) -> Option<&[T]> {
        self.levels.get(order).map(Vec::as_slice)
    }

    /// `f[x_start, ..., x_{start+order}]`.
    pub fn get(&self, start: usize, order: usize) -> Option<&T> {
        self.levels.get(order)?.get(start)
    }

    /// Like [`get`](Self::get) with a signed start index; out-of-range
    /// windows are a [`EnoError::StencilOutOfRange`].
    pub fn entry(&self, start: i64, order: usize) -> Result<&T> {
        usize::try_from(start)
            .ok()
            .and_then(|s| self.get(s, order))
            .ok_or_else(|| {
                EnoError::StencilOutOfRange(format!(
                    "divided difference of order {order} starting at point {start} \
                     needs points {start}..={} but only 0..{} exist (max order {})",
                    start + order as i64,
                    self.points.len(),
                    self.max_order()
                ))
            })
    }
}

pub(crate) fn check_strictly_increasing<T: Scalar>(points: &[T]) -> Result<()> {
    for (k, w) in points.windows(2).enumerate() {
        if !(w[1] > w[0]) {
            return Err(EnoError::InvalidMesh(format!(
                "abscissae must be strictly increasing: point {} ({:?}) is not above point {} ({:?})",
                k + 1,
                w[1],
                k,
                w[0]
            )));
        }
    }
    Ok(())
}

/// Divided difference over an arbitrary point set via the symmetric
/// formula `sum_k y_k / prod_{m != k} (x_k - x_m)`.
pub fn symmetric_divided_difference<T: Scalar>(points: &[T], values: &[T]) -> T {
    let mut acc = T::zero();
    for (k, (xk, yk)) in points.iter().zip(values).enumerate() {
        let mut denom = T::one();
        for (m, xm) in points.iter().enumerate() {
            if m != k {
                denom = denom * (xk.clone() - xm.clone());
            }
        }
        acc = acc + yk.clone() / denom;
    }
    acc
}
