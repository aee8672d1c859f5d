use crate::error::{EnoError, Result};
use crate::numerics::Scalar;

/// Value at `x` of the polynomial through `(points[k], values[k])`, summed
/// directly over the Lagrange basis.
pub fn lagrange_oracle<T: Scalar>(points: &[T], values: &[T], x: &T) -> Result<T> {
    if points.len() != values.len() {
        return Err(EnoError::Shape {
            what: "values per point",
            expected: points.len(),
            found: values.len(),
        });
    }
    if points.is_empty() {
        return Err(EnoError::InvalidMesh("no interpolation points".into()));
    }
    for (a, pa) in points.iter().enumerate() {
        if points[..a].iter().any(|pb| pb == pa) {
            return Err(EnoError::InvalidMesh(format!("duplicate point {pa:?}")));
        }
    }
    let mut sum = T::zero();
    for (k, (pk, vk)) in points.iter().zip(values).enumerate() {
        let mut basis = T::one();
        for (m, pm) in points.iter().enumerate() {
            if m != k {
                basis = basis * (x.clone() - pm.clone()) / (pk.clone() - pm.clone());
            }
        }
        sum = sum + vk.clone() * basis;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{DividedDifferenceTable, Exact};
    use crate::stencil::NewtonPolynomial;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    #[test]
    fn chord_and_nodes() {
        let pts = [q(1, 1), q(3, 1)];
        let vals = [q(2, 1), q(6, 1)];
        assert_eq!(lagrange_oracle(&pts, &vals, &q(2, 1)).unwrap(), q(4, 1));
        assert_eq!(lagrange_oracle(&pts, &vals, &q(3, 1)).unwrap(), q(6, 1));
    }

    #[test]
    fn rejects_duplicates_and_shape_errors() {
        assert!(matches!(
            lagrange_oracle(&[1.0, 2.0, 1.0], &[0.0; 3], &0.5),
            Err(EnoError::InvalidMesh(_))
        ));
        assert!(matches!(
            lagrange_oracle(&[1.0, 2.0], &[0.0], &0.5),
            Err(EnoError::Shape { .. })
        ));
        assert!(lagrange_oracle::<f64>(&[], &[], &0.5).is_err());
    }

    proptest! {
        #[test]
        fn newton_agrees_with_lagrange(
            gaps in prop::collection::vec(1i64..40, 1..7),
            vals in prop::collection::vec(-50i64..50, 7),
            x in -100i64..100,
        ) {
            let mut pts = vec![q(0, 1)];
            for g in &gaps {
                let last = pts.last().unwrap().clone();
                pts.push(last + q(*g, 7));
            }
            let vals: Vec<Exact> = vals[..pts.len()].iter().map(|&v| q(v, 3)).collect();
            let table = DividedDifferenceTable::new(&pts, &vals).unwrap();
            // Grow from the middle outward, alternating sides.
            let n = pts.len() as i64;
            let mut order = vec![n / 2];
            let (mut lo, mut hi) = (n / 2, n / 2);
            while order.len() < pts.len() {
                if (order.len() % 2 == 0 && lo > 0) || hi == n - 1 {
                    lo -= 1;
                    order.push(lo);
                } else {
                    hi += 1;
                    order.push(hi);
                }
            }
            let poly = NewtonPolynomial::from_table(&table, &order).unwrap();
            let x = q(x, 5);
            prop_assert_eq!(poly.evaluate(&x), lagrange_oracle(&pts, &vals, &x).unwrap());
        }
    }
}
