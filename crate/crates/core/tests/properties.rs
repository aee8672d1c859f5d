use eno_core::harness::polynomial_reproduction_error;
use eno_core::stability::{verdict, verify_interpolation, verify_reconstruction};
use eno_core::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Exact {
    Exact::from_ratio(n, d)
}

/// Arbitrary rational widths in `[1/8, 8]`, unrelated to any lattice.
fn widths(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Exact>> {
    prop::collection::vec((1i64..=64, 1i64..=8), n).prop_map(|v| v.into_iter().map(|(a, b)| q(a, b * 8).max(q(1, 8))).collect())
}

fn cell_field() -> impl Strategy<Value = (CellAverageField<Exact>, usize)> {
    (widths(12..20), 1usize..=5).prop_flat_map(|(w, p)| {
        let n = w.len();
        prop::collection::vec(-6i64..=6, n).prop_map(move |a| {
            let mesh = Mesh::from_widths(q(0, 1), &w).unwrap();
            let f = CellAverageField::new(mesh, a.into_iter().map(|v| q(v, 2)).collect()).unwrap();
            (f, p)
        })
    })
}

fn point_field() -> impl Strategy<Value = (PointValueField<Exact>, usize)> {
    (widths(12..20), 1usize..=5).prop_flat_map(|(w, p)| {
        let n = w.len();
        prop::collection::vec(-6i64..=6, n).prop_map(move |v| {
            let x = Mesh::from_widths(q(0, 1), &w).unwrap().interfaces()[..n].to_vec();
            (PointValueField::new(x, v.into_iter().map(|k| q(k, 3)).collect()).unwrap(), p)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_property_on_arbitrary_rational_meshes((f, p) in cell_field()) {
        let r = verify_reconstruction(&f, p).unwrap();
        prop_assert!(r.is_clean(), "{:?}", r.signs);
    }

    #[test]
    fn interpolation_sign_property_on_arbitrary_nodes((f, p) in point_field()) {
        let r = verify_interpolation(&f, p).unwrap();
        prop_assert!(r.is_clean(), "{:?}", r.signs);
    }

    #[test]
    fn affine_maps_of_the_values_commute((f, p) in cell_field(), a in (1i64..=5, 1i64..=3), neg in any::<bool>(), b in -4i64..=4) {
        let a = if neg { -q(a.0, a.1) } else { q(a.0, a.1) };
        let b = q(b, 1);
        let base = EnoReconstruction::new(&f, p).unwrap().traces().unwrap();
        let mapped = EnoReconstruction::new(&f.affine_map(&a, &b), p).unwrap().traces().unwrap();
        for (s, t) in base.iter().zip(mapped.iter()) {
            prop_assert_eq!(&s.left_signature, &t.left_signature);
            prop_assert_eq!(&s.right_signature, &t.right_signature);
            prop_assert_eq!(a.clone() * s.left.clone() + b.clone(), t.left.clone());
            prop_assert_eq!(a.clone() * s.right.clone() + b.clone(), t.right.clone());
            prop_assert_eq!(s.ratio(), t.ratio());
        }
    }

    #[test]
    fn affine_maps_of_the_mesh_keep_ratios((f, p) in cell_field(), c in (1i64..=9, 1i64..=4), d in -5i64..=5) {
        let (c, d) = (q(c.0, c.1), q(d, 1));
        let x: Vec<Exact> = f.mesh().interfaces().iter().map(|v| c.clone() * v.clone() + d.clone()).collect();
        let g = CellAverageField::new(Mesh::new(x).unwrap(), f.averages().to_vec()).unwrap();
        let rf = verify_reconstruction(&f, p).unwrap();
        let rg = verify_reconstruction(&g, p).unwrap();
        prop_assert_eq!(&rf.bounds, &rg.bounds);
        for (s, t) in rf.traces.iter().zip(rg.traces.iter()) {
            prop_assert_eq!(&s.left_signature, &t.left_signature);
            prop_assert_eq!(&s.left, &t.left);
            prop_assert_eq!(&s.right, &t.right);
        }
    }

    #[test]
    fn equal_neighbouring_averages_give_continuous_traces((f, p) in cell_field(), k in 0usize..12) {
        let mut avgs = f.averages().to_vec();
        let k = k % (avgs.len() - 1);
        avgs[k + 1] = avgs[k].clone();
        let g = CellAverageField::new(f.mesh().clone(), avgs).unwrap();
        let t = EnoReconstruction::new(&g, p).unwrap().traces().unwrap();
        if let Some(e) = t.iter().find(|e| e.index == k) {
            prop_assert_eq!(e.left.clone(), e.right.clone());
            prop_assert_eq!(verdict(e), Verdict::Continuous);
        }
    }

    #[test]
    fn polynomials_of_degree_below_p_are_reproduced(w in widths(14..18), p in 1usize..=5, coeffs in prop::collection::vec(-4i64..=4, 5)) {
        let mesh = Mesh::from_widths(q(-3, 1), &w).unwrap();
        let c: Vec<Exact> = coeffs[..p].iter().map(|&k| q(k, 1)).collect();
        prop_assert_eq!(polynomial_reproduction_error(&mesh, &c, p).unwrap(), q(0, 1));
    }

    #[test]
    fn float_and_exact_pick_the_same_stencils_away_from_ties((f, p) in cell_field()) {
        let exact = EnoReconstruction::new(&f, p).unwrap().traces().unwrap();
        let g: CellAverageField<f64> = f.to_backend().unwrap();
        let float = EnoReconstruction::new(&g, p).unwrap().traces().unwrap();
        for (s, t) in exact.iter().zip(float.iter()) {
            prop_assert!((Scalar::to_f64(&s.left) - t.left).abs() <= 1e-9 * (1.0 + t.left.abs())
                || s.left_signature != t.left_signature);
        }
        prop_assert!(verify_reconstruction(&g, p).unwrap().signs.violations == 0);
    }
}
