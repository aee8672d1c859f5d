//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! `ENO_ACCEPTANCE_TRIALS` overrides the fuzz trial count (default 10000).

use std::time::{Duration, Instant};

use eno_core::harness::{
    convergence_study, fuzz_sign_property, polynomial_reproduction_error, run_worst_case, sine_wave,
    FuzzConfig, ValueFamily,
};
use eno_core::stability::{reconstruction_bound, uniform_interpolation_bound, uniform_reconstruction_bound};
use eno_core::{Backend, Exact, Mesh, Scalar, TraceKind};

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: usize, title: &str, elapsed: Duration, outcome: &Outcome) {
    println!(
        "{} [{id:>2}] {title} ({:.2}s): {}",
        if outcome.pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        outcome.detail
    );
}

fn table(expected: &[(i64, i64)], f: fn(usize) -> eno_core::Result<Exact>) -> Outcome {
    let got: Vec<Exact> = (1..=expected.len()).map(|p| f(p).unwrap()).collect();
    let pass = got
        .iter()
        .zip(expected)
        .all(|(g, &(n, d))| *g == Exact::from_ratio(n, d));
    Outcome {
        pass,
        detail: got.iter().map(|g| g.to_canonical_string()).collect::<Vec<_>>().join(", "),
    }
}

fn table_one() -> Outcome {
    table(&[(1, 1), (2, 1), (10, 3), (16, 3), (128, 15), (208, 15)], uniform_reconstruction_bound)
}

fn table_two() -> Outcome {
    table(&[(1, 1), (2, 1), (7, 2), (6, 1), (83, 8), (73, 4)], uniform_interpolation_bound)
}

fn consistency() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for p in 1..=6 {
        for h in [Exact::from_i64(1), Exact::from_ratio(3, 7)] {
            let mesh = Mesh::uniform(Exact::from_ratio(-5, 2), h, 2 * p + 3).unwrap();
            let b = reconstruction_bound(mesh.interfaces(), p).unwrap();
            pass &= b == uniform_reconstruction_bound(p).unwrap();
            if h_is_unit(&mesh) {
                detail.push(b.to_canonical_string());
            }
        }
    }
    Outcome {
        pass,
        detail: format!("C_p on uniform meshes = {}", detail.join(", ")),
    }
}

fn h_is_unit(mesh: &Mesh<Exact>) -> bool {
    mesh.width(0) == Exact::from_i64(1)
}

fn worst_case() -> Outcome {
    let expected = [2.0, 10.0 / 3.0, 16.0 / 3.0, 128.0 / 15.0];
    let mut pass = true;
    let mut detail = Vec::new();
    for (p, want) in (2..=5).zip(expected) {
        let n = eno_core::harness::default_cell_count(p);
        let r = run_worst_case(p, 1e-10, n).unwrap().ratio;
        pass &= (r - want).abs() < 1e-6;
        detail.push(format!("p={p}: {r:.9}"));
    }
    Outcome {
        pass,
        detail: detail.join(", "),
    }
}

fn accuracy() -> Outcome {
    let orders = [1, 2, 3, 4, 5];
    let table = convergence_study(
        &sine_wave,
        (0.0, 1.0),
        TraceKind::Reconstruction,
        &orders,
        &[16, 32, 64, 128, 256],
    )
    .unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for p in orders {
        let r = table.fitted_rate(p).unwrap();
        pass &= r >= p as f64 - 0.3;
        detail.push(format!("p={p}: {r:.2}"));
    }
    let widths: Vec<f64> = (0..16).map(|i| 0.5 + 0.1 * ((i * 7) % 11) as f64).collect();
    let mesh = Mesh::from_widths(-1.0, &widths).unwrap();
    let exact_mesh = mesh.to_backend::<Exact>().unwrap();
    let coeffs = [0.5, -2.0, 1.25, 3.0, -0.75, 0.125];
    let mut worst_float = 0.0f64;
    for p in 1..=6 {
        worst_float = worst_float.max(polynomial_reproduction_error(&mesh, &coeffs[..p], p).unwrap());
        let exact_coeffs: Vec<Exact> = coeffs[..p].iter().map(|&c| Exact::from_f64(c).unwrap()).collect();
        pass &= polynomial_reproduction_error(&exact_mesh, &exact_coeffs, p).unwrap() == Exact::from_i64(0);
    }
    pass &= worst_float < 1e-10;
    detail.push(format!("polynomial reproduction error {worst_float:.1e} (float), 0 (exact)"));
    Outcome {
        pass,
        detail: detail.join(", "),
    }
}

fn determinism() -> Outcome {
    let mut pass = true;
    for backend in [Backend::Exact, Backend::Float] {
        let config = FuzzConfig {
            seed: 20_240_601,
            trials: 200,
            values: ValueFamily::Mixed,
            backend,
            ..FuzzConfig::default()
        };
        let json = |c: &FuzzConfig| serde_json::to_string(&fuzz_sign_property(c).unwrap()).unwrap();
        let first = json(&config);
        let again = json(&config);
        let serial = json(&FuzzConfig {
            parallel: false,
            ..config.clone()
        });
        pass &= first == again && first == serial;
    }
    Outcome {
        pass,
        detail: "200-trial reports byte-identical across reruns and serial/parallel, both backends".into(),
    }
}

fn run(id: usize, title: &str, limit: Option<Duration>, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            o.pass = false;
            o.detail.push_str(&format!(" [exceeded {:.0}s limit]", limit.as_secs_f64()));
        }
    }
    report(id, title, elapsed, &o);
    o.pass
}

fn main() {
    let trials = std::env::var("ENO_ACCEPTANCE_TRIALS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000);
    let mut all = true;
    all &= run(1, "uniform reconstruction bounds", Some(Duration::from_secs(1)), table_one);
    all &= run(2, "uniform interpolation bounds", Some(Duration::from_secs(1)), table_two);
    all &= run(3, "mesh bound on uniform meshes equals closed form", None, consistency);

    let config = FuzzConfig {
        seed: 1,
        trials,
        cells: 30,
        min_order: 1,
        max_order: 6,
        mesh_ratio: 4.0,
        backend: Backend::Exact,
        values: ValueFamily::Mixed,
        ..FuzzConfig::default()
    };
    let start = Instant::now();
    let fuzz = fuzz_sign_property(&config).expect("fuzz configuration is valid");
    let elapsed = start.elapsed();
    let per_kind = |kind: TraceKind| -> (usize, usize) {
        fuzz.per_order
            .iter()
            .filter(|s| s.kind == kind)
            .fold((0, 0), |(i, v), s| (i + s.interfaces, v + s.violations))
    };
    let (ri, rv) = per_kind(TraceKind::Reconstruction);
    let (ii, iv) = per_kind(TraceKind::Interpolation);
    let timed = |o: Outcome, limit: Duration| Outcome {
        pass: o.pass && elapsed <= limit,
        detail: if elapsed <= limit {
            o.detail
        } else {
            format!("{} [exceeded {:.0}s limit]", o.detail, limit.as_secs_f64())
        },
    };
    let five_minutes = Duration::from_secs(300);
    let c4 = timed(
        Outcome {
            pass: rv == 0 && ri > 0,
            detail: format!("{trials} trials x 30 cells, p=1..6, exact: {ri} interfaces, {rv} violations"),
        },
        five_minutes,
    );
    report(4, "sign property, reconstruction", elapsed, &c4);
    let c5 = Outcome {
        pass: iv == 0 && ii > 0,
        detail: format!("{ii} midpoints, {iv} violations"),
    };
    report(5, "sign property, interpolation", elapsed, &c5);
    let fractions: Vec<String> = fuzz
        .per_order
        .iter()
        .map(|s| format!("{}{}:{:.3}", &s.kind.to_string()[..1], s.order, Exact::parse_scalar(&s.max_bound_fraction).unwrap().to_f64()))
        .collect();
    let c6 = Outcome {
        pass: fuzz.bound_exceedances == 0 && fuzz.termwise_violations == 0,
        detail: format!(
            "{} exceedances, {} termwise sign failures; max ratio/bound {}",
            fuzz.bound_exceedances,
            fuzz.termwise_violations,
            fractions.join(" ")
        ),
    };
    report(6, "jump ratio within mesh bound", elapsed, &c6);
    let c7 = Outcome {
        pass: fuzz.oracle_mismatches == 0,
        detail: format!("{} mismatches over {} interfaces", fuzz.oracle_mismatches, fuzz.interfaces),
    };
    report(7, "telescoped jump equals trace difference", elapsed, &c7);
    let c8 = Outcome {
        pass: fuzz.conservation_failures == 0,
        detail: format!("{} cells with mean != average", fuzz.conservation_failures),
    };
    report(8, "conservation", elapsed, &c8);
    all &= c4.pass && c5.pass && c6.pass && c7.pass && c8.pass && fuzz.is_clean();

    all &= run(9, "worst case attains C_p at x = 4", None, worst_case);
    all &= run(10, "convergence on smooth data", None, accuracy);
    all &= run(11, "determinism", None, determinism);

    if !all {
        println!("acceptance: FAILED");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
