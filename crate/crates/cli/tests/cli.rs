use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn eno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eno"))
        .args(args)
        .output()
        .expect("eno runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn cells_csv(widths: &[&str], averages: &[&str]) -> String {
    let mut s = String::from("x_left,x_right,avg\n");
    let mut x = 0i64;
    for (w, a) in widths.iter().zip(averages) {
        let w: i64 = w.parse().unwrap();
        s += &format!("{x},{},{a}\n", x + w);
        x += w;
    }
    s
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(csv.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn uniform_bounds_reproduce_the_tables() {
    let o = eno(&["bounds", "--order", "6", "--kind", "reconstruction", "--uniform"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("reconstruction,6,208/15,"), "{out}");
    assert_eq!(rows(&out).len(), 6);

    let o = eno(&["bounds", "--order", "6", "--uniform"]);
    let r = rows(&stdout(&o));
    let bounds: Vec<&str> = r.iter().map(|row| row[2].as_str()).collect();
    assert_eq!(
        bounds,
        ["1/1", "2/1", "10/3", "16/3", "128/15", "208/15", "1/1", "2/1", "7/2", "6/1", "83/8", "73/4"]
    );
}

#[test]
fn mesh_bounds_on_a_uniform_mesh_match_the_closed_form() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "u.csv", &cells_csv(&["2"; 14], &["0"; 14]));
    let o = eno(&["bounds", "--order", "4", "--input", p(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 14 - 8 + 1);
    assert!(r.iter().all(|row| row[2] == "16/3"));
}

#[test]
fn worst_case_order_four() {
    let o = eno(&["worst-case", "--order", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ratio: f64 = v["ratio"].as_str().unwrap().parse().unwrap();
    assert!((ratio - 16.0 / 3.0).abs() < 1e-6, "{ratio}");
    assert_eq!(v["x"], "4.0");
    assert_eq!(v["bound"], "16/3");
}

#[test]
fn worst_case_table_feeds_reconstruct() {
    let dir = TempDir::new().unwrap();
    let table = dir.path().join("w.csv");
    let o = eno(&["worst-case", "-o", "3", "-b", "exact", "--epsilon", "1/1000", "--table", p(&table)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let o = eno(&["reconstruct", "-i", p(&table), "-o", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    let at4 = r.iter().find(|row| row[0] == "4/1").unwrap();
    assert_eq!(at4[4], v["ratio"].as_str().unwrap());
}

#[test]
fn verify_constant_averages_is_all_continuous() {
    let dir = TempDir::new().unwrap();
    let n = 16;
    let f = write(&dir, "c.csv", &cells_csv(&vec!["3"; n], &vec!["5/2"; n]));
    for order in 1..=6usize {
        let o = eno(&["verify", "-i", p(&f), "-o", &order.to_string()]);
        assert!(o.status.success(), "{}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["violations"], 0);
        assert_eq!(v["interfaces"], n - 2 * order + 1);
        assert_eq!(v["order"], order);
        assert_eq!(v["backend"], "exact");
        assert!(v["max_ratio"].is_null());
        let verdicts = v["verdicts"].as_array().unwrap();
        assert_eq!(verdicts.len(), n - 2 * order + 1);
        assert!(verdicts.iter().all(|e| e["verdict"] == "CONT"));
    }
}

#[test]
fn verify_step_on_a_non_uniform_mesh() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "s.csv",
        &cells_csv(
            &["1", "3", "2", "1", "4", "1", "2", "3", "1", "2", "2", "1"],
            &["0", "0", "0", "0", "0", "0", "1", "1", "1", "1", "1", "1"],
        ),
    );
    for backend in ["exact", "float"] {
        let o = eno(&["verify", "-i", p(&f), "-o", "3", "-b", backend]);
        assert!(o.status.success(), "{}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["violations"], 0);
        assert_eq!(v["same_sign"], 1);
    }
}

#[test]
fn verify_interpolation_kind() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.csv", "x,value\n0,1\n1,4\n3,-2\n4,0\n7,5\n8,5\n10,1\n11,-3\n");
    let o = eno(&["verify", "-i", p(&f), "-o", "2", "-k", "interpolation"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "interpolation");
    assert_eq!(v["interfaces"], 8 - 4 + 1);
    assert_eq!(v["violations"], 0);
}

#[test]
fn exact_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "r.csv",
        &cells_csv(&["1", "2", "1", "3", "1", "1", "2", "5", "1", "2"], &["1/3", "2", "-7", "0.25", "4", "4", "1e-3", "9", "-1", "2"]),
    );
    let o = eno(&["reconstruct", "-i", p(&f), "-o", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for row in rows(&stdout(&o)) {
        for field in &row[..5] {
            if field == "CONT" {
                continue;
            }
            let (n, d) = field.split_once('/').expect("exact values print as num/den");
            assert!(n.parse::<i128>().is_ok() && d.parse::<u128>().unwrap() > 0, "{field}");
        }
        assert_eq!(row[5].split(',').count(), 3);
    }
}

#[test]
fn float_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.csv", "x,value\n0,0.1\n0.5,0.7\n1.25,-0.3\n2,0.2\n3,1.1\n3.5,0.9\n");
    let o = eno(&["interpolate", "-i", p(&f), "-o", "2", "-b", "float"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 3);
    assert_eq!(r[0][0], "0.875");
    for row in &r {
        for field in &row[1..4] {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:?}"), *field);
        }
    }
}

#[test]
fn malformed_csv_exits_2_with_line_number() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("x_left,x_right,avg\n0,1,2\n1,2,oops\n", ":3:"),
        ("0,1,2\n1,2,3\n", ":1:"),
        ("x_left,x_right,avg\n0,1,2\n1,2\n", ":3:"),
        ("x_left,x_right,avg\n0,1,2\n1.5,2,3\n", ":3:"),
        ("x_left,x_right,avg\n0,1,2\n1,1,3\n", ":3:"),
        ("x_left,x_right,avg\n", ":2:"),
    ];
    for (i, (text, line)) in cases.iter().enumerate() {
        let f = write(&dir, &format!("bad{i}.csv"), text);
        let o = eno(&["reconstruct", "-i", p(&f), "-o", "1"]);
        assert_eq!(o.status.code(), Some(2), "case {i}: {}", stderr(&o));
        assert!(stderr(&o).contains(line), "case {i}: {}", stderr(&o));
    }
    let f = write(&dir, "badp.csv", "x,value\n0,1\n2,1\n1,1\n");
    let o = eno(&["interpolate", "-i", p(&f), "-o", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":4:"), "{}", stderr(&o));
}

#[test]
fn short_input_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "short.csv", &cells_csv(&["1"; 5], &["0"; 5]));
    let o = eno(&["reconstruct", "-i", p(&f), "-o", "3"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = eno(&["verify", "-i", p(&f), "-o", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn fuzz_report_is_clean_and_byte_stable() {
    let args = ["fuzz", "--seed", "7", "--trials", "12", "--cells", "16", "--max-order", "4"];
    let a = eno(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["backend"], "exact");
    assert_eq!(v["violations"], 0);
    assert!(v["interfaces"].as_u64().unwrap() > 0);
    assert_eq!(v["per_order"].as_array().unwrap().len(), 8);

    let b = eno(&args);
    let mut serial = args.to_vec();
    serial.push("--serial");
    let c = eno(&serial);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn fuzz_rejects_too_few_cells() {
    let o = eno(&["fuzz", "--trials", "1", "--cells", "8", "--max-order", "6"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn converge_reports_rates() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("rates.csv");
    let o = eno(&["converge", "--max-order", "3", "--resolutions", "16,32,64", "--output", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(r.len(), 9);
    for row in &r {
        let order: f64 = row[0].parse().unwrap();
        let fitted: f64 = row[4].parse().unwrap();
        assert!(fitted > order - 0.3, "{row:?}");
    }
    assert_eq!(r[0][3], "");
}

#[test]
fn order_zero_is_rejected() {
    let o = eno(&["bounds", "--order", "0", "--uniform"]);
    assert_eq!(o.status.code(), Some(2));
}
