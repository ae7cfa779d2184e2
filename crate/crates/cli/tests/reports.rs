use std::process::Command;

use maroni_cli::{run, ClassRow, TableOneRow};
use num_rational::BigRational;
use proptest::prelude::*;

fn maroni(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["maroni"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn csv_rows(text: &str) -> Vec<ClassRow> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().map(Result::unwrap).collect()
}

fn exact(s: &str) -> BigRational {
    s.parse().unwrap_or_else(|e| panic!("{s:?} is not an exact rational: {e:?}"))
}

#[test]
fn golden_degree_three_genus_two() {
    let (code, out, _) = maroni(&["classes", "--d", "3", "--g", "2", "--variant", "st", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "j,mu,n,m,r,c,coefficient,variant,provenance");
    assert!(lines.contains(&"4,(1|1|1),3,1,0,0,1/7,st,-"), "{out}");
}

#[test]
fn binary_reports_usage_errors_with_code_two() {
    let bin = env!("CARGO_BIN_EXE_maroni");
    let output = Command::new(bin).args(["classes", "--d", "3", "--g", "3"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("g=(d-1)k"));

    let output = Command::new(bin).args(["table2", "--g", "5"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));

    let output = Command::new(bin).args(["table1", "--format", "csv"]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn min_never_exceeds_standard() {
    for (d, g) in [(3, 4), (4, 6), (5, 8)] {
        let (g, d) = (g.to_string(), d.to_string());
        let (_, st, _) = maroni(&["classes", "--d", &d, "--g", &g, "--variant", "st", "--format", "csv"]);
        let (_, min, _) = maroni(&["classes", "--d", &d, "--g", &g, "--variant", "min", "--format", "csv"]);
        let (st, min) = (csv_rows(&st), csv_rows(&min));
        assert_eq!(st.len(), min.len());
        for (a, b) in st.iter().zip(&min) {
            assert_eq!((a.j, &a.mu), (b.j, &b.mu));
            assert!(exact(&b.coefficient) <= exact(&a.coefficient), "{a:?} {b:?}");
        }
    }
}

#[test]
fn csv_and_json_carry_the_same_exact_values() {
    let (_, csv_text, _) = maroni(&["classes", "--d", "4", "--g", "6", "--variant", "corr2", "--format", "csv"]);
    let (_, json_text, _) = maroni(&["classes", "--d", "4", "--g", "6", "--variant", "corr2", "--format", "json"]);
    let from_csv = csv_rows(&csv_text);
    let from_json: Vec<ClassRow> = serde_json::from_str(&json_text).unwrap();
    assert_eq!(from_csv, from_json);
    assert!(!from_csv.is_empty());
    for row in &from_csv {
        assert!(row.mu.split(['(', '|', ')']).any(|p| p == "1"), "{row:?}");
        assert_eq!(row.provenance, "corr2-conditional");
        exact(&row.coefficient);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["classes", "--d", "5", "--g", "8", "--variant", "min", "--format", "json"][..],
        &["table2", "--g", "8", "--format", "csv"][..],
        &["verify", "--suite", "tables", "--max-d", "4", "--max-g", "6"][..],
    ] {
        assert_eq!(maroni(args), maroni(args));
    }
}

#[test]
fn table_one_has_fourteen_passing_rows() {
    let (code, out, _) = maroni(&["table1", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<TableOneRow> = csv::Reader::from_reader(out.as_bytes()).deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r.status == "PASS" && r.sigma == r.reference));
}

#[test]
fn table_two_passes_or_skips() {
    let (code, out, _) = maroni(&["table2", "--g", "10", "--format", "csv"]);
    assert_eq!(code, 0);
    let statuses: Vec<&str> = out.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(statuses.iter().filter(|s| **s == "SKIP").count(), 3);
    assert!(statuses.iter().all(|s| *s == "PASS" || *s == "SKIP"));
}

#[test]
fn verify_suites_pass_on_a_small_range() {
    let (code, out, _) = maroni(&["verify", "--suite", "all", "--max-d", "4", "--max-g", "6", "--tie-exhaustive"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("9 checks, 0 failed\n"), "{out}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn every_type_appears_once(d in 3i64..=6, k in 1i64..=3) {
        let g = ((d - 1) * k).to_string();
        let (code, out, _) = maroni(&["classes", "--d", &d.to_string(), "--g", &g, "--format", "csv"]);
        prop_assert_eq!(code, 0);
        let rows = csv_rows(&out);
        let b = 2 * (d - 1) * k - 2 + 2 * d;
        let mut keys: Vec<(i64, String)> = rows.iter().map(|r| (r.j, r.mu.clone())).collect();
        keys.dedup();
        prop_assert_eq!(keys.len(), rows.len());
        prop_assert!(rows.iter().all(|r| 2 <= r.j && r.j <= b / 2));
    }
}
