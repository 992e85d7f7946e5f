use std::path::Path;
use std::process::{Command, Output};

use modphi_core::combinatorics::rat;
use modphi_core::modphi::sigma2;
use modphi_core::verify::llt_sup_error;
use modphi_core::zeros::m_theta;
use modphi_core::Family;

fn modphi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modphi")).args(args).output().expect("spawn modphi")
}

fn stdout(args: &[&str]) -> String {
    let o = modphi(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

/// Data rows after the `#` header line and the column names.
fn rows(s: &str) -> Vec<Vec<String>> {
    s.lines().skip(2).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(s: &str, name: &str) -> Vec<String> {
    let cols: Vec<&str> = s.lines().nth(1).unwrap().split(',').collect();
    let j = cols.iter().position(|c| *c == name).unwrap();
    rows(s).into_iter().map(|r| r[j].clone()).collect()
}

#[test]
fn table_second_kind() {
    let out = stdout(&["table", "second", "5"]);
    assert!(out.starts_with("# modphi "));
    assert_eq!(out.lines().nth(1), Some("n,k,value"));
    let rs = rows(&out);
    assert_eq!(rs.len(), 15);
    let last: Vec<_> = rs.iter().filter(|r| r[0] == "5").collect();
    assert_eq!(last.first().unwrap().join(","), "5,1,1");
    assert_eq!(last.last().unwrap().join(","), "5,5,1");
    let sum: u64 = last.iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
    assert_eq!(sum, 52);
}

#[test]
fn table_first_kind_and_empty() {
    let out = stdout(&["table", "first", "4"]);
    assert!(out.lines().any(|l| l == "4,2,11"));
    let empty = stdout(&["table", "first", "0"]);
    assert_eq!(empty.lines().count(), 2);
    assert_eq!(empty.lines().nth(1), Some("n,k,value"));
}

#[test]
fn big_entries_are_exact() {
    let out = stdout(&["table", "second", "60"]);
    // S(60, 30) has 60 digits; printed in full
    let r = rows(&out).into_iter().find(|r| r[0] == "60" && r[1] == "30").unwrap();
    assert!(r[2].len() > 50 && r[2].bytes().all(|b| b.is_ascii_digit()));
}

#[test]
fn llt_matches_library() {
    let out = stdout(&["llt", "--family", "1", "--n", "500", "--theta", "1"]);
    let rs = rows(&out);
    assert_eq!(rs.len(), 500);
    let sup = rs
        .iter()
        .map(|r| (r[2].parse::<f64>().unwrap() - r[3].parse::<f64>().unwrap()).abs())
        .fold(0.0, f64::max);
    let lib = llt_sup_error(Family::First, 500, &rat(1, 1)).unwrap() / 500f64.sqrt();
    assert!((sup - lib).abs() <= 1e-15 * lib.max(1.0), "{sup} vs {lib}");
}

#[test]
fn llt_figure_grid_and_strict_support() {
    let out = stdout(&[
        "llt", "--family", "1", "--n", "500", "--theta", "1/100", "--theta", "0.1", "--theta", "3/10", "--theta", "1",
        "--theta", "10",
    ]);
    assert_eq!(rows(&out).len(), 2500);
    let bad = modphi(&["llt", "--family", "3", "--n", "10", "--theta", "1/4"]);
    assert_eq!(bad.status.code(), Some(2));
    let ok = modphi(&["llt", "--family", "3", "--n", "10", "--theta", "1/4", "--relaxed"]);
    assert!(ok.status.success());
}

#[test]
fn zeros_of_the_rising_factorial() {
    let out = stdout(&["zeros", "--family", "1", "--n", "50", "--theta", "1", "--grid", "10"]);
    let zs: Vec<f64> = rows(&out)
        .iter()
        .filter(|r| r[0] == "zero")
        .map(|r| r[1].parse().unwrap())
        .collect();
    assert_eq!(zs.len(), 50);
    for (j, x) in zs.iter().enumerate() {
        assert!((x - j as f64 / 50.0).abs() < 1e-12, "{j}: {x}");
    }
    let density = column(&out, "series").iter().filter(|s| *s == "density").count();
    assert_eq!(density, 10);
}

#[test]
fn allocation_zeros_stay_below_the_edge() {
    let out = stdout(&["zeros", "--family", "3", "--n", "60", "--theta", "2", "--grid", "5"]);
    let top = rows(&out)
        .iter()
        .filter(|r| r[0] == "zero")
        .map(|r| r[1].parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(top <= 1.1 * m_theta(2.0), "{top}");
}

#[test]
fn touchard_zeros_approach_e() {
    let top = |n: &str| {
        let out = stdout(&["zeros", "--family", "2", "--n", n, "--theta", "1", "--grid", "1"]);
        rows(&out)
            .iter()
            .filter(|r| r[0] == "zero")
            .map(|r| r[1].parse::<f64>().unwrap())
            .fold(0.0, f64::max)
    };
    let (a, b) = (top("40"), top("120"));
    let e = std::f64::consts::E;
    assert!(b < e && a < b, "{a} {b}");
}

#[test]
fn musigma_agrees_with_library() {
    let out = stdout(&["musigma", "--family", "2", "--theta", "0.1,0.48273,3"]);
    for (s, th) in column(&out, "sigma2").iter().zip([0.1, 0.48273, 3.0]) {
        assert_eq!(s.parse::<f64>().unwrap(), sigma2(Family::Second, th).unwrap());
    }
}

#[test]
fn rate_and_modphi_commands() {
    let out = stdout(&["rate", "--family", "1", "--theta", "1", "--t", "0.3,0.6931471805599453,0.9"]);
    let r: Vec<f64> = column(&out, "rate").iter().map(|s| s.parse().unwrap()).collect();
    assert!(r[1].abs() < 1e-10 && r[0] > 0.0 && r[2] > 0.0, "{r:?}");

    let out = stdout(&["modphi", "--family", "2", "--n", "50,100", "--theta", "1", "--z", "0.3", "--z", "0.1+0.1i"]);
    let e: Vec<f64> = column(&out, "error").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(e.len(), 4);
    assert!(e[1] < e[0] && e[3] < e[2]);

    let low = modphi(&["modphi", "--family", "2", "--n", "50", "--theta", "1", "--z", "0.3", "--precision", "32"]);
    assert_eq!(low.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for fmt in ["csv", "json"] {
        let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("{fmt}{i}"))).collect();
        for p in &paths {
            let p = p.to_str().unwrap();
            stdout(&["zeros", "--family", "3", "--n", "30", "--theta", "3/2", "--format", fmt, "--out", p]);
        }
        let read = |p: &Path| std::fs::read(p).unwrap();
        assert_eq!(read(&paths[0]), read(&paths[1]));
        assert!(!read(&paths[0]).is_empty());
    }
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("json0")).unwrap()).unwrap();
    assert_eq!(json["config"]["theta"][0], "3/2");
    assert_eq!(json["columns"][0], "series");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(modphi(&["verify", "--suite", "quick"]).status.code(), Some(2));
    assert_eq!(modphi(&["bogus"]).status.code(), Some(2));
    let ok = modphi(&["verify", "--suite", "fast", "--only", "1,11"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["criteria"].as_array().unwrap().len(), 2);
    assert_eq!(report["passed"], true);
    // degenerate at z = 0, see README
    let fail = modphi(&["verify", "--suite", "fast", "--only", "12"]);
    assert_eq!(fail.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&fail.stdout).unwrap();
    assert_eq!(report["criteria"][0]["reports"].as_array().unwrap().len(), 2);
}
