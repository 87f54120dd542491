use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fixfree(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fixfree"));
    cmd.args(args).env_remove("FIXFREE_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("FIXFREE_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn limit_encloses_the_gl_constant() {
    let v = json(&fixfree(&["limit", "--family", "gl", "--q", "2", "--t", "1"], None));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["toolkit"]["name"], "fixfree");
    assert_eq!(v["config"]["family"], "gl");
    let row = &v["report"]["rows"][0];
    let (lo, hi) = (row[5].as_f64().unwrap(), row[6].as_f64().unwrap());
    assert!(lo <= hi && hi - lo <= 1e-9);
    assert!((lo - 0.2887881).abs() < 1e-7 && (hi - 0.2887881).abs() < 1e-7);
    // exact endpoints travel as p/q strings
    assert!(row[3].as_str().unwrap().contains('/'));
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(code(&fixfree(&["limit", "--family", "sp-odd", "--q", "2", "--t", "1"], None)), 2);
    assert_eq!(code(&fixfree(&["limit", "--family", "gl", "--q", "6", "--t", "0"], None)), 2);
    assert_eq!(code(&fixfree(&["enumerate", "--family", "xyz", "--n", "2", "--q", "2"], None)), 2);
    assert_eq!(code(&fixfree(&["enumerate", "--family", "sp", "--n", "3", "--q", "2"], None)), 2);
    let mc = ["proportion", "--family", "gl", "--n", "4", "--q", "2", "--t", "1", "--method", "montecarlo"];
    assert_eq!(code(&fixfree(&mc, None)), 2, "Monte Carlo without a seed");
    assert_eq!(code(&fixfree(&["weyl", "--m", "3"], None)), 2, "weyl without a seed");
}

#[test]
fn cap_exits_3() {
    let o = fixfree(&["enumerate", "--family", "gl", "--n", "3", "--q", "3", "--cap", "100"], None);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn failed_verification_exits_1() {
    // Sp_4(2) is not transitive on all 2-spaces, so the precondition fails
    let args = ["verify", "--suite", "expectation", "--family", "sp", "--n", "4", "--q", "2", "--action", "space:2"];
    let o = fixfree(&args, None);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["passed"], false);
    assert!(v["report"]["summary"]["failures"].as_u64().unwrap() > 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("failing cases"));
}

#[test]
fn inverse_transpose_identity_passes() {
    let v = json(&fixfree(&["verify", "--suite", "inverse-transpose", "--n", "4", "--q", "2", "--t", "1"], None));
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["report"]["summary"]["lhs"], v["report"]["summary"]["rhs"]);
}

#[test]
fn enumerate_reports_the_group_order() {
    let v = json(&fixfree(&["enumerate", "--family", "sp", "--n", "4", "--q", "2"], None));
    assert_eq!(v["report"]["summary"]["elements"], 720);
    assert_eq!(v["report"]["summary"]["formula_order"], 720);
}

fn rational(cell: &str) -> f64 {
    let (p, q) = cell.split_once('/').expect("p/q");
    p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap()
}

fn limit_row(args: &[&str]) -> (f64, f64) {
    let v = json(&fixfree(args, None));
    let row = &v["report"]["rows"][0];
    (row[5].as_f64().unwrap(), row[6].as_f64().unwrap())
}

#[test]
fn limit_at_coarse_tolerance_brackets_the_constant() {
    let (lo, hi) = limit_row(&["limit", "--family", "gl", "--q", "2", "--t", "1", "--tol", "1e-6"]);
    // the quoted constant has seven digits; the enclosure is far narrower
    let round7 = |x: f64| (x * 1e7).round() / 1e7;
    assert_eq!((round7(lo), round7(hi)), (0.2887881, 0.2887881), "[{lo}, {hi}]");
    assert!(lo <= hi && hi - lo <= 1e-6);
}

#[test]
fn orthogonal_limit_is_half_the_symplectic_one() {
    let (olo, ohi) = limit_row(&["limit", "--family", "o-half", "--q", "3", "--t", "1"]);
    let (slo, shi) = limit_row(&["limit", "--family", "sp-odd", "--q", "3", "--t", "1"]);
    assert!((olo - slo / 2.0).abs() < 1e-12 && (ohi - shi / 2.0).abs() < 1e-12);
}

#[test]
fn series_csv_lists_exact_coefficients() {
    let o = fixfree(&["series", "--family", "gl", "--q", "2", "--t", "1", "--order", "40"], None);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["n", "coefficient"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 40);
    assert_eq!(&rows[3][1], "13/45");
    let (lo, hi) = limit_row(&["limit", "--family", "gl", "--q", "2", "--t", "1"]);
    let last = rational(&rows[39][1]);
    assert!(last >= lo - 1e-6 && last <= hi + 1e-6, "{last} vs [{lo}, {hi}]");
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let mc = ["proportion", "--family", "gl", "--n", "5", "--q", "3", "--t", "1", "--method", "montecarlo", "--trials", "3000", "--seed", "9"];
    assert_eq!(fixfree(&mc, None).stdout, fixfree(&mc, None).stdout);
    let tau = |threads: &str| {
        fixfree(&["proportion", "--family", "gl", "--n", "3", "--q", "3", "--t", "1", "--coset", "tau", "--threads", threads], None)
    };
    let one = tau("1");
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, tau("4").stdout);
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let args = ["weyl", "--m", "2,3", "--trials", "2000", "--seed", "4"];
    let stdout = fixfree(&args, None).stdout;
    let mut with_output = args.to_vec();
    with_output.extend(["--output", path.to_str().unwrap()]);
    let o = fixfree(&with_output, None);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), stdout);
}

#[test]
fn cache_round_trip_and_corrupt_file_rebuild() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["enumerate", "--family", "o+", "--n", "4", "--q", "3", "--t", "1"];
    let fresh = fixfree(&args, None).stdout;
    let first = fixfree(&args, Some(dir.path()));
    assert_eq!(code(&first), 0);
    let file = dir.path().join("o+_4_3.grp");
    assert!(file.exists());
    assert_eq!(first.stdout, fresh);
    assert_eq!(fixfree(&args, Some(dir.path())).stdout, fresh);
    fs::write(&file, b"not a group table").unwrap();
    assert_eq!(fixfree(&args, Some(dir.path())).stdout, fresh);
    assert!(fs::read(&file).unwrap().len() > 100, "rebuilt table written back");
}

#[test]
fn presets_drive_proportion() {
    let v = json(&fixfree(&["proportion", "--preset", "sp-q2", "--n", "4"], None));
    let row = &v["report"]["rows"][0];
    assert_eq!(row[0], "sp");
    assert_eq!(row[3], 2);
    assert_eq!(row[6], "1/5");
    // the dimension-free t of a preset can be overridden
    let v = json(&fixfree(&["proportion", "--preset", "sp-q2", "--n", "4", "--t", "1"], None));
    assert_eq!(v["report"]["rows"][0][6], "19/45");
    assert_eq!(code(&fixfree(&["proportion", "--preset", "nope", "--n", "4"], None)), 2);
}

#[test]
fn methods_agree_through_the_cli() {
    let run = |method: &str| {
        let v = json(&fixfree(&["proportion", "--family", "gl", "--n", "3", "--q", "3", "--t", "1", "--coset", "1", "--method", method], None));
        v["report"]["rows"][0][6].clone()
    };
    assert_eq!(run("enumeration"), run("series"));
}

#[test]
fn probe_and_weyl_report_passing_checks() {
    let v = json(&fixfree(&["probe", "--q", "5"], None));
    assert_eq!(v["report"]["summary"]["order"], 60);
    assert_eq!(v["report"]["passed"], true);
    let v = json(&fixfree(&["weyl", "--m", "2,4", "--trials", "20000", "--seed", "1"], None));
    assert_eq!(v["report"]["rows"][0][1], "3/4");
    assert_eq!(v["report"]["passed"], true);
}
