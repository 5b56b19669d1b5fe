use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const PLUS: &str = r#"{"dim": 2, "rho": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]}"#;
const ZERO: &str = r#"{"dim": 2, "rho": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}"#;
const Z: &str = r#"{"dim": 2, "columns": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}"#;
const X: &str = r#"{"dim": 2, "columns": [[[0.7071067811865476, 0], [0.7071067811865476, 0]],
                                          [[0.7071067811865476, 0], [-0.7071067811865476, 0]]]}"#;

struct Fixtures {
    dir: TempDir,
}

impl Fixtures {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        for (name, body) in [("plus.json", PLUS), ("zero.json", ZERO), ("Z.json", Z), ("X.json", X)] {
            fs::write(dir.path().join(name), body).unwrap();
        }
        Self { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, body).unwrap();
        p
    }
}

fn udr(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udr")).args(args).current_dir(cwd).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Column `name` of every data row.
fn column(text: &str, name: &str) -> Vec<String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let k = reader.headers().unwrap().iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    reader.records().map(|r| r.unwrap()[k].to_string()).collect()
}

fn assert_input_error(o: &Output, mentions: &str) {
    assert_eq!(o.status.code(), Some(2), "stderr: {}", stderr(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "diagnostic must be one line: {err:?}");
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains(mentions), "{err} should mention {mentions}");
}

#[test]
fn verify_fixture_from_files() {
    let f = Fixtures::new();
    let o = udr(
        &[
            "verify",
            "--relation",
            "U_tr",
            "--dim",
            "2",
            "--state",
            "plus.json",
            "--basis-a",
            "Z.json",
            "--basis-b",
            "X.json",
        ],
        f.dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let lhs: f64 = column(&out, "lhs")[0].parse().unwrap();
    let rhs: f64 = column(&out, "rhs")[0].parse().unwrap();
    assert!((lhs - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12 && (rhs - 0.5).abs() < 1e-12);
    assert_eq!(column(&out, "direction"), vec!["A->B", "B->A"]);
    for col in ["seed", "samples", "variant", "log_base"] {
        assert_eq!(column(&out, col).len(), 2);
    }
}

#[test]
fn verify_reports_violation_of_printed_form() {
    let f = Fixtures::new();
    let o = udr(
        &["verify", "--relation", "U_ts", "--variant", "printed", "--alpha", "0.5", "--state", "plus.json"],
        f.dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let margin: f64 = column(&stdout(&o), "margin")[0].parse().unwrap();
    assert!((margin + 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn search_finds_printed_counterexample() {
    let f = Fixtures::new();
    let args = [
        "search",
        "--relation",
        "U_ts",
        "--variant",
        "printed",
        "--alpha",
        "0.5",
        "--dim",
        "2",
        "--samples",
        "10000",
        "--seed",
        "7",
    ];
    let o = udr(&args, f.dir.path());
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains(",true,"));
    // the emitted instance replays through verify
    let json = udr(&[&args[..], &["--format", "json"]].concat(), f.dir.path());
    let rows: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let row = &rows[0];
    let state = f.write("cx_state.json", row["rho"].as_str().unwrap());
    let a = f.write("cx_a.json", row["basis_a"].as_str().unwrap());
    let b = f.write("cx_b.json", row["basis_b"].as_str().unwrap());
    let replay = udr(
        &[
            "verify",
            "--relation",
            "U_ts",
            "--variant",
            "printed",
            "--alpha",
            "0.5",
            "--state",
            state.to_str().unwrap(),
            "--basis-a",
            a.to_str().unwrap(),
            "--basis-b",
            b.to_str().unwrap(),
        ],
        f.dir.path(),
    );
    assert_eq!(replay.status.code(), Some(1));
}

#[test]
fn search_canonical_form_is_clean() {
    let f = Fixtures::new();
    let o = udr(&["search", "--relation", "U_ts", "--alpha", "0.5", "--samples", "5000"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&stdout(&o), "found"), vec!["false"]);
}

#[test]
fn input_errors_exit_two_with_one_line() {
    let f = Fixtures::new();
    let dir = f.dir.path();
    assert_input_error(&udr(&["verify", "--relation", "U_xx"], dir), "--relation");
    assert_input_error(&udr(&["verify", "--relation", "U_rd", "--alpha", "0.2"], dir), "alpha");
    assert_input_error(&udr(&["verify", "--relation", "U_tr", "--state", "missing.json"], dir), "--state");
    assert_input_error(&udr(&["verify", "--relation", "U_tr", "--dim", "3", "--state", "plus.json"], dir), "dim");
    f.write("bad.json", r#"{"dim": 2, "rho": [[[1, 0]], [[0, 0], [0, 0]]]}"#);
    assert_input_error(&udr(&["verify", "--relation", "U_tr", "--state", "bad.json"], dir), "rho[0]");
    f.write("broken.json", "{\"dim\": 2,\n \"rho\": oops}");
    assert_input_error(&udr(&["verify", "--relation", "U_tr", "--state", "broken.json"], dir), "line 2");
    assert_input_error(&udr(&["volume", "--relation", "U_tr", "--dim", "5", "--samples", "1000"], dir), "dimension 5");
    assert_input_error(&udr(&["region", "--relation", "U_tr", "--c00", "1.5"], dir), "--c00");
    assert_input_error(&udr(&["volume", "--relation", "U_tr", "--log-base", "10"], dir), "--log-base");
}

#[test]
fn runs_are_byte_identical() {
    let f = Fixtures::new();
    let args = ["volume", "--relation", "U_rd", "--alpha", "0.5", "--dim", "3", "--samples", "20000", "--seed", "3"];
    let (a, b) = (udr(&args, f.dir.path()), udr(&args, f.dir.path()));
    assert_eq!(a.stdout, b.stdout);
    let other = udr(&[&args[..9], &["4"]].concat(), f.dir.path());
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn volume_row_schema() {
    let f = Fixtures::new();
    let o = udr(&["volume", "--relation", "MU", "--samples", "1000", "--seed", "5"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("relation,variant,alpha,dim,samples,seed,volume,std_error,log_base\n"));
    assert!(out.contains("EUR_MU,canonical,1.0,2,1000,5,"));
}

#[test]
fn table2_emits_all_rows_and_both_ts_variants() {
    let f = Fixtures::new();
    let out = stdout(&udr(&["table2", "--dim", "2", "--samples", "20000"], f.dir.path()));
    assert_eq!(column(&out, "relation").len(), 8);
    assert_eq!(column(&out, "variant").iter().filter(|v| *v == "printed").count(), 1);
    let report = stdout(&udr(&["table2", "--dim", "2", "--samples", "20000", "--report"], f.dir.path()));
    assert_eq!(column(&report, "reference")[0], "0.93");
}

#[test]
fn region_grid_and_output_file() {
    let f = Fixtures::new();
    let target = f.path("region.csv");
    let o = udr(
        &["region", "--relation", "MU", "--c00", "1", "--resolution", "11", "--output", target.to_str().unwrap()],
        f.dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = fs::read_to_string(target).unwrap();
    assert!(body.starts_with("relation,c00,p0,q0,admissible"));
    let admissible = column(&body, "admissible");
    assert_eq!(admissible.len(), 121);
    assert!(admissible.iter().all(|a| a == "true"));
}

#[test]
fn json_mirrors_csv() {
    let f = Fixtures::new();
    let args = ["coherence", "--state", "plus.json"];
    let csv = stdout(&udr(&args, f.dir.path()));
    let json: serde_json::Value =
        serde_json::from_slice(&udr(&[&args[..], &["--format", "json"]].concat(), f.dir.path()).stdout).unwrap();
    let row = &json[0];
    for (k, v) in csv.lines().next().unwrap().split(',').zip(csv.lines().nth(1).unwrap().split(',')) {
        let j = &row[k];
        let rendered = match j {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Null => String::new(),
            other => other.to_string(),
        };
        if let (Ok(a), Ok(b)) = (v.parse::<f64>(), rendered.parse::<f64>()) {
            assert_eq!(a, b, "{k}");
        } else {
            assert_eq!(v, rendered, "{k}");
        }
    }
}

#[test]
fn coherence_from_state_and_shots() {
    let f = Fixtures::new();
    let exact = stdout(&udr(&["coherence", "--state", "plus.json"], f.dir.path()));
    for col in ["upper", "exact", "lower"] {
        let v: f64 = column(&exact, col)[0].parse().unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }
    let shots = stdout(&udr(&["coherence", "--state", "plus.json", "--shots", "100000", "--seed", "3"], f.dir.path()));
    let lower: f64 = column(&shots, "lower")[0].parse().unwrap();
    assert!((lower - 1.0).abs() < 0.05);
    assert_eq!(column(&shots, "source"), vec!["shots"]);
}

#[test]
fn log_base_switches_units() {
    let f = Fixtures::new();
    let bits = stdout(&udr(&["coherence", "--state", "plus.json"], f.dir.path()));
    let nats = stdout(&udr(&["coherence", "--state", "plus.json", "--log-base", "e"], f.dir.path()));
    let b: f64 = column(&bits, "upper")[0].parse().unwrap();
    let n: f64 = column(&nats, "upper")[0].parse().unwrap();
    assert!((n - b * std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(column(&nats, "base"), vec!["e"]);
}

#[test]
fn shots_counts() {
    let f = Fixtures::new();
    let direct =
        stdout(&udr(&["shots", "--state", "zero.json", "--basis-b", "Z.json", "--shots", "1000"], f.dir.path()));
    assert_eq!(column(&direct, "count"), vec!["1000", "0"]);
    let seq = stdout(&udr(
        &["shots", "--state", "plus.json", "--basis-a", "Z.json", "--basis-b", "X.json", "--shots", "500"],
        f.dir.path(),
    ));
    let counts: Vec<u64> = column(&seq, "count").iter().map(|c| c.parse().unwrap()).collect();
    assert_eq!(counts.len(), 4);
    assert_eq!(counts.iter().sum::<u64>(), 500);
}

#[test]
fn dpi_reports_no_violations() {
    let f = Fixtures::new();
    let o = udr(&["dpi", "--dim", "3", "--samples", "2000"], f.dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(column(&out, "divergence").len(), 6);
    assert!(column(&out, "violations").iter().all(|v| v == "0"));
}
