use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn qjw(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qjw"))
        .args(args)
        .current_dir(dir)
        .env_remove("QJW_TOL")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn quaternionic_times_complex() {
    let dir = tempfile::tempdir().unwrap();
    let out = qjw(&["jordan", "tensor", "--a", "quat:2", "--b", "complex:2"], dir.path());
    assert_eq!(code(&out), 0);
    let r = &json_of(&out)["results"][0];
    assert_eq!(r["computed"], "ComplexHerm(8)");
    assert_eq!(r["dim"], 64);
    assert_eq!(r["status"], "match");
}

#[test]
fn spin_four_is_not_reversible() {
    let dir = tempfile::tempdir().unwrap();
    let out = qjw(&["jordan", "reversible", "--spin", "4", "--maxlen", "4"], dir.path());
    assert_eq!(code(&out), 0);
    let r = &json_of(&out)["results"][0];
    assert_eq!(r["reversible"], false);
    assert_eq!(r["witness"], "t1 t2 t3 t4");
    let out = qjw(&["jordan", "reversible", "--spin", "5"], dir.path());
    assert_eq!(json_of(&out)["results"][0]["reversible"], true);
}

#[test]
fn qubit_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let out = qjw(&["jordan", "envelope", "--a", "complex:2"], dir.path());
    assert_eq!(code(&out), 0);
    let r = &json_of(&out)["results"][0];
    assert_eq!(r["envelope"], "M2(C) ⊕ M2(C)");
    assert_eq!(r["verified_complex_dim"], 8);
}

#[test]
fn witness_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = qjw(&["entangle", "witness", "--state", "werner", "--p", "0.8", "--d", "2"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["results"][0]["verdicts"]["lin_below"], true);

    let out = qjw(&["entangle", "witness", "--state", "maxmixed", "--d", "3"], dir.path());
    let v = &json_of(&out)["results"][0]["verdicts"];
    for k in ["lin_below", "lin_above", "quad_below", "quad_above"] {
        assert_eq!(v[k], false, "{k}");
    }

    let out = qjw(&["entangle", "witness", "--state", "werner", "--d", "2"], dir.path());
    assert_eq!(code(&out), 2, "missing --p is a usage error");
}

#[test]
fn build_verify_and_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let out = qjw(
        &["design", "build", "--kind", "sim", "--d", "3", "--kappa", "0.5", "--seed", "7", "-o", "sim.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    assert_eq!(code(&qjw(&["design", "verify", "sim.json"], dir.path())), 0);

    let text = std::fs::read_to_string(dir.path().join("sim.json")).unwrap();
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["meta"]["seed"], 7);
    let expected = &report["results"][0]["expected"];
    assert!((expected["ks"].as_f64().unwrap() - 0.125).abs() < 1e-12);

    // bare design file
    let bare = report["results"][0]["design"].clone();
    std::fs::write(dir.path().join("bare.json"), bare.to_string()).unwrap();
    assert_eq!(code(&qjw(&["design", "verify", "bare.json"], dir.path())), 0);

    // shift one diagonal entry so trace and design sums break
    let mut bad = bare.clone();
    let x = bad["ops"][0]["entries"][0][0].as_f64().unwrap();
    bad["ops"][0]["entries"][0][0] = Value::from(x + 0.05);
    std::fs::write(dir.path().join("bad.json"), bad.to_string()).unwrap();
    let out = qjw(&["design", "verify", "bad.json"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("residual"));

    // non-Hermitian element
    let mut skew = bare;
    let y = skew["ops"][1]["entries"][1][1].as_f64().unwrap();
    skew["ops"][1]["entries"][1][1] = Value::from(y + 0.3);
    std::fs::write(dir.path().join("skew.json"), skew.to_string()).unwrap();
    assert_eq!(code(&qjw(&["design", "verify", "skew.json"], dir.path())), 1);

    std::fs::write(dir.path().join("junk.json"), "{\"ops\": 3}").unwrap();
    assert_eq!(code(&qjw(&["design", "verify", "junk.json"], dir.path())), 2);
    assert_eq!(code(&qjw(&["design", "verify", "missing.json"], dir.path())), 3);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["design", "build", "--kind", "mum", "--d", "4", "--seed", "11"];
    let a = qjw(&args, dir.path());
    let b = qjw(&args, dir.path());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = qjw(&["design", "build", "--kind", "mum", "--d", "4", "--seed", "12"], dir.path());
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn concurrence_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    for design in ["sic", "mub", "sim", "mum"] {
        let out = qjw(&["entangle", "table", "--d", "3", "--design", design, "--samples", "20"], dir.path());
        assert_eq!(code(&out), 0, "{design}: {}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        let (comment, body) = text.split_once('\n').unwrap();
        assert!(comment.starts_with('#'));
        let mut rdr = csv::Reader::from_reader(body.as_bytes());
        let header = [
            "state",
            "prob_norm",
            "c_schmidt",
            "c_design",
            "delta",
            "lin_below",
            "lin_above",
            "quad_below",
            "quad_above",
        ];
        assert_eq!(rdr.headers().unwrap(), header.to_vec());
        let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 20);
        for r in rows {
            assert!(r[4].parse::<f64>().unwrap() < 1e-8);
            // a flagged state must be entangled
            let flagged = (5..9).any(|i| r[i].parse::<bool>().unwrap());
            assert!(!flagged || r[2].parse::<f64>().unwrap() > 1e-6);
        }
    }
    // an absurd tolerance is refused, a tiny one makes the check fail
    let out = qjw(&["entangle", "table", "--d", "2", "--tol", "-1"], dir.path());
    assert_eq!(code(&out), 2);
    let out = qjw(&["entangle", "table", "--d", "2", "--samples", "50", "--tol", "1e-300"], dir.path());
    assert_eq!(code(&out), 1);
}

#[test]
fn tensor_table_and_exceptional() {
    let dir = tempfile::tempdir().unwrap();
    let out = qjw(&["jordan", "tensor", "--table", "-o", "table.csv"], dir.path());
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("table.csv")).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "A,B,predicted,computed_dim,computed_rank,status");
    assert_eq!(body.len(), 16);
    assert!(body[1..].iter().all(|l| l.ends_with(",match")));
    assert!(body.contains(&"QuatHerm(2),QuatHerm(2),RealSym(16),136,16,match"));

    let out = qjw(&["jordan", "tensor", "--a", "exceptional", "--b", "real:2"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no composite"));

    assert_eq!(code(&qjw(&["jordan", "tensor", "--a", "nonsense:2", "--b", "real:2"], dir.path())), 2);
    assert_eq!(code(&qjw(&["jordan", "envelope", "--a", "complex:2", "--format", "csv"], dir.path())), 2);
}

#[test]
fn universal_tensor_budget() {
    let dir = tempfile::tempdir().unwrap();
    let out = qjw(&["jordan", "universal", "--a", "complex:2", "--b", "complex:2"], dir.path());
    assert_eq!(code(&out), 0);
    let r = &json_of(&out)["results"][0];
    assert_eq!(r["status"], "computed");
    assert_eq!(r["computed"], "ComplexHerm(4) ⊕ ComplexHerm(4)");

    let out = qjw(&["jordan", "universal", "--a", "quat:2", "--b", "quat:2"], dir.path());
    assert_eq!(json_of(&out)["results"][0]["status"], "skipped");
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qjw"))
        .args(["design", "build", "--kind", "sic", "--d", "2"])
        .current_dir(dir.path())
        .env("QJW_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["meta"]["tolerance"], 1e-7);
}
