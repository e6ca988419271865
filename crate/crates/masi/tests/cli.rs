use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use masi::files::{ObservableFile, StateFile};
use masi_core::ComplexMatrix;
use tempfile::TempDir;

fn masi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_masi")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    let text = stdout(&masi(&all));
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn observable(dir: &TempDir, m: &ComplexMatrix) -> PathBuf {
    let path = dir.path().join("obs.json");
    let mut buf = Vec::new();
    ObservableFile::from_matrix(m, None).write(&mut buf).unwrap();
    std::fs::write(&path, buf).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Splits a single CSV row.
fn fields(row: &str) -> Vec<String> {
    row.trim_end().split(',').map(str::to_string).collect()
}

fn value(row: &str, k: usize) -> f64 {
    fields(row)[k].parse().unwrap()
}

#[test]
fn skew_on_maximally_mixed_is_zero() {
    let dir = TempDir::new().unwrap();
    let state = gen(&dir, "mm.json", &["maximally-mixed", "--label", "mm"]);
    let obs = observable(&dir, &ComplexMatrix::pauli_x());
    let out = stdout(&masi(&["skew", s(&state), "--f", "wy", "--observable", s(&obs)]));
    let f = fields(&out);
    assert_eq!((f[0].as_str(), f[1].as_str()), ("mm", "wy"));
    assert!(value(&out, 2).abs() < 1e-14, "{out}");
}

#[test]
fn skew_on_pure_state_is_f_independent() {
    let dir = TempDir::new().unwrap();
    let state = gen(&dir, "pure.json", &["pure", "--seed", "3"]);
    let obs = observable(&dir, &ComplexMatrix::pauli_z());
    let run = |f: &str| {
        value(
            &stdout(&masi(&["skew", s(&state), "--f", f, "--observable", s(&obs)])),
            2,
        )
    };
    let (a, b, c) = (run("sld"), run("wy"), run("wyd:0.2"));
    assert!(a > 1e-3);
    assert!((a - b).abs() < 1e-10 && (a - c).abs() < 1e-10, "{a} {b} {c}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dims\": [2, 2], \"rho\": ").unwrap();
    let out = masi(&["lqu", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json"));
    assert_eq!(masi(&["lqu", "/nonexistent/state.json"]).status.code(), Some(2));
    assert_eq!(masi(&["frobnicate"]).status.code(), Some(2));

    let mut file = StateFile::from_state(&masi_core::BipartiteState::bell(), None);
    file.rho[0][1] = [0.7, 0.0];
    let asym = dir.path().join("asym.json");
    let mut buf = Vec::new();
    file.write(&mut buf).unwrap();
    std::fs::write(&asym, buf).unwrap();
    let out = masi(&["ip", s(&asym)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Hermitian"));
}

#[test]
fn bell_lqu_and_ip_are_one() {
    let dir = TempDir::new().unwrap();
    let state = gen(&dir, "bell.json", &["bell"]);
    for cmd in ["lqu", "ip"] {
        let out = stdout(&masi(&[cmd, s(&state), "--spectrum", "1,-1"]));
        assert!((value(&out, 2) - 1.0).abs() < 1e-6, "{out}");
        assert_eq!(fields(&out)[3], "true");
    }
}

#[test]
fn classical_quantum_lqu_vanishes() {
    let dir = TempDir::new().unwrap();
    let state = gen(&dir, "cq.json", &["cq", "--d1", "3", "--seed", "5"]);
    let out = stdout(&masi(&["lqu", s(&state)]));
    assert!(value(&out, 2) < 1e-8, "{out}");
}

#[test]
fn non_regular_function_exits_3() {
    let dir = TempDir::new().unwrap();
    let state = gen(&dir, "r.json", &["random"]);
    let out = masi(&["lqu", s(&state), "--f", "kubo_mori"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn spectrum_mismatch_exits_4() {
    let dir = TempDir::new().unwrap();
    let state = gen(&dir, "r.json", &["random"]);
    assert_eq!(masi(&["lqu", s(&state), "--spectrum", "1,0,-1"]).status.code(), Some(4));
    assert_eq!(masi(&["lqu", s(&state), "--spectrum", "1,oops"]).status.code(), Some(2));
}

#[test]
fn sweep_rows_and_regularity() {
    let dir = TempDir::new().unwrap();
    let pure = gen(&dir, "pure.json", &["pure", "--seed", "9"]);
    let out = stdout(&masi(&[
        "sweep",
        s(&pure),
        "--family",
        "wyd",
        "--grid",
        "4",
        "--starts",
        "8",
    ]));
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 4);
    let params: Vec<f64> = rows.iter().map(|r| value(r, 2)).collect();
    assert!(params.windows(2).all(|w| w[0] < w[1]));
    let first = value(rows[0], 3);
    assert!(rows.iter().all(|r| (value(r, 3) - first).abs() < 1e-8), "{out}");

    let cq = gen(&dir, "cq.json", &["cq", "--seed", "2"]);
    let out = stdout(&masi(&[
        "sweep",
        s(&cq),
        "--family",
        "bridge",
        "--grid",
        "2",
        "--range",
        "0,0",
    ]));
    assert!(out.lines().all(|r| value(r, 3) < 1e-8), "{out}");

    let out = masi(&["sweep", s(&cq), "--family", "variant_bridge", "--grid", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let out = stdout(&masi(&[
        "sweep",
        s(&cq),
        "--family",
        "variant_bridge",
        "--grid",
        "3",
        "--range",
        "0,0.9",
    ]));
    assert_eq!(out.lines().count(), 3);

    assert_eq!(
        masi(&["sweep", s(&cq), "--family", "wyd", "--grid", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let state = gen(&dir, "r.json", &["random", "--d1", "3", "--seed", "4"]);
    let args = ["lqu", s(&state), "--f", "wyd:0.3", "--seed", "17"];
    assert_eq!(stdout(&masi(&args)), stdout(&masi(&args)));
    assert_eq!(
        stdout(&masi(&["gen", "random", "--seed", "4"])),
        stdout(&masi(&["gen", "random", "--seed", "4"]))
    );
}

#[test]
fn generated_files_round_trip() {
    let dir = TempDir::new().unwrap();
    for kind in ["random", "pure", "cq", "product", "maximally-mixed"] {
        let path = gen(&dir, "g.json", &[kind, "--d1", "2", "--d2", "3", "--seed", "1"]);
        let file = StateFile::read(&path).unwrap();
        assert_eq!(file.dims, [2, 3]);
        let state = file.to_state(&path).unwrap();
        assert_eq!(
            StateFile::from_state(&state, None).to_json(),
            std::fs::read_to_string(&path).unwrap()
        );
    }
    assert_eq!(masi(&["gen", "bell", "--d1", "3"]).status.code(), Some(2));
}
