use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_pgblock");

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(out: &Path, args: &[&str]) -> i32 {
    let status = Command::new(BIN).args(args).arg("--out").arg(out).output().expect("spawn pgblock");
    status.status.code().expect("exit code")
}

/// Output files of a run, excluding the manifest (it records wall time).
fn outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn check_golden(name: &str, dir: &Path) {
    let golden = golden_dir().join(name);
    if std::env::var_os("PGBLOCK_BLESS").is_some() {
        fs::create_dir_all(&golden).unwrap();
        for (file, bytes) in outputs(dir) {
            fs::write(golden.join(file), bytes).unwrap();
        }
    }
    assert_eq!(outputs(dir), outputs(&golden), "{name} differs from tests/golden/{name}");
}

#[test]
fn build_line_golden() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run(tmp.path(), &["build", "line", "--p", "7", "--n", "2"]), 0);
    check_golden("build_line_pg2_7", tmp.path());
    let text = fs::read_to_string(tmp.path().join("points.pg")).unwrap();
    assert_eq!(text.lines().count(), 1 + 8);
    let report: serde_json::Value = serde_json::from_slice(&fs::read(tmp.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["is_blocking"], true);
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(tmp.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "build");
    assert_eq!(manifest["exit_code"], 0);
}

#[test]
fn verify_baer_golden() {
    let tmp = tempfile::tempdir().unwrap();
    let built = tmp.path().join("built");
    assert_eq!(run(&built, &["build", "baer-subplane", "--p", "3", "--t", "2"]), 0);
    let verified = tmp.path().join("verified");
    assert_eq!(run(&verified, &["verify", built.join("points.pg").to_str().unwrap()]), 0);
    check_golden("verify_baer_pg2_9", &verified);
    assert!(verified.join("certificate.json").exists());
}

#[test]
fn search_golden() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run(tmp.path(), &["search", "--p", "3"]), 0);
    check_golden("search_pg2_3", tmp.path());
}

#[test]
fn repeated_runs_are_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let built = tmp.path().join("built");
    assert_eq!(run(&built, &["build", "baer-subplane", "--p", "5", "--t", "2", "--n", "3"]), 0);
    let input = built.join("points.pg");
    let mut runs = Vec::new();
    for (i, threads) in ["1", "3", "1"].iter().enumerate() {
        let out = tmp.path().join(format!("run{i}"));
        assert_eq!(run(&out, &["verify", input.to_str().unwrap(), "--threads", threads, "--seed", "7"]), 0);
        runs.push(outputs(&out));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn line_minus_a_point_fails() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run(tmp.path(), &["build", "line", "--p", "7", "--t", "2"]), 0);
    let text = fs::read_to_string(tmp.path().join("points.pg")).unwrap();
    let cut: Vec<&str> = text.lines().enumerate().filter(|&(i, _)| i != 5).map(|(_, l)| l).collect();
    let input = tmp.path().join("cut.pg");
    fs::write(&input, cut.join("\n")).unwrap();
    let out = tmp.path().join("v");
    assert_eq!(run(&out, &["verify", input.to_str().unwrap()]), 1);
    let suite: serde_json::Value = serde_json::from_slice(&fs::read(out.join("suite.json")).unwrap()).unwrap();
    let blocking = suite.as_array().unwrap().iter().find(|e| e["lemma"] == "blocking").unwrap();
    assert_eq!(blocking["status"], "FAIL");
    assert!(!blocking["anchor_quote"].as_str().unwrap().is_empty());
}

#[test]
fn error_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path();
    assert_eq!(run(&p.join("a"), &["build", "line", "--p", "6"]), 2);
    assert_eq!(run(&p.join("b"), &["build", "baer-subplane", "--p", "7", "--t", "3"]), 2);
    assert_eq!(run(&p.join("c"), &["build", "line", "--p", "5", "--t", "2", "--modulus", "1,0,1"]), 2);
    assert_eq!(run(&p.join("d"), &["verify", p.join("missing.pg").to_str().unwrap()]), 2);
    fs::write(p.join("bad.pg"), "PG 2 7 1 0 1\n1 2\n").unwrap();
    assert_eq!(run(&p.join("e"), &["verify", p.join("bad.pg").to_str().unwrap()]), 2);
    fs::write(p.join("ok.pg"), "PG 2 7 1 0 1\n1 0 0\n").unwrap();
    assert_eq!(run(&p.join("f"), &["verify", p.join("ok.pg").to_str().unwrap(), "--checks", "nonsense"]), 2);
    assert_eq!(run(&p.join("g"), &["search", "--p", "2", "--t", "4"]), 3);
    assert!(p.join("g/manifest.json").exists());
}

#[test]
fn linear_set_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path();
    fs::write(p.join("U.txt"), "# generators over GF(49)\n1 3 0\n7 1 0\n0 0 1\n").unwrap();
    let a = p.join("a");
    let args = ["build", "linear-set", "from-vectors", "--p", "7", "--t", "2", "--e", "1", "--vectors"];
    assert_eq!(run(&a, &[&args[..], &[p.join("U.txt").to_str().unwrap()]].concat()), 0);
    let b = p.join("b");
    let red = a.join("subspace.red");
    let args = ["build", "linear-set", "from-subspace", "--p", "7", "--t", "2", "--e", "1", "--subspace"];
    assert_eq!(run(&b, &[&args[..], &[red.to_str().unwrap()]].concat()), 0);
    assert_eq!(fs::read(a.join("points.pg")).unwrap(), fs::read(b.join("points.pg")).unwrap());
    let v = p.join("v");
    let input = a.join("points.pg");
    let code = run(&v, &["verify", input.to_str().unwrap(), "--subspace", red.to_str().unwrap(), "--checks", "certify"]);
    assert_eq!(code, 0);
    assert!(v.join("certificate.json").exists());
}

#[test]
fn projection_errors_and_success() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path();
    assert_eq!(run(&p.join("b"), &["build", "baer-subplane", "--p", "3", "--t", "2", "--n", "3"]), 0);
    let input = p.join("b/points.pg");
    let input = input.to_str().unwrap();
    assert_eq!(run(&p.join("ok"), &["project", input]), 0);
    let after: serde_json::Value = serde_json::from_slice(&fs::read(p.join("ok/after.json")).unwrap()).unwrap();
    assert_eq!(after["n"], 2);
    assert_eq!(after["is_minimal"], true);
    // (1,0,0,1) is the image of (1,0,0) in the subplane
    assert_eq!(run(&p.join("in_b"), &["project", input, "--center", "1,0,0,1"]), 2);
    assert_eq!(run(&p.join("in_h"), &["project", input, "--center", "0,0,0,1", "--hyperplane", "1,0,0,0"]), 2);
}
