use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use zariski_core::{ExactField, Quadratic};

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .join(name)
}

fn zariski(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zariski"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn with_input(cmd: &str, file: &str, rest: &[&str]) -> Output {
    let path = problem(file);
    let mut args = vec![cmd, "--input", path.to_str().unwrap()];
    args.extend_from_slice(rest);
    zariski(&args)
}

fn write_problem(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("problem.toml");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn decompose_blowup() {
    let out = with_input("decompose", "bl.toml", &["--class", "H+E"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("P = 1*H, N = 1*E\n"));
    assert!(stdout(&out).contains("support = {E}\n"));
}

#[test]
fn green_abelian_is_irrational() {
    let out = with_input("green", "abelian.toml", &[]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("tau = 3 - 1*sqrt(7)\n"));
    assert!(text.contains("rational_PL = false\n"));
}

#[test]
fn reports_are_deterministic() {
    let a = with_input("green", "bl.toml", &["--grid", "0,1/3,1"]);
    let b = with_input("green", "bl.toml", &["--grid", "0,1/3,1"]);
    assert_eq!(a.stdout, b.stdout);
    let a = with_input("flag", "cutkosky.toml", &[]);
    let b = with_input("flag", "cutkosky.toml", &[]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scalars_in_reports_reparse() {
    let out = with_input("green", "abelian.toml", &[]);
    let tau_text = stdout(&out)
        .lines()
        .find_map(|l| l.strip_prefix("tau = "))
        .unwrap()
        .to_string();
    let tau: Quadratic = tau_text.parse().unwrap();
    assert_eq!(tau, Quadratic::from(3) - Quadratic::sqrt_of(7u32));
    // phi(tau ord_E) = tau max(0, 1 - tau)
    let out = with_input("eval", "abelian.toml", &["--divisor", "E", "--t", &tau_text]);
    assert!(out.status.success(), "{}", stderr(&out));
    let value: Quadratic = stdout(&out).trim().parse().unwrap();
    let one = Quadratic::from(1);
    assert_eq!(value, tau.clone() * (one - &tau));
    assert!(!value.is_rational());
}

#[test]
fn family_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("family.csv");
    let out = with_input(
        "family",
        "bl.toml",
        &["--omega", "omega", "--direction", "D", "--csv", csv.to_str().unwrap()],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("breakpoints = 0, 1, 2\n"));
    assert_eq!(
        fs::read_to_string(csv).unwrap(),
        "lambda,E,C,H\n0,0,0,0\n1,0,0,0\n2,1,0,0\n"
    );
}

#[test]
fn green_profile_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("green.csv");
    let out = with_input(
        "green",
        "bl.toml",
        &["--csv", csv.to_str().unwrap(), "--grid", "0, 1/2, 1"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("divisor,t,phi\n"));
    assert!(text.contains("C,1/2,1\n"));
    assert!(text.contains("C,1,0\n"));
    assert!(text.contains("E,1,1\n"));
}

#[test]
fn eval_chamber_instance() {
    for (d, t, want) in [("C", "1", "0"), ("C", "1/2", "1"), ("E", "1", "1"), ("C", "0", "2")] {
        let out = with_input("eval", "bl.toml", &["--divisor", d, "--t", t]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert_eq!(stdout(&out), format!("{want}\n"));
    }
}

#[test]
fn threshold_and_flag_and_curve() {
    let out = with_input("threshold", "abelian.toml", &["--omega", "L", "--direction", "E"]);
    assert!(stdout(&out).contains("lambda_psef = 3 - 1*sqrt(7)\n"));
    let out = with_input("flag", "cutkosky.toml", &[]);
    let text = stdout(&out);
    assert!(text.contains("lambda_nef = 3 - 1*sqrt(7)\n"));
    assert!(text.contains("tau = 1\n"));
    assert!(text.contains("phi(1*ord_Z) = 0\n"));
    assert!(text.contains("phi(1*ord_S) = 3 - 1*sqrt(7)\n"));
    let out = with_input("curve", "curve.toml", &["--grid", "1/4"]);
    let text = stdout(&out);
    assert!(text.contains("A = 1\n"));
    assert!(text.contains("phi(1/4*ord_q) = 1/2\n"));
}

#[test]
fn selftest_passes() {
    let out = zariski(&["selftest"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("selftest passed\n"));
}

#[test]
fn engine_errors_exit_with_one() {
    let out = with_input("decompose", "bl.toml", &["--class=-H"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("E301: "));
    let out = with_input("eval", "bl.toml", &["--divisor", "X", "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("E202: "));
    let out = with_input("threshold", "bl.toml", &["--omega", "H", "--direction", "E"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("E302: "));
}

#[test]
fn invalid_lattice_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(
        &dir,
        r#"
[lattice]
basis = ["A", "B"]
gram = [[1, 0], [0, 1]]
ample = "A"

[lattice.cone]
mode = "quadric"
polarization = "A"
"#,
    );
    let out = zariski(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("status = invalid\n"));
    assert!(stderr(&out).starts_with("E204: "));
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        "[lattice]\nbasis = [\"A\"]\ngram = [[1]]\nample = \"A\"\nbogus = 1\n[lattice.cone]\nmode = \"quadric\"\npolarization = \"A\"\n",
        "[lattice]\nbasis = [\"A\"]\ngram = [[\"sqrt(2)\"]]\nample = \"A\"\n[lattice.cone]\nmode = \"quadric\"\npolarization = \"A\"\n",
        "[lattice]\nbasis = [\"A\"]\ngram = [[1]]\nample = \"A + Q\"\n[lattice.cone]\nmode = \"quadric\"\npolarization = \"A\"\n",
        "not toml at all [",
    ];
    for text in cases {
        let path = write_problem(&dir, text);
        let out = zariski(&["validate", "--input", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        assert!(stderr(&out).starts_with("E100: "), "{}", stderr(&out));
    }
    let out = zariski(&["validate", "--input", "/nonexistent/problem.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn declared_extension_admits_irrational_data() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(
        &dir,
        r#"
sqrt = 2

[lattice]
basis = ["A", "B"]
gram = [[1, 0], [0, -1]]
ample = "A"

[lattice.cone]
mode = "quadric"
polarization = "A"
"#,
    );
    let out = zariski(&[
        "threshold",
        "--input",
        path.to_str().unwrap(),
        "--omega",
        "A",
        "--direction",
        "A + sqrt(2)/2*B",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    // (A - l (A + B/sqrt(2)))^2 = (1 - l)^2 - l^2/2, smallest root 2 - sqrt(2)
    assert!(stdout(&out).contains("lambda_psef = 2 - 1*sqrt(2)\n"));
}
