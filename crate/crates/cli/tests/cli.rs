use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BLESS_VAR: &str = "LATTICE_OPOLY_BLESS";

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-opoly"))
        .args(args)
        .current_dir(golden_dir().join("inputs"))
        .env_remove("LATTICE_OPOLY_NMAX_DEFAULT")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    exit: i32,
}

const CASES: &[Case] = &[
    Case { name: "classify_hahn.json", args: &["classify", "hahn.json"], exit: 0 },
    Case { name: "classify_para_krawtchouk.json", args: &["classify", "para_krawtchouk.json"], exit: 0 },
    Case { name: "classify_charlier.json", args: &["classify", "charlier.json"], exit: 0 },
    Case { name: "classify_phi_zero.json", args: &["classify", "phi_zero.json"], exit: 2 },
    Case { name: "recurrence_para_krawtchouk.json", args: &["recurrence", "para_krawtchouk.json", "-n", "5"], exit: 2 },
    Case {
        name: "recurrence_hermite_symbolic.json",
        args: &["recurrence", "hermite.json", "-n", "4", "--symbolic"],
        exit: 0,
    },
    Case { name: "moments_hermite.json", args: &["moments", "hermite.json", "-n", "6"], exit: 0 },
    Case { name: "limit_charlier.json", args: &["limit", "charlier.json", "-n", "6"], exit: 0 },
    Case { name: "atoms_para_krawtchouk.json", args: &["atoms", "para_krawtchouk_canonical.json"], exit: 0 },
    Case { name: "atoms_charlier.json", args: &["atoms", "charlier.json", "--max-steps", "8"], exit: 0 },
    Case { name: "locus_hermite.csv", args: &["locus", "--family", "hermite", "--nmax", "5"], exit: 0 },
    Case {
        name: "locus_jacobi.csv",
        args: &["locus", "--family", "jacobi", "--alpha", "1/2", "--beta", "-1/3", "--nmax", "4"],
        exit: 0,
    },
    Case {
        name: "kls_hermite_block.json",
        args: &["kls", "--f", "1/2", "--epsilon", "1", "--g", "2", "--gamma", "1"],
        exit: 0,
    },
];

#[test]
fn golden_outputs() {
    let bless = std::env::var_os(BLESS_VAR).is_some();
    for case in CASES {
        let output = run(case.args);
        assert_eq!(output.status.code(), Some(case.exit), "{}: {}", case.name, String::from_utf8_lossy(&output.stderr));
        let actual = stdout(&output);
        let path = golden_dir().join("expected").join(case.name);
        if bless {
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing {}; rerun with {BLESS_VAR}=1", path.display()));
        assert_eq!(actual, expected, "{} differs from its golden file", case.name);
        assert_eq!(stdout(&run(case.args)), actual, "{} is not deterministic", case.name);
    }
}

#[test]
fn classification_output_is_accepted_as_input() {
    for input in ["hahn.json", "para_krawtchouk.json", "charlier.json", "hermite.json"] {
        let first = stdout(&run(&["classify", input]));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("class.json");
        std::fs::write(&path, &first).unwrap();
        let second = run(&["classify", path.to_str().unwrap()]);
        assert_eq!(second.status.code(), Some(0));
        assert_eq!(stdout(&second), first);
        let recurrence = run(&["recurrence", path.to_str().unwrap(), "-n", "3"]);
        assert!(matches!(recurrence.status.code(), Some(0 | 2)));
    }
}

#[test]
fn hermite_locus_has_ten_rows() {
    let text = stdout(&run(&["locus", "--family", "hermite", "--nmax", "5"]));
    assert_eq!(text.lines().count(), 11);
    assert_eq!(text.lines().next(), Some("re,im,n,branch,t_exact"));
}

#[test]
fn verify_random_pairs() {
    let output = run(&["verify", "--random", "50", "-n", "10"]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["hankel_oracle"], "pass");
    assert_eq!(report["moment_oracle"], "pass");
    assert_eq!(report["pearson_residual"], "pass");
    assert_eq!(report["pairs"], 50);
}

#[test]
fn default_depth_comes_from_environment() {
    let output = Command::new(env!("CARGO_BIN_EXE_lattice-opoly"))
        .args(["moments", "hermite.json"])
        .current_dir(golden_dir().join("inputs"))
        .env("LATTICE_OPOLY_NMAX_DEFAULT", "3")
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["mu"].as_array().unwrap().len(), 4);
    let fallback: serde_json::Value = serde_json::from_str(&stdout(&run(&["moments", "hermite.json"]))).unwrap();
    assert_eq!(fallback["mu"].as_array().unwrap().len(), 33);
}

#[test]
fn writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("locus.csv");
    let output =
        run(&["locus", "--family", "laguerre", "--alpha", "0", "--nmax", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(output.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains(",0,1,+,8"));
}

#[test]
fn errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"phi": ["1/0"], "psi": []}"#).unwrap();
    for args in [
        vec!["classify", bad.to_str().unwrap()],
        vec!["classify", "missing.json"],
        vec!["atoms", "para_krawtchouk.json"],
        vec!["kls", "--e", "x"],
    ] {
        let output = run(&args);
        assert_eq!(output.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&output.stderr).starts_with("error"), "{args:?}");
    }
}
