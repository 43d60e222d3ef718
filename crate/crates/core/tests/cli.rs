//! End-to-end runs of the `qrules` binary: exit codes, JSON output and
//! recorded transcripts.

use std::io::Write;
use std::process::Command;

use tempfile::NamedTempFile;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qrules(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qrules"))
        .args(args)
        .env_remove("QRULES_MAX_DEGREE")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn spec_file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["--ring", "Z7", "qint", "3"][..],
        &["--ring", "Fp:6", "qint", "3"],
        &["parse", "3*q^-1"],
        &["parse", "1 +"],
        &["--ring", "ZZ", "parse", "1/2*q"],
        &["frobnicate"],
        &["rule", "verify"],
        &["rule", "show", "--z", "q", "--spec", "x.json"],
        &["prove", "--form", "add_xy"],
        &["prove", "--form", "add_mm", "--max", "1"],
    ] {
        let r = qrules(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(
            r.stderr.starts_with("error:") || r.stderr.contains("Usage"),
            "{args:?}"
        );
        assert!(r.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    for args in [&["--help"][..], &["--version"], &["prove", "--help"]] {
        let r = qrules(args);
        assert_eq!(r.code, 0, "{args:?}");
        assert!(!r.stdout.is_empty());
    }
}

#[test]
fn inconsistent_classification_exits_1() {
    let r = qrules(&["rule", "classify", "--u1", "1", "--v1", "1"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("INCONSISTENT"), "{}", r.stdout);
}

#[test]
fn tabulated_counterexample_exits_1() {
    let spec = spec_file(
        r#"{ "kind": "tabulated", "bound": 2,
             "u": {"1,1": "1", "1,2": "1", "2,1": "1", "2,2": "1"},
             "v": {"1,1": "1", "1,2": "1", "2,1": "1", "2,2": "1"} }"#,
    );
    let path = spec.path().to_str().unwrap();
    let r = qrules(&["rule", "verify", "--spec", path, "--max", "2"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stdout.starts_with("COUNTEREXAMPLE"));
    assert!(
        r.stdout.contains("m = 1\n") && r.stdout.contains("n = 1\n"),
        "{}",
        r.stdout
    );

    let r = qrules(&["--json", "rule", "verify", "--spec", path, "--max", "2"]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["status"], "COUNTEREXAMPLE");
    assert_eq!((v["m"].as_u64(), v["n"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn canonical_spec_file_verifies() {
    let spec = spec_file(r#"{ "ring": "Fp:5", "kind": "canonical", "z": "2 + 3*q" }"#);
    let r = qrules(&[
        "rule",
        "verify",
        "--spec",
        spec.path().to_str().unwrap(),
        "--max",
        "6",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("VERIFIED"));

    let bad = spec_file(r#"{ "kind": "canonical", "z": "q", "extra": 1 }"#);
    assert_eq!(
        qrules(&["rule", "verify", "--spec", bad.path().to_str().unwrap()]).code,
        2
    );
}

#[test]
fn family_spec_files() {
    let spec = spec_file(
        r#"{ "lambda": {"2": "-1", "*": "1"}, "t0": 1, "exponents": {"1": 2, "2": -1} }"#,
    );
    let path = spec.path().to_str().unwrap();
    let r = qrules(&["mult", "verify", "--family", path, "--max", "6"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("VERIFIED"));
    let r = qrules(&["--json", "mult", "family", "--family", path, "--n", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    serde_json::from_str::<serde_json::Value>(&r.stdout).unwrap();

    // with no exponents the family is f_n = q^(t0*(n-1))
    let shift = spec_file(r#"{ "lambda": {"*": "1"}, "t0": 1, "exponents": {} }"#);
    let r = qrules(&[
        "mult",
        "family",
        "--family",
        shift.path().to_str().unwrap(),
        "--n",
        "3",
    ]);
    assert!(
        r.stdout.ends_with("  f_1 = 1\n  f_2 = q\n  f_3 = q^2\n"),
        "{}",
        r.stdout
    );
}

#[test]
fn json_output_is_valid_everywhere() {
    for args in [
        &["--json", "qint", "5"][..],
        &["--json", "parse", "(1 - q)^3"],
        &[
            "--json", "rule", "classify", "--u1", "4-3*q", "--v1", "4*q-3",
        ],
        &["--json", "rule", "classify", "--u1", "1", "--v1", "1"],
        &[
            "--json", "rule", "combine", "--z", "1", "--z", "q", "--alpha", "2", "--alpha", "-1",
        ],
        &["--json", "rule", "add-zero", "--z", "1", "--zero", "q"],
        &[
            "--json",
            "solve",
            "quadratic",
            "--variant",
            "1",
            "--f1",
            "1+q",
            "--n",
            "4",
        ],
        &[
            "--json", "prove", "--form", "add_mn", "--degree", "3", "--max", "3",
        ],
        &[
            "--json", "prove", "--form", "add_mm", "--degree", "4", "--max", "3",
        ],
    ] {
        let r = qrules(args);
        assert!(r.code <= 1, "{args:?}: {}", r.stderr);
        let v: serde_json::Value =
            serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(v.is_object());
    }
}

#[test]
fn degree_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qrules"))
        .args(["parse", "q^50"])
        .env("QRULES_MAX_DEGREE", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(qrules(&["parse", "q^50"]).code, 0);
}

fn transcript(argv: &[&str]) -> String {
    let r = qrules(argv);
    let shown: Vec<String> = argv
        .iter()
        .map(|a| {
            if a.contains(|ch: char| ch.is_whitespace() || "*()^".contains(ch)) {
                format!("\"{a}\"")
            } else {
                a.to_string()
            }
        })
        .collect();
    format!(
        "$ qrules {}\n{}[exit {}]\n",
        shown.join(" "),
        r.stdout,
        r.code
    )
}

#[test]
fn golden_transcripts() {
    let cases: [(&str, &[&str]); 5] = [
        ("qint", &["qint", "6"]),
        ("rule_show", &["rule", "show", "--z", "1-q", "--at", "2,3"]),
        (
            "zero_verify",
            &["zero", "verify", "--z", "q^2", "--max", "4"],
        ),
        (
            "solve_linear",
            &["solve", "linear", "--z", "q", "--f1", "1+q", "--n", "4"],
        ),
        (
            "prove_zero_nm",
            &["prove", "--form", "zero_nm", "--degree", "4", "--max", "3"],
        ),
    ];
    for (name, argv) in cases {
        let path = format!("{}/tests/golden/{name}.txt", env!("CARGO_MANIFEST_DIR"));
        let expected = std::fs::read_to_string(&path).unwrap();
        assert_eq!(transcript(argv), expected, "{name}");
    }
}
