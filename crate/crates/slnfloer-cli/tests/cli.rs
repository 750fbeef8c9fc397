//! End-to-end behaviour of the command-line interface.
//!
//! Golden files live in `tests/golden`; set `UPDATE_GOLDEN=1` to rewrite
//! them after an intentional output change.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("slnfloer").chain(args.iter().copied());
    let code = slnfloer_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

const GOLDEN_KNOTS: &[&str] =
    &["unknot", "unknot-punctured", "T2,3", "T2,3-punctured", "T2,5", "T2,7", "T3,4", "T3,5", "T3,7", "4_1"];

#[test]
fn hfkn_outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = golden_dir();
    for knot in GOLDEN_KNOTS {
        for format in ["text", "json"] {
            let out = ok(&["hfkn", "--knot", knot, "--n", "1..4", "--format", format]);
            assert_eq!(out, ok(&["hfkn", "--knot", knot, "--n", "1..4", "--format", format]), "{knot} is not deterministic");
            let ext = if format == "json" { "json" } else { "txt" };
            let path = dir.join(format!("hfkn_{}.{ext}", knot.replace(',', "_")));
            if update {
                std::fs::create_dir_all(&dir).unwrap();
                std::fs::write(&path, &out).unwrap();
            } else {
                let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
                assert_eq!(out, want, "{knot} ({format}) differs from {}", path.display());
            }
        }
    }
}

#[test]
fn unknot_module_is_truncated_polynomial_ring() {
    let out = ok(&["hfkn", "--knot", "unknot", "--n", "3"]);
    assert!(out.contains("module: Q[U]/(U^3)"), "{out}");
    assert!(out.contains("total dimension: 3"));
}

#[test]
fn staircase_trefoil_at_n_two_has_dimension_four() {
    let out = ok(&["hfkn", "--alexander-exponents", "1,0,-1", "--n", "2"]);
    assert!(out.contains("total dimension: 4"), "{out}");
    let named = ok(&["hfkn", "--knot", "T2,3", "--n", "2"]);
    let tail = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(tail(&out), tail(&named));
}

#[test]
fn sscheck_t34_is_compatible() {
    let out = ok(&["sscheck", "--knot", "T3,4", "--n", "2"]);
    assert!(out.contains("ok (shift 0, witness q^5)"), "{out}");
    let j: serde_json::Value = serde_json::from_str(&ok(&["sscheck", "--knot", "T3,4", "--n", "2..3", "--format", "json"])).unwrap();
    assert_eq!(j["all_pass"], true);
    assert_eq!(j["rows"][1]["sl_dim"], 19);
}

#[test]
fn sscheck_polynomial_pair() {
    let out = ok(&["sscheck", "--source", "q^3 + 4*q^5 + 3*q^7", "--target", "q^3 + 3*q^5 + 2*q^7", "--step", "2"]);
    assert!(out.starts_with("compatible (step 2, shift q^0, witness q^5)"), "{out}");
    let out = ok(&["sscheck", "--source", "1", "--target", "q", "--step", "1", "--shift", "0"]);
    assert!(out.starts_with("incompatible"), "{out}");
}

#[test]
fn homfly_prints_canonical_strings() {
    assert_eq!(ok(&["homfly", "--braid", "strands=2 word=1,1,1", "--reduced"]), "-a^-4 + a^-2*q^-2 + a^-2*q^2\n");
    assert_eq!(ok(&["homfly", "--knot", "0_1"]), "(-a^-1 + a)/(-q^-1 + q)\n");
    // Alexander polynomial of the trefoil in t = q^2.
    assert_eq!(ok(&["homfly", "--knot", "3_1", "--reduced", "--sln", "0"]), "q^-2 - 1 + q^2\n");
}

#[test]
fn kr_reports_both_pages() {
    let out = ok(&["kr", "--braid", "strands=1 word=", "--sln", "2", "--flavor", "unreduced"]);
    assert!(out.contains("E2 total: 2"), "{out}");
    assert!(out.contains("truncated: no"));
    let j: serde_json::Value =
        serde_json::from_str(&ok(&["kr", "--braid", "strands=2 word=1,1,1", "--sln", "2", "--format", "json"])).unwrap();
    assert_eq!(j["e2"]["total"], 3);
}

#[test]
fn validate_round_trips_through_files() {
    let dir = std::env::temp_dir().join(format!("slnfloer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t34.json");
    let j: serde_json::Value = serde_json::from_str(&ok(&["validate", "--knot", "T3,4", "--emit", "--format", "json"])).unwrap();
    assert_eq!(j["valid"], true);
    std::fs::write(&path, serde_json::to_string_pretty(&j["complex"]).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let from_file = ok(&["hfkn", "--file", p, "--n", "2"]);
    let named = ok(&["hfkn", "--knot", "T3,4", "--n", "2"]);
    assert_eq!(from_file.lines().skip(1).collect::<Vec<_>>(), named.lines().skip(1).collect::<Vec<_>>());
    assert!(ok(&["validate", "--file", p]).contains("ok    d^2"));

    // A corrupted curvature makes validation fail with exit code 1.
    let mut bad = j["complex"].clone();
    bad["curvature"] = serde_json::Value::String("U1*V1".to_string());
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let (code, out, _) = run(&["validate", "--file", p]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"), "{out}");

    let out_path = dir.join("out.txt");
    ok(&["homfly", "--knot", "hopf", "--output", out_path.to_str().unwrap()]);
    assert!(!std::fs::read_to_string(&out_path).unwrap().is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validate_braid_complexes() {
    for n in ["1", "2", "3"] {
        let out = ok(&["validate", "--braid", "strands=3 word=1,-2,1", "--sln", n]);
        assert_eq!(out.matches("ok ").count(), 3, "{out}");
    }
    assert_eq!(ok(&["validate", "--braid", "strands=2 word=1,1"]).matches("ok ").count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["hfkn", "--n", "2"]).0, 2, "missing input source");
    assert_eq!(run(&["hfkn", "--knot", "unknot", "--alexander-exponents", "1,0,-1", "--n", "2"]).0, 2, "two sources");
    assert_eq!(run(&["hfkn", "--knot", "unknot", "--n", "0"]).0, 2, "n below 1");
    assert_eq!(run(&["hfkn", "--knot", "granny", "--n", "2"]).0, 1, "unknown knot");
    assert_eq!(run(&["homfly", "--braid", "strands=2 word=5"]).0, 1, "bad braid word");
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, _, err) = run(&["sscheck", "--source", "q - 1", "--target", "1", "--step", "1"]);
    assert_eq!(code, 0, "bad inputs are a verdict, not an error: {err}");
}

#[test]
fn binary_uses_the_same_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_slnfloer");
    let st = Command::new(bin).args(["hfkn", "--knot", "unknot", "--n", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert_eq!(String::from_utf8(st.stdout).unwrap(), ok(&["hfkn", "--knot", "unknot", "--n", "2"]));
    let st = Command::new(bin).args(["hfkn", "--n", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(!st.stderr.is_empty());
    let st = Command::new(bin).args(["hfkn", "--knot", "T2,4", "--n", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
}
