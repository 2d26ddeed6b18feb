use std::path::PathBuf;
use std::process::{Command, Output};

use tauq::cli::{run, EXIT_INPUT, EXIT_OK};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../../fixtures/{name}.alg"))
        .display()
        .to_string()
}

fn tauq(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tauq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf8"),
        String::from_utf8(err).expect("utf8"),
    )
}

fn binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tauq"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn tau_tilting_flags_ex2() {
    let (code, out, _) = tauq(&["tau-tilting", &fixture("ex2")]);
    assert_eq!(code, EXIT_OK);
    let flags: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with('T'))
        .map(|l| l.split_whitespace().nth(1).expect("flag column"))
        .collect();
    assert_eq!(flags, ["N", "N", "F"]);
    assert!(out.contains("1/2 + 2/3 + 3/3  dim 6  pd 0"), "{out}");
}

#[test]
fn theorem5_ext_table_ex2() {
    let (code, out, _) = tauq(&["theorem5", &fixture("ex2"), "--mode", "ext"]);
    assert_eq!(code, EXIT_OK);
    // T1 = 1 + 1/2 + 3/3 (Z), T3 = the projective X.
    assert!(out.contains("(T1, T3) = NONE"), "{out}");
    assert!(
        out.contains("(T2, T3) = 2->3/3, 1/2->1/2, 2/3->2/3"),
        "{out}"
    );
    assert!(out.contains("0 of them faithful-faithful"), "{out}");
}

#[test]
fn theorem5_tau_mode_matches_everything() {
    for name in ["ex1", "ex2", "ex3", "ex7a", "ex7b"] {
        let (code, out, _) = tauq(&["theorem5", &fixture(name), "--mode", "tau"]);
        assert_eq!(code, EXIT_OK, "{name}");
        assert!(!out.contains("NONE"), "{name}: {out}");
    }
}

#[test]
fn bad_fixture_reports_location() {
    let out = binary(&["check", &fixture("bad")]);
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.alg:5:7"), "{err}");
    assert!(err.contains("unknown arrow"), "{err}");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(tauq(&["check", "/nonexistent/x.alg"]).0, EXIT_INPUT);
    assert_eq!(
        tauq(&["--field", "4", "check", &fixture("ex2")]).0,
        EXIT_INPUT
    );
    assert_eq!(tauq(&["global-perm", &fixture("ex10")]).0, EXIT_INPUT);
    assert_eq!(tauq(&["no-such-command"]).0, EXIT_INPUT);
}

#[test]
fn check_prints_dimension() {
    let (code, out, _) = tauq(&["check", &fixture("ex10")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("dim 42"), "{out}");
    assert!(out.contains("special biserial: yes"), "{out}");
}

#[test]
fn param_overrides_ex6() {
    for n in 2..=5usize {
        let (code, out, _) = tauq(&["--param", &format!("n={n}"), "indec", &fixture("ex6")]);
        assert_eq!(code, EXIT_OK);
        assert!(
            out.starts_with(&format!("{} indecomposable modules", 2 * n + 1)),
            "{out}"
        );
    }
}

#[test]
fn global_perm_ex2_is_unique() {
    let (code, out, _) = tauq(&["global-perm", &fixture("ex2")]);
    assert_eq!(code, EXIT_OK);
    for pair in ["1/2->1/2", "2/3->1", "3/3->2", "1->2/3", "2->3/3"] {
        assert!(out.contains(pair), "{pair} missing: {out}");
    }
}

#[test]
fn compare_opposite_ex7a_structural() {
    let (code, out, _) = tauq(&["compare-opposite", &fixture("ex7a"), "--structural"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("1/23->23/123"), "{out}");
}

#[test]
fn ar_quiver_dot_is_well_formed() {
    let (code, out, _) = tauq(&["ar-quiver", "--dot", &fixture("ex1")]);
    assert_eq!(code, EXIT_OK);
    let body = out.trim();
    assert!(body.starts_with("digraph"), "{out}");
    assert!(body.ends_with('}'));
    assert_eq!(body.matches('{').count(), body.matches('}').count());
    let edges: Vec<&str> = out.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(
        edges.iter().filter(|l| !l.contains("dashed")).count(),
        6,
        "irreducible maps"
    );
    assert_eq!(
        edges.iter().filter(|l| l.contains("dashed")).count(),
        3,
        "τ of the non-projectives"
    );
}

#[test]
fn report_writes_json_and_timing_is_opt_in() {
    let dir = tempfile::tempdir().expect("tempdir");
    let plain = dir.path().join("plain.json");
    let timed = dir.path().join("timed.json");
    let p = plain.to_str().expect("utf8 path");
    let t = timed.to_str().expect("utf8 path");
    assert_eq!(tauq(&["report", &fixture("ex3"), "--json", p]).0, EXIT_OK);
    assert_eq!(
        tauq(&["report", &fixture("ex3"), "--json", t, "--timing"]).0,
        EXIT_OK
    );
    let plain: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(plain).expect("written")).expect("json");
    let timed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(timed).expect("written")).expect("json");
    assert!(plain.get("timing").is_none());
    assert!(timed["timing"]["total_ms"].is_u64());
    assert_eq!(plain["tau_tilting"].as_array().map(Vec::len), Some(3));
}
