//! Reports for every bundled fixture against the checked-in goldens.
//! Set `TAUQ_BLESS=1` to rewrite them.

use std::path::PathBuf;

use tauq::fixtures;
use tauq::report::{build_report, to_json, Options};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/golden/{name}.json"))
}

#[test]
fn reports_match_goldens() {
    let bless = std::env::var_os("TAUQ_BLESS").is_some();
    let mut mismatched = Vec::new();
    for name in fixtures::NAMES {
        let alg = fixtures::load(name).expect("fixture parses");
        let json = to_json(&build_report(&alg, &Options::default(), false).expect("report builds"));
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &json).expect("golden writable");
            continue;
        }
        let golden =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if golden != json {
            let line = golden
                .lines()
                .zip(json.lines())
                .position(|(a, b)| a != b)
                .map_or_else(|| "length".to_string(), |l| format!("line {}", l + 1));
            mismatched.push(format!("{name} (first difference at {line})"));
        }
    }
    assert!(
        mismatched.is_empty(),
        "reports differ from goldens: {mismatched:?}"
    );
}

#[test]
fn goldens_are_schema_one() {
    for name in fixtures::NAMES {
        let text = std::fs::read_to_string(golden_path(name)).expect("golden exists");
        let v: serde_json::Value = serde_json::from_str(&text).expect("golden is JSON");
        assert_eq!(v["schema"], 1, "{name}");
        assert!(v.get("timing").is_none(), "{name} golden carries timing");
        assert_eq!(
            v["air_violations"].as_array().map(Vec::len),
            Some(0),
            "{name}"
        );
    }
}
