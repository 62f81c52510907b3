use std::path::Path;
use std::process::{Command, Output};

use planemf::instance::{gen_c4_2k2_overline, gen_gk};
use planemf::rational::from_json;
use planemf::report::flow_from_json;
use planemf::Instance;
use serde_json::Value;

fn planemf(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planemf"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn gen_writes_parseable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = planemf(&["gen", "gk", "--k", "5", "-o", "g5.pmf"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("g5.pmf")).unwrap();
    assert_eq!(Instance::parse(&text).unwrap(), gen_gk(5).unwrap());

    let out = planemf(&["gen", "c4", "-o", "c4.pmf"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("c4.pmf")).unwrap();
    assert_eq!(Instance::parse(&text).unwrap(), gen_c4_2k2_overline().unwrap());
}

#[test]
fn solve_json_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    planemf(&["gen", "gk", "--k", "4", "-o", "g4.pmf"], dir.path());
    let inst = gen_gk(4).unwrap();
    for mode in ["frac", "half", "int", "plus-one"] {
        let out = planemf(&["solve", "g4.pmf", "--mode", mode, "--json"], dir.path());
        assert_eq!(out.status.code(), Some(0), "{mode}: {}", stderr(&out));
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        for key in ["instance", "mode", "value", "paths", "multicut", "checks"] {
            assert!(doc.get(key).is_some(), "{mode}: missing {key}");
        }
        assert_eq!(doc["mode"], mode);
        assert!(doc["value"]["num"].is_i64() && doc["value"]["den"].is_i64());
        let flow = flow_from_json(&inst, &doc).unwrap();
        assert_eq!(from_json(&doc["value"]), Some(flow.value()));

        std::fs::write(dir.path().join("flow.json"), stdout(&out)).unwrap();
        let verify = planemf(&["verify", "g4.pmf", "--flow", "flow.json"], dir.path());
        // Plus-one flows are only guaranteed within c + 1.
        if mode != "plus-one" {
            assert_eq!(verify.status.code(), Some(0), "{mode}: {}", stdout(&verify));
        }
    }
    let out = planemf(&["solve", "g4.pmf", "--mode", "frac", "--json"], dir.path());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["value"], serde_json::json!({"num": 9, "den": 4}));
}

#[test]
fn verify_rejects_overloaded_flow() {
    let dir = tempfile::tempdir().unwrap();
    planemf(&["gen", "gk", "--k", "3", "-o", "g3.pmf"], dir.path());
    let flow = r#"[{"demand": 5, "vertices": [3, 0, 1, 4], "value": {"num": 2, "den": 1}}]"#;
    std::fs::write(dir.path().join("bad.json"), flow).unwrap();
    let out = planemf(&["verify", "g3.pmf", "--flow", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stdout(&out).contains("infeasible: overloaded edges 0 1 3"),
        "{}",
        stdout(&out)
    );

    std::fs::write(dir.path().join("broken.json"), "[\n{\"demand\": 5,\n").unwrap();
    let out = planemf(&["verify", "g3.pmf", "--flow", "broken.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("broken.json: line 3"), "{}", stderr(&out));
}

#[test]
fn report_prints_values_ratios_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    planemf(&["gen", "gk", "--k", "3", "-o", "g3.pmf"], dir.path());
    let out = planemf(&["report", "g3.pmf"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for needle in [
        "fractional max        3/2\n",
        "oracle min multicut   2\n",
        "oracle integer        1\n",
        "oracle half-integer   3/2\n",
        "ratio multicut / fractional  4/3",
        "chain: 3/2 <= 3/2 <= 2 <= 2 * 3/2\n",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in\n{text}");
    }
    assert!(!text.contains("FAIL"));

    let out = planemf(&["report", "g3.pmf", "--json"], dir.path());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["mode"], "report");
    assert!(doc["checks"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn multicut_and_oracle_commands() {
    let dir = tempfile::tempdir().unwrap();
    planemf(&["gen", "c4", "-o", "c4.pmf"], dir.path());
    let out = planemf(&["multicut", "c4.pmf", "--json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["value"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(doc["multicut"].as_array().unwrap().len(), 2);

    let expected = [("mincut", "value 2\n"), ("int", "value 1\n"), ("half", "value 2\n")];
    for (what, first) in expected {
        let out = planemf(&["oracle", "c4.pmf", "--what", what], dir.path());
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).starts_with(first), "{what}: {}", stdout(&out));
    }
}

#[test]
fn errors_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = planemf(&[], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Commands:"));
    assert_eq!(planemf(&["solve", "x.pmf"], dir.path()).status.code(), Some(2));

    std::fs::write(dir.path().join("bad.pmf"), "planemf 1\nvertices 2\nedge 0 1 supply x\n").unwrap();
    let out = planemf(&["solve", "bad.pmf", "--mode", "frac"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("bad.pmf") && msg.contains("line 3"), "{msg}");

    let out = planemf(&["report", "missing.pmf"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("missing.pmf"));
}
