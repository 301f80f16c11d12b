//! End-to-end runs of the `boolcat` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name)
}

fn boolcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolcat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_the_pruning_census() {
    let o = boolcat(&["check", path(&data("exa1.bnet.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "correct (16/16 prunings linked)");

    let o = boolcat(&["check", path(&data("crossed.bnet.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "incorrect (2/4 prunings linked)");

    let o = boolcat(&["check", path(&data("diag_codiag_anchored.bnet.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "correct (extended net, 1 anchors)");
}

#[test]
fn check_accepts_map_expressions() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.mexp");
    std::fs::write(&f, "(comp (codiag a) (mix a a) (diag a))").unwrap();
    let o = boolcat(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("correct"));
}

#[test]
fn composing_identities_gives_the_identity() {
    let id = data("id_a.bnet.json");
    let o = boolcat(&["compose", path(&id), path(&id)]);
    assert_eq!(o.status.code(), Some(0));
    let got = boolcat::json::net_from_json(&stdout(&o)).unwrap();
    let want = boolcat::json::net_from_json(&std::fs::read_to_string(&id).unwrap()).unwrap();
    assert_eq!(got, want);
}

#[test]
fn sum_of_identities_doubles_only_in_extended_nets() {
    let id = data("id_a.bnet.json");
    let o = boolcat(&["sum", path(&id), path(&id)]);
    let simple = boolcat::json::net_from_json(&stdout(&o)).unwrap();
    assert_eq!(simple, boolcat::json::net_from_json(&std::fs::read_to_string(&id).unwrap()).unwrap());
    let o = boolcat(&["sum", "--extended", path(&id), path(&id)]);
    assert_eq!(o.status.code(), Some(0));
    let ext = boolcat::json::net_from_json(&stdout(&o)).unwrap().into_extended();
    assert_eq!(ext.links().values().copied().collect::<Vec<_>>(), vec![2]);
}

#[test]
fn suite_is_deterministic_per_seed() {
    let args = ["suite", "B5", "--category", "snet", "--bindings", "10", "--seed", "7"];
    let a = boolcat(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = boolcat(&args);
    assert_eq!(a.stdout, b.stdout);
    let json = boolcat(&["suite", "B5", "--category", "snet", "--bindings", "10", "--seed", "7", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v[0]["seed"], 7);
    assert_eq!(v[0]["category"], "snet");
}

#[test]
fn suite_reports_expected_enet_failures_as_passes() {
    let o = boolcat(&["suite", "collapse", "--category", "enet", "--bindings", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("id-plus-id") && l.contains("fails") && l.contains("pass")), "{out}");
}

#[test]
fn eliminate_by_anchor_and_over_all_orders() {
    let o = boolcat(&["eliminate", path(&data("diag_codiag_anchored.bnet.json")), "--anchor", "k0"]);
    assert_eq!(o.status.code(), Some(0));
    let got = boolcat::json::net_from_json(&stdout(&o)).unwrap().into_extended();
    let want = boolcat::json::net_from_json(&std::fs::read_to_string(data("diag_codiag_direct.bnet.json")).unwrap())
        .unwrap()
        .into_extended();
    assert!(got.equal(&want));

    let o = boolcat(&["eliminate", path(&data("anchor_cycle.bnet.json")), "--all-orders"]);
    assert_eq!(o.status.code(), Some(0));
    let forms: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(forms.len(), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2 distinct normal form(s)"));
}

#[test]
fn transpose_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (mid, back) = (dir.path().join("mid.json"), dir.path().join("back.json"));
    let src = dir.path().join("proj.mexp");
    std::fs::write(&src, "(projl a b)").unwrap();
    let o = boolcat(&["transpose", src.to_str().unwrap(), "--shape", "curry", "-o", mid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = boolcat(&["transpose", mid.to_str().unwrap(), "--shape", "uncurry", "-o", back.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let original = boolcat(&["compose", src.to_str().unwrap(), path(&data("id_a.bnet.json"))]);
    assert_eq!(
        boolcat::json::net_from_json(&std::fs::read_to_string(&back).unwrap()).unwrap(),
        boolcat::json::net_from_json(&stdout(&original)).unwrap()
    );
}

#[test]
fn export_dot_draws_anchors() {
    let o = boolcat(&["export-dot", path(&data("diag_codiag_anchored.bnet.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"), "{dot}");
    assert!(dot.contains("k0"));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, r#"{"sequent": ["~a", "b"], "links": [{"src": {"i": 0, "path": ""}, "dst": {"i": 1, "path": ""}}]}"#).unwrap();
    let o = boolcat(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    assert_eq!(boolcat(&["check", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(boolcat(&["suite", "B9"]).status.code(), Some(2));
    assert_eq!(boolcat(&["eliminate", path(&data("id_a.bnet.json"))]).status.code(), Some(2));
    assert_eq!(boolcat(&["suite", "B5", "--atoms", "A"]).status.code(), Some(2));
}
