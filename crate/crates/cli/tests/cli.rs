use std::process::{Command, Output};

fn chevlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn star_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d4.json");
    let p = path.to_str().unwrap();
    let o = chevlab(&["star", "check", "D4:4A1", "--json", p]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    let orbits = v["certificate"]["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 1);
    assert_eq!(orbits[0]["members"].as_array().unwrap().len(), 16);
    assert!(chevlab(&["star", "validate", p]).status.success());

    // a tampered separation must be rejected
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let pairs = v["certificate"]["pairs"].as_array_mut().unwrap();
    let seps = pairs[0]["separations"].as_array_mut().unwrap();
    let g1 = seps[0]["gamma1"].clone();
    seps[0]["beta"] = g1;
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = chevlab(&["star", "validate", p]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn star_counterexample_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.json");
    let o = chevlab(&["star", "check", "--system", "A2", "--subsystem", "[[2,-2,0]]", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["gamma"].is_array());
    assert!(chevlab(&["star", "validate", path.to_str().unwrap()]).status.success());
}

#[test]
fn quick_suite_passes_and_mutation_fails() {
    let o = chevlab(&["suite", "--profile", "quick", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count() >= 10);
    let o = chevlab(&["suite", "--profile", "quick", "--flip-sign"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first failure: criterion 1"));
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = chevlab(&["tandem", "verify", "--system", "D4", "--ring", "mod:3", "--samples", "20", "--seed", "4", "--json", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn group_element_with_matrix() {
    let o = chevlab(&["group", "element", "--system", "A2", "--ring", "mod:3", "--word", "0=1,3=2", "--emit-matrix"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("\"matrix\""));
    assert!(out.contains("inverse witness: ok"));
    let o = chevlab(&["group", "element", "--system", "A2", "--ring", "mod:3", "--word", "9=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn net_checks() {
    let o = chevlab(&["net", "check", "--subsystem", "D4:4A1", "--ring", "mod:4", "--ideals", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("matches: true"));
    let o = chevlab(&["net", "check", "--subsystem", "E8:A8", "--ring", "int", "--ideals", "0;1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn extraction_runs() {
    let o = chevlab(&["tandem", "extract", "--subsystem", "D4:4A1", "--ring", "mod:3", "--seed", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("g2 in U': true"));
}
