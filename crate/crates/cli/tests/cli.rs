use std::path::PathBuf;
use std::process::{Command, Output};

fn steinhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinhom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("steinhom-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn bf_of_two_rose() {
    let o = steinhom(&["bf", "rose2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("$ steinhom bf rose2\n"));
    assert!(s.contains("BF(E) = 0"));
    assert!(s.ends_with("status: ok\n"));
}

#[test]
fn homology_of_z2_shows_four_degrees() {
    let s = stdout(&steinhom(&["homology", "z2"]));
    for (n, g) in ["Z", "Z/2", "0", "Z/2"].iter().enumerate() {
        assert!(s.contains(&format!("H_{n} = {g}\n")), "H_{n} missing in\n{s}");
    }
    assert!(!s.contains("H_4"));
}

#[test]
fn window_flag_controls_degrees() {
    let s = stdout(&steinhom(&["homology", "z3", "--window", "2"]));
    assert!(s.contains("H_1 = Z/3"));
    assert!(!s.contains("H_2"));
}

#[test]
fn rational_coefficients_kill_torsion() {
    let s = stdout(&steinhom(&["homology", "s3", "--ring", "Q"]));
    assert!(s.contains("coefficients in Q"));
    assert!(s.contains("H_0 = Q\n") && s.contains("H_1 = 0\n"));
}

#[test]
fn refusal_prints_witness() {
    let o = steinhom(&["homology", "z2_trivial"]);
    assert_eq!(o.status.code(), Some(2));
    let s = stdout(&o);
    assert!(s.contains("witness: t strongly fixes the path e"));
    assert!(s.ends_with("status: refused\n"));
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(steinhom(&["homology", "no-such-file.json"]).status.code(), Some(1));
    let p = tmp("bad.json", r#"{"kind": "graph", "name": "x", "payload": {"vertices": 1}, "bogus": 1}"#);
    let o = steinhom(&["bf", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status: failed"));
    assert_eq!(steinhom(&["homology", "z2", "--window", "0"]).status.code(), Some(1));
    assert_eq!(steinhom(&["cyclic", "rose2"]).status.code(), Some(1));
}

#[test]
fn reads_instance_files_from_disk() {
    let body = steinhom_cli::corpus::lookup("z3").unwrap();
    let p = tmp("z3.json", body);
    let s = stdout(&steinhom(&["homology", p.to_str().unwrap()]));
    assert!(s.contains("H_3 = Z/3"));
}

#[test]
fn json_output_parses() {
    let o = steinhom(&["cyclic", "point", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["command"], "steinhom cyclic point --format json");
    let results = v["results"].as_array().unwrap();
    let hc: Vec<&str> = results
        .iter()
        .filter(|r| r["label"].as_str().unwrap().starts_with("HC_"))
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(hc, ["Z", "0", "Z", "0"]);
    assert!(results.iter().all(|r| !r["source"].as_str().unwrap().is_empty()));
}

#[test]
fn weighted_hochschild() {
    let s = stdout(&steinhom(&["hochschild", "ep_cohn_rose1", "--ring", "Q", "--window", "3", "--weight", "-2"]));
    assert!(s.contains("HH_0 (weight -2) = Q"));
    assert!(s.contains("HH_1 (weight -2) = Q"));
}

#[test]
fn ktheory_lists_assumptions() {
    let o = steinhom(&["ktheory", "ep_rose3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Farrell-Jones input groups supplied by user"));
    assert!(s.lines().any(|l| l.trim_start().starts_with("K_0") && l.ends_with("= Z/2")));
}

#[test]
fn verify_suite_passes() {
    let o = steinhom(&["verify", "bf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(steinhom(&["verify", "nonsense"]).status.code(), Some(1));
}

#[test]
fn every_corpus_file_is_bundled() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut on_disk: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    on_disk.sort();
    let mut bundled: Vec<String> = steinhom_cli::corpus::names().map(str::to_string).collect();
    bundled.sort();
    assert_eq!(on_disk, bundled);
}

#[test]
fn every_instance_loads() {
    for name in steinhom_cli::corpus::names() {
        let src = steinhom_cli::corpus::lookup(name).unwrap();
        if name.starts_with("units_") {
            assert!(steinhom::ep::UnitsPresentation::from_json(src).is_ok(), "{name}");
            continue;
        }
        assert!(steinhom_cli::verify::load(name).is_ok(), "{name}");
    }
}
