use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatcyl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_h31_is_ok() {
    let o = run(&["verify-appendix", "--kappa", "3,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("7 classes: OK\n"));
}

#[test]
fn verify_h22_reports_the_differences() {
    let o = run(&["verify-appendix", "--kappa", "2,2"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("10 classes, 7 expected: MISMATCH\n"));
    assert!(text.contains("~ h22_hyp item 3"));
}

#[test]
fn verify_unsupported_profile_is_a_usage_error() {
    assert_eq!(run(&["verify-appendix", "--kappa", "4"]).status.code(), Some(2));
}

#[test]
fn unknown_verbs_and_flags_are_rejected() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--kappa", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["replay", "--scenario", ""]).status.code(), Some(2));
}

#[test]
fn types_only_table() {
    let o = run(&["enumerate", "--kappa", "2,2", "--types-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn enumerate_writes_diagrams_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h4.txt");
    let o = run(&["enumerate", "--kappa", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("# summary:"));
    assert!(text.contains("pairings  feasible  infeasible"));

    let json = dir.path().join("h4.json");
    let o = run(&["enumerate", "--kappa", "4", "--format", "json", "--out", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["profile"], "(4)");
    assert!(!v["classes"].as_array().unwrap().is_empty());
}

#[test]
fn build_deform_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    let y = dir.path().join("y.txt");
    let r = dir.path().join("report.txt");
    let o = run(&[
        "build",
        "--appendix",
        "h31:1",
        "--heights",
        "1/2,1/2,1/2,1/2",
        "--twists",
        "0,0,1/2,0",
        "--out",
        x.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    // The third cylinder collapses at time 1/2.
    let o = run(&["deform", "--surface", x.to_str().unwrap(), "--rel", "3/5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["deform", "--surface", x.to_str().unwrap(), "--rel", "3/5", "--surgery", "--out", y.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", "--surface", y.to_str().unwrap(), "--report", r.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&r).unwrap().contains("notmixed: holds"));
}

#[test]
fn check_reports_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    // Decomposition B over Q(sqrt(2)); cylinders 1 and 4 are equivalent and
    // commensurable but have different heights.
    fs::write(
        &x,
        "D=2\nlengths=[1*sqrt(2),1,1,1*sqrt(2),1,1]\n\
         c=1;h=1;t=0;top=[1];bottom=[4]\n\
         c=2+1*sqrt(2);h=1;t=0;top=[3,4,5];bottom=[0,1,2]\n\
         c=1*sqrt(2);h=1;t=0;top=[0];bottom=[3]\n\
         c=1;h=2;t=0;top=[2];bottom=[5]\n",
    )
    .unwrap();
    let o = run(&["check", "--surface", x.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let height = v["verdicts"].as_array().unwrap().iter().find(|c| c["check"] == "height").unwrap();
    assert_eq!(height["status"], "violated");
}

#[test]
fn missing_file_is_an_io_error() {
    let o = run(&["check", "--surface", "/nonexistent/surface.txt"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn decompose_vertical_and_undetermined() {
    let o = run(&["decompose", "--appendix", "h22-b"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("D=0"));
    let o = run(&["decompose", "--appendix", "h22-b", "--direction", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["decompose", "--appendix", "h22-b", "--direction", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn replay_writes_the_log() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.txt");
    let o = run(&["replay", "--scenario", "h22_theorem", "--log", log.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&log).unwrap();
    assert!(text.starts_with("scenario h22_theorem\n"));
    assert!(text.contains("quotient genus 1"));
}

#[test]
fn export_svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let o = run(&["export-svg", "--appendix", "h22-odd:4", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let svg = fs::read(&a).unwrap();
    assert_eq!(svg, fs::read(&b).unwrap());
    assert_eq!(String::from_utf8(svg).unwrap().matches("<polygon").count(), 4);
}

#[test]
fn build_svg_format() {
    let o = run(&["build", "--appendix", "h31:7", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("<svg"));
}
