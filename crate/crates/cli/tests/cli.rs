use std::path::PathBuf;
use std::process::{Command, Output};

use chromastate::designs::OrthogonalArray;
use chromastate::WeightedGraph;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chromastate")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn inspect_reports_coloring() {
    let o = run(&["inspect", &fixture("six_cycle.graph")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("chi 2\n"));
    assert!(out.contains("classes [3, 3]\n"));
    let o = run(&["inspect", &fixture("triangle.graph")]);
    assert!(stdout(&o).contains("chi 3\n"));
}

#[test]
fn malformed_inputs_exit_two() {
    let o = run(&["inspect", &fixture("malformed_self_loop.graph")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("self-loop"));
    for name in ["malformed_dim", "malformed_range", "malformed_conflict", "malformed_directive"] {
        let o = run(&["inspect", &fixture(&format!("{name}.graph"))]);
        assert_eq!(o.status.code(), Some(2), "{name}");
    }
    let o = run(&["inspect", "/nonexistent/graph"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn closed_form_strings() {
    let o = run(&["closed-form", &fixture("six_cycle.graph")]);
    assert!(stdout(&o).contains("i1+i2, i2+i3, i3+i1"));
    let o = run(&["closed-form", &fixture("six_two_uniform.graph")]);
    assert!(stdout(&o).contains("w^(i1*i3 + i4*i5)"));
    let o = run(&["closed-form", "--unicode", &fixture("six_two_uniform.graph")]);
    assert!(stdout(&o).contains("ω^{i1·i3+i4·i5}"));
    let o = run(&["closed-form", "--special", &fixture("special_ex1.graph")]);
    assert!(stdout(&o).contains("[X^(i1+i2+i3+i4) Z^(i1+i2+i3+i4) X^(i1+i2+i3+i4)]"));
    let names = std::fs::read_to_string(fixture("names_special_ex1.txt")).unwrap();
    let o = run(&["closed-form", "--special", "--index-names", names.trim(), &fixture("special_ex1.graph")]);
    assert!(stdout(&o).contains("X^(i+j+k+l) Z^(i+j+k+l) X^(i+j+k+l)"));
}

#[test]
fn closed_form_color_hint_override() {
    let o = run(&["closed-form", "--color-hint", "0,1,1,0,0,2", &fixture("ame_six.graph")]);
    assert_eq!(o.status.code(), Some(2), "improper hint is an input error");
    let o = run(&["closed-form", "--special", &fixture("triangle.graph")]);
    assert!(stdout(&o).contains("special rejected"));
}

#[test]
fn verify_fidelity() {
    let o = run(&["verify", &fixture("six_cycle.graph")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("fidelity 1.000000000000\n"));
    let o = run(&["verify", "--d-override", "3", &fixture("ame_six.graph")]);
    assert!(o.status.success());
    let o = run(&["verify", "--d-override", "4", &fixture("six_cycle.graph")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_rejects_corrupted_form() {
    let o = run(&["verify", "--corrupt", &fixture("six_cycle.graph")]);
    assert_ne!(o.status.code(), Some(0));
    assert!(!stdout(&o).starts_with("fidelity 1.000000000000"));
}

#[test]
fn designs_header_and_file() {
    let o = run(&["designs", &fixture("six_cycle.graph")]);
    assert!(stdout(&o).starts_with("OA 8 6 2 2\n"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oa.txt");
    let o = run(&["designs", "--qoa", "--oa-out", path.to_str().unwrap(), &fixture("six_cycle.graph")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("k_star 2"));
    let oa = OrthogonalArray::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((oa.rows(), oa.cols(), oa.strength()), (8, 6, 2));
}

#[test]
fn bounds_lines() {
    let o = run(&["bounds", &fixture("six_cycle.graph")]);
    let out = stdout(&o);
    assert!(out.contains("term_lower 8\n"));
    assert!(out.contains("lower_rank 2\n"));
    let o = run(&["bounds", &fixture("triangle.graph")]);
    let out = stdout(&o);
    assert!(out.contains("upper 2\n"));
    assert!(out.contains("term_upper -\n"));
}

fn strip_comments(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n")
}

#[test]
fn lc_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.graph");
    let twice = dir.path().join("twice.graph");
    let o = run(&["lc", "--vertex", "0", "--out", once.to_str().unwrap(), &fixture("triangle.graph")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("lc fidelity 1.000000000000"));
    let p3 = WeightedGraph::parse(&std::fs::read_to_string(&once).unwrap()).unwrap();
    assert_eq!(p3.edges().len(), 2);
    assert!(!p3.is_adjacent(1, 2));
    let o = run(&["lc", "--vertex", "0", "--out", twice.to_str().unwrap(), once.to_str().unwrap()]);
    assert!(o.status.success());
    let original = std::fs::read_to_string(fixture("triangle.graph")).unwrap();
    let back = std::fs::read_to_string(&twice).unwrap();
    let canonical = WeightedGraph::parse(&original).unwrap().to_file_string(&[]);
    assert_eq!(strip_comments(&back), strip_comments(&canonical));
}

#[test]
fn kuniform_report() {
    let o = run(&["kuniform", &fixture("six_cycle.graph")]);
    assert!(stdout(&o).contains("k_uniformity 2\n"));
}

#[test]
fn json_reports_are_deterministic() {
    let file = fixture("ame_six.graph");
    let args = ["--format", "json", "closed-form", "--special", file.as_str()];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "closed-form");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(v["results"]["closed_form"]["term_count"], "81");
    assert_eq!(v["results"]["special"]["status"], "rejected");
}

#[test]
fn json_for_every_command() {
    let file = fixture("six_cycle.graph");
    for cmd in [
        vec!["inspect"],
        vec!["verify"],
        vec!["designs", "--qoa"],
        vec!["bounds"],
        vec!["lc", "--vertex", "1"],
        vec!["kuniform"],
    ] {
        let mut args = vec!["--format", "json"];
        args.extend(&cmd);
        args.push(&file);
        let o = run(&args);
        assert!(o.status.success(), "{cmd:?}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["command"], cmd[0]);
    }
}

#[test]
fn cap_exceeded_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_chromastate"))
        .args(["verify", &fixture("six_cycle.graph")])
        .env("CHROMASTATE_AMP_CAP", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap"));
}
