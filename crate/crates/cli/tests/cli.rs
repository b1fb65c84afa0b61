use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubeforge"))
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden").join(name)).unwrap()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn generate_rose_matches_golden() {
    let o = run(&["generate", "--preset", "rose", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("rose3.cube"));
}

#[test]
fn generated_surface_is_the_fixture() {
    let o = run(&["generate", "--preset", "surface:2"]);
    let fixture = std::fs::read_to_string(fixture("surface2.cube")).unwrap();
    assert_eq!(stdout(&o), fixture);
}

#[test]
fn surface_genus_with_oracle() {
    let o = run(&["genus", &fixture("surface2.cube"), "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("genus: 2\nwitness: ["), "{text}");
    assert!(text.contains("agree: true"));
}

#[test]
fn f2_torelli_passes() {
    let o = run(&["torelli", &fixture("f2.graph"), "--partitions", "P0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass: 11/11 nontrivial on H1\n"));
}

#[test]
fn whitehead_and_hierarchy_match_golden() {
    assert_eq!(stdout(&run(&["whitehead", &fixture("f2.graph")])), golden("f2_whitehead.txt"));
    assert_eq!(
        stdout(&run(&["hierarchy", &fixture("surface2.cube")])),
        golden("surface2_hierarchy.txt")
    );
}

#[test]
fn structured_homology_matches_golden() {
    let o = run(&["--format", "structured", "homology", &fixture("surface2.cube")]);
    assert_eq!(stdout(&o), golden("surface2_homology.json"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "structured", "blowup", &fixture("f2.graph"), "--partitions", "P0"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    for _ in 0..3 {
        assert_eq!(run(&args).stdout, first.stdout);
    }
}

#[test]
fn stdin_input_has_the_same_digest_as_the_file() {
    let path = fixture("surface2.cube");
    let text = std::fs::read_to_string(&path).unwrap();
    let from_file = run(&["--format", "structured", "npc", &path]);
    let from_stdin = run_stdin(&["--format", "structured", "npc", "-"], &text);
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn malformed_input_exits_with_two() {
    let o = run_stdin(&["validate", "-"], "{\"cubes\": [");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_file_exits_with_two() {
    let o = run(&["npc", "/nonexistent/input.cube"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_hyperplane_and_partition_exit_with_two() {
    assert_eq!(run(&["collapse", &fixture("surface2.cube"), "--hyperplane", "zz"]).status.code(), Some(2));
    assert_eq!(run(&["blowup", &fixture("f2.graph"), "--partitions", "P9"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--preset", "klein"]).status.code(), Some(2));
}

#[test]
fn failed_verdicts_exit_with_one() {
    // rose:2 has genus two, so it cannot be normalised as a torus.
    let rose = run(&["generate", "--preset", "rose", "--n", "2"]);
    let o = run_stdin(&["normalize-genus1", "-"], &stdout(&rose));
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["criterion", &fixture("surface2.cube")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: fail"));
}

#[test]
fn torus_collapse_has_no_product_neighbourhood() {
    let torus = stdout(&run(&["generate", "--preset", "torus"]));
    let o = run_stdin(&["collapse", "-", "--hyperplane", "0"], &torus);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn split_output_parses_back() {
    let o = run(&["split", &fixture("surface2.cube"), "--hyperplane", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = run_stdin(&["validate", "-"], &stdout(&o));
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("valid: true"));
}

#[test]
fn seed_is_recorded_only_in_structured_output() {
    let o = run(&["--format", "structured", "--seed", "42", "genus", &fixture("surface2.cube")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["results"]["genus"], 2);
    assert!(Path::new(&fixture("f2.graph")).exists());
}

#[test]
fn incompatible_partitions_are_an_input_error() {
    let o = run(&["blowup", &fixture("f2.graph"), "--partitions", "P0,P1"]);
    assert_eq!(o.status.code(), Some(2));
}
