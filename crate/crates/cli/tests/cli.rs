//! End-to-end runs of the command line through `run`.

use std::fs;
use std::path::{Path, PathBuf};

use chdigraph_cli::{run, EXIT_USAGE};

fn chdg(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("chdg").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chdg-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn gen_to(spec: &str, name: &str) -> PathBuf {
    let path = scratch(name);
    let (code, _, err) = chdg(&["gen", spec, "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let (code, first, _) = chdg(&["gen", "M(kappa=3,m=2,r=4)"]);
    assert_eq!(code, 0);
    let (_, second, _) = chdg(&["gen", "M(kappa=3,m=2,r=4)"]);
    assert_eq!(first, second);
    let path = scratch("m32.json");
    fs::write(&path, &first).unwrap();
    let doc = chdigraph_cli::document::DigraphDocument::from_json(&first).unwrap();
    assert_eq!(doc.to_json(), first);
    assert_eq!(doc.spec.as_deref(), Some("M(kappa=3,m=2,r=4)"));
    let (code, text, _) = chdg(&["iso", p(&path), p(&path), "--respect-boundary"]);
    assert_eq!((code, text.as_str()), (0, "isomorphic\n"));
}

#[test]
fn gen_dot() {
    let (code, text, _) = chdg(&["gen", "CP(kappa=3)", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("digraph G {"));
    assert_eq!(text.matches(" -> ").count(), 6);
}

#[test]
fn line_digraph_matches_mprime() {
    let line = gen_to("line_of(DL(C(m=2),r=5))", "line.json");
    let mp = gen_to("Mprime(m=2,r=4)", "mp.json");
    let (code, text, _) = chdg(&["iso", p(&line), p(&mp), "--respect-boundary"]);
    assert_eq!((code, text.as_str()), (0, "isomorphic\n"));
    let other = gen_to("M(kappa=3,m=2,r=4)", "other.json");
    let (code, text, _) = chdg(&["iso", p(&line), p(&other)]);
    assert_eq!((code, text.as_str()), (1, "not isomorphic\n"));
}

#[test]
fn check_exit_codes() {
    let tri = gen_to("tournament(kind=triangle)", "tri.json");
    assert_eq!(chdg(&["check", p(&tri), "--prop", "homog"]).0, 0);
    assert_eq!(chdg(&["check", p(&tri), "--prop", "triangle-free"]).0, 1);
    let tt3 = gen_to("tournament(kind=linear,n=3)", "tt3.json");
    let (code, text, _) = chdg(&["check", p(&tt3), "--prop", "homog"]);
    assert_eq!(code, 1);
    assert!(text.contains("witness:"), "{text}");
    let m = gen_to("M(kappa=3,m=2,r=5)", "m.json");
    assert_eq!(chdg(&["check", p(&m), "--prop", "triangle-free"]).0, 0);
    assert_eq!(chdg(&["check", p(&m), "--prop", "homog"]).0, EXIT_USAGE);
    let (code, text, _) = chdg(&["check", p(&m), "--prop", "arc-trans", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(text.matches("pass_local").count(), 3, "{text}");
}

#[test]
fn reach_cuts_classify() {
    let m = gen_to("M(kappa=3,m=2,r=6)", "m6.json");
    let (code, text, _) = chdg(&["reach", p(&m)]);
    assert_eq!(code, 0);
    assert!(text.contains("reachability digraph: 6 vertices, 6 edges"), "{text}");
    let (code, text, _) = chdg(&["reach", p(&m), "--edge", "0,1"]);
    assert_eq!(code, 0);
    assert!(text.contains("6 vertices, 6 edges"), "{text}");
    let dot = scratch("tree.dot");
    let (code, text, _) = chdg(&["cuts", p(&m), "--dot", p(&dot)]);
    assert_eq!(code, 0);
    assert!(text.starts_with("cuts: 58 of order 2"), "{text}");
    assert!(fs::read_to_string(&dot).unwrap().contains("shape=box"));
    let (code, text, _) = chdg(&["classify", p(&m)]);
    assert_eq!(code, 0);
    assert!(text.starts_with("TypeII case=M M(kappa=3,m=2)"), "{text}");
}

#[test]
fn bad_inputs_exit_two() {
    let junk = scratch("junk.json");
    fs::write(&junk, "{\"format\":\"nope\"}").unwrap();
    assert_eq!(chdg(&["classify", p(&junk)]).0, EXIT_USAGE);
    assert_eq!(chdg(&["classify", "/nonexistent/file.json"]).0, EXIT_USAGE);
    assert_eq!(chdg(&["check", p(&junk)]).0, EXIT_USAGE);
    assert_eq!(chdg(&["gen", "M(kappa=3,m=2)"]).0, EXIT_USAGE);
}
