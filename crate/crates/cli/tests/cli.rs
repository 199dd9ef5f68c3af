use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn nid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nid")).args(args).output().unwrap()
}

fn nid_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn run(args: &[&str], file: &str) -> Value {
    let path = fixture(file);
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    json(&nid(&all))
}

#[test]
fn help_lists_every_subcommand_and_the_cap_variable() {
    let out = nid(&["--help"]);
    assert!(out.status.success());
    let help = String::from_utf8(out.stdout).unwrap();
    for cmd in [
        "closed", "minimal", "generators", "full", "lfp", "classify", "prime-ideals", "bisim", "fullness", "sga",
        "game", "linext", "points", "flat", "morphisms", "mtype", "verify",
    ] {
        assert!(help.contains(&format!("  {cmd} ")), "missing {cmd}");
    }
    assert!(help.contains("NID_MAX_UNIVERSE"));
    assert!(!help.contains("perturb"));
}

#[test]
fn exit_codes() {
    assert_eq!(nid(&["bogus"]).status.code(), Some(2));
    assert_eq!(nid_stdin(&["closed"], "{\"kind\":\"rules\"").status.code(), Some(2));
    assert_eq!(nid_stdin(&["closed"], r#"{"kind":"rules","universe":["a"],"rules":[{"all_of":["b"]}]}"#).status.code(), Some(2));
    assert_eq!(nid_stdin(&["points"], r#"{"kind":"ring","modulus":4}"#).status.code(), Some(2));
    assert_eq!(nid_stdin(&["game"], "p -> (q").status.code(), Some(2));
    // nondeterministic rules have no least fixed point
    let nondet = r#"{"kind":"rules","universe":["a","b"],"rules":[{"one_of":["a","b"]}]}"#;
    assert_eq!(nid_stdin(&["lfp"], nondet).status.code(), Some(1));
    assert_eq!(nid_stdin(&["full", "--mode", "greatest"], nondet).status.code(), Some(1));
    let wide = r#"{"kind":"ring","modulus":30}"#;
    assert_eq!(nid_stdin(&["prime-ideals", "--max-universe", "20"], wide).status.code(), Some(1));
    let capped = Command::new(env!("CARGO_BIN_EXE_nid"))
        .args(["prime-ideals", fixture("ring12.json").to_str().unwrap()])
        .env("NID_MAX_UNIVERSE", "8")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
}

#[test]
fn rule_commands() {
    assert_eq!(run(&["closed"], "r1.json")["closed"], serde_json::json!([[], ["2"], ["1", "2"]]));
    assert_eq!(run(&["minimal"], "r1.json")["minimal"], serde_json::json!([[]]));
    assert_eq!(run(&["generators"], "r1.json")["generators"], serde_json::json!([["2"], ["1", "2"]]));
    assert_eq!(run(&["full", "--mode", "maximal"], "r1.json")["maximal"], serde_json::json!([["1", "2"]]));
    assert_eq!(run(&["lfp"], "r1.json")["lfp"], serde_json::json!([]));
    let c = run(&["classify"], "r1.json");
    assert_eq!(c["elementary"], true);
    assert_eq!(c["deterministic"], true);
}

#[test]
fn seeded_lfp_from_stdin() {
    let doc = r#"{"kind":"rules","universe":["a","b","c"],"rules":[{"all_of":["a"],"one_of":["b"]},{"all_of":["a","b"],"one_of":["c"]}],"seed":["a"]}"#;
    assert_eq!(json(&nid_stdin(&["lfp", "-"], doc))["lfp"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn encoding_commands() {
    let b = run(&["bisim"], "graphs.json");
    assert_eq!(b["bisimilar"], true);
    assert_eq!(b["greatest"], serde_json::json!(["(a0,b0)", "(a1,b0)"]));
    assert_eq!(run(&["fullness"], "fullness.json")["full-relations"].as_array().unwrap().len(), 4);
    let s = run(&["sga"], "sga.json");
    assert_eq!(s["models"], serde_json::json!([[], ["u"], ["s", "u"]]));
}

#[test]
fn logic_and_topology_commands() {
    assert_eq!(run(&["game"], "theory.json")["models"].as_array().unwrap().len(), 5);
    assert_eq!(run(&["game", "--mode", "minimal"], "theory.txt")["minimal-models"], serde_json::json!([[]]));
    assert_eq!(
        run(&["linext"], "poset.json")["linear-extensions"],
        serde_json::json!([["x", "y", "z"], ["x", "z", "y"]])
    );
    assert_eq!(run(&["flat"], "sierpinski.json")["flat"], false);
    assert_eq!(run(&["morphisms"], "spaces.json")["morphisms"], serde_json::json!([["(t,p)", "(u,p)"]]));
    assert_eq!(run(&["morphisms", "--mode", "target"], "spaces.json")["morphisms"].as_array().unwrap().len(), 2);
}

#[test]
fn mtype_command() {
    let m = run(&["mtype", "--depth", "1"], "trees.json");
    assert_eq!(m["equal"], false);
    assert_eq!(m["wellfounded"], serde_json::json!(["y", "w"]));
    assert_eq!(
        m["trees"]["x"],
        serde_json::json!([["node"], ["node", "r", "node"], ["node", "l", "leaf"]])
    );
}

#[test]
fn verify_every_fixture() {
    for f in [
        "r1.json",
        "ring12.json",
        "graphs.json",
        "poset.json",
        "sierpinski.json",
        "spaces.json",
        "trees.json",
        "theory.json",
        "theory.txt",
        "sga.json",
        "fullness.json",
    ] {
        let report = run(&["verify"], f);
        assert_eq!(report["passed"], true, "{f}: {report}");
        assert!(!report["checks"].as_array().unwrap().is_empty());
        let perturbed = nid(&["verify", "--perturb", fixture(f).to_str().unwrap()]);
        assert_eq!(perturbed.status.code(), Some(1), "{f}");
    }
}

#[test]
fn output_is_canonical() {
    let a = nid(&["closed", "--pretty", fixture("r1.json").to_str().unwrap()]);
    let b = nid(&["closed", "--pretty", fixture("r1.json").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("\":"))
        .filter_map(|l| l.trim().strip_prefix('"')?.split('"').next())
        .collect();
    assert_eq!(keys, ["closed", "input-digest", "kind"]);
}
