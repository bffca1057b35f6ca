use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const THETA: &str =
    r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","b"]]}"#;
const BANANA: &str = r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"]]}"#;
const LOOP: &str = r#"{"vertices":["v"],"edges":[["e","v","v"]]}"#;
const K4: &str = r#"{"vertices":["a","b","c","d"],"edges":[["e1","a","b"],["e2","a","c"],["e3","a","d"],["e4","b","c"],["e5","b","d"],["e6","c","d"]]}"#;

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("upsilon-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_upsilon"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path =
        Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("../../docs/schema/{name}.schema.json"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft202012)
        .compile(&doc)
        .unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("{name} schema violations: {msgs:?}");
}

#[test]
fn motive_all_methods_agree() {
    let s = Scratch::new("motive");
    let theta = s.file("theta.json", THETA);
    let out = run(&["motive", &theta, "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("L^4 - L^3 + 3L^2 - L + 1").count(), 3);

    let out = run(&["--json", "motive", &theta]);
    let v = json(&out);
    assert_valid("motive", &v);
    assert_eq!(v["motives"]["closed"], serde_json::json!([1, -1, 3, -1, 1]));
}

#[test]
fn delcon_on_loop_is_usage_error() {
    let s = Scratch::new("loop");
    let path = s.file("loop.json", LOOP);
    assert_eq!(
        run(&["delcon", &path, "--edge", "e"]).status.code(),
        Some(2)
    );
    let out = run(&["--json", "delcon", &path, "--edge", "e"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_valid("error", &v);
    assert_eq!(v["error"]["kind"], "usage");
}

#[test]
fn pw_banana_counts_26() {
    let s = Scratch::new("pw");
    let path = s.file("banana.json", BANANA);
    let out = run(&["--json", "pw", &path, "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("pw", &v);
    assert_eq!(v["report"]["point_counts"][0]["count"], "26");
    assert!(v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["ok"] == true));
}

#[test]
fn failed_identity_exits_one() {
    let s = Scratch::new("k4");
    let path = s.file("k4.json", K4);
    let out = run(&["--json", "pw", &path]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_valid("pw", &v);
    let failed: Vec<&str> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["ok"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["deletion_equals_grading"]);
}

#[test]
fn every_command_matches_its_schema() {
    let s = Scratch::new("schema");
    let theta = s.file("theta.json", THETA);
    let banana = s.file("banana.json", BANANA);
    for (name, args) in [
        (
            "cohomology",
            vec!["cohomology", theta.as_str(), "--ring", "integers"],
        ),
        ("delcon", vec!["delcon", theta.as_str(), "--edge", "e2"]),
        (
            "count",
            vec!["count", banana.as_str(), "--q", "7", "--eta", "3,5"],
        ),
        ("check", vec!["check", banana.as_str()]),
        (
            "random",
            vec!["random", "--vertices", "4", "--edges", "6", "--seed", "9"],
        ),
    ] {
        let mut full = vec!["--json"];
        full.extend(args);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_valid(name, &json(&out));
    }
}

#[test]
fn usage_errors() {
    let s = Scratch::new("usage");
    let banana = s.file("banana.json", BANANA);
    let broken = s.file(
        "broken.json",
        r#"{"vertices":["a"],"edges":[["e","a","z"]]}"#,
    );
    for args in [
        vec!["count", banana.as_str(), "--q", "4"],
        vec!["count", banana.as_str(), "--q", "5", "--eta", "1,1"],
        vec!["cohomology", broken.as_str()],
        vec!["cohomology", "/nonexistent/graph.json"],
        vec!["motive", banana.as_str(), "--method", "magic"],
        vec!["random", "--vertices", "0", "--edges", "2"],
    ] {
        let mut full = vec!["--json"];
        full.extend(args.iter().copied());
        let out = run(&full);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_valid("error", &json(&out));
    }
}

#[test]
fn random_documents_round_trip() {
    let s = Scratch::new("random");
    let out = run(&["random", "--vertices", "3", "--edges", "5", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = String::from_utf8(out.stdout).unwrap();
    assert_valid("graph", &serde_json::from_str(&doc).unwrap());
    let path = s.file("g.json", &doc);
    let a = run(&["--json", "cohomology", &path]);
    let b = run(&["--json", "cohomology", &path]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn thread_count_from_environment() {
    let s = Scratch::new("threads");
    let theta = s.file("theta.json", THETA);
    let one = Command::new(env!("CARGO_BIN_EXE_upsilon"))
        .env("UPSILON_THREADS", "1")
        .args(["--json", "cohomology", &theta])
        .output()
        .unwrap();
    let many = run(&["--json", "cohomology", &theta]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
