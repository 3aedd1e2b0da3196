//! End-to-end runs of the binary: exit codes, file round trips, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layerspan")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn caterpillar_has_span_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "caterpillar.json");
    let o = run(&["gen", "--family", "random-caterpillar", "--n", "4", "--ell", "2", "--seed", "3", "-o", s(&g)]);
    assert_eq!(code(&o), 0);
    let o = run(&["span", "--method", "exact", "--k", "1", s(&g)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["feasible"], true);
}

#[test]
fn triangle_needs_span_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "triangle-st.json");
    std::fs::write(&g, r#"{"vertices":["s","a","t"],"edges":[["s","a"],["a","t"],["s","t"]]}"#).unwrap();
    assert_eq!(code(&run(&["span", "--method", "flow", "--k", "1", s(&g)])), 1);
    let o = run(&["span", "--method", "flow", "--k", "2", s(&g)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["span"], 2);
    let o = run(&["span", "--method", "auto", "--k", "2", s(&g)]);
    assert_eq!(stdout_json(&o)["method"], "flow");
}

#[test]
fn witness_drawing_checks_with_span_two() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "instance.json");
    std::fs::write(&inst, r#"{"a": [1, 1, 1, 2, 2, 3]}"#).unwrap();
    for variant in ["single-source", "tree"] {
        let gadget = path(dir.path(), &format!("gadget-{variant}.json"));
        let out = path(dir.path(), &format!("drawing-{variant}"));
        assert_eq!(code(&run(&["reduce3p", "--variant", variant, s(&inst), "-o", s(&gadget)])), 0);
        let o = run(&["witness", "--variant", variant, "--partition", "1,2,2;1,1,3", s(&inst), "-o", s(&out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let o = run(&["check", s(&out.with_extension("json")), "--graph", s(&gadget)]);
        assert_eq!(code(&o), 0, "{variant}: {}", String::from_utf8_lossy(&o.stdout));
        assert_eq!(stdout_json(&o)["span"], 2);
        assert!(out.with_extension("svg").exists());
    }
    // no valid partition of these numbers exists
    std::fs::write(&inst, r#"[1, 1, 1, 1, 1, 7]"#).unwrap();
    assert_eq!(code(&run(&["witness", "--variant", "tree", s(&inst)])), 1);
    assert_eq!(code(&run(&["witness", "--variant", "tree", "--partition", "1,1,1;1,1,7", s(&inst)])), 2);
}

#[test]
fn every_draw_output_passes_check() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (vec!["--family", "random-caterpillar", "--n", "5"], "caterpillar"),
        (vec!["--family", "Td", "--d", "3", "--root", "source"], "source-sink"),
        (vec!["--family", "random-tree", "--n", "30"], "bounded-indegree"),
        (vec!["--family", "random-tree", "--n", "30"], "greedy"),
        (vec!["--family", "random-st", "--n", "9"], "flow"),
    ];
    for (i, (family, algo)) in cases.iter().enumerate() {
        let g = path(dir.path(), &format!("g{i}.json"));
        let d = path(dir.path(), &format!("d{i}"));
        let mut args = vec!["gen", "--seed", "11"];
        args.extend(family);
        args.extend(["-o", s(&g)]);
        assert_eq!(code(&run(&args)), 0);
        let o = run(&["draw", "--algo", algo, s(&g), "-o", s(&d)]);
        assert_eq!(code(&o), 0, "{algo}: {}", String::from_utf8_lossy(&o.stderr));
        let o = run(&["check", s(&d.with_extension("json")), "--graph", s(&g)]);
        assert_eq!(code(&o), 0, "{algo}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn spiral_respects_its_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "spiral.json");
    assert_eq!(code(&run(&["gen", "--family", "spiral-path", "--n", "6", "-o", s(&g)])), 0);
    let d = path(dir.path(), "best");
    let o = run(&["span", "--method", "exact", s(&g), "-o", s(&d)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["min_span"], 3);
    let o = run(&["check", s(&d.with_extension("json")), "--graph", s(&g), "--embedding"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    // a path drawn freely is a straight line of span 1, which is not this embedding
    let free = path(dir.path(), "free");
    assert_eq!(code(&run(&["span", "--method", "exact", "--free", s(&g), "-o", s(&free)])), 0);
    let o = run(&["check", s(&free.with_extension("json")), "--graph", s(&g), "--embedding"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["check", s(&free.with_extension("json")), "--graph", s(&g)])), 0);
}

#[test]
fn kernel_verb_and_method() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "k.json");
    assert_eq!(code(&run(&["gen", "--family", "k22s", "--s", "2", "-o", s(&g)])), 0);
    let tags: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let poles = tags["tags"]["poles"].as_array().unwrap();
    let cover = format!("{},{}", poles[0].as_str().unwrap(), poles[1].as_str().unwrap());
    let o = run(&["kernel", s(&g), "--cover", &cover]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["k"], 2);
    assert_eq!(code(&run(&["span", "--method", "kernel", "--k", "2", "--cover", &cover, s(&g)])), 1);
    assert_eq!(code(&run(&["span", "--method", "kernel", "--k", "3", "--cover", &cover, s(&g)])), 0);
}

#[test]
fn outputs_are_deterministic() {
    let a = run(&["gen", "--family", "random-upward", "--n", "10", "--seed", "5"]);
    let b = run(&["gen", "--family", "random-upward", "--n", "10", "--seed", "5"]);
    let c = run(&["gen", "--family", "random-upward", "--n", "10", "--seed", "6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "t.json");
    std::fs::write(&g, &a.stdout).unwrap();
    let x = run(&["draw", "--algo", "greedy", s(&path(dir.path(), "missing.json"))]);
    assert_eq!(code(&x), 2);
    let d1 = run(&["span", "--method", "xp", "--k", "3", s(&g)]);
    let d2 = run(&["span", "--method", "xp", "--k", "3", s(&g)]);
    assert_eq!(d1.stdout, d2.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["gen", "--family", "nope"])), 2);
    assert_eq!(code(&run(&["gen", "--family", "Td"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "p.json");
    std::fs::write(&g, r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#).unwrap();
    assert_eq!(code(&run(&["span", "--method", "flow", s(&g)])), 2);
    assert_eq!(code(&run(&["span", "--method", "xp", "--k", "1", s(&g)])), 2);
    assert_eq!(code(&run(&["draw", "--algo", "caterpillar", s(&g), "--format", "svg"])), 0);
}
