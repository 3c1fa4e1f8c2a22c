use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn racforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_racforge")).args(args).env_remove("RACFORGE_SEED").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FIGURE_CNF: &str = "c figure instance\np cnf 3 3\n1 2 3 0\n-1 -2 -3 0\n-1 -2 3 0\n";

#[test]
fn seed_drawing_checks_and_renders() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    assert_eq!(code(&racforge(&["gen-antiprism", "--k", "4", "--drawing", "a", "--out", s(&a)])), 0);
    let o = racforge(&["check", "--drawing", s(&a)]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["is_rac"], true);
    assert_eq!(report["crossings"].as_array().unwrap().len(), 4);
    assert_eq!(code(&racforge(&["diagnose", "--drawing", s(&a)])), 0);
    let svg1 = racforge(&["svg", "--drawing", s(&a)]);
    let svg2 = racforge(&["svg", "--drawing", s(&a)]);
    assert_eq!(code(&svg1), 0);
    assert_eq!(svg1.stdout, svg2.stdout);
    assert_eq!(String::from_utf8(svg1.stdout).unwrap().matches("class=\"right-angle\"").count(), 4);
}

#[test]
fn non_rac_drawing_exits_one() {
    let dir = TempDir::new().unwrap();
    let d = path(&dir, "d.json");
    std::fs::write(
        &d,
        r#"{"graph": {"vertices": ["a", "b", "c", "d"], "edges": [["a", "b"], ["c", "d"]]},
            "positions": {"a": ["0", "0"], "b": ["2", "2"], "c": ["0", "2"], "d": ["3", "0"]}}"#,
    )
    .unwrap();
    assert_eq!(code(&racforge(&["check", "--drawing", s(&d)])), 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, r#"{"vertices": ["a"], "edges": [["a", "z"]]}"#).unwrap();
    let o = racforge(&["optimize", "--graph", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
    assert_eq!(code(&racforge(&["check", "--drawing", s(&path(&dir, "missing.json"))])), 2);
    assert_eq!(code(&racforge(&["gen-antiprism", "--k", "2"])), 2);
    let cnf = path(&dir, "f.cnf");
    std::fs::write(&cnf, FIGURE_CNF).unwrap();
    assert_eq!(code(&racforge(&["synthesize", "--cnf", s(&cnf), "--assignment", "10"])), 2);
    // clap usage errors use the same code
    assert_eq!(code(&racforge(&["check"])), 2);
}

#[test]
fn figure_pipeline() {
    let dir = TempDir::new().unwrap();
    let cnf = path(&dir, "f.cnf");
    std::fs::write(&cnf, FIGURE_CNF).unwrap();
    let (g, labels, d, report) = (path(&dir, "g.json"), path(&dir, "l.json"), path(&dir, "d.json"), path(&dir, "r.json"));
    assert_eq!(code(&racforge(&["compile-cnf", "--cnf", s(&cnf), "--out", s(&g), "--labels-out", s(&labels)])), 0);
    for form in ["101", "1,0,1", "true,false,true", "1 -2 3"] {
        let o = racforge(&["synthesize", "--cnf", s(&cnf), "--assignment", form, "--out", s(&d), "--report", s(&report)]);
        assert_eq!(code(&o), 0, "{form}");
    }
    assert_eq!(code(&racforge(&["check", "--drawing", s(&d)])), 0);
    let o = racforge(&["extract-assignment", "--drawing", s(&d), "--labels", s(&labels), "--cnf", s(&cnf)]);
    assert_eq!(code(&o), 0);
    let out: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(out["assignment"], serde_json::json!([true, false, true]));
    assert_eq!(out["satisfies"], true);
    // falsifying assignment: x1 = x2 = true, x3 = false
    assert_eq!(code(&racforge(&["synthesize", "--cnf", s(&cnf), "--assignment", "110"])), 1);
    let unsat = path(&dir, "u.cnf");
    std::fs::write(&unsat, "p cnf 3 8\n1 2 3 0\n1 2 -3 0\n1 -2 3 0\n1 -2 -3 0\n-1 2 3 0\n-1 2 -3 0\n-1 -2 3 0\n-1 -2 -3 0\n").unwrap();
    assert_eq!(code(&racforge(&["synthesize", "--cnf", s(&unsat)])), 1);
}

#[test]
fn extend_graphs_and_drawings() {
    let dir = TempDir::new().unwrap();
    let (g, a, e) = (path(&dir, "g.json"), path(&dir, "a.json"), path(&dir, "e.json"));
    racforge(&["gen-antiprism", "--k", "4", "--out", s(&g)]);
    racforge(&["gen-antiprism", "--k", "4", "--drawing", "a", "--out", s(&a)]);
    let o = racforge(&["extend", "--left", s(&g), "--right", s(&g)]);
    assert_eq!(code(&o), 0);
    let graph: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(graph["vertices"].as_array().unwrap().len(), 16);
    assert_eq!(graph["edges"].as_array().unwrap().len(), 48);
    assert_eq!(code(&racforge(&["extend", "--left", s(&a), "--right", s(&a), "--mode", "vertical", "--out", s(&e)])), 0);
    assert_eq!(code(&racforge(&["check", "--drawing", s(&e)])), 0);
}

#[test]
fn optimize_is_seeded_and_env_overrides_config() {
    let dir = TempDir::new().unwrap();
    let (g, cfg) = (path(&dir, "g.json"), path(&dir, "cfg.json"));
    racforge(&["gen-antiprism", "--k", "4", "--out", s(&g)]);
    std::fs::write(&cfg, r#"{"seed": 3, "max_iterations": 300}"#).unwrap();
    let run = |extra: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_racforge"));
        c.args(["optimize", "--graph", s(&g), "--config", s(&cfg)]).args(extra).env_remove("RACFORGE_SEED");
        if let Some(v) = env {
            c.env("RACFORGE_SEED", v);
        }
        c.output().unwrap().stdout
    };
    let base = run(&[], None);
    assert_eq!(base, run(&[], None));
    assert_eq!(run(&[], Some("9")), run(&["--seed", "9"], None));
    assert_eq!(run(&["--seed", "3"], Some("9")), base);
    assert_ne!(run(&["--seed", "9"], None), base);
    std::fs::write(&cfg, r#"{"sead": 3}"#).unwrap();
    assert_eq!(code(&racforge(&["optimize", "--graph", s(&g), "--config", s(&cfg)])), 2);
}

#[test]
fn survey_reports_one_class_for_the_antiprism() {
    let dir = TempDir::new().unwrap();
    let (g, a, b) = (path(&dir, "g.json"), path(&dir, "a.json"), path(&dir, "b.json"));
    racforge(&["gen-antiprism", "--k", "4", "--out", s(&g)]);
    racforge(&["gen-antiprism", "--k", "4", "--drawing", "a", "--out", s(&a)]);
    racforge(&["gen-antiprism", "--k", "4", "--drawing", "b", "--out", s(&b)]);
    let o = racforge(&[
        "survey", "--graph", s(&g), "--restarts", "10", "--start-drawing", s(&a), "--start-drawing", s(&b), "--perturbed", "3",
    ]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["runs"], 16);
    assert_eq!(r["classes"].as_object().unwrap().len(), 1);
}

#[test]
fn float_svg_renders_optimized_layout() {
    let dir = TempDir::new().unwrap();
    let (g, d) = (path(&dir, "g.json"), path(&dir, "d.json"));
    racforge(&["gen-antiprism", "--k", "4", "--out", s(&g)]);
    racforge(&["optimize", "--graph", s(&g), "--restarts", "2", "--out", s(&d)]);
    let o = racforge(&["svg", "--drawing", s(&d), "--float", "--highlight-role", "central"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("<svg"));
    // JSON numbers are read as the exact rationals they denote
    assert_ne!(code(&racforge(&["check", "--drawing", s(&d)])), 2);
}
