use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const CARD: &str = "\
# card
values_creativity(Jasiah)
forall x (loves_drawings(x) & values_creativity(x) -> artistic(x))
loves_drawings(Jones)
loves_drawings(Jasiah)
~innovative(Jasiah)
";

const CARD_PROGRAM: &str = "\
<{Jasiah} --> values_creativity>.
<<($1 --> loves_drawings) && ($1 --> values_creativity)> ==> <$1 --> artistic>>.
<{Jones} --> loves_drawings>.
<{Jasiah} --> loves_drawings>.
(-- <{Jasiah} --> innovative>)?
";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fol2nar"));
    c.env_remove("NARS_ENGINE_PATH");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
        .display()
        .to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn compile_card_from_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "card.fol", CARD);
    let o = run(&["compile", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), CARD_PROGRAM);
}

#[test]
fn compile_with_report_and_output_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "card.fol", CARD);
    let out = dir.path().join("card.nal");
    let o = run(&[
        "compile",
        f.to_str().unwrap(),
        "--report",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with(CARD_PROGRAM));
    assert!(text.contains("// fallback: none"));
    assert!(text.contains("// premise 1: lines 1"));
}

#[test]
fn compile_from_flags_uses_fallback() {
    let o = run(&["compile", "-p", "p(a)", "-q", "p(a) | q(a)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "<{a} --> p>.\n<{a} --> p>?\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["compile", "-p", "p(a) @", "-q", "p(a)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["compile", "-p", "p(a) | q(a)", "-q", "p(a)"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["compile", "-p", "exists x p(x)", "-q", "p(a)"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["stats", "/nonexistent/x.jsonl"]).status.code(),
        Some(1)
    );

    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.jsonl", "{\"id\":\"x\"}\n");
    let o = run(&["stats", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let o = run(&[
        "run",
        &data("card1.jsonl"),
        "--engine",
        "/bin/true",
        "--true-threshold",
        "0.01",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn oracle_reports_both_labels() {
    let o = run(&[
        "oracle",
        "-p",
        "p(a)",
        "-p",
        "forall x (p(x) -> q(x))",
        "-q",
        "q(a)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("models     True"), "{s}");
    assert!(s.contains("chase      True"), "{s}");
    assert!(s.contains("agreement  agree"), "{s}");

    let o = run(&[
        "oracle",
        "-p",
        "~q(a)",
        "-p",
        "forall x (p(x) -> q(x))",
        "-q",
        "p(a)",
        "--format",
        "json-lines",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(v["models"], "False");
    assert_eq!(v["chase"], "Uncertain");
}

#[test]
fn stats_on_empty_and_corpus() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.jsonl", "");
    let o = run(&["stats", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.lines()
            .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["total", "0", "0", "0", "0"]),
        "{s}"
    );

    let s = stdout(&run(&["stats", &data("synthetic30.jsonl")]));
    assert!(
        s.lines()
            .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["total", "10", "10", "10", "30"]),
        "{s}"
    );
}

fn record(id: &str, gold: &str) -> String {
    serde_json::json!({
        "id": id, "difficulty": "easy", "steps": 1,
        "context_nl": "", "claim_nl": "",
        "fol_premises": ["p(a)"], "fol_conclusion": "p(a)", "gold_label": gold,
    })
    .to_string()
}

#[test]
fn score_hand_example() {
    let dir = TempDir::new().unwrap();
    let gold = ["True", "True", "False", "False", "Uncertain", "Uncertain"];
    let pred = ["A", "False", "False", "Uncertain", "C", "Uncertain"];
    let insts: String = gold
        .iter()
        .enumerate()
        .map(|(i, g)| record(&format!("i{i}"), g) + "\n")
        .collect();
    let preds: String = pred
        .iter()
        .enumerate()
        .map(|(i, p)| {
            serde_json::json!({"id": format!("i{i}"), "label": p, "executed": i % 2 == 0})
                .to_string()
                + "\n"
        })
        .collect();
    let i = write(&dir, "i.jsonl", &insts);
    let p = write(&dir, "p.jsonl", &preds);
    let o = run(&[
        "score",
        i.to_str().unwrap(),
        "--predictions",
        p.to_str().unwrap(),
        "--format",
        "json-lines",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["overall_accuracy"].as_f64().unwrap() - 4.0 / 6.0).abs() < 1e-12);
    assert!((v["macro_f1"].as_f64().unwrap() - 59.0 / 90.0).abs() < 1e-12);
    assert!((v["execution_success_rate"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let unknown = write(&dir, "u.jsonl", "{\"id\":\"zz\",\"label\":\"True\"}\n");
    let o = run(&[
        "score",
        i.to_str().unwrap(),
        "--predictions",
        unknown.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn validate_chase_retains_consistent_labels() {
    let dir = TempDir::new().unwrap();
    let kept = dir.path().join("kept.jsonl");
    let o = run(&[
        "validate",
        &data("synthetic30.jsonl"),
        "--mode",
        "chase",
        "--retained-out",
        kept.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("retained 28/30"));
    let kept = fs::read_to_string(&kept).unwrap();
    assert_eq!(kept.lines().count(), 28);
    assert!(!kept.contains("\"syn-07\"") && !kept.contains("\"syn-19\""));
}

#[test]
fn run_models_as_json_lines() {
    let o = run(&[
        "run",
        &data("card1.jsonl"),
        "--mode",
        "models",
        "--format",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first: serde_json::Value =
        serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["id"], "card-1");
    assert_eq!(first["label"], "Uncertain");
}

#[test]
fn export_letters() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cls.jsonl");
    let o = run(&[
        "export",
        &data("synthetic30.jsonl"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 30);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(matches!(v["label"].as_str(), Some("A" | "B" | "C")));
        assert!(v.get("id").is_none());
    }
}
