//! Benchmark records: JSON Lines I/O, split statistics, the
//! compile-execute-filter validation loop, and scoring.

mod record;
mod score;

use std::collections::HashSet;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub use record::{parse_record, BenchmarkInstance, Difficulty};
pub use score::{score, ClassScores, ScoreReport, UnknownId};

use crate::compiler::{self, CompileError, CompileUnit};
use crate::engine::{self, EngineConfig, EngineVerdict};
use crate::fol::FolError;
use crate::oracle::{self, OracleError};
use crate::Label;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: field `{field}`: {reason}")]
pub struct SchemaError {
    pub line: usize,
    /// Empty when the whole line is malformed.
    pub field: String,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Schema(#[from] SchemaError),
}

/// Reads JSON Lines records. Blank lines are skipped but still counted for
/// line numbers. Duplicate ids are a schema error.
pub fn read_jsonl(reader: impl Read) -> Result<Vec<BenchmarkInstance>, DatasetError> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let inst = parse_record(&line, i + 1)?;
        if !seen.insert(inst.id.clone()) {
            return Err(SchemaError {
                line: i + 1,
                field: "id".into(),
                reason: format!("duplicate id `{}`", inst.id),
            }
            .into());
        }
        out.push(inst);
    }
    Ok(out)
}

pub fn write_jsonl(instances: &[BenchmarkInstance], writer: impl Write) -> io::Result<()> {
    let mut w = BufWriter::new(writer);
    for inst in instances {
        writeln!(w, "{}", inst.to_json_line())?;
    }
    w.flush()
}

pub fn load(path: impl AsRef<Path>) -> Result<Vec<BenchmarkInstance>, DatasetError> {
    read_jsonl(fs::File::open(path)?)
}

pub fn save(instances: &[BenchmarkInstance], path: impl AsRef<Path>) -> io::Result<()> {
    write_jsonl(instances, fs::File::create(path)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitRow {
    pub split: String,
    /// Counts indexed by [`Difficulty::index`].
    pub counts: [usize; 3],
}

impl SplitRow {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SplitStats {
    /// One row per split tag, in order of first appearance.
    pub rows: Vec<SplitRow>,
    pub totals: [usize; 3],
}

impl SplitStats {
    pub fn total(&self) -> usize {
        self.totals.iter().sum()
    }

    pub fn row(&self, split: &str) -> Option<&SplitRow> {
        self.rows.iter().find(|r| r.split == split)
    }
}

/// Tag used for records without a `split` field.
pub const UNSPLIT: &str = "unsplit";

pub fn stats(instances: &[BenchmarkInstance]) -> SplitStats {
    let mut s = SplitStats::default();
    for inst in instances {
        let tag = inst.split.as_deref().unwrap_or(UNSPLIT);
        let pos = match s.rows.iter().position(|r| r.split == tag) {
            Some(p) => p,
            None => {
                s.rows.push(SplitRow {
                    split: tag.to_string(),
                    counts: [0; 3],
                });
                s.rows.len() - 1
            }
        };
        s.rows[pos].counts[inst.difficulty.index()] += 1;
        s.totals[inst.difficulty.index()] += 1;
    }
    s
}

/// How `validate` obtains the executed label.
#[derive(Clone, Debug)]
pub enum ValidationMode {
    Engine(EngineConfig),
    Chase,
    Models,
}

impl ValidationMode {
    pub fn name(&self) -> &'static str {
        match self {
            ValidationMode::Engine(_) => "engine",
            ValidationMode::Chase => "chase",
            ValidationMode::Models => "models",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum InstanceError {
    /// `index` is the premise index, or the premise count for the conclusion.
    #[error("FOL line {index}: {error}")]
    Parse { index: usize, error: FolError },
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Engine(String),
}

impl InstanceError {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceError::Parse { .. } => "parse",
            InstanceError::Compile(_) => "unsupported",
            InstanceError::Oracle(_) => "oracle",
            InstanceError::Engine(_) => "engine",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationOutcome {
    pub id: String,
    pub gold_label: Label,
    /// `None` when the pipeline failed before producing a label.
    pub executed_label: Option<Label>,
    pub retained: bool,
    pub mode: &'static str,
    pub verdict: Option<EngineVerdict>,
    pub fallback_used: bool,
    pub error: Option<InstanceError>,
}

impl ValidationOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "gold_label": self.gold_label,
            "executed_label": self.executed_label,
            "retained": self.retained,
            "mode": self.mode,
            "fallback_used": self.fallback_used,
            "frequency": self.verdict.as_ref().and_then(|v| v.frequency),
            "confidence": self.verdict.as_ref().and_then(|v| v.confidence),
            "timed_out": self.verdict.as_ref().map(|v| v.timed_out),
            "error": self.error.as_ref().map(|e| e.to_string()),
            "error_kind": self.error.as_ref().map(InstanceError::kind),
        })
    }
}

/// Parses and compiles the instance's FOL, then labels it in `mode`.
pub fn execute_instance(
    inst: &BenchmarkInstance,
    mode: &ValidationMode,
) -> (Result<Label, InstanceError>, Option<EngineVerdict>, bool) {
    let unit = match CompileUnit::parse(&inst.fol_premises, &inst.fol_conclusion) {
        Ok(u) => u,
        Err((index, error)) => return (Err(InstanceError::Parse { index, error }), None, false),
    };
    let report = match compiler::compile_unit(&unit) {
        Ok(r) => r,
        Err(e) => return (Err(e.into()), None, false),
    };
    let fallback = report.fallback_used;
    let label = match mode {
        ValidationMode::Chase => oracle::chase_compiled(&report.program, &[]).map_err(Into::into),
        ValidationMode::Models => oracle::entail_models(&unit, &[]).map_err(Into::into),
        ValidationMode::Engine(cfg) => match engine::execute(&report.program, cfg) {
            Ok(v) => {
                let l = engine::map_label(&v, cfg);
                return (Ok(l), Some(v), fallback);
            }
            Err(e) => Err(InstanceError::Engine(e.to_string())),
        },
    };
    (label, None, fallback)
}

fn outcome(inst: &BenchmarkInstance, mode: &ValidationMode) -> ValidationOutcome {
    let (label, verdict, fallback_used) = execute_instance(inst, mode);
    let (executed_label, error) = match label {
        Ok(l) => (Some(l), None),
        Err(e) => (None, Some(e)),
    };
    ValidationOutcome {
        id: inst.id.clone(),
        gold_label: inst.gold_label,
        executed_label,
        retained: executed_label == Some(inst.gold_label),
        mode: mode.name(),
        verdict,
        fallback_used,
        error,
    }
}

/// Runs every instance and keeps those whose executed label matches gold.
/// Per-instance failures are recorded, never fatal. `jobs` of 0 uses the
/// default thread count. Output is sorted by id.
pub fn validate(
    instances: &[BenchmarkInstance],
    mode: &ValidationMode,
    jobs: usize,
) -> Vec<ValidationOutcome> {
    let run = || {
        instances
            .par_iter()
            .map(|inst| outcome(inst, mode))
            .collect::<Vec<_>>()
    };
    let mut out = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Writes `{"context_nl", "claim_nl", "label"}` records with letter labels.
pub fn write_classification(instances: &[BenchmarkInstance], writer: impl Write) -> io::Result<()> {
    let mut w = BufWriter::new(writer);
    for inst in instances {
        let rec = json!({
            "context_nl": inst.context_nl,
            "claim_nl": inst.claim_nl,
            "label": inst.gold_label.letter().to_string(),
        });
        writeln!(w, "{rec}")?;
    }
    w.flush()
}

pub fn export_classification(
    instances: &[BenchmarkInstance],
    path: impl AsRef<Path>,
) -> io::Result<()> {
    write_classification(instances, fs::File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn card_record() -> String {
        json!({
            "id": "card-1",
            "difficulty": "easy",
            "steps": 1,
            "context_nl": "Jasiah values creativity. Everyone who loves drawings and values creativity is artistic. Jones loves drawings. Jasiah loves drawings.",
            "claim_nl": "Jasiah is not innovative.",
            "fol_premises": [
                "values_creativity(Jasiah)",
                "∀x(loves_drawings(x) ∧ values_creativity(x) → artistic(x))",
                "loves_drawings(Jones)",
                "loves_drawings(Jasiah)"
            ],
            "fol_conclusion": "¬innovative(Jasiah)",
            "gold_label": "Uncertain"
        })
        .to_string()
    }

    fn instance(id: &str, premises: &[&str], conclusion: &str, gold: Label) -> BenchmarkInstance {
        BenchmarkInstance {
            id: id.into(),
            split: None,
            difficulty: Difficulty::Easy,
            steps: 1,
            context_nl: String::new(),
            claim_nl: String::new(),
            fol_premises: premises.iter().map(|s| s.to_string()).collect(),
            fol_conclusion: conclusion.into(),
            gold_label: gold,
            narsese_program: None,
            narsese_query: None,
            extra: Default::default(),
        }
    }

    #[test]
    fn card_record_loads() {
        let v = read_jsonl(card_record().as_bytes()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].gold_label, Label::Uncertain);
        assert_eq!(v[0].fol_premises.len(), 4);
    }

    #[test]
    fn empty_input_is_empty_list() {
        assert!(read_jsonl(&b""[..]).unwrap().is_empty());
        assert!(read_jsonl(&b"\n  \n"[..]).unwrap().is_empty());
    }

    #[test]
    fn band_violation_is_schema_error() {
        let rec = card_record().replace("\"steps\":1", "\"steps\":4");
        match read_jsonl(rec.as_bytes()) {
            Err(DatasetError::Schema(e)) => {
                assert_eq!(e.line, 1);
                assert_eq!(e.field, "difficulty");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_errors_name_line_and_field() {
        let good = card_record();
        let bad = good.replace("\"Uncertain\"", "\"Maybe\"");
        let text = format!("{good}\n\n{bad}\n");
        let text = text.replacen("card-1", "card-0", 1);
        match read_jsonl(text.as_bytes()) {
            Err(DatasetError::Schema(e)) => {
                assert_eq!((e.line, e.field.as_str()), (3, "gold_label"))
            }
            other => panic!("{other:?}"),
        }
        let bad_nar = good.replace(
            "\"gold_label\":\"Uncertain\"",
            "\"gold_label\":\"Uncertain\",\"narsese_program\":[\"<a --> \"]",
        );
        match read_jsonl(bad_nar.as_bytes()) {
            Err(DatasetError::Schema(e)) => assert_eq!(e.field, "narsese_program"),
            other => panic!("{other:?}"),
        }
        let dup = format!("{good}\n{good}\n");
        match read_jsonl(dup.as_bytes()) {
            Err(DatasetError::Schema(e)) => assert_eq!((e.line, e.field.as_str()), (2, "id")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip_keeps_unknown_fields_and_bytes() {
        let rec = card_record().replace(
            "\"id\":\"card-1\"",
            "\"id\":\"card-1\",\"source\":{\"k\":[1,2]}",
        );
        let v = read_jsonl(rec.as_bytes()).unwrap();
        assert!(v[0].extra.contains_key("source"));
        let mut first = Vec::new();
        write_jsonl(&v, &mut first).unwrap();
        let again = read_jsonl(&first[..]).unwrap();
        assert_eq!(again, v);
        let mut second = Vec::new();
        write_jsonl(&again, &mut second).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn stats_by_split_and_difficulty() {
        assert_eq!(stats(&[]).totals, [0, 0, 0]);
        let mut v = Vec::new();
        for (i, (d, steps)) in [
            (Difficulty::Easy, 1),
            (Difficulty::Medium, 3),
            (Difficulty::Hard, 7),
        ]
        .into_iter()
        .cycle()
        .take(6)
        .enumerate()
        {
            let mut inst = instance(&format!("i{i}"), &[], "p(a)", Label::Uncertain);
            inst.difficulty = d;
            inst.steps = steps;
            inst.split = Some(if i < 3 { "train" } else { "test" }.into());
            v.push(inst);
        }
        let s = stats(&v);
        assert_eq!(s.totals, [2, 2, 2]);
        assert_eq!(s.rows[0].split, "train");
        assert_eq!(s.row("test").unwrap().counts, [1, 1, 1]);
        assert_eq!(s.total(), 6);
    }

    #[test]
    fn validate_card_in_chase_mode() {
        let v = read_jsonl(card_record().as_bytes()).unwrap();
        let out = validate(&v, &ValidationMode::Chase, 1);
        assert_eq!(out[0].executed_label, Some(Label::Uncertain));
        assert!(out[0].retained);
    }

    #[test]
    fn premise_free_true_claim_is_dropped() {
        let v = [instance("x", &[], "p(a)", Label::True)];
        for mode in [ValidationMode::Chase, ValidationMode::Models] {
            let out = validate(&v, &mode, 0);
            assert_eq!(out[0].executed_label, Some(Label::Uncertain));
            assert!(!out[0].retained);
        }
    }

    #[test]
    fn failures_are_recorded_not_fatal() {
        let v = [
            instance("b", &["p(a) | q(a)"], "p(a)", Label::Uncertain),
            instance("a", &["p(a) @"], "p(a)", Label::True),
            instance("c", &["p(a)"], "p(a)", Label::True),
        ];
        let out = validate(&v, &ValidationMode::Chase, 2);
        let ids: Vec<_> = out.iter().map(|o| o.id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert_eq!(out[0].error.as_ref().unwrap().kind(), "parse");
        assert_eq!(out[1].error.as_ref().unwrap().kind(), "unsupported");
        assert!(!out[0].retained && !out[1].retained && out[2].retained);
    }

    #[test]
    fn classification_letters() {
        let v = [
            read_jsonl(card_record().as_bytes()).unwrap().remove(0),
            instance("t", &[], "p(a)", Label::True),
        ];
        let mut buf = Vec::new();
        write_classification(&v, &mut buf).unwrap();
        let lines: Vec<Value> = String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines[0]["label"], "C");
        assert_eq!(lines[1]["label"], "A");
        for l in [Label::True, Label::False, Label::Uncertain] {
            assert_eq!(Label::from_letter(l.letter()), Some(l));
        }
    }
}
