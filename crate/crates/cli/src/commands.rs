use std::collections::HashMap;
use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use fol2nar::compiler::{self, CompileError, CompileUnit};
use fol2nar::dataset::{self, BenchmarkInstance, DatasetError, ValidationMode, ValidationOutcome};
use fol2nar::fol::FolError;
use fol2nar::oracle::{self, Agreement, OracleError};
use fol2nar::Label;
use serde_json::{json, Value};

use crate::{BatchArgs, FolInput, Format, Mode};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

const IO: u8 = 1;
const PARSE: u8 = 2;
const UNSUPPORTED: u8 = 3;
const ENGINE: u8 = 4;
const SCHEMA: u8 = 5;

fn fail(code: u8, message: impl Display) -> CliError {
    CliError {
        code,
        message: message.to_string(),
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        fail(IO, e)
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        match e {
            DatasetError::Io(e) => fail(IO, e),
            DatasetError::Schema(e) => fail(SCHEMA, e),
        }
    }
}

type CliResult = Result<(), CliError>;

fn read_unit(input: &FolInput) -> Result<CompileUnit, CliError> {
    let mut lines: Vec<String> = Vec::new();
    if let Some(path) = &input.file {
        let text = fs::read_to_string(path)?;
        lines.extend(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from),
        );
    }
    lines.extend(input.premises.iter().cloned());
    let conclusion = match &input.query {
        Some(q) => q.clone(),
        None => lines
            .pop()
            .ok_or_else(|| fail(PARSE, "no conclusion: give --query or at least one formula"))?,
    };
    CompileUnit::parse(&lines, &conclusion).map_err(|(i, e)| {
        let code = match e {
            FolError::UnsupportedQuantifier { .. } => UNSUPPORTED,
            _ => PARSE,
        };
        if i == lines.len() {
            fail(code, format!("conclusion: {e}"))
        } else {
            fail(code, format!("premise {i}: {e}"))
        }
    })
}

fn compile_failure(e: CompileError) -> CliError {
    fail(UNSUPPORTED, e)
}

pub fn compile(input: &FolInput, report: bool, output: Option<&Path>) -> CliResult {
    let unit = read_unit(input)?;
    let r = compiler::compile_unit(&unit).map_err(compile_failure)?;
    let mut text = r.program.to_text();
    if report {
        text.push_str("// report\n");
        match &r.fallback_subformula {
            Some(sub) => text.push_str(&format!("// fallback: {sub}\n")),
            None => text.push_str("// fallback: none\n"),
        }
        for (i, lines) in r.source_map.iter().enumerate() {
            let idx: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
            text.push_str(&format!("// premise {i}: lines {}\n", idx.join(",")));
        }
    }
    match output {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn mode(batch: &BatchArgs) -> Result<ValidationMode, CliError> {
    Ok(match batch.mode {
        Mode::Chase => ValidationMode::Chase,
        Mode::Models => ValidationMode::Models,
        Mode::Engine => {
            let cfg = batch.engine.config();
            cfg.validate().map_err(|e| fail(ENGINE, e))?;
            ValidationMode::Engine(cfg)
        }
    })
}

fn outcomes(
    batch: &BatchArgs,
) -> Result<(Vec<BenchmarkInstance>, Vec<ValidationOutcome>), CliError> {
    let mode = mode(batch)?;
    let instances = dataset::load(&batch.instances)?;
    let out = dataset::validate(&instances, &mode, batch.jobs);
    Ok((instances, out))
}

fn label_str(l: Option<Label>) -> &'static str {
    l.map(Label::as_str).unwrap_or("-")
}

fn print_table(header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        println!("{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
}

fn print_json_lines(values: impl IntoIterator<Item = Value>) {
    for v in values {
        println!("{v}");
    }
}

pub fn run(batch: &BatchArgs) -> CliResult {
    let (_, out) = outcomes(batch)?;
    match batch.format {
        Format::JsonLines => print_json_lines(out.iter().map(|o| {
            json!({
                "id": o.id,
                "label": o.executed_label,
                "frequency": o.verdict.as_ref().and_then(|v| v.frequency),
                "error": o.error.as_ref().map(|e| e.to_string()),
            })
        })),
        Format::Table => {
            let rows: Vec<Vec<String>> = out
                .iter()
                .map(|o| {
                    let freq = o
                        .verdict
                        .as_ref()
                        .and_then(|v| v.frequency)
                        .map(|f| format!("{f:.6}"))
                        .unwrap_or_else(|| "-".into());
                    let err = o
                        .error
                        .as_ref()
                        .map(|e| format!("{}: {e}", e.kind()))
                        .unwrap_or_default();
                    vec![o.id.clone(), label_str(o.executed_label).into(), freq, err]
                })
                .collect();
            print_table(&["id", "label", "frequency", "error"], &rows);
        }
    }
    Ok(())
}

pub fn validate(batch: &BatchArgs, retained_out: Option<&Path>) -> CliResult {
    let (instances, out) = outcomes(batch)?;
    let retained = out.iter().filter(|o| o.retained).count();
    match batch.format {
        Format::JsonLines => {
            print_json_lines(out.iter().map(ValidationOutcome::to_json));
            print_json_lines([json!({"summary": {"retained": retained, "total": out.len()}})]);
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = out
                .iter()
                .map(|o| {
                    vec![
                        o.id.clone(),
                        o.gold_label.as_str().into(),
                        label_str(o.executed_label).into(),
                        if o.retained { "yes" } else { "no" }.into(),
                        o.error
                            .as_ref()
                            .map(|e| format!("{}: {e}", e.kind()))
                            .unwrap_or_default(),
                    ]
                })
                .collect();
            print_table(&["id", "gold", "executed", "retained", "error"], &rows);
            println!("retained {retained}/{}", out.len());
        }
    }
    if let Some(path) = retained_out {
        let keep: Vec<BenchmarkInstance> = instances
            .into_iter()
            .filter(|i| out.iter().any(|o| o.id == i.id && o.retained))
            .collect();
        dataset::save(&keep, path)?;
    }
    Ok(())
}

fn result_str(r: &Result<Label, OracleError>) -> String {
    match r {
        Ok(l) => l.as_str().to_string(),
        Err(e) => format!("error: {e}"),
    }
}

pub fn oracle(input: &FolInput, domain: &[String], format: Format) -> CliResult {
    let unit = read_unit(input)?;
    let report = compiler::compile_unit(&unit).map_err(compile_failure)?;
    let mut dom = unit.constants();
    dom.extend(domain.iter().cloned());
    let models = oracle::entail_models(&unit, domain);
    let chase = oracle::chase_compiled(&report.program, &dom);
    let agreement = oracle::agreement_check(&unit, domain);
    let agreement_str = match &agreement {
        Ok(a) => a.kind().to_string(),
        Err(e) => format!("error: {e}"),
    };
    match format {
        Format::JsonLines => print_json_lines([json!({
            "models": result_str(&models),
            "chase": result_str(&chase),
            "fallback": report.fallback_subformula,
            "agreement": agreement_str,
        })]),
        Format::Table => {
            println!("models     {}", result_str(&models));
            println!("chase      {}", result_str(&chase));
            if let Some(sub) = &report.fallback_subformula {
                println!("fallback   {sub}");
            }
            println!("agreement  {agreement_str}");
            if let Ok(Agreement::StrengthenedDivergence(_) | Agreement::Contradiction(_)) =
                agreement
            {
                if report.fallback_used {
                    println!("note       both oracles were asked about the fallback subformula");
                }
            }
        }
    }
    Ok(())
}

pub fn stats(path: &Path, format: Format) -> CliResult {
    let instances = dataset::load(path)?;
    let s = dataset::stats(&instances);
    match format {
        Format::JsonLines => {
            print_json_lines(s.rows.iter().map(|r| {
                json!({"split": r.split, "easy": r.counts[0], "medium": r.counts[1], "hard": r.counts[2], "total": r.total()})
            }));
            print_json_lines([json!({
                "split": "total", "easy": s.totals[0], "medium": s.totals[1], "hard": s.totals[2], "total": s.total()
            })]);
        }
        Format::Table => {
            let row = |name: &str, c: [usize; 3], t: usize| {
                vec![
                    name.to_string(),
                    c[0].to_string(),
                    c[1].to_string(),
                    c[2].to_string(),
                    t.to_string(),
                ]
            };
            let mut rows: Vec<Vec<String>> = s
                .rows
                .iter()
                .map(|r| row(&r.split, r.counts, r.total()))
                .collect();
            rows.push(row("total", s.totals, s.total()));
            print_table(&["split", "easy", "medium", "hard", "total"], &rows);
        }
    }
    Ok(())
}

fn parse_label(v: &Value) -> Option<Label> {
    let s = v.as_str()?;
    s.parse().ok().or_else(|| {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Label::from_letter(c),
            _ => None,
        }
    })
}

type Predictions = (HashMap<String, Label>, HashMap<String, bool>);

fn read_predictions(path: &Path) -> Result<Predictions, CliError> {
    let text = fs::read_to_string(path)?;
    let mut labels = HashMap::new();
    let mut flags = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| {
            fail(
                SCHEMA,
                format!("{}: line {}: {what}", path.display(), i + 1),
            )
        };
        let v: Value = serde_json::from_str(line).map_err(|e| bad(&e.to_string()))?;
        let id = v["id"].as_str().ok_or_else(|| bad("missing string `id`"))?;
        if let Some(l) = v.get("label").filter(|l| !l.is_null()) {
            let l = parse_label(l).ok_or_else(|| bad("`label` is not a label"))?;
            if labels.insert(id.to_string(), l).is_some() {
                return Err(bad("duplicate id"));
            }
        }
        if let Some(e) = v.get("executed").filter(|e| !e.is_null()) {
            let e = e
                .as_bool()
                .ok_or_else(|| bad("`executed` is not a boolean"))?;
            flags.insert(id.to_string(), e);
        }
    }
    Ok((labels, flags))
}

pub fn score(instances: &Path, predictions: &Path, format: Format) -> CliResult {
    let instances = dataset::load(instances)?;
    let (labels, flags) = read_predictions(predictions)?;
    let r = dataset::score(&labels, &instances, &flags).map_err(|e| fail(SCHEMA, e))?;
    match format {
        Format::JsonLines => {
            print_json_lines([serde_json::to_value(&r).expect("report serializes")]);
        }
        Format::Table => {
            println!("instances            {}", r.instances);
            println!("accuracy             {:.4}", r.overall_accuracy);
            for (d, name) in ["easy", "medium", "hard"].iter().enumerate() {
                println!(
                    "accuracy {name:<11} {:.4} (n={})",
                    r.accuracy_by_difficulty[d], r.count_by_difficulty[d]
                );
            }
            println!("macro F1             {:.4}", r.macro_f1);
            println!("execution success    {:.4}", r.execution_success_rate);
            if !r.missing_predictions.is_empty() {
                println!("missing (Uncertain)  {}", r.missing_predictions.join(","));
            }
            println!();
            let names = ["True", "False", "Uncertain"];
            let rows: Vec<Vec<String>> = (0..3)
                .map(|g| {
                    let mut row = vec![names[g].to_string()];
                    row.extend(r.confusion[g].iter().map(|c| c.to_string()));
                    row.push(format!("{:.4}", r.per_class[g].f1));
                    row
                })
                .collect();
            print_table(&["gold\\pred", "True", "False", "Uncertain", "F1"], &rows);
        }
    }
    Ok(())
}

pub fn export(instances: &Path, output: &Path) -> CliResult {
    let instances = dataset::load(instances)?;
    dataset::export_classification(&instances, output)?;
    Ok(())
}
