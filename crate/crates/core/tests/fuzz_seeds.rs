//! Replays the fuzz corpus seeds through the invariants the fuzz targets check.

use std::fs;
use std::path::Path;

use fol2nar::compiler::{compile_unit, CompileUnit};
use fol2nar::dataset::{parse_record, read_jsonl};
use fol2nar::engine::{parse_answer_line, verdict_from_transcript};
use fol2nar::fol::{parse_fol, to_ascii, to_unicode};
use fol2nar::narsese::{parse_narsese, serialize};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn fol_seeds() {
    let mut ok = 0;
    for (_, s) in seeds("fol_parse") {
        let Ok(f) = parse_fol(&s) else { continue };
        ok += 1;
        let ascii = to_ascii(&f);
        assert_eq!(to_ascii(&parse_fol(&ascii).unwrap()), ascii);
        assert_eq!(to_ascii(&parse_fol(&to_unicode(&f)).unwrap()), ascii);
    }
    assert_eq!(ok, 4);
}

#[test]
fn narsese_seeds() {
    for (name, s) in seeds("narsese_parse") {
        let sentence = parse_narsese(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
        let text = serialize(&sentence);
        assert_eq!(serialize(&parse_narsese(&text).unwrap()), text);
    }
}

#[test]
fn dataset_seeds() {
    let mut ok = 0;
    for (_, s) in seeds("dataset_record") {
        let _ = read_jsonl(s.as_bytes());
        if let Ok(r) = parse_record(s.trim_end(), 1) {
            ok += 1;
            let line = r.to_json_line();
            assert_eq!(parse_record(&line, 1).unwrap().to_json_line(), line);
        }
    }
    assert_eq!(ok, 2);
}

#[test]
fn engine_seeds() {
    for (name, s) in seeds("engine_answer") {
        let parsed: Vec<_> = s.lines().map(parse_answer_line).collect();
        let verdict = verdict_from_transcript(s.lines().map(String::from).collect(), 0, false);
        assert_eq!(
            name == "malformed",
            parsed.iter().any(Result::is_err),
            "{name}"
        );
        assert_eq!(name == "malformed", verdict.is_err(), "{name}");
    }
}

#[test]
fn compile_seeds() {
    for (name, s) in seeds("compile_pipeline") {
        let mut lines: Vec<&str> = s.lines().collect();
        let conclusion = lines.pop().unwrap();
        let unit =
            CompileUnit::parse(&lines, conclusion).unwrap_or_else(|e| panic!("{name}: {e:?}"));
        let report = compile_unit(&unit).unwrap_or_else(|e| panic!("{name}: {e}"));
        for line in report.program.lines() {
            assert_eq!(serialize(&parse_narsese(&line).unwrap()), line);
        }
    }
}
