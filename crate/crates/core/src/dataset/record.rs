use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use super::SchemaError;
use crate::narsese::parse_narsese;
use crate::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

impl Difficulty {
    pub const ALL: [Difficulty; 3] = [Difficulty::Easy, Difficulty::Medium, Difficulty::Hard];

    pub fn as_str(self) -> &'static str {
        match self {
            Difficulty::Easy => "easy",
            Difficulty::Medium => "medium",
            Difficulty::Hard => "hard",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Band of reasoning steps: easy 1-2, medium 3-5, hard 6-9.
    pub fn for_steps(steps: u32) -> Option<Difficulty> {
        match steps {
            1..=2 => Some(Difficulty::Easy),
            3..=5 => Some(Difficulty::Medium),
            6..=9 => Some(Difficulty::Hard),
            _ => None,
        }
    }
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Difficulty {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "easy" => Ok(Difficulty::Easy),
            "medium" => Ok(Difficulty::Medium),
            "hard" => Ok(Difficulty::Hard),
            _ => Err(()),
        }
    }
}

/// One benchmark record. Fields not listed here are kept in `extra` and
/// written back after the known ones.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkInstance {
    pub id: String,
    pub split: Option<String>,
    pub difficulty: Difficulty,
    pub steps: u32,
    pub context_nl: String,
    pub claim_nl: String,
    pub fol_premises: Vec<String>,
    pub fol_conclusion: String,
    pub gold_label: Label,
    pub narsese_program: Option<Vec<String>>,
    pub narsese_query: Option<String>,
    pub extra: Map<String, Value>,
}

const KNOWN: [&str; 11] = [
    "id",
    "split",
    "difficulty",
    "steps",
    "context_nl",
    "claim_nl",
    "fol_premises",
    "fol_conclusion",
    "gold_label",
    "narsese_program",
    "narsese_query",
];

struct Fields<'a> {
    map: &'a Map<String, Value>,
    line: usize,
}

impl<'a> Fields<'a> {
    fn err(&self, field: &str, reason: impl Into<String>) -> SchemaError {
        SchemaError {
            line: self.line,
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    fn get(&self, field: &str) -> Result<&'a Value, SchemaError> {
        self.map
            .get(field)
            .ok_or_else(|| self.err(field, "missing field"))
    }

    fn optional(&self, field: &str) -> Option<&'a Value> {
        self.map.get(field).filter(|v| !v.is_null())
    }

    fn string(&self, field: &str) -> Result<String, SchemaError> {
        as_string(self.get(field)?).ok_or_else(|| self.err(field, "expected a string"))
    }

    fn strings(&self, v: &Value, field: &str) -> Result<Vec<String>, SchemaError> {
        v.as_array()
            .and_then(|items| items.iter().map(as_string).collect::<Option<Vec<_>>>())
            .ok_or_else(|| self.err(field, "expected an array of strings"))
    }
}

fn as_string(v: &Value) -> Option<String> {
    v.as_str().map(str::to_string)
}

/// Parses and checks one JSON Lines record. `line` is 1-based and only used
/// in error reports.
pub fn parse_record(text: &str, line: usize) -> Result<BenchmarkInstance, SchemaError> {
    let value: Value = serde_json::from_str(text).map_err(|e| SchemaError {
        line,
        field: String::new(),
        reason: format!("invalid JSON: {e}"),
    })?;
    let Value::Object(map) = value else {
        return Err(SchemaError {
            line,
            field: String::new(),
            reason: "record is not a JSON object".into(),
        });
    };
    let f = Fields { map: &map, line };

    let id = f.string("id")?;
    if id.is_empty() {
        return Err(f.err("id", "must be nonempty"));
    }
    let split = match f.optional("split") {
        Some(v) => Some(as_string(v).ok_or_else(|| f.err("split", "expected a string"))?),
        None => None,
    };
    let difficulty: Difficulty = f
        .string("difficulty")?
        .parse()
        .map_err(|_| f.err("difficulty", "expected easy, medium or hard"))?;
    let steps = f
        .get("steps")?
        .as_u64()
        .filter(|s| *s >= 1)
        .and_then(|s| u32::try_from(s).ok())
        .ok_or_else(|| f.err("steps", "expected a positive integer"))?;
    match Difficulty::for_steps(steps) {
        Some(band) if band == difficulty => {}
        Some(band) => {
            return Err(f.err(
                "difficulty",
                format!("{steps} steps is {band}, not {difficulty}"),
            ))
        }
        None => {
            return Err(f.err(
                "steps",
                format!("{steps} steps is outside every difficulty band"),
            ))
        }
    }
    let context_nl = f.string("context_nl")?;
    let claim_nl = f.string("claim_nl")?;
    let fol_premises = f.strings(f.get("fol_premises")?, "fol_premises")?;
    let fol_conclusion = f.string("fol_conclusion")?;
    let gold_label: Label = f
        .string("gold_label")?
        .parse()
        .map_err(|e: crate::label::LabelParseError| f.err("gold_label", e.to_string()))?;
    let narsese_program = match f.optional("narsese_program") {
        Some(v) => {
            let lines = f.strings(v, "narsese_program")?;
            for (i, l) in lines.iter().enumerate() {
                parse_narsese(l).map_err(|e| f.err("narsese_program", format!("line {i}: {e}")))?;
            }
            Some(lines)
        }
        None => None,
    };
    let narsese_query = match f.optional("narsese_query") {
        Some(v) => {
            let q = as_string(v).ok_or_else(|| f.err("narsese_query", "expected a string"))?;
            parse_narsese(&q).map_err(|e| f.err("narsese_query", e.to_string()))?;
            Some(q)
        }
        None => None,
    };
    let extra = map
        .iter()
        .filter(|(k, _)| !KNOWN.contains(&k.as_str()))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();

    Ok(BenchmarkInstance {
        id,
        split,
        difficulty,
        steps,
        context_nl,
        claim_nl,
        fol_premises,
        fol_conclusion,
        gold_label,
        narsese_program,
        narsese_query,
        extra,
    })
}

impl BenchmarkInstance {
    /// Known fields in fixed order, then unknown fields in their original order.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("id".into(), Value::from(self.id.clone()));
        if let Some(s) = &self.split {
            m.insert("split".into(), Value::from(s.clone()));
        }
        m.insert("difficulty".into(), Value::from(self.difficulty.as_str()));
        m.insert("steps".into(), Value::from(self.steps));
        m.insert("context_nl".into(), Value::from(self.context_nl.clone()));
        m.insert("claim_nl".into(), Value::from(self.claim_nl.clone()));
        m.insert(
            "fol_premises".into(),
            Value::from(self.fol_premises.clone()),
        );
        m.insert(
            "fol_conclusion".into(),
            Value::from(self.fol_conclusion.clone()),
        );
        m.insert("gold_label".into(), Value::from(self.gold_label.as_str()));
        if let Some(p) = &self.narsese_program {
            m.insert("narsese_program".into(), Value::from(p.clone()));
        }
        if let Some(q) = &self.narsese_query {
            m.insert("narsese_query".into(), Value::from(q.clone()));
        }
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}
