//! Writes a 30-instance benchmark file to stdout.
//!
//! Each instance is a chain of unary rules over one individual. Gold labels
//! come from model enumeration, and the chase is checked to agree, so every
//! instance survives validation in either oracle mode except the two whose
//! labels are deliberately flipped (marked with `"label_flipped": true`).
//!
//! ```text
//! cargo run -p fol2nar --example synthetic_corpus > crates/core/tests/data/synthetic30.jsonl
//! ```

use fol2nar::compiler::{self, CompileUnit};
use fol2nar::dataset::{BenchmarkInstance, Difficulty};
use fol2nar::oracle::{self, Agreement};
use fol2nar::Label;
use serde_json::Value;

const TRAITS: [&str; 12] = [
    "kind", "brave", "curious", "generous", "patient", "honest", "loyal", "calm", "wise", "bold",
    "gentle", "modest",
];
const PEOPLE: [&str; 5] = ["Ana", "Bruno", "Chen", "Dara", "Emil"];
const FLIPPED: [usize; 2] = [7, 19];

struct Draft {
    premises: Vec<String>,
    context: Vec<String>,
    conclusion: String,
    claim: String,
}

/// `steps` rule applications starting from a fact about `who`. Odd links use
/// a conjunctive antecedent with a side fact.
fn chain(who: &str, other: &str, steps: usize, target: Label, offset: usize) -> Draft {
    let t = |j: usize| TRAITS[(j + offset) % TRAITS.len()];
    let mut d = Draft {
        premises: vec![format!("{}({who})", t(0))],
        context: vec![format!("{who} is {}.", t(0))],
        conclusion: String::new(),
        claim: String::new(),
    };
    let links = if target == Label::False {
        steps - 1
    } else {
        steps
    };
    let mut side = false;
    for j in 0..links {
        if j % 2 == 1 {
            if !side {
                d.premises.push(format!("student({who})"));
                d.context.push(format!("{who} is a student."));
                side = true;
            }
            d.premises
                .push(format!("∀x(student(x) ∧ {}(x) → {}(x))", t(j), t(j + 1)));
            d.context
                .push(format!("Every student who is {} is {}.", t(j), t(j + 1)));
        } else {
            d.premises
                .push(format!("∀x({}(x) → {}(x))", t(j), t(j + 1)));
            d.context
                .push(format!("Everyone who is {} is {}.", t(j), t(j + 1)));
        }
    }
    let last = t(links);
    match target {
        Label::True => {
            d.conclusion = format!("{last}({who})");
            d.claim = format!("{who} is {last}.");
        }
        Label::False => {
            d.premises.push(format!("∀x({last}(x) → ¬rude(x))"));
            d.context.push(format!("No one who is {last} is rude."));
            d.conclusion = format!("rude({who})");
            d.claim = format!("{who} is rude.");
        }
        Label::Uncertain => {
            d.premises.push(format!("student({other})"));
            d.context.push(format!("{other} is a student."));
            d.conclusion = format!("{last}({other})");
            d.claim = format!("{other} is {last}.");
        }
    }
    d
}

fn steps_for(difficulty: Difficulty, k: usize) -> u32 {
    match difficulty {
        Difficulty::Easy => [1, 2][k % 2],
        Difficulty::Medium => [3, 4, 5][k % 3],
        Difficulty::Hard => [6, 7, 8, 9][k % 4],
    }
}

fn main() {
    let labels = [Label::True, Label::False, Label::Uncertain];
    for i in 0..30 {
        let difficulty = Difficulty::ALL[i % 3];
        let steps = steps_for(difficulty, i / 3);
        let target = labels[(i / 3) % 3];
        let who = PEOPLE[i % PEOPLE.len()];
        let other = PEOPLE[(i + 1) % PEOPLE.len()];
        let d = chain(who, other, steps as usize, target, i);

        let unit = CompileUnit::parse(&d.premises, &d.conclusion).expect("generated FOL parses");
        let gold = oracle::entail_models(&unit, &[]).expect("models oracle");
        assert_eq!(gold, target, "instance {i}");
        assert_eq!(
            oracle::agreement_check(&unit, &[]).expect("oracles run"),
            Agreement::Agree(gold),
            "instance {i}"
        );
        let program = compiler::compile_unit(&unit).expect("compiles").program;
        let mut lines = program.lines();
        let query = lines.pop().expect("query line");

        let mut extra = serde_json::Map::new();
        let gold_label = if FLIPPED.contains(&i) {
            extra.insert("label_flipped".into(), Value::Bool(true));
            labels[(gold.index() + 1) % 3]
        } else {
            gold
        };
        let inst = BenchmarkInstance {
            id: format!("syn-{i:02}"),
            split: Some(if i < 21 { "train" } else { "test" }.into()),
            difficulty,
            steps,
            context_nl: d.context.join(" "),
            claim_nl: d.claim,
            fol_premises: d.premises,
            fol_conclusion: d.conclusion,
            gold_label,
            narsese_program: Some(lines),
            narsese_query: Some(query),
            extra,
        };
        println!("{}", inst.to_json_line());
    }
}
