use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use super::BenchmarkInstance;
use crate::Label;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("prediction for unknown instance id `{0}`")]
pub struct UnknownId(pub String);

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreReport {
    pub instances: usize,
    pub overall_accuracy: f64,
    /// Easy, medium, hard. A band with no instances scores 0.
    pub accuracy_by_difficulty: [f64; 3],
    pub count_by_difficulty: [usize; 3],
    /// Per-class scores in True, False, Uncertain order.
    pub per_class: [ClassScores; 3],
    pub macro_f1: f64,
    /// Rows are gold labels, columns predictions, both True, False, Uncertain.
    pub confusion: [[usize; 3]; 3],
    pub execution_success_rate: f64,
    /// Instance ids with no prediction; each was scored as Uncertain.
    pub missing_predictions: Vec<String>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Scores `predictions` against gold labels. Missing predictions count as
/// Uncertain; missing execution flags count as not executed.
pub fn score(
    predictions: &HashMap<String, Label>,
    instances: &[BenchmarkInstance],
    exec_flags: &HashMap<String, bool>,
) -> Result<ScoreReport, UnknownId> {
    let ids: HashSet<&str> = instances.iter().map(|i| i.id.as_str()).collect();
    let mut unknown: Vec<&String> = predictions
        .keys()
        .chain(exec_flags.keys())
        .filter(|k| !ids.contains(k.as_str()))
        .collect();
    unknown.sort();
    if let Some(id) = unknown.first() {
        return Err(UnknownId((*id).clone()));
    }

    let mut confusion = [[0usize; 3]; 3];
    let mut correct_by = [0usize; 3];
    let mut count_by = [0usize; 3];
    let mut missing = Vec::new();
    let mut executed = 0;
    for inst in instances {
        let pred = match predictions.get(&inst.id) {
            Some(l) => *l,
            None => {
                missing.push(inst.id.clone());
                Label::Uncertain
            }
        };
        confusion[inst.gold_label.index()][pred.index()] += 1;
        let d = inst.difficulty.index();
        count_by[d] += 1;
        if pred == inst.gold_label {
            correct_by[d] += 1;
        }
        if exec_flags.get(&inst.id).copied().unwrap_or(false) {
            executed += 1;
        }
    }

    let n = instances.len();
    let mut per_class = [ClassScores::default(); 3];
    for (c, s) in per_class.iter_mut().enumerate() {
        let tp = confusion[c][c];
        let predicted: usize = (0..3).map(|g| confusion[g][c]).sum();
        let actual: usize = confusion[c].iter().sum();
        s.precision = ratio(tp, predicted);
        s.recall = ratio(tp, actual);
        s.f1 = ratio(2 * tp, predicted + actual);
    }

    Ok(ScoreReport {
        instances: n,
        overall_accuracy: ratio(correct_by.iter().sum(), n),
        accuracy_by_difficulty: [0, 1, 2].map(|d| ratio(correct_by[d], count_by[d])),
        count_by_difficulty: count_by,
        per_class,
        macro_f1: per_class.iter().map(|s| s.f1).sum::<f64>() / 3.0,
        confusion,
        execution_success_rate: ratio(executed, n),
        missing_predictions: missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Difficulty;
    use Label::*;

    fn inst(id: &str, gold: Label) -> BenchmarkInstance {
        BenchmarkInstance {
            id: id.into(),
            split: None,
            difficulty: Difficulty::Easy,
            steps: 2,
            context_nl: String::new(),
            claim_nl: String::new(),
            fol_premises: vec![],
            fol_conclusion: "p(a)".into(),
            gold_label: gold,
            narsese_program: None,
            narsese_query: None,
            extra: Default::default(),
        }
    }

    fn six() -> (Vec<BenchmarkInstance>, HashMap<String, Label>) {
        let gold = [True, True, False, False, Uncertain, Uncertain];
        let pred = [True, False, False, Uncertain, Uncertain, Uncertain];
        let insts = gold
            .iter()
            .enumerate()
            .map(|(i, g)| inst(&format!("i{i}"), *g))
            .collect();
        let preds = pred
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("i{i}"), *p))
            .collect();
        (insts, preds)
    }

    #[test]
    fn perfect_predictions() {
        let (insts, _) = six();
        let preds = insts.iter().map(|i| (i.id.clone(), i.gold_label)).collect();
        let r = score(&preds, &insts, &HashMap::new()).unwrap();
        assert_eq!(r.overall_accuracy, 1.0);
        assert_eq!(r.macro_f1, 1.0);
        assert_eq!(r.confusion, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]);
        assert_eq!(r.execution_success_rate, 0.0);
    }

    #[test]
    fn six_instance_hand_computation() {
        // Rows T (1,1,0), F (0,1,1), U (0,0,2). F1 = 2tp / (predicted + actual):
        // T 2/3, F 2/4, U 4/5, mean 59/90.
        let (insts, preds) = six();
        let r = score(&preds, &insts, &HashMap::new()).unwrap();
        assert_eq!(r.confusion, [[1, 1, 0], [0, 1, 1], [0, 0, 2]]);
        assert!((r.overall_accuracy - 4.0 / 6.0).abs() < 1e-12);
        assert!((r.per_class[0].f1 - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.per_class[1].f1 - 0.5).abs() < 1e-12);
        assert!((r.per_class[2].f1 - 0.8).abs() < 1e-12);
        assert!((r.macro_f1 - 59.0 / 90.0).abs() < 1e-12);
    }

    #[test]
    fn missing_predictions_are_uncertain() {
        let (insts, mut preds) = six();
        preds.remove("i0");
        let flags = [("i1".to_string(), true)].into_iter().collect();
        let r = score(&preds, &insts, &flags).unwrap();
        assert_eq!(r.missing_predictions, ["i0"]);
        assert_eq!(r.confusion[0], [0, 1, 1]);
        assert!((r.execution_success_rate - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_id() {
        let (insts, mut preds) = six();
        preds.insert("zz".into(), True);
        assert_eq!(
            score(&preds, &insts, &HashMap::new()),
            Err(UnknownId("zz".into()))
        );
    }

    #[test]
    fn empty_input_scores_zero() {
        let r = score(&HashMap::new(), &[], &HashMap::new()).unwrap();
        assert_eq!(r.overall_accuracy, 0.0);
        assert_eq!(r.macro_f1, 0.0);
        assert_eq!(r.confusion, [[0; 3]; 3]);
    }
}
