//! Boolean forward chaining over a compiled program.
//!
//! Every judgment is instantiated over the domain; facts seed a set of
//! signed literals and rules fire when all their antecedent literals are
//! present. The base is finite and nothing is retracted, so the loop
//! reaches a fixpoint.

use std::collections::{BTreeSet, HashSet};

use crate::narsese::{Program, Statement, Term};
use crate::Label;

use super::ground::{GroundAtom, HerbrandBase, SignedLiteral};
use super::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
struct GroundRule {
    antecedent: Vec<SignedLiteral>,
    consequent: Vec<SignedLiteral>,
}

/// Fixpoint of a program's judgments over a closed domain.
#[derive(Clone, Debug)]
pub struct Chase {
    base: HerbrandBase,
    rules: Vec<GroundRule>,
    facts: HashSet<SignedLiteral>,
    rounds: usize,
}

fn individuals_in(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Individual(n) => out.push(n.clone()),
        Term::Product(l, r) => {
            individuals_in(l, out);
            individuals_in(r, out);
        }
        Term::Var(_) | Term::Predicate(_) => {}
    }
}

fn inheritances(s: &Statement) -> Vec<(&Term, &str)> {
    match s {
        Statement::Inheritance {
            subject,
            predicate: Term::Predicate(p),
        } => vec![(subject, p.as_str())],
        Statement::Inheritance { .. } => vec![],
        Statement::Negation(inner) => inheritances(inner),
        Statement::Conjunction(parts) => parts.iter().flat_map(inheritances).collect(),
        Statement::Implication(a, c) => {
            let mut v = inheritances(a);
            v.extend(inheritances(c));
            v
        }
    }
}

fn arity(t: &Term) -> usize {
    match t {
        Term::Product(..) => 2,
        _ => 1,
    }
}

fn distinct_vars(s: &Statement) -> Vec<u32> {
    let mut vars = s.vars();
    vars.sort_unstable();
    vars.dedup();
    vars
}

fn ground_term(t: &Term, vars: &[u32], subst: &[&str]) -> Result<Vec<String>, OracleError> {
    let resolve = |t: &Term| -> Result<String, OracleError> {
        match t {
            Term::Individual(n) => Ok(n.clone()),
            Term::Var(k) => vars
                .iter()
                .position(|v| v == k)
                .map(|i| subst[i].to_string())
                .ok_or_else(|| OracleError::FreeVariable(format!("${k}"))),
            _ => Err(OracleError::UnsupportedStatement(
                "nested product or predicate in subject position".into(),
            )),
        }
    };
    match t {
        Term::Product(l, r) => Ok(vec![resolve(l)?, resolve(r)?]),
        other => Ok(vec![resolve(other)?]),
    }
}

fn literal(s: &Statement, vars: &[u32], subst: &[&str]) -> Result<SignedLiteral, OracleError> {
    match s {
        Statement::Inheritance {
            subject,
            predicate: Term::Predicate(p),
        } => Ok(SignedLiteral::new(
            GroundAtom::new(p.clone(), ground_term(subject, vars, subst)?),
            true,
        )),
        Statement::Negation(inner) => Ok(literal(inner, vars, subst)?.complement()),
        other => Err(OracleError::UnsupportedStatement(
            crate::narsese::statement_to_string(other),
        )),
    }
}

fn literals(
    s: &Statement,
    vars: &[u32],
    subst: &[&str],
) -> Result<Vec<SignedLiteral>, OracleError> {
    match s {
        Statement::Conjunction(parts) => parts.iter().map(|p| literal(p, vars, subst)).collect(),
        other => Ok(vec![literal(other, vars, subst)?]),
    }
}

impl Chase {
    /// Runs the program's judgments to fixpoint over the individuals it
    /// mentions plus `extra_domain`. Fails if both signs of an atom are
    /// derived.
    pub fn run(program: &Program, extra_domain: &[String]) -> Result<Chase, OracleError> {
        let chase = Self::saturate(program, extra_domain)?;
        if let Some(atom) = chase.conflict() {
            return Err(OracleError::ContradictoryDerivation(atom.to_string()));
        }
        Ok(chase)
    }

    fn saturate(program: &Program, extra_domain: &[String]) -> Result<Chase, OracleError> {
        let statements = program
            .judgments
            .iter()
            .chain(std::iter::once(&program.query))
            .map(|s| &s.statement);
        let mut constants: Vec<String> = extra_domain.to_vec();
        let mut preds: Vec<(&str, usize)> = Vec::new();
        for s in statements {
            for (subject, p) in inheritances(s) {
                individuals_in(subject, &mut constants);
                preds.push((p, arity(subject)));
            }
        }
        let base = HerbrandBase::new(constants.iter().map(String::as_str), preds)?;

        let mut facts = HashSet::new();
        let mut rules = Vec::new();
        for sentence in &program.judgments {
            let s = &sentence.statement;
            let vars = distinct_vars(s);
            for subst in base.substitutions(vars.len()) {
                match s {
                    Statement::Implication(a, c) => rules.push(GroundRule {
                        antecedent: literals(a, &vars, &subst)?,
                        consequent: literals(c, &vars, &subst)?,
                    }),
                    other => facts.extend(literals(other, &vars, &subst)?),
                }
            }
        }
        let mut chase = Chase {
            base,
            rules,
            facts,
            rounds: 0,
        };
        chase.rounds = saturate(&chase.rules, &mut chase.facts);
        Ok(chase)
    }

    /// First atom, in base order, derived with both signs.
    fn conflict(&self) -> Option<&GroundAtom> {
        conflict_in(&self.facts)
    }

    pub fn derived(&self) -> BTreeSet<&SignedLiteral> {
        self.facts.iter().collect()
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn domain(&self) -> &[String] {
        &self.base.constants
    }

    fn value(facts: &HashSet<SignedLiteral>, lit: &SignedLiteral) -> Label {
        if facts.contains(lit) {
            Label::True
        } else if facts.contains(&lit.complement()) {
            Label::False
        } else {
            Label::Uncertain
        }
    }

    /// Label of a question. Variables are read universally: every instance
    /// must be True for True, one False instance makes it False.
    ///
    /// * literal: its own sign derived is True, the opposite sign False;
    /// * conjunction: all parts True, or any part False;
    /// * implication: True when the consequent is already derived, some
    ///   antecedent literal is refuted, or chasing with the antecedent
    ///   assumed derives the consequent (or a conflict); False when the
    ///   antecedent is derived and the consequent refuted.
    pub fn label(&self, query: &Statement) -> Result<Label, OracleError> {
        let vars = distinct_vars(query);
        let mut all_true = true;
        for subst in self.base.substitutions(vars.len()) {
            let v = match query {
                Statement::Implication(a, c) => {
                    let ante = literals(a, &vars, &subst)?;
                    let cons = literals(c, &vars, &subst)?;
                    self.implication_value(&ante, &cons)
                }
                other => {
                    let lits = literals(other, &vars, &subst)?;
                    conjunction_value(&self.facts, &lits)
                }
            };
            match v {
                Label::False => return Ok(Label::False),
                Label::Uncertain => all_true = false,
                Label::True => {}
            }
        }
        Ok(if all_true {
            Label::True
        } else {
            Label::Uncertain
        })
    }

    fn implication_value(&self, ante: &[SignedLiteral], cons: &[SignedLiteral]) -> Label {
        let a = conjunction_value(&self.facts, ante);
        let c = conjunction_value(&self.facts, cons);
        if c == Label::True || a == Label::False {
            return Label::True;
        }
        if a == Label::True && c == Label::False {
            return Label::False;
        }
        let mut hyp = self.facts.clone();
        hyp.extend(ante.iter().cloned());
        saturate(&self.rules, &mut hyp);
        if conflict_in(&hyp).is_some() || conjunction_value(&hyp, cons) == Label::True {
            Label::True
        } else {
            Label::Uncertain
        }
    }
}

fn conjunction_value(facts: &HashSet<SignedLiteral>, lits: &[SignedLiteral]) -> Label {
    let mut all = true;
    for l in lits {
        match Chase::value(facts, l) {
            Label::False => return Label::False,
            Label::Uncertain => all = false,
            Label::True => {}
        }
    }
    if all {
        Label::True
    } else {
        Label::Uncertain
    }
}

fn conflict_in(facts: &HashSet<SignedLiteral>) -> Option<&GroundAtom> {
    facts
        .iter()
        .filter(|l| l.positive && facts.contains(&l.complement()))
        .map(|l| &l.atom)
        .min()
}

/// Applies rules until nothing new is derived; returns the number of rounds.
fn saturate(rules: &[GroundRule], facts: &mut HashSet<SignedLiteral>) -> usize {
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut fresh = Vec::new();
        for r in rules {
            if r.antecedent.iter().all(|l| facts.contains(l)) {
                fresh.extend(r.consequent.iter().filter(|l| !facts.contains(*l)).cloned());
            }
        }
        if fresh.is_empty() {
            return rounds;
        }
        facts.extend(fresh);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::narsese::{parse_narsese, Sentence};

    fn program(lines: &[&str], query: &str) -> Program {
        Program {
            judgments: lines.iter().map(|l| parse_narsese(l).unwrap()).collect(),
            query: parse_narsese(query).unwrap(),
        }
    }

    fn run(lines: &[&str], query: &str) -> Result<Label, OracleError> {
        let p = program(lines, query);
        Chase::run(&p, &[])?.label(&p.query.statement)
    }

    #[test]
    fn fact_membership() {
        assert_eq!(run(&["<{a} --> p>."], "<{a} --> p>?"), Ok(Label::True));
        assert_eq!(
            run(&["<{a} --> p>."], "(-- <{a} --> p>)?"),
            Ok(Label::False)
        );
    }

    #[test]
    fn xor_rules_with_fact() {
        let rules = [
            "<{a} --> p>.",
            "<<{a} --> p> ==> (-- <{a} --> q>)>.",
            "<<{a} --> q> ==> (-- <{a} --> p>)>.",
            "<<{a} --> p> ==> <{a} --> r>>.",
            "<<{a} --> q> ==> <{a} --> r>>.",
        ];
        assert_eq!(run(&rules, "<{a} --> r>?"), Ok(Label::True));
        assert_eq!(run(&rules, "<{a} --> q>?"), Ok(Label::False));
    }

    #[test]
    fn variable_rules_fire_per_individual() {
        let lines = [
            "<{Jasiah} --> values_creativity>.",
            "<<($1 --> loves_drawings) && ($1 --> values_creativity)> ==> <$1 --> artistic>>.",
            "<{Jones} --> loves_drawings>.",
            "<{Jasiah} --> loves_drawings>.",
        ];
        assert_eq!(run(&lines, "<{Jasiah} --> artistic>?"), Ok(Label::True));
        assert_eq!(run(&lines, "<{Jones} --> artistic>?"), Ok(Label::Uncertain));
        assert_eq!(
            run(&lines, "(-- <{Jasiah} --> innovative>)?"),
            Ok(Label::Uncertain)
        );
    }

    #[test]
    fn contradiction_is_reported() {
        let r = run(
            &["<{a} --> p>.", "<<{a} --> p> ==> (-- <{a} --> p>)>."],
            "<{a} --> q>?",
        );
        assert_eq!(r, Err(OracleError::ContradictoryDerivation("p(a)".into())));
    }

    #[test]
    fn conjunction_and_implication_queries() {
        let lines = ["<{a} --> p>.", "<<$1 --> p> ==> <$1 --> q>>."];
        assert_eq!(
            run(&lines, "(<{a} --> p> && <{a} --> q>)?"),
            Ok(Label::True)
        );
        assert_eq!(
            run(&lines, "(<{a} --> p> && (-- <{a} --> q>))?"),
            Ok(Label::False)
        );
        // Holds hypothetically for every individual.
        assert_eq!(run(&lines, "<<$1 --> p> ==> <$1 --> q>>?"), Ok(Label::True));
        // q(b) -> p(b) is not settled.
        let more = [
            "<{a} --> p>.",
            "<{b} --> r>.",
            "<<$1 --> p> ==> <$1 --> q>>.",
        ];
        assert_eq!(
            run(&more, "<<$1 --> q> ==> <$1 --> p>>?"),
            Ok(Label::Uncertain)
        );
        assert_eq!(
            run(&lines, "<<{a} --> p> ==> (-- <{a} --> q>)>?"),
            Ok(Label::False)
        );
    }

    #[test]
    fn binary_atoms() {
        let lines = [
            "<({a} * {b}) --> r>.",
            "<<($1 * $2) --> r> ==> <($2 * $1) --> r>>.",
        ];
        assert_eq!(run(&lines, "<({b} * {a}) --> r>?"), Ok(Label::True));
        assert_eq!(run(&lines, "<({a} * {a}) --> r>?"), Ok(Label::Uncertain));
    }

    #[test]
    fn explicit_domain_extends_grounding() {
        let p = program(&["<$1 --> p>."], "<{z} --> p>?");
        let c = Chase::run(&p, &["y".to_string()]).unwrap();
        assert_eq!(c.domain(), ["y", "z"]);
        assert_eq!(c.label(&p.query.statement), Ok(Label::True));
        let unrelated =
            Sentence::question(Statement::inheritance(Term::Individual("y".into()), "p"));
        assert_eq!(c.label(&unrelated.statement), Ok(Label::True));
    }
}
