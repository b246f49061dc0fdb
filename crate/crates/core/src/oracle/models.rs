//! Three-valued entailment by brute-force enumeration of Herbrand models.

use crate::fol::{Formula, FormulaKind, Term};
use crate::Label;

use super::ground::{GroundAtom, HerbrandBase};
use super::OracleError;

/// Postfix program over one assignment bitmask.
#[derive(Clone, Debug)]
struct Compiled {
    ops: Vec<Op>,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Atom(u32),
    Const(bool),
    Not,
    And,
    Or,
    Xor,
    Implies,
}

impl Compiled {
    fn eval(&self, mask: u32, stack: &mut Vec<bool>) -> bool {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Atom(i) => stack.push(mask >> i & 1 == 1),
                Op::Const(b) => stack.push(b),
                Op::Not => {
                    let v = stack.pop().expect("operand");
                    stack.push(!v);
                }
                Op::And | Op::Or | Op::Xor | Op::Implies => {
                    let r = stack.pop().expect("operand");
                    let l = stack.pop().expect("operand");
                    stack.push(match op {
                        Op::And => l && r,
                        Op::Or => l || r,
                        Op::Xor => l != r,
                        _ => !l || r,
                    });
                }
            }
        }
        stack.pop().expect("result")
    }
}

/// Grounds `f` over the base's constants. Quantifiers become conjunctions
/// over the domain (true when the domain is empty).
fn ground(f: &Formula, base: &HerbrandBase) -> Result<Compiled, OracleError> {
    let mut ops = Vec::new();
    let mut subst: Vec<(String, String)> = Vec::new();
    emit(f, base, &mut subst, &mut ops)?;
    Ok(Compiled { ops })
}

fn emit(
    f: &Formula,
    base: &HerbrandBase,
    subst: &mut Vec<(String, String)>,
    ops: &mut Vec<Op>,
) -> Result<(), OracleError> {
    match &f.kind {
        FormulaKind::Atom(a) => {
            let args = a
                .args
                .iter()
                .map(|t| match t {
                    Term::Constant(c) => Ok(c.clone()),
                    Term::Variable(v) => subst
                        .iter()
                        .rev()
                        .find(|(name, _)| name == v)
                        .map(|(_, c)| c.clone())
                        .ok_or_else(|| OracleError::FreeVariable(v.clone())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let ga = GroundAtom::new(a.predicate.clone(), args);
            let idx = base
                .index_of(&ga)
                .ok_or_else(|| OracleError::AtomOutsideBase(ga.to_string()))?;
            ops.push(Op::Atom(idx as u32));
        }
        FormulaKind::Not(inner) => {
            emit(inner, base, subst, ops)?;
            ops.push(Op::Not);
        }
        FormulaKind::And(l, r)
        | FormulaKind::Or(l, r)
        | FormulaKind::Xor(l, r)
        | FormulaKind::Implies(l, r) => {
            emit(l, base, subst, ops)?;
            emit(r, base, subst, ops)?;
            ops.push(match f.kind {
                FormulaKind::And(..) => Op::And,
                FormulaKind::Or(..) => Op::Or,
                FormulaKind::Xor(..) => Op::Xor,
                _ => Op::Implies,
            });
        }
        FormulaKind::ForAll(v, body) => {
            if base.constants.is_empty() {
                ops.push(Op::Const(true));
                return Ok(());
            }
            for (i, c) in base.constants.iter().enumerate() {
                subst.push((v.clone(), c.clone()));
                let r = emit(body, base, subst, ops);
                subst.pop();
                r?;
                if i > 0 {
                    ops.push(Op::And);
                }
            }
        }
    }
    Ok(())
}

/// Predicates with their arities, in first-appearance order.
fn predicates<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<(&'a str, usize)> {
    let mut out: Vec<(&str, usize)> = Vec::new();
    for f in formulas {
        for a in f.atoms() {
            let key = (a.predicate.as_str(), a.arity());
            if !out.contains(&key) {
                out.push(key);
            }
        }
    }
    out
}

/// Every assignment over a Herbrand base that satisfies a premise set.
#[derive(Clone, Debug)]
pub struct ModelSet {
    pub base: HerbrandBase,
    models: Vec<u32>,
}

impl ModelSet {
    /// Enumerates the models of `premises` over the base induced by
    /// `premises`, `vocabulary` (formulas whose symbols should be in the
    /// base, such as conclusions) and `extra_constants`.
    pub fn enumerate(
        premises: &[Formula],
        vocabulary: &[Formula],
        extra_constants: &[String],
    ) -> Result<Self, OracleError> {
        let all = || premises.iter().chain(vocabulary.iter());
        let constants = all()
            .flat_map(|f| f.constants())
            .chain(extra_constants.iter().map(String::as_str));
        let base = HerbrandBase::new(constants, predicates(all()))?;
        let compiled = premises
            .iter()
            .map(|p| ground(p, &base))
            .collect::<Result<Vec<_>, _>>()?;
        let mut stack = Vec::new();
        let total: u64 = 1u64 << base.len();
        let mut models = Vec::new();
        for mask in 0..total {
            let mask = mask as u32;
            if compiled.iter().all(|c| c.eval(mask, &mut stack)) {
                models.push(mask);
            }
        }
        Ok(ModelSet { base, models })
    }

    pub fn is_consistent(&self) -> bool {
        !self.models.is_empty()
    }

    pub fn model_count(&self) -> usize {
        self.models.len()
    }

    /// True when `conclusion` holds in every model, False when it fails in
    /// every model, Uncertain otherwise.
    pub fn label(&self, conclusion: &Formula) -> Result<Label, OracleError> {
        if self.models.is_empty() {
            return Err(OracleError::ContradictoryPremises);
        }
        let c = ground(conclusion, &self.base)?;
        let mut stack = Vec::new();
        let (mut all_true, mut all_false) = (true, true);
        for &m in &self.models {
            if c.eval(m, &mut stack) {
                all_false = false;
            } else {
                all_true = false;
            }
            if !all_true && !all_false {
                break;
            }
        }
        Ok(match (all_true, all_false) {
            (true, _) => Label::True,
            (_, true) => Label::False,
            _ => Label::Uncertain,
        })
    }
}
