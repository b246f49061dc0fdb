//! Desk-scale reference evaluators.
//!
//! [`entail_models`] decides three-valued classical entailment by
//! enumerating every Herbrand model of the premises. [`chase_compiled`]
//! runs a compiled program to fixpoint with boolean forward chaining. The
//! two share no code beyond grounding, so comparing them checks the
//! compiler: [`agreement_check`] does exactly that.

mod chase;
mod ground;
mod models;

use thiserror::Error;

pub use chase::Chase;
pub use ground::{GroundAtom, HerbrandBase, SignedLiteral, MAX_BASE_ATOMS};
pub use models::ModelSet;

use crate::compiler::{self, CompileError, CompileUnit};
use crate::narsese::Program;
use crate::Label;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("Herbrand base has {atoms} atoms, more than the limit of {limit}")]
    DomainTooLarge { atoms: usize, limit: usize },
    #[error("premises are unsatisfiable")]
    ContradictoryPremises,
    #[error("forward chaining derived both {0} and its negation")]
    ContradictoryDerivation(String),
    #[error("unbound variable `{0}`")]
    FreeVariable(String),
    #[error("atom {0} is outside the Herbrand base")]
    AtomOutsideBase(String),
    #[error("statement shape not supported by the chase: {0}")]
    UnsupportedStatement(String),
    #[error(transparent)]
    Compile(#[from] CompileError),
}

/// Classical three-valued label of the unit's conclusion, grounding over the
/// constants it mentions plus `domain`.
pub fn entail_models(u: &CompileUnit, domain: &[String]) -> Result<Label, OracleError> {
    ModelSet::enumerate(&u.premises, std::slice::from_ref(&u.conclusion), domain)?
        .label(&u.conclusion)
}

/// Label of the program's question after chasing its judgments over the
/// individuals it mentions plus `domain`.
pub fn chase_compiled(program: &Program, domain: &[String]) -> Result<Label, OracleError> {
    Chase::run(program, domain)?.label(&program.query.statement)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub models: Result<Label, OracleError>,
    pub chase: Result<Label, OracleError>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Agreement {
    Agree(Label),
    /// Labels differ, and the unit uses a conversion that strengthens the
    /// source (disjunctive consequent or exclusive-disjunction antecedent).
    StrengthenedDivergence(Divergence),
    /// Labels differ with no strengthening present.
    Contradiction(Divergence),
}

impl Agreement {
    pub fn is_agree(&self) -> bool {
        matches!(self, Agreement::Agree(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Agreement::Agree(_) => "agree",
            Agreement::StrengthenedDivergence(_) => "strengthened_divergence",
            Agreement::Contradiction(_) => "contradiction",
        }
    }
}

/// Compiles `u` and compares both oracles on it. When the compiler fell back
/// to a subformula query, the models side is asked about that subformula
/// (universally closed), which is what the compiled program asks.
///
/// A chase contradiction on a strengthening unit is a divergence, since the
/// strengthened rules can clash where the source premises do not. Other
/// oracle errors propagate.
pub fn agreement_check(u: &CompileUnit, domain: &[String]) -> Result<Agreement, OracleError> {
    let report = compiler::compile_unit(u)?;
    let query = compiler::compile_query(&u.conclusion)?;
    let mut dom = u.constants();
    dom.extend(domain.iter().cloned());

    let models = ModelSet::enumerate(&u.premises, std::slice::from_ref(&query.queried), &dom)
        .and_then(|m| m.label(&query.queried));
    let chase = chase_compiled(&report.program, &dom);
    let strengthened = u.premises.iter().any(compiler::premise_strengthens);

    match (&models, &chase) {
        (Ok(m), Ok(c)) if m == c => Ok(Agreement::Agree(*m)),
        (Err(e), _) => Err(e.clone()),
        (Ok(_), Err(OracleError::ContradictoryDerivation(_))) if strengthened => {
            Ok(Agreement::StrengthenedDivergence(Divergence {
                models,
                chase,
            }))
        }
        (Ok(_), Err(e)) => Err(e.clone()),
        (Ok(_), Ok(_)) if strengthened => Ok(Agreement::StrengthenedDivergence(Divergence {
            models,
            chase,
        })),
        (Ok(_), Ok(_)) => Ok(Agreement::Contradiction(Divergence { models, chase })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(premises: &[&str], conclusion: &str) -> CompileUnit {
        CompileUnit::parse(premises, conclusion).unwrap()
    }

    const CARD: [&str; 4] = [
        "fact1: values_creativity(Jasiah)",
        "rule1: ∀x(loves_drawings(x) ∧ values_creativity(x) → artistic(x))",
        "fact2: loves_drawings(Jones)",
        "fact3: loves_drawings(Jasiah)",
    ];

    #[test]
    fn card_example_is_uncertain_both_ways() {
        let u = unit(&CARD, "¬innovative(Jasiah)");
        assert_eq!(entail_models(&u, &[]), Ok(Label::Uncertain));
        let program = compiler::compile_unit(&u).unwrap().program;
        assert_eq!(chase_compiled(&program, &[]), Ok(Label::Uncertain));
        assert_eq!(
            agreement_check(&u, &[]),
            Ok(Agreement::Agree(Label::Uncertain))
        );
    }

    #[test]
    fn entail_models_examples() {
        assert_eq!(
            entail_models(&unit(&["p(a)"], "p(a)"), &[]),
            Ok(Label::True)
        );
        assert_eq!(
            entail_models(&unit(&["p(a)", "∀x(p(x) → q(x))"], "¬q(a)"), &[]),
            Ok(Label::False)
        );
    }

    #[test]
    fn disjunctive_consequent_diverges_as_strengthening() {
        let u = unit(&["p(a)", "p(a) -> q(a) | r(a)"], "q(a)");
        assert_eq!(entail_models(&u, &[]), Ok(Label::Uncertain));
        match agreement_check(&u, &[]).unwrap() {
            Agreement::StrengthenedDivergence(d) => {
                assert_eq!(d.models, Ok(Label::Uncertain));
                assert_eq!(d.chase, Ok(Label::True));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn xor_clash_is_strengthening_not_error() {
        // Both disjuncts hold: classically fine, but the exclusivity rules clash.
        let u = unit(&["p(a)", "q(a)", "p(a) xor q(a) -> r(a)"], "r(a)");
        match agreement_check(&u, &[]).unwrap() {
            Agreement::StrengthenedDivergence(d) => {
                assert_eq!(d.models, Ok(Label::Uncertain));
                assert!(matches!(
                    d.chase,
                    Err(OracleError::ContradictoryDerivation(_))
                ));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_premises_agree_uncertain() {
        let u = unit(&[], "p(a)");
        assert_eq!(
            agreement_check(&u, &[]),
            Ok(Agreement::Agree(Label::Uncertain))
        );
    }

    #[test]
    fn contraposition_is_beyond_the_chase() {
        // Classical modus tollens; the chase only runs rules forward.
        let u = unit(&["~q(a)", "forall x (p(x) -> q(x))"], "p(a)");
        match agreement_check(&u, &[]).unwrap() {
            Agreement::Contradiction(d) => {
                assert_eq!(d.models, Ok(Label::False));
                assert_eq!(d.chase, Ok(Label::Uncertain));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fallback_query_compared_on_subformula() {
        let u = unit(&["p(a)"], "p(a) | q(b)");
        assert_eq!(agreement_check(&u, &[]), Ok(Agreement::Agree(Label::True)));
    }

    #[test]
    fn inconsistent_premises_propagate() {
        let u = unit(&["p(a)", "~p(a)"], "p(a)");
        assert_eq!(
            agreement_check(&u, &[]),
            Err(OracleError::ContradictoryPremises)
        );
    }
}
