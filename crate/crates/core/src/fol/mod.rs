//! First-order logic frontend: normalization, tokenization and parsing of
//! the supported subset (unary/binary atoms, `~ & | xor ->`, and universal
//! quantification).

mod ast;
mod error;
mod lexer;
mod normalize;
mod parser;
mod print;

pub use ast::{Atom, Formula, FormulaKind, Span, Term};
pub use error::FolError;
pub use lexer::{tokenize, Token, TokenKind};
pub use normalize::normalize;
pub use parser::parse;
pub use print::{atom_to_ascii, to_ascii, to_unicode};

/// A formula together with the normalized text its spans index into.
#[derive(Clone, Debug)]
pub struct ParsedFormula {
    pub formula: Formula,
    pub text: String,
}

/// `normalize`, `tokenize` and `parse` in sequence.
pub fn parse_fol(raw: &str) -> Result<Formula, FolError> {
    parse_fol_with_source(raw).map(|p| p.formula)
}

pub fn parse_fol_with_source(raw: &str) -> Result<ParsedFormula, FolError> {
    let text = normalize(raw);
    let tokens = tokenize(&text)?;
    let formula = parse(&tokens)?;
    Ok(ParsedFormula { formula, text })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> Term {
        Term::Constant(n.into())
    }
    fn v(n: &str) -> Term {
        Term::Variable(n.into())
    }

    #[test]
    fn card_rule_parses_to_quantified_implication() {
        let f = parse_fol("∀x(loves_drawings(x) ∧ values_creativity(x) → artistic(x))").unwrap();
        let expected = Formula::forall(
            "x",
            Formula::implies(
                Formula::and(
                    Formula::atom("loves_drawings", vec![v("x")]),
                    Formula::atom("values_creativity", vec![v("x")]),
                ),
                Formula::atom("artistic", vec![v("x")]),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn single_atom_is_constant() {
        assert_eq!(parse_fol("p(a)").unwrap(), Formula::atom("p", vec![c("a")]));
    }

    #[test]
    fn labelled_fact() {
        assert_eq!(
            parse_fol("fact3: loves_drawings(Jasiah)").unwrap(),
            Formula::atom("loves_drawings", vec![c("Jasiah")])
        );
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse_fol("p(a) -> q(a) -> r(a)").unwrap();
        let p = Formula::atom("p", vec![c("a")]);
        let q = Formula::atom("q", vec![c("a")]);
        let r = Formula::atom("r", vec![c("a")]);
        assert_eq!(
            f,
            Formula::implies(p.clone(), Formula::implies(q.clone(), r.clone()))
        );
        assert_ne!(f, Formula::implies(Formula::implies(p, q), r));
    }

    #[test]
    fn disjunctive_antecedent_under_quantifier() {
        let f = parse_fol("∀x(p(x) ∨ q(x) → r(x))").unwrap();
        let expected = Formula::forall(
            "x",
            Formula::implies(
                Formula::or(
                    Formula::atom("p", vec![v("x")]),
                    Formula::atom("q", vec![v("x")]),
                ),
                Formula::atom("r", vec![v("x")]),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn precedence_ladder() {
        // ~ > & > | > xor > ->
        let f = parse_fol("~p(a) & q(a) | r(a) xor s(a) -> t(a)").unwrap();
        let atom = |n: &str| Formula::atom(n, vec![c("a")]);
        let expected = Formula::implies(
            Formula::xor(
                Formula::or(Formula::and(Formula::not(atom("p")), atom("q")), atom("r")),
                atom("s"),
            ),
            atom("t"),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn left_associative_conjunction() {
        let f = parse_fol("p(a) & q(a) & r(a)").unwrap();
        let atom = |n: &str| Formula::atom(n, vec![c("a")]);
        assert_eq!(
            f,
            Formula::and(Formula::and(atom("p"), atom("q")), atom("r"))
        );
    }

    #[test]
    fn quantifier_scope_decides_variables() {
        let f = parse_fol("forall x (r(x, y))").unwrap();
        assert_eq!(
            f,
            Formula::forall("x", Formula::atom("r", vec![v("x"), c("y")]))
        );
        // Same lowercase name outside the quantifier is a constant.
        let g = parse_fol("p(x)").unwrap();
        assert_eq!(g, Formula::atom("p", vec![c("x")]));
    }

    #[test]
    fn quantifier_extends_rightward() {
        let f = parse_fol("forall x p(x) & q(x)").unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "x",
                Formula::and(
                    Formula::atom("p", vec![v("x")]),
                    Formula::atom("q", vec![v("x")])
                )
            )
        );
    }

    #[test]
    fn nested_quantifiers_accepted() {
        let f = parse_fol("∀x∀y(r(x,y) → s(y,x))").unwrap();
        let (vars, _) = f.strip_foralls();
        assert_eq!(vars, vec!["x", "y"]);
    }

    #[test]
    fn existential_rejected() {
        assert!(matches!(
            parse_fol("∃x p(x)"),
            Err(FolError::UnsupportedQuantifier { offset: 0, .. })
        ));
        assert!(matches!(
            parse_fol("p(a) & exists y (q(y))"),
            Err(FolError::UnsupportedQuantifier { offset: 7, .. })
        ));
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(
            parse_fol("p()"),
            Err(FolError::Arity { arity: 0, .. })
        ));
        assert!(matches!(
            parse_fol("p(a, b, c)"),
            Err(FolError::Arity { arity: 3, .. })
        ));
        assert!(matches!(parse_fol("p"), Err(FolError::Parse { .. })));
    }

    #[test]
    fn vacuous_quantifier_rejected() {
        assert!(matches!(
            parse_fol("forall x (p(a))"),
            Err(FolError::VacuousQuantifier { .. })
        ));
    }

    #[test]
    fn parse_errors_point_inside_text() {
        for bad in [
            "p(a",
            "p(a) &",
            "(p(a)",
            "p(a) q(b)",
            "& p(a)",
            "",
            "forall",
            "p(a,)",
        ] {
            let text = normalize(bad);
            let err = parse_fol(bad).unwrap_err();
            assert!(err.offset() <= text.len(), "{bad:?}: {err:?}");
        }
    }

    #[test]
    fn spans_cover_source() {
        let parsed = parse_fol_with_source("fact1: p(a) & ~q(b)").unwrap();
        assert_eq!(parsed.formula.span.snippet(&parsed.text), "p(a) & ~q(b)");
        if let FormulaKind::And(_, r) = &parsed.formula.kind {
            assert_eq!(r.span.snippet(&parsed.text), "~q(b)");
        } else {
            panic!("expected conjunction");
        }
    }

    #[test]
    fn canonical_printing() {
        let f = parse_fol("∀x(p(x) ∧ q(x) → r(x))").unwrap();
        assert_eq!(to_ascii(&f), "forall x (p(x) & q(x) -> r(x))");
        let g = parse_fol("~(p(a) | q(a)) & (r(a) -> s(a))").unwrap();
        assert_eq!(to_ascii(&g), "~(p(a) | q(a)) & (r(a) -> s(a))");
        let h = parse_fol("(p(a) -> q(a)) -> r(a)").unwrap();
        assert_eq!(to_ascii(&h), "(p(a) -> q(a)) -> r(a)");
        let k = parse_fol("r(a, b)").unwrap();
        assert_eq!(to_ascii(&k), "r(a, b)");
        assert_eq!(to_unicode(&f), "∀x (p(x) ∧ q(x) → r(x))");
    }

    #[test]
    fn nesting_limit() {
        let ok = format!("{}p(a){}", "(".repeat(60), ")".repeat(60));
        assert!(parse_fol(&ok).is_ok());
        for deep in [
            format!("{}p(a){}", "(".repeat(500), ")".repeat(500)),
            format!("{}p(a)", "~".repeat(500)),
            vec!["p(a)"; 500].join(" & "),
            vec!["p(a)"; 500].join(" -> "),
        ] {
            assert!(
                matches!(parse_fol(&deep), Err(FolError::TooDeep { .. })),
                "{}",
                &deep[..20]
            );
        }
    }
}
