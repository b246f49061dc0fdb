//! Deterministic FOL to Narsese compilation.
//!
//! Premises, after stripping any outer `forall` chain, must take one of the
//! shapes below. Emission order within each shape is fixed.
//!
//! | premise                 | emitted judgments                                  |
//! |-------------------------|----------------------------------------------------|
//! | `p(t)`, `~p(t)`         | one inheritance, negated when needed               |
//! | `a & b & ...` (literals)| one judgment per conjunct                          |
//! | `A -> B`                | `<A ==> B>.`                                       |
//! | `(a & b) -> C`          | `<(a && b) ==> C>.`                                |
//! | `(a \| b) -> C`         | `<a ==> C>.`, `<b ==> C>.`                         |
//! | `A -> (b & c)`          | `<A ==> b>.`, `<A ==> c>.`                         |
//! | `A -> (b \| c)`         | `<A ==> b>.`, `<A ==> c>.` (strengthens the source)|
//! | `(a xor b) -> C`        | `<a ==> (-- b)>.`, `<b ==> (-- a)>.`, `<a ==> C>.`, `<b ==> C>.` |
//!
//! Antecedent splitting is outermost: every antecedent alternative is paired
//! with every consequent literal, antecedent-major. Variables are numbered
//! `$1, $2, ...` per emitted line in order of first appearance.

use thiserror::Error;

use crate::fol::{self, Atom, Formula, FormulaKind, Span, Term as FolTerm};
use crate::narsese::{Program, Sentence, Statement, Term};

/// Premises plus the claim to query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileUnit {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl CompileUnit {
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Self {
        CompileUnit {
            premises,
            conclusion,
        }
    }

    /// Parses raw FOL strings. Errors carry the failing line's index, with
    /// the conclusion reported as index `premises.len()`.
    pub fn parse<S: AsRef<str>>(
        premises: &[S],
        conclusion: &str,
    ) -> Result<Self, (usize, fol::FolError)> {
        let premises = premises
            .iter()
            .enumerate()
            .map(|(i, p)| fol::parse_fol(p.as_ref()).map_err(|e| (i, e)))
            .collect::<Result<Vec<_>, _>>()?;
        let idx = premises.len();
        let conclusion = fol::parse_fol(conclusion).map_err(|e| (idx, e))?;
        Ok(CompileUnit::new(premises, conclusion))
    }

    /// Constant names across premises then conclusion, first appearance order.
    pub fn constants(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for f in self
            .premises
            .iter()
            .chain(std::iter::once(&self.conclusion))
        {
            for c in f.constants() {
                if !out.iter().any(|o| o == c) {
                    out.push(c.to_string());
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileReport {
    pub program: Program,
    pub fallback_used: bool,
    /// Canonical ASCII of the subformula queried in place of the conclusion.
    pub fallback_subformula: Option<String>,
    /// `source_map[i]` lists the judgment indices emitted for premise `i`.
    pub source_map: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("{}unsupported pattern `{node}`: {reason}", location(.premise))]
    UnsupportedPattern {
        /// Premise index; `None` for the conclusion or a standalone formula.
        premise: Option<usize>,
        node: String,
        span: Span,
        reason: &'static str,
    },
    #[error("conclusion contains no atomic subformula to query")]
    NoQueryableSubformula,
}

fn location(premise: &Option<usize>) -> String {
    match premise {
        Some(i) => format!("premise {i}: "),
        None => String::new(),
    }
}

impl CompileError {
    fn unsupported(node: &Formula, reason: &'static str) -> Self {
        CompileError::UnsupportedPattern {
            premise: None,
            node: fol::to_ascii(node),
            span: node.span,
            reason,
        }
    }

    fn at_premise(self, index: usize) -> Self {
        match self {
            CompileError::UnsupportedPattern {
                node, span, reason, ..
            } => CompileError::UnsupportedPattern {
                premise: Some(index),
                node,
                span,
                reason,
            },
            other => other,
        }
    }
}

/// Maps FOL variable names to Narsese indices in first-appearance order.
#[derive(Clone, Debug, Default)]
pub struct VarEnv {
    names: Vec<String>,
}

impl VarEnv {
    pub fn new() -> Self {
        VarEnv::default()
    }

    pub fn index(&mut self, name: &str) -> u32 {
        let pos = match self.names.iter().position(|n| n == name) {
            Some(p) => p,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        };
        (pos + 1) as u32
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

fn compile_term(t: &FolTerm, env: &mut VarEnv) -> Term {
    match t {
        FolTerm::Constant(c) => Term::Individual(c.clone()),
        FolTerm::Variable(v) => Term::Var(env.index(v)),
    }
}

/// `p(c)` to `<{c} --> p>`, `p(x)` to `<$k --> p>`, `r(s, t)` to
/// `<(s' * t') --> r>`.
pub fn compile_atom(f: &Formula, env: &mut VarEnv) -> Result<Statement, CompileError> {
    let atom = f
        .as_atom()
        .ok_or_else(|| CompileError::unsupported(f, "expected an atomic formula"))?;
    atom_statement(atom, env).ok_or_else(|| {
        CompileError::unsupported(f, "only unary and binary predicates are supported")
    })
}

fn atom_statement(atom: &Atom, env: &mut VarEnv) -> Option<Statement> {
    let subject = match atom.args.as_slice() {
        [t] => compile_term(t, env),
        [l, r] => {
            let l = compile_term(l, env);
            Term::product(l, compile_term(r, env))
        }
        _ => return None,
    };
    Some(Statement::inheritance(subject, atom.predicate.clone()))
}

#[derive(Clone, Copy, Debug)]
struct Lit<'f> {
    atom: &'f Atom,
    positive: bool,
    node: &'f Formula,
}

impl<'f> Lit<'f> {
    fn of(f: &'f Formula) -> Option<Self> {
        f.as_literal().map(|(atom, positive)| Lit {
            atom,
            positive,
            node: f,
        })
    }

    fn complement(self) -> Self {
        Lit {
            positive: !self.positive,
            ..self
        }
    }

    fn statement(&self, env: &mut VarEnv) -> Result<Statement, CompileError> {
        let inh = atom_statement(self.atom, env).ok_or_else(|| {
            CompileError::unsupported(self.node, "only unary and binary predicates are supported")
        })?;
        Ok(if self.positive {
            inh
        } else {
            Statement::negation(inh)
        })
    }
}

fn fact(lit: Lit) -> Result<Sentence, CompileError> {
    Ok(Sentence::judgment(lit.statement(&mut VarEnv::new())?))
}

/// One `<antecedent ==> consequent>` statement with its own variable scope.
fn rule(antecedent: &[Lit], consequent: Lit) -> Result<Statement, CompileError> {
    let mut env = VarEnv::new();
    let parts = antecedent
        .iter()
        .map(|l| l.statement(&mut env))
        .collect::<Result<Vec<_>, _>>()?;
    let ante = if parts.len() == 1 {
        parts.into_iter().next().expect("one part")
    } else {
        Statement::conjunction(parts)
    };
    let cons = consequent.statement(&mut env)?;
    Ok(Statement::implication(ante, cons))
}

fn contains(f: &Formula, pred: impl Fn(&FormulaKind) -> bool) -> bool {
    f.preorder().into_iter().any(|n| pred(&n.kind))
}

fn has_implication(f: &Formula) -> bool {
    contains(f, |k| matches!(k, FormulaKind::Implies(..)))
}

fn literal_or_err<'f>(f: &'f Formula) -> Result<Lit<'f>, CompileError> {
    if let Some(l) = Lit::of(f) {
        return Ok(l);
    }
    Err(match &f.kind {
        FormulaKind::Not(_) => CompileError::unsupported(f, "negation of a compound formula"),
        FormulaKind::Implies(..) => CompileError::unsupported(f, "nested implication"),
        FormulaKind::ForAll(..) => CompileError::unsupported(f, "quantifier below the top level"),
        _ => CompileError::unsupported(f, "expected an atom or negated atom"),
    })
}

/// Disjunctive normal form of an antecedent: each inner list is one
/// conjunction of literals that triggers the rule.
fn antecedent_alternatives(f: &Formula) -> Result<Vec<Vec<Lit<'_>>>, CompileError> {
    match &f.kind {
        FormulaKind::And(l, r) => {
            let left = antecedent_alternatives(l)?;
            let right = antecedent_alternatives(r)?;
            let mut out = Vec::with_capacity(left.len() * right.len());
            for a in &left {
                for b in &right {
                    let mut alt = a.clone();
                    alt.extend(b.iter().copied());
                    out.push(alt);
                }
            }
            Ok(out)
        }
        FormulaKind::Or(l, r) => {
            let mut out = antecedent_alternatives(l)?;
            out.extend(antecedent_alternatives(r)?);
            Ok(out)
        }
        FormulaKind::Xor(..) => Err(CompileError::unsupported(
            f,
            "exclusive disjunction is only supported as the whole antecedent",
        )),
        _ => Ok(vec![vec![literal_or_err(f)?]]),
    }
}

fn consequent_literals(f: &Formula) -> Result<Vec<Lit<'_>>, CompileError> {
    match &f.kind {
        FormulaKind::And(l, r) | FormulaKind::Or(l, r) => {
            let mut out = consequent_literals(l)?;
            out.extend(consequent_literals(r)?);
            Ok(out)
        }
        FormulaKind::Xor(..) => Err(CompileError::unsupported(
            f,
            "exclusive disjunction in a consequent",
        )),
        _ => Ok(vec![literal_or_err(f)?]),
    }
}

fn conjunct_literals(f: &Formula) -> Result<Vec<Lit<'_>>, CompileError> {
    match &f.kind {
        FormulaKind::And(l, r) => {
            let mut out = conjunct_literals(l)?;
            out.extend(conjunct_literals(r)?);
            Ok(out)
        }
        FormulaKind::Or(..) => Err(CompileError::unsupported(
            f,
            "disjunction inside a conjunctive fact",
        )),
        FormulaKind::Xor(..) => Err(CompileError::unsupported(
            f,
            "exclusive disjunction inside a conjunctive fact",
        )),
        _ => Ok(vec![literal_or_err(f)?]),
    }
}

/// Compiles one premise into its judgments.
pub fn compile_premise(f: &Formula) -> Result<Vec<Sentence>, CompileError> {
    let (_, body) = f.strip_foralls();
    match &body.kind {
        FormulaKind::Atom(_) => Ok(vec![fact(literal_or_err(body)?)?]),
        FormulaKind::Not(_) => Ok(vec![fact(literal_or_err(body)?)?]),
        FormulaKind::And(..) => {
            if has_implication(body) {
                return Err(CompileError::unsupported(
                    body,
                    "implication inside a conjunction",
                ));
            }
            conjunct_literals(body)?.into_iter().map(fact).collect()
        }
        FormulaKind::Or(..) => Err(CompileError::unsupported(body, "bare disjunctive fact")),
        FormulaKind::Xor(..) => Err(CompileError::unsupported(
            body,
            "bare exclusive-disjunction fact",
        )),
        FormulaKind::ForAll(..) => unreachable!("outer quantifiers were stripped"),
        FormulaKind::Implies(ante, cons) => {
            for side in [ante.as_ref(), cons.as_ref()] {
                if has_implication(side) {
                    return Err(CompileError::unsupported(side, "nested implication"));
                }
            }
            let consequents = consequent_literals(cons)?;
            let mut out = Vec::new();
            if let FormulaKind::Xor(l, r) = &ante.kind {
                let a = literal_or_err(l)?;
                let b = literal_or_err(r)?;
                out.push(rule(&[a], b.complement())?);
                out.push(rule(&[b], a.complement())?);
                for trigger in [a, b] {
                    for c in &consequents {
                        out.push(rule(&[trigger], *c)?);
                    }
                }
            } else {
                for alt in antecedent_alternatives(ante)? {
                    for c in &consequents {
                        out.push(rule(&alt, *c)?);
                    }
                }
            }
            Ok(out.into_iter().map(Sentence::judgment).collect())
        }
    }
}

/// Whether a premise uses a conversion that strengthens the source formula
/// (disjunctive consequent or exclusive-disjunction antecedent).
pub fn premise_strengthens(f: &Formula) -> bool {
    let (_, body) = f.strip_foralls();
    match &body.kind {
        FormulaKind::Implies(ante, cons) => {
            matches!(ante.kind, FormulaKind::Xor(..))
                || contains(cons, |k| matches!(k, FormulaKind::Or(..)))
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledQuery {
    pub sentence: Sentence,
    pub fallback_used: bool,
    pub fallback_subformula: Option<String>,
    /// Formula whose truth the question asks about: the conclusion itself,
    /// or the universal closure of the fallback subformula.
    pub queried: Formula,
}

/// Compiles the conclusion into a question, falling back to its first
/// atomic or negated-atomic subformula (preorder, left before right) when
/// the whole conclusion has no single-statement form.
pub fn compile_query(f: &Formula) -> Result<CompiledQuery, CompileError> {
    if let Some(statement) = direct_query(f) {
        return Ok(CompiledQuery {
            sentence: Sentence::question(statement),
            fallback_used: false,
            fallback_subformula: None,
            queried: f.clone(),
        });
    }
    let node = f
        .preorder()
        .into_iter()
        .find(|n| n.is_literal())
        .ok_or(CompileError::NoQueryableSubformula)?;
    let lit = Lit::of(node).expect("literal");
    let statement = lit.statement(&mut VarEnv::new())?;
    let mut queried = node.clone();
    for v in node.free_variables().into_iter().rev() {
        queried = Formula::forall(&v, queried);
    }
    Ok(CompiledQuery {
        sentence: Sentence::question(statement),
        fallback_used: true,
        fallback_subformula: Some(fol::to_ascii(node)),
        queried,
    })
}

fn direct_query(f: &Formula) -> Option<Statement> {
    let (_, body) = f.strip_foralls();
    let mut env = VarEnv::new();
    if let Some(l) = Lit::of(body) {
        return l.statement(&mut env).ok();
    }
    match &body.kind {
        FormulaKind::And(..) => {
            let lits = conjunct_literals(body).ok()?;
            let parts = lits
                .iter()
                .map(|l| l.statement(&mut env))
                .collect::<Result<Vec<_>, _>>()
                .ok()?;
            Some(Statement::conjunction(parts))
        }
        FormulaKind::Implies(ante, cons) => {
            let cons = Lit::of(cons)?;
            let mut alts = antecedent_alternatives(ante).ok()?;
            if alts.len() != 1 {
                return None;
            }
            rule(&alts.pop().expect("one alternative"), cons).ok()
        }
        _ => None,
    }
}

/// Compiles premises in order, then the query.
pub fn compile_unit(u: &CompileUnit) -> Result<CompileReport, CompileError> {
    let mut judgments = Vec::new();
    let mut source_map = Vec::with_capacity(u.premises.len());
    for (i, p) in u.premises.iter().enumerate() {
        let lines = compile_premise(p).map_err(|e| e.at_premise(i))?;
        let start = judgments.len();
        judgments.extend(lines);
        source_map.push((start..judgments.len()).collect());
    }
    let query = compile_query(&u.conclusion)?;
    Ok(CompileReport {
        program: Program {
            judgments,
            query: query.sentence,
        },
        fallback_used: query.fallback_used,
        fallback_subformula: query.fallback_subformula,
        source_map,
    })
}
