use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// Singleton extensional set `{name}` naming one individual.
    Individual(String),
    /// Independent variable `$k`, `k >= 1`.
    Var(u32),
    /// `(l * r)`, only ever the subject of an inheritance.
    Product(Box<Term>, Box<Term>),
    /// Bare name in predicate position.
    Predicate(String),
}

impl Term {
    pub fn product(l: Term, r: Term) -> Term {
        Term::Product(Box::new(l), Box::new(r))
    }

    pub fn vars(&self, out: &mut Vec<u32>) {
        match self {
            Term::Var(k) => out.push(*k),
            Term::Product(l, r) => {
                l.vars(out);
                r.vars(out);
            }
            Term::Individual(_) | Term::Predicate(_) => {}
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    Inheritance { subject: Term, predicate: Term },
    Negation(Box<Statement>),
    Conjunction(Vec<Statement>),
    Implication(Box<Statement>, Box<Statement>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("negation may only wrap an inheritance")]
    NegationOfCompound,
    #[error("conjunction needs at least two parts")]
    ShortConjunction,
    #[error("implications may not be nested")]
    NestedImplication,
    #[error("a product may only appear as the subject of an inheritance")]
    MisplacedProduct,
    #[error("predicate position must hold a bare name")]
    BadPredicate,
    #[error("variable index must be at least 1")]
    ZeroVariable,
}

impl Statement {
    pub fn inheritance(subject: Term, predicate: impl Into<String>) -> Statement {
        Statement::Inheritance {
            subject,
            predicate: Term::Predicate(predicate.into()),
        }
    }

    pub fn negation(inner: Statement) -> Statement {
        Statement::Negation(Box::new(inner))
    }

    pub fn implication(antecedent: Statement, consequent: Statement) -> Statement {
        Statement::Implication(Box::new(antecedent), Box::new(consequent))
    }

    /// Builds a conjunction, splicing in the parts of nested conjunctions so
    /// the result never directly contains another conjunction.
    pub fn conjunction(parts: Vec<Statement>) -> Statement {
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                Statement::Conjunction(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        Statement::Conjunction(flat)
    }

    /// Variable indices in order of appearance in the serialized text.
    pub fn vars(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            Statement::Inheritance { subject, predicate } => {
                subject.vars(out);
                predicate.vars(out);
            }
            Statement::Negation(inner) => inner.collect_vars(out),
            Statement::Conjunction(parts) => parts.iter().for_each(|p| p.collect_vars(out)),
            Statement::Implication(a, c) => {
                a.collect_vars(out);
                c.collect_vars(out);
            }
        }
    }

    pub fn has_vars(&self) -> bool {
        !self.vars().is_empty()
    }

    /// Predicate names mentioned anywhere in the statement.
    pub fn predicates(&self) -> Vec<&str> {
        match self {
            Statement::Inheritance { predicate, .. } => match predicate {
                Term::Predicate(p) => vec![p.as_str()],
                _ => vec![],
            },
            Statement::Negation(inner) => inner.predicates(),
            Statement::Conjunction(parts) => parts.iter().flat_map(|p| p.predicates()).collect(),
            Statement::Implication(a, c) => {
                let mut v = a.predicates();
                v.extend(c.predicates());
                v
            }
        }
    }

    /// Checks the structural invariants the serializer relies on.
    pub fn check(&self) -> Result<(), ShapeError> {
        self.check_at(false)
    }

    fn check_at(&self, inside_implication: bool) -> Result<(), ShapeError> {
        match self {
            Statement::Inheritance { subject, predicate } => {
                check_subject(subject)?;
                match predicate {
                    Term::Predicate(_) => Ok(()),
                    _ => Err(ShapeError::BadPredicate),
                }
            }
            Statement::Negation(inner) => match inner.as_ref() {
                Statement::Inheritance { .. } => inner.check_at(inside_implication),
                _ => Err(ShapeError::NegationOfCompound),
            },
            Statement::Conjunction(parts) => {
                if parts.len() < 2 {
                    return Err(ShapeError::ShortConjunction);
                }
                for p in parts {
                    if matches!(p, Statement::Implication(..)) {
                        return Err(ShapeError::NestedImplication);
                    }
                    p.check_at(inside_implication)?;
                }
                Ok(())
            }
            Statement::Implication(a, c) => {
                if inside_implication {
                    return Err(ShapeError::NestedImplication);
                }
                a.check_at(true)?;
                c.check_at(true)
            }
        }
    }
}

fn check_subject(t: &Term) -> Result<(), ShapeError> {
    match t {
        Term::Individual(_) => Ok(()),
        Term::Var(0) => Err(ShapeError::ZeroVariable),
        Term::Var(_) => Ok(()),
        Term::Product(l, r) => {
            for side in [l.as_ref(), r.as_ref()] {
                match side {
                    Term::Individual(_) => {}
                    Term::Var(0) => return Err(ShapeError::ZeroVariable),
                    Term::Var(_) => {}
                    _ => return Err(ShapeError::MisplacedProduct),
                }
            }
            Ok(())
        }
        Term::Predicate(_) => Err(ShapeError::BadPredicate),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Punctuation {
    Judgment,
    Question,
}

impl Punctuation {
    pub fn as_char(self) -> char {
        match self {
            Punctuation::Judgment => '.',
            Punctuation::Question => '?',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sentence {
    pub statement: Statement,
    pub punctuation: Punctuation,
}

impl Sentence {
    pub fn judgment(statement: Statement) -> Self {
        Sentence {
            statement,
            punctuation: Punctuation::Judgment,
        }
    }

    pub fn question(statement: Statement) -> Self {
        Sentence {
            statement,
            punctuation: Punctuation::Question,
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::serialize(self))
    }
}

/// Ordered judgments followed by exactly one question.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Program {
    pub judgments: Vec<Sentence>,
    pub query: Sentence,
}

impl Program {
    /// Serialized lines: judgments in order, then the query.
    pub fn lines(&self) -> Vec<String> {
        self.judgments
            .iter()
            .chain(std::iter::once(&self.query))
            .map(super::serialize)
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = self.lines().join("\n");
        s.push('\n');
        s
    }
}
