//! Narsese intermediate representation and its textual form.
//!
//! The serializer is the wire format handed to the engine. Its bracket
//! conventions:
//!
//! * inheritance `<S --> P>`, negation `(-- <S --> P>)`, implication `<A ==> B>`;
//! * a conjunction without variables is `(A && B)` with angle-bracketed parts;
//! * a conjunction with variables is `<(S1 --> P1) && (S2 --> P2)>`, with its
//!   inheritance parts in parentheses;
//! * conjunctions of more than two parts nest to the left: `((A && B) && C)`.

mod ast;
mod parse;

pub use ast::{Program, Punctuation, Sentence, ShapeError, Statement, Term};
pub use parse::{parse_narsese, parse_statement, NarseseSyntaxError};

pub fn serialize(sentence: &Sentence) -> String {
    let mut out = statement_to_string(&sentence.statement);
    out.push(sentence.punctuation.as_char());
    out
}

pub fn statement_to_string(s: &Statement) -> String {
    let mut out = String::new();
    write_statement(s, Brackets::Angle, &mut out);
    out
}

#[derive(Clone, Copy)]
enum Brackets {
    Angle,
    Round,
}

impl Brackets {
    fn open(self) -> char {
        match self {
            Brackets::Angle => '<',
            Brackets::Round => '(',
        }
    }
    fn close(self) -> char {
        match self {
            Brackets::Angle => '>',
            Brackets::Round => ')',
        }
    }
}

/// `inheritance` selects the brackets used when `s` is an inheritance.
fn write_statement(s: &Statement, inheritance: Brackets, out: &mut String) {
    match s {
        Statement::Inheritance { subject, predicate } => {
            out.push(inheritance.open());
            write_term(subject, out);
            out.push_str(" --> ");
            write_term(predicate, out);
            out.push(inheritance.close());
        }
        Statement::Negation(inner) => {
            out.push_str("(-- ");
            write_statement(inner, Brackets::Angle, out);
            out.push(')');
        }
        Statement::Conjunction(parts) => {
            let (outer, part) = if s.has_vars() {
                (Brackets::Angle, Brackets::Round)
            } else {
                (Brackets::Round, Brackets::Angle)
            };
            for _ in 1..parts.len() {
                out.push(outer.open());
            }
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    out.push_str(" && ");
                }
                write_statement(p, part, out);
                if i > 0 {
                    out.push(outer.close());
                }
            }
        }
        Statement::Implication(a, c) => {
            out.push('<');
            write_statement(a, Brackets::Angle, out);
            out.push_str(" ==> ");
            write_statement(c, Brackets::Angle, out);
            out.push('>');
        }
    }
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Individual(name) => {
            out.push('{');
            out.push_str(name);
            out.push('}');
        }
        Term::Var(k) => {
            out.push('$');
            out.push_str(&k.to_string());
        }
        Term::Product(l, r) => {
            out.push('(');
            write_term(l, out);
            out.push_str(" * ");
            write_term(r, out);
            out.push(')');
        }
        Term::Predicate(name) => out.push_str(name),
    }
}
