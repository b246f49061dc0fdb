use thiserror::Error;

use super::ast::{Punctuation, Sentence, ShapeError, Statement, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NarseseSyntaxError {
    #[error("Narsese syntax error at offset {offset}: expected {expected}")]
    Syntax {
        offset: usize,
        expected: &'static str,
    },
    #[error("Narsese statement at offset {offset} nests deeper than {limit} levels")]
    TooDeep { offset: usize, limit: usize },
    #[error("ill-formed Narsese statement: {0}")]
    Shape(#[from] ShapeError),
}

impl NarseseSyntaxError {
    pub fn offset(&self) -> usize {
        match self {
            NarseseSyntaxError::Syntax { offset, .. }
            | NarseseSyntaxError::TooDeep { offset, .. } => *offset,
            NarseseSyntaxError::Shape(_) => 0,
        }
    }
}

/// Parses one sentence (`statement` followed by `.` or `?`). Accepts both
/// angle and round brackets around inheritances anywhere, flexible
/// whitespace, and the `?.` spelling of a question.
pub fn parse_narsese(line: &str) -> Result<Sentence, NarseseSyntaxError> {
    let mut p = Cursor::new(line);
    p.ws();
    let statement = p.statement()?;
    p.ws();
    let punctuation = if p.eat(".") {
        Punctuation::Judgment
    } else if p.eat("?") {
        p.eat(".");
        Punctuation::Question
    } else {
        return Err(p.fail("`.` or `?`"));
    };
    p.ws();
    if p.pos != line.len() {
        return Err(p.fail("end of line"));
    }
    statement.check()?;
    Ok(Sentence {
        statement,
        punctuation,
    })
}

/// Parses a bare statement with no punctuation.
pub fn parse_statement(text: &str) -> Result<Statement, NarseseSyntaxError> {
    let mut p = Cursor::new(text);
    p.ws();
    let statement = p.statement()?;
    p.ws();
    if p.pos != text.len() {
        return Err(p.fail("end of statement"));
    }
    statement.check()?;
    Ok(statement)
}

/// Deepest statement nesting the parser accepts.
pub const MAX_DEPTH: usize = 64;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
    // Furthest failure seen, reported when every alternative fails.
    best: Option<(usize, &'static str)>,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            pos: 0,
            depth: 0,
            best: None,
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn fail(&mut self, expected: &'static str) -> NarseseSyntaxError {
        if self.best.is_none_or(|(off, _)| self.pos >= off) {
            self.best = Some((self.pos, expected));
        }
        let (offset, expected) = self.best.expect("just set");
        NarseseSyntaxError::Syntax { offset, expected }
    }

    fn expect(&mut self, s: &'static str) -> Result<(), NarseseSyntaxError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.fail(s))
        }
    }

    fn statement(&mut self) -> Result<Statement, NarseseSyntaxError> {
        if self.depth >= MAX_DEPTH {
            return Err(NarseseSyntaxError::TooDeep {
                offset: self.pos,
                limit: MAX_DEPTH,
            });
        }
        self.depth += 1;
        let r = self.statement_inner();
        self.depth -= 1;
        r
    }

    fn statement_inner(&mut self) -> Result<Statement, NarseseSyntaxError> {
        let start = self.pos;
        if self.eat("(--") {
            self.ws();
            let inner = self.statement()?;
            self.ws();
            self.expect(")")?;
            return Ok(Statement::negation(inner));
        }
        let close = if self.eat("<") {
            ">"
        } else if self.eat("(") {
            ")"
        } else {
            return Err(self.fail("`<` or `(`"));
        };
        self.ws();
        let after_open = self.pos;

        if let Ok(first) = self.statement() {
            self.ws();
            if self.eat("&&") {
                let mut parts = vec![first];
                loop {
                    self.ws();
                    parts.push(self.statement()?);
                    self.ws();
                    if !self.eat("&&") {
                        break;
                    }
                }
                self.expect(close)?;
                return Ok(Statement::conjunction(parts));
            }
            if self.eat("==>") {
                self.ws();
                let consequent = self.statement()?;
                self.ws();
                self.expect(close)?;
                return Ok(Statement::implication(first, consequent));
            }
        }

        // Not a compound statement; read `subject --> predicate`.
        self.pos = after_open;
        let subject = self.term()?;
        self.ws();
        if !self.eat("-->") {
            let err = self.fail("`-->`");
            self.pos = start;
            return Err(err);
        }
        self.ws();
        let predicate = self.term()?;
        self.ws();
        self.expect(close)?;
        Ok(Statement::Inheritance { subject, predicate })
    }

    fn term(&mut self) -> Result<Term, NarseseSyntaxError> {
        if self.depth >= MAX_DEPTH {
            return Err(NarseseSyntaxError::TooDeep {
                offset: self.pos,
                limit: MAX_DEPTH,
            });
        }
        self.depth += 1;
        let r = self.term_inner();
        self.depth -= 1;
        r
    }

    fn term_inner(&mut self) -> Result<Term, NarseseSyntaxError> {
        if self.eat("{") {
            let name = self.name()?;
            self.expect("}")?;
            return Ok(Term::Individual(name));
        }
        if self.eat("$") {
            let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
            if digits == 0 {
                return Err(self.fail("variable index"));
            }
            let k = self.rest()[..digits]
                .parse::<u32>()
                .map_err(|_| self.fail("variable index"))?;
            self.pos += digits;
            return Ok(Term::Var(k));
        }
        if self.eat("(") {
            self.ws();
            let l = self.term()?;
            self.ws();
            self.expect("*")?;
            self.ws();
            let r = self.term()?;
            self.ws();
            self.expect(")")?;
            return Ok(Term::product(l, r));
        }
        Ok(Term::Predicate(self.name()?))
    }

    fn name(&mut self) -> Result<String, NarseseSyntaxError> {
        let rest = self.rest();
        let len = rest
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        if len == 0 || rest.as_bytes()[0].is_ascii_digit() {
            return Err(self.fail("a name"));
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }
}
