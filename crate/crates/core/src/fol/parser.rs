//! Recursive-descent parser for the supported FOL subset.
//!
//! Precedence, tightest first: `~`, `&`, `|`, `xor`, `->`. Implication is
//! right-associative, the others left-associative. A quantifier extends as
//! far to the right as possible.

use super::ast::{Atom, Formula, FormulaKind, Span, Term};
use super::error::FolError;
use super::lexer::{Token, TokenKind};

/// Deepest formula tree the parser will build.
pub const MAX_DEPTH: usize = 128;

pub fn parse(tokens: &[Token]) -> Result<Formula, FolError> {
    let mut p = Parser {
        tokens,
        pos: 0,
        scope: Vec::new(),
        depth: 0,
    };
    let f = p.implication()?;
    if let Some(tok) = p.peek() {
        return Err(FolError::Parse {
            offset: tok.span.start,
            expected: "end of input".into(),
            found: tok.kind.describe(),
        });
    }
    Ok(f)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    scope: Vec<String>,
    depth: usize,
}

#[derive(Clone, Copy)]
enum BinOp {
    And,
    Or,
    Xor,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&'t TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eof_offset(&self) -> usize {
        self.tokens.last().map_or(0, |t| t.span.end)
    }

    fn error_here(&self, expected: &str) -> FolError {
        match self.peek() {
            Some(tok) => FolError::Parse {
                offset: tok.span.start,
                expected: expected.into(),
                found: tok.kind.describe(),
            },
            None => FolError::Parse {
                offset: self.eof_offset(),
                expected: expected.into(),
                found: "end of input".into(),
            },
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<&'t Token, FolError> {
        match self.peek() {
            Some(tok) if tok.kind == kind => {
                self.pos += 1;
                Ok(tok)
            }
            _ => Err(self.error_here(expected)),
        }
    }

    fn enter(&mut self) -> Result<(), FolError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let offset = self.peek().map_or(self.eof_offset(), |t| t.span.start);
            return Err(FolError::TooDeep {
                offset,
                limit: MAX_DEPTH,
            });
        }
        Ok(())
    }

    fn implication(&mut self) -> Result<Formula, FolError> {
        let saved = self.depth;
        let r = self.implication_inner();
        self.depth = saved;
        r
    }

    fn implication_inner(&mut self) -> Result<Formula, FolError> {
        self.enter()?;
        let lhs = self.binary(BinOp::Xor)?;
        if self.peek_kind() == Some(&TokenKind::Implies) {
            self.bump();
            let rhs = self.implication()?;
            let span = lhs.span.join(rhs.span);
            return Ok(Formula::new(
                FormulaKind::Implies(Box::new(lhs), Box::new(rhs)),
                span,
            ));
        }
        Ok(lhs)
    }

    fn binary(&mut self, op: BinOp) -> Result<Formula, FolError> {
        let (token, tighter) = match op {
            BinOp::Xor => (TokenKind::Xor, Some(BinOp::Or)),
            BinOp::Or => (TokenKind::Or, Some(BinOp::And)),
            BinOp::And => (TokenKind::And, None),
        };
        let operand = |p: &mut Self| match tighter {
            Some(t) => p.binary(t),
            None => p.unary(),
        };
        let saved = self.depth;
        let mut lhs = operand(self)?;
        while self.peek_kind() == Some(&token) {
            // Each operator in a left-nested chain adds a level.
            if let Err(e) = self.enter() {
                self.depth = saved;
                return Err(e);
            }
            self.bump();
            let rhs = operand(self)?;
            let span = lhs.span.join(rhs.span);
            let (l, r) = (Box::new(lhs), Box::new(rhs));
            let kind = match op {
                BinOp::And => FormulaKind::And(l, r),
                BinOp::Or => FormulaKind::Or(l, r),
                BinOp::Xor => FormulaKind::Xor(l, r),
            };
            lhs = Formula::new(kind, span);
        }
        self.depth = saved;
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FolError> {
        let Some(tok) = self.peek() else {
            return Err(self.error_here("a formula"));
        };
        match &tok.kind {
            TokenKind::Not => {
                self.bump();
                self.enter()?;
                let inner = self.unary();
                self.depth -= 1;
                let inner = inner?;
                let span = tok.span.join(inner.span);
                Ok(Formula::new(FormulaKind::Not(Box::new(inner)), span))
            }
            TokenKind::ForAll => {
                self.bump();
                let var = match self.peek_kind() {
                    Some(TokenKind::Ident(name)) => {
                        self.bump();
                        name.clone()
                    }
                    _ => return Err(self.error_here("a variable name after the quantifier")),
                };
                self.scope.push(var.clone());
                let body = self.implication();
                self.scope.pop();
                let body = body?;
                if !body.free_variables().contains(&var) {
                    return Err(FolError::VacuousQuantifier {
                        offset: tok.span.start,
                        var,
                    });
                }
                let span = tok.span.join(body.span);
                Ok(Formula::new(FormulaKind::ForAll(var, Box::new(body)), span))
            }
            TokenKind::Exists => Err(FolError::UnsupportedQuantifier {
                offset: tok.span.start,
                quantifier: "exists".into(),
            }),
            TokenKind::LParen => {
                self.bump();
                let inner = self.implication()?;
                let close = self.expect(TokenKind::RParen, "`)`")?;
                Ok(Formula::new(inner.kind, tok.span.join(close.span)))
            }
            TokenKind::Ident(name) => {
                self.bump();
                self.atom(name, tok.span)
            }
            _ => Err(self.error_here("a formula")),
        }
    }

    fn atom(&mut self, predicate: &str, start: Span) -> Result<Formula, FolError> {
        self.expect(TokenKind::LParen, "`(` after predicate name")?;
        let mut args = Vec::new();
        if self.peek_kind() == Some(&TokenKind::RParen) {
            return Err(FolError::Arity {
                offset: start.start,
                predicate: predicate.into(),
                arity: 0,
            });
        }
        loop {
            match self.peek() {
                Some(Token {
                    kind: TokenKind::Ident(name),
                    ..
                }) => {
                    self.bump();
                    args.push(if self.scope.iter().any(|v| v == name) {
                        Term::Variable(name.clone())
                    } else {
                        Term::Constant(name.clone())
                    });
                }
                _ => return Err(self.error_here("a term")),
            }
            match self.peek_kind() {
                Some(TokenKind::Comma) => {
                    self.bump();
                }
                _ => break,
            }
        }
        let close = self.expect(TokenKind::RParen, "`,` or `)`")?;
        if args.len() > 2 {
            return Err(FolError::Arity {
                offset: start.start,
                predicate: predicate.into(),
                arity: args.len(),
            });
        }
        Ok(Formula::new(
            FormulaKind::Atom(Atom::new(predicate, args)),
            start.join(close.span),
        ))
    }
}
