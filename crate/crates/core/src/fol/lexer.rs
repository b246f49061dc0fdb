use super::ast::Span;
use super::error::FolError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    LParen,
    RParen,
    Comma,
    ForAll,
    Exists,
    Not,
    And,
    Or,
    Implies,
    Xor,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("identifier `{name}`"),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::ForAll => "`forall`".into(),
            TokenKind::Exists => "`exists`".into(),
            TokenKind::Not => "`~`".into(),
            TokenKind::And => "`&`".into(),
            TokenKind::Or => "`|`".into(),
            TokenKind::Implies => "`->`".into(),
            TokenKind::Xor => "`xor`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

/// Multi-byte spellings, longest first so `/\` wins over nothing and `->`
/// is never split.
const SYMBOLS: &[(&str, TokenKind)] = &[
    ("->", TokenKind::Implies),
    ("/\\", TokenKind::And),
    ("\\/", TokenKind::Or),
    ("∀", TokenKind::ForAll),
    ("∃", TokenKind::Exists),
    ("¬", TokenKind::Not),
    ("~", TokenKind::Not),
    ("!", TokenKind::Not),
    ("∧", TokenKind::And),
    ("&", TokenKind::And),
    ("∨", TokenKind::Or),
    ("|", TokenKind::Or),
    ("→", TokenKind::Implies),
    ("⊕", TokenKind::Xor),
    ("(", TokenKind::LParen),
    (")", TokenKind::RParen),
    (",", TokenKind::Comma),
];

pub fn tokenize(text: &str) -> Result<Vec<Token>, FolError> {
    let mut tokens = Vec::new();
    let mut pos = 0;
    'outer: while pos < text.len() {
        let rest = &text[pos..];
        let c = rest.chars().next().expect("non-empty remainder");
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            let word = &rest[..len];
            let kind = match word {
                "forall" => TokenKind::ForAll,
                "exists" => TokenKind::Exists,
                "xor" => TokenKind::Xor,
                _ => TokenKind::Ident(word.to_string()),
            };
            tokens.push(Token {
                kind,
                span: Span::new(pos, pos + len),
            });
            pos += len;
            continue;
        }
        for (spelling, kind) in SYMBOLS {
            if rest.starts_with(spelling) {
                tokens.push(Token {
                    kind: kind.clone(),
                    span: Span::new(pos, pos + spelling.len()),
                });
                pos += spelling.len();
                continue 'outer;
            }
        }
        let snippet: String = rest.chars().take(12).collect();
        return Err(FolError::Lex {
            offset: pos,
            snippet,
        });
    }
    Ok(tokens)
}
