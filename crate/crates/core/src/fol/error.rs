use thiserror::Error;

/// Frontend failures. Offsets are byte indices into the normalized text and
/// never exceed its length.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FolError {
    #[error("unexpected character at offset {offset}: `{snippet}`")]
    Lex { offset: usize, snippet: String },

    #[error("parse error at offset {offset}: expected {expected}, found {found}")]
    Parse {
        offset: usize,
        expected: String,
        found: String,
    },

    #[error("unsupported quantifier `{quantifier}` at offset {offset}; only universal quantification is supported")]
    UnsupportedQuantifier { offset: usize, quantifier: String },

    #[error("predicate `{predicate}` at offset {offset} has arity {arity}; only unary and binary predicates are supported")]
    Arity {
        offset: usize,
        predicate: String,
        arity: usize,
    },

    #[error("formula at offset {offset} nests deeper than {limit} levels")]
    TooDeep { offset: usize, limit: usize },

    #[error("quantified variable `{var}` at offset {offset} does not occur in its body")]
    VacuousQuantifier { offset: usize, var: String },
}

impl FolError {
    pub fn offset(&self) -> usize {
        match self {
            FolError::Lex { offset, .. }
            | FolError::Parse { offset, .. }
            | FolError::UnsupportedQuantifier { offset, .. }
            | FolError::Arity { offset, .. }
            | FolError::TooDeep { offset, .. }
            | FolError::VacuousQuantifier { offset, .. } => *offset,
        }
    }
}
