use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Three-valued verdict on a claim given its premises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    True,
    False,
    Uncertain,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown label `{0}`; expected True, False or Uncertain")]
pub struct LabelParseError(pub String);

impl Label {
    pub const ALL: [Label; 3] = [Label::True, Label::False, Label::Uncertain];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::True => "True",
            Label::False => "False",
            Label::Uncertain => "Uncertain",
        }
    }

    /// Letter used by the multiple-choice classification export.
    pub fn letter(self) -> char {
        match self {
            Label::True => 'A',
            Label::False => 'B',
            Label::Uncertain => 'C',
        }
    }

    pub fn from_letter(c: char) -> Option<Label> {
        match c {
            'A' => Some(Label::True),
            'B' => Some(Label::False),
            'C' => Some(Label::Uncertain),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Label::True => 0,
            Label::False => 1,
            Label::Uncertain => 2,
        }
    }

    /// Label of the negated claim.
    pub fn negate(self) -> Label {
        match self {
            Label::True => Label::False,
            Label::False => Label::True,
            Label::Uncertain => Label::Uncertain,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "True" => Ok(Label::True),
            "False" => Ok(Label::False),
            "Uncertain" => Ok(Label::Uncertain),
            other => Err(LabelParseError(other.to_string())),
        }
    }
}
