use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::OracleError;

/// Upper bound on the Herbrand base; 2^24 assignments is the most the
/// enumerator will visit.
pub const MAX_BASE_ATOMS: usize = 24;

/// Variable-free atom. Ordered by predicate, then argument list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: Vec<String>) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args,
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.predicate, self.args.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLiteral {
    pub atom: GroundAtom,
    pub positive: bool,
}

impl SignedLiteral {
    pub fn new(atom: GroundAtom, positive: bool) -> Self {
        SignedLiteral { atom, positive }
    }

    pub fn complement(&self) -> SignedLiteral {
        SignedLiteral {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }
}

impl fmt::Display for SignedLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "~{}", self.atom)
        }
    }
}

/// Closed-domain Herbrand base: every predicate applied to every tuple of
/// constants of its arity.
#[derive(Clone, Debug)]
pub struct HerbrandBase {
    pub constants: Vec<String>,
    pub atoms: Vec<GroundAtom>,
    index: HashMap<GroundAtom, usize>,
}

impl HerbrandBase {
    /// `predicates` are `(name, arity)` pairs. Constants and predicates are
    /// deduplicated and sorted so enumeration order is deterministic.
    pub fn new<'a>(
        constants: impl IntoIterator<Item = &'a str>,
        predicates: impl IntoIterator<Item = (&'a str, usize)>,
    ) -> Result<Self, OracleError> {
        let constants: Vec<String> = constants
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(str::to_string)
            .collect();
        let predicates: BTreeSet<(&str, usize)> = predicates.into_iter().collect();
        let n = constants.len();
        let size: usize = predicates
            .iter()
            .map(|(_, arity)| n.saturating_pow(*arity as u32))
            .fold(0usize, usize::saturating_add);
        if size > MAX_BASE_ATOMS {
            return Err(OracleError::DomainTooLarge {
                atoms: size,
                limit: MAX_BASE_ATOMS,
            });
        }
        let mut atoms = Vec::with_capacity(size);
        for (pred, arity) in &predicates {
            match arity {
                1 => {
                    for c in &constants {
                        atoms.push(GroundAtom::new(*pred, vec![c.clone()]));
                    }
                }
                2 => {
                    for a in &constants {
                        for b in &constants {
                            atoms.push(GroundAtom::new(*pred, vec![a.clone(), b.clone()]));
                        }
                    }
                }
                _ => unreachable!("arity is validated by the parser"),
            }
        }
        atoms.sort();
        let index = atoms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        Ok(HerbrandBase {
            constants,
            atoms,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &GroundAtom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    /// All assignments of `vars` to domain constants, in lexicographic order.
    pub fn substitutions(&self, vars: usize) -> Vec<Vec<&str>> {
        let mut out: Vec<Vec<&str>> = vec![Vec::new()];
        for _ in 0..vars {
            let mut next = Vec::with_capacity(out.len() * self.constants.len());
            for prefix in &out {
                for c in &self.constants {
                    let mut v = prefix.clone();
                    v.push(c.as_str());
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}
