use std::fmt;

/// Byte range into the normalized text a node was parsed from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    /// The slice of `source` covered by this span, clamped to the text.
    pub fn snippet<'a>(&self, source: &'a str) -> &'a str {
        let end = self.end.min(source.len());
        let start = self.start.min(end);
        source.get(start..end).unwrap_or("")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Constant(String),
    Variable(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Constant(n) | Term::Variable(n) => n,
        }
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// A parsed formula. Equality and hashing ignore spans, so two formulas
/// parsed from differently spelled text compare equal when their structure
/// matches.
#[derive(Clone, Debug)]
pub struct Formula {
    pub kind: FormulaKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FormulaKind {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Formula {}

impl std::hash::Hash for Formula {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state)
    }
}

// Span-less constructors, handy for building formulas in code and tests.
impl Formula {
    pub fn new(kind: FormulaKind, span: Span) -> Self {
        Formula { kind, span }
    }

    pub fn atom(predicate: &str, args: Vec<Term>) -> Self {
        Self::from_kind(FormulaKind::Atom(Atom::new(predicate, args)))
    }

    pub fn not(inner: Formula) -> Self {
        Self::from_kind(FormulaKind::Not(Box::new(inner)))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Self::from_kind(FormulaKind::And(Box::new(l), Box::new(r)))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Self::from_kind(FormulaKind::Or(Box::new(l), Box::new(r)))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Self::from_kind(FormulaKind::Implies(Box::new(l), Box::new(r)))
    }

    pub fn xor(l: Formula, r: Formula) -> Self {
        Self::from_kind(FormulaKind::Xor(Box::new(l), Box::new(r)))
    }

    pub fn forall(var: &str, body: Formula) -> Self {
        Self::from_kind(FormulaKind::ForAll(var.to_string(), Box::new(body)))
    }

    fn from_kind(kind: FormulaKind) -> Self {
        Formula {
            kind,
            span: Span::default(),
        }
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match &self.kind {
            FormulaKind::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// `Some((atom, positive))` for an atom or a negated atom.
    pub fn as_literal(&self) -> Option<(&Atom, bool)> {
        match &self.kind {
            FormulaKind::Atom(a) => Some((a, true)),
            FormulaKind::Not(inner) => inner.as_atom().map(|a| (a, false)),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        self.as_literal().is_some()
    }

    /// Strips the outer chain of universal quantifiers, returning the bound
    /// variables in binding order and the body beneath them.
    pub fn strip_foralls(&self) -> (Vec<&str>, &Formula) {
        let mut vars = Vec::new();
        let mut cur = self;
        while let FormulaKind::ForAll(v, body) = &cur.kind {
            vars.push(v.as_str());
            cur = body;
        }
        (vars, cur)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match &self.kind {
            FormulaKind::Atom(_) => vec![],
            FormulaKind::Not(f) | FormulaKind::ForAll(_, f) => vec![f],
            FormulaKind::And(l, r)
            | FormulaKind::Or(l, r)
            | FormulaKind::Implies(l, r)
            | FormulaKind::Xor(l, r) => vec![l, r],
        }
    }

    /// Preorder traversal, left child before right.
    pub fn preorder(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            for c in f.children().into_iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        self.preorder()
            .into_iter()
            .filter_map(|f| f.as_atom())
            .collect()
    }

    /// Constant names in order of first appearance.
    pub fn constants(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for atom in self.atoms() {
            for t in &atom.args {
                if let Term::Constant(c) = t {
                    if !out.contains(&c.as_str()) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Variables occurring in atoms but not bound by a quantifier within
    /// `self`. Parsed formulas are closed, but subformulas need not be.
    pub fn free_variables(&self) -> Vec<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match &f.kind {
                FormulaKind::Atom(a) => {
                    for t in &a.args {
                        if let Term::Variable(v) = t {
                            if !bound.contains(v) && !out.contains(v) {
                                out.push(v.clone());
                            }
                        }
                    }
                }
                FormulaKind::ForAll(v, body) => {
                    bound.push(v.clone());
                    walk(body, bound, out);
                    bound.pop();
                }
                _ => {
                    for c in f.children() {
                        walk(c, bound, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print::to_ascii(self))
    }
}
