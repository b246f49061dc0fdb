use super::ast::{Atom, Formula, FormulaKind};

// Binding strength; quantifiers bind loosest and are parenthesized whenever
// they appear as an operand.
fn precedence(f: &Formula) -> u8 {
    match f.kind {
        FormulaKind::ForAll(..) => 0,
        FormulaKind::Implies(..) => 1,
        FormulaKind::Xor(..) => 2,
        FormulaKind::Or(..) => 3,
        FormulaKind::And(..) => 4,
        FormulaKind::Not(..) | FormulaKind::Atom(..) => 5,
    }
}

/// Canonical ASCII rendering: `forall x (p(x) & q(x) -> r(x))`. Single
/// spaces around binary connectives, no space after `~`, parentheses only
/// where precedence requires them, and always around quantifier bodies.
pub fn to_ascii(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

pub fn atom_to_ascii(a: &Atom) -> String {
    let args: Vec<&str> = a.args.iter().map(|t| t.name()).collect();
    format!("{}({})", a.predicate, args.join(", "))
}

fn write(f: &Formula, out: &mut String) {
    match &f.kind {
        FormulaKind::Atom(a) => out.push_str(&atom_to_ascii(a)),
        FormulaKind::Not(inner) => {
            out.push('~');
            operand(inner, precedence(inner) < 5, out);
        }
        FormulaKind::ForAll(v, body) => {
            out.push_str("forall ");
            out.push_str(v);
            out.push_str(" (");
            write(body, out);
            out.push(')');
        }
        FormulaKind::Implies(l, r) => {
            operand(l, precedence(l) <= 1, out);
            out.push_str(" -> ");
            operand(r, precedence(r) < 1, out);
        }
        FormulaKind::And(l, r) | FormulaKind::Or(l, r) | FormulaKind::Xor(l, r) => {
            let p = precedence(f);
            let sym = match f.kind {
                FormulaKind::And(..) => " & ",
                FormulaKind::Or(..) => " | ",
                _ => " xor ",
            };
            operand(l, precedence(l) < p, out);
            out.push_str(sym);
            operand(r, precedence(r) <= p, out);
        }
    }
}

fn operand(f: &Formula, paren: bool, out: &mut String) {
    if paren {
        out.push('(');
        write(f, out);
        out.push(')');
    } else {
        write(f, out);
    }
}

/// Unicode rendering used in human-facing reports.
pub fn to_unicode(f: &Formula) -> String {
    to_ascii(f)
        .replace("forall ", "∀")
        .replace(" -> ", " → ")
        .replace(" xor ", " ⊕ ")
        .replace(" & ", " ∧ ")
        .replace(" | ", " ∨ ")
        .replace('~', "¬")
}
