//! TPTP-style printing. Output re-parses to a structurally equal AST.

use alloc::string::String;
use core::fmt;

use super::{Formula, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

fn is_binary(g: &Formula) -> bool {
    match g {
        Formula::And(fs) | Formula::Or(fs) => !fs.is_empty(),
        Formula::Implies(..) | Formula::Iff(..) => true,
        _ => false,
    }
}

fn is_quantified(g: &Formula) -> bool {
    matches!(g, Formula::Forall(..) | Formula::Exists(..))
}

struct Paren<'a>(&'a Formula, bool);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Pred(p, args) => {
                f.write_str(p)?;
                write_args(f, args)
            }
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Eq(a, b) => write!(f, "{a} != {b}"),
                g => {
                    let wrap = is_binary(g) || matches!(g, Formula::Eq(..)) || matches!(g, Formula::Not(h) if matches!(h.as_ref(), Formula::Eq(..)));
                    write!(f, "~ {}", Paren(g, wrap))
                }
            },
            Formula::And(fs) | Formula::Or(fs) if fs.is_empty() => {
                f.write_str(if matches!(self, Formula::And(_)) { "$true" } else { "$false" })
            }
            Formula::And(fs) | Formula::Or(fs) => {
                let op = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    write!(f, "{}", Paren(g, is_binary(g) || is_quantified(g)))?;
                }
                Ok(())
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let op = if matches!(self, Formula::Implies(..)) { " => " } else { " <=> " };
                let wrap = |g: &Formula| is_binary(g) || is_quantified(g);
                write!(f, "{}{}{}", Paren(a, wrap(a)), op, Paren(b, wrap(b)))
            }
            Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                f.write_str(if matches!(self, Formula::Forall(..)) { "![" } else { "?[" })?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(v)?;
                }
                write!(f, "]: {}", Paren(body, is_binary(body)))
            }
        }
    }
}

/// One `fof(name, role, formula).` line.
pub fn fof_line(name: &str, role: &str, formula: &Formula) -> String {
    alloc::format!("fof({name}, {role}, {formula}).")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{expand_distinct, Formula, Term};
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn prints_axiom_a() {
        let abc = vec![Term::var("A"), Term::var("B"), Term::var("C")];
        let cba = vec![Term::var("C"), Term::var("B"), Term::var("A")];
        let f = Formula::forall(&["A", "B", "C"], Formula::implies(Formula::pred("sb", abc), Formula::pred("sb", cba)));
        assert_eq!(f.to_string(), "![A,B,C]: (sb(A,B,C) => sb(C,B,A))");
    }

    #[test]
    fn prints_disequalities_and_constants() {
        assert_eq!(expand_distinct(&["A", "B", "C"]).unwrap().to_string(), "A != B & A != C & B != C");
        let f = Formula::eq(Term::App("f".into(), vec![Term::constant("c")]), Term::var("X"));
        assert_eq!(f.to_string(), "f(c) = X");
        assert_eq!(Formula::And(vec![]).to_string(), "$true");
        assert_eq!(fof_line("refl", "conjecture", &Formula::forall(&["X"], Formula::eq(Term::var("X"), Term::var("X")))), "fof(refl, conjecture, ![X]: X = X).");
    }
}
