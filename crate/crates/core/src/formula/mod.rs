//! First-order formulas with equality over a relational signature.
//!
//! The concrete syntax is a subset of TPTP FOF (see [`parse_formula`] and the
//! `Display` impls in [`print`]). Clausification lives in [`clausify`].

pub mod clausify;
pub mod parse;
pub mod print;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use clausify::{clausify, is_epr, Clause, ClauseSet, Literal, SkolemSource, Tag};
pub use parse::{parse_formula, ParseError};

use crate::Error;

/// Relation, constant and function symbols. Equality is built in.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    relations: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
    functions: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// The betweenness signature: `wb/3` (weak) and `sb/3` (strict).
    pub fn betweenness() -> Self {
        let mut sig = Self::new();
        sig.add_relation("wb", 3).expect("fresh signature");
        sig.add_relation("sb", 3).expect("fresh signature");
        sig
    }

    fn check_fresh(&self, name: &str) -> Result<(), Error> {
        if name == "=" || self.symbol_arity(name).is_some() {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        Ok(())
    }

    pub fn add_relation(&mut self, name: &str, arity: usize) -> Result<(), Error> {
        self.check_fresh(name)?;
        self.relations.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str) -> Result<(), Error> {
        self.check_fresh(name)?;
        self.constants.insert(name.to_string());
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), Error> {
        if arity == 0 {
            return self.add_constant(name);
        }
        self.check_fresh(name)?;
        self.functions.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn relation_arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    /// Arity of a term-level symbol: 0 for constants.
    pub fn function_arity(&self, name: &str) -> Option<usize> {
        if self.constants.contains(name) {
            Some(0)
        } else {
            self.functions.get(name).copied()
        }
    }

    fn symbol_arity(&self, name: &str) -> Option<usize> {
        self.relation_arity(name).or_else(|| self.function_arity(name))
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.constants.iter().map(String::as_str)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// A constant (no arguments) or a function application.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Self {
        Term::App(name.to_string(), Vec::new())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub(crate) fn substitute(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(map)).collect()),
        }
    }
}

/// Formula AST. `&` and `|` are n-ary; `a != b` is `Not(Eq(a, b))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    /// Empty conjunction is `$true`.
    And(Vec<Formula>),
    /// Empty disjunction is `$false`.
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
}

impl Formula {
    pub fn pred(name: &str, args: Vec<Term>) -> Self {
        Formula::Pred(name.to_string(), args)
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    pub fn neq(a: Term, b: Term) -> Self {
        Formula::Not(Box::new(Formula::Eq(a, b)))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(vars: &[&str], body: Formula) -> Self {
        Formula::Forall(vars.iter().map(|v| v.to_string()).collect(), Box::new(body))
    }

    pub fn exists(vars: &[&str], body: Formula) -> Self {
        Formula::Exists(vars.iter().map(|v| v.to_string()).collect(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred(_, args) => {
                for a in args {
                    let mut vs = BTreeSet::new();
                    a.collect_vars(&mut vs);
                    out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
                }
            }
            Formula::Eq(a, b) => {
                let mut vs = BTreeSet::new();
                a.collect_vars(&mut vs);
                b.collect_vars(&mut vs);
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                let len = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(bound, out);
                bound.truncate(len);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Checks symbols and arities against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<(), Error> {
        fn check_term(t: &Term, sig: &Signature) -> Result<(), Error> {
            match t {
                Term::Var(_) => Ok(()),
                Term::App(f, args) => {
                    let arity = sig.function_arity(f).ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                    if arity != args.len() {
                        return Err(Error::ArityMismatch { symbol: f.clone(), expected: arity, found: args.len() });
                    }
                    args.iter().try_for_each(|a| check_term(a, sig))
                }
            }
        }
        match self {
            Formula::Pred(p, args) => {
                let arity = sig.relation_arity(p).ok_or_else(|| Error::UnknownSymbol(p.clone()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch { symbol: p.clone(), expected: arity, found: args.len() });
                }
                args.iter().try_for_each(|a| check_term(a, sig))
            }
            Formula::Eq(a, b) => {
                check_term(a, sig)?;
                check_term(b, sig)
            }
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.check(sig),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().try_for_each(|f| f.check(sig)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.check(sig)?;
                b.check(sig)
            }
        }
    }

    /// Relation symbols occurring in the formula, with arities.
    pub fn relations(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.visit_atoms(&mut |f| {
            if let Formula::Pred(p, args) = f {
                out.insert(p.clone(), args.len());
            }
        });
        out
    }

    /// Constants (nullary applications) occurring in the formula.
    pub fn constants(&self) -> BTreeSet<String> {
        fn walk(t: &Term, out: &mut BTreeSet<String>) {
            if let Term::App(f, args) = t {
                if args.is_empty() {
                    out.insert(f.clone());
                }
                args.iter().for_each(|a| walk(a, out));
            }
        }
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |f| match f {
            Formula::Pred(_, args) => args.iter().for_each(|a| walk(a, &mut out)),
            Formula::Eq(a, b) => {
                walk(a, &mut out);
                walk(b, &mut out);
            }
            _ => {}
        });
        out
    }

    fn visit_atoms(&self, visit: &mut impl FnMut(&Formula)) {
        match self {
            Formula::Pred(..) | Formula::Eq(..) => visit(self),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.visit_atoms(visit),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.visit_atoms(visit)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_atoms(visit);
                b.visit_atoms(visit);
            }
        }
    }

    /// Top-level conjuncts; a non-conjunction is its own single conjunct.
    pub fn conjuncts(&self) -> &[Formula] {
        match self {
            Formula::And(fs) => fs,
            other => core::slice::from_ref(other),
        }
    }
}

/// Pairwise distinctness of `vars`: `v_i != v_j` for every `i < j`, in
/// lexicographic order of positions.
///
/// Two variables give a bare disequality; more give a conjunction.
pub fn expand_distinct(vars: &[&str]) -> Result<Formula, Error> {
    if vars.len() < 2 {
        return Err(Error::TooFewVariables(vars.len()));
    }
    let mut conjuncts = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            conjuncts.push(Formula::neq(Term::var(vars[i]), Term::var(vars[j])));
        }
    }
    Ok(if conjuncts.len() == 1 { conjuncts.pop().unwrap() } else { Formula::And(conjuncts) })
}

/// `~f`, without simplification.
pub fn negate(f: &Formula) -> Formula {
    Formula::Not(Box::new(f.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_has_binomial_conjunct_count() {
        for k in 2..7 {
            let names: Vec<String> = (0..k).map(|i| alloc::format!("V{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let f = expand_distinct(&refs).unwrap();
            assert_eq!(f.conjuncts().len(), k * (k - 1) / 2);
        }
    }

    #[test]
    fn distinct_three_in_position_order() {
        let f = expand_distinct(&["A", "B", "C"]).unwrap();
        let want = Formula::And(alloc::vec![
            Formula::neq(Term::var("A"), Term::var("B")),
            Formula::neq(Term::var("A"), Term::var("C")),
            Formula::neq(Term::var("B"), Term::var("C")),
        ]);
        assert_eq!(f, want);
        assert_eq!(expand_distinct(&["A", "B"]).unwrap(), Formula::neq(Term::var("A"), Term::var("B")));
    }

    #[test]
    fn distinct_rejects_short_lists() {
        assert!(matches!(expand_distinct(&["A"]), Err(Error::TooFewVariables(1))));
        assert!(expand_distinct(&[]).is_err());
    }

    #[test]
    fn signature_rejects_duplicates() {
        let mut sig = Signature::betweenness();
        assert!(sig.add_relation("sb", 3).is_err());
        assert!(sig.add_constant("wb").is_err());
        assert!(sig.add_constant("a").is_ok());
        assert!(sig.add_function("a", 1).is_err());
    }

    #[test]
    fn free_vars_respect_binding() {
        let f = Formula::forall(&["X"], Formula::pred("p", alloc::vec![Term::var("X"), Term::var("Y")]));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), alloc::vec!["Y".to_string()]);
        assert!(!f.is_sentence());
    }
}
