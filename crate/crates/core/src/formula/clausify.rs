//! NNF, Skolemization and direct CNF distribution.
//!
//! Skolem terms take as arguments only the universally bound variables that
//! occur free in the existential subformula, so an existential that depends
//! on no universal becomes a constant.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Formula, Term};

/// Identifies the source formula of a clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Pred(String, Vec<Term>),
    Eq(Term, Term),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn complement(&self) -> Literal {
        Literal { positive: !self.positive, atom: self.atom.clone() }
    }

    fn map_terms(&self, f: &impl Fn(&Term) -> Term) -> Literal {
        let atom = match &self.atom {
            Atom::Pred(p, args) => Atom::Pred(p.clone(), args.iter().map(f).collect()),
            Atom::Eq(a, b) => Atom::Eq(f(a), f(b)),
        };
        Literal { positive: self.positive, atom }
    }

    pub fn terms(&self) -> &[Term] {
        match &self.atom {
            Atom::Pred(_, args) => args,
            Atom::Eq(a, _) => core::slice::from_ref(a),
        }
    }

    pub(crate) fn for_each_term(&self, mut f: impl FnMut(&Term)) {
        match &self.atom {
            Atom::Pred(_, args) => args.iter().for_each(f),
            Atom::Eq(a, b) => {
                f(a);
                f(b);
            }
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.atom, self.positive) {
            (Atom::Pred(p, args), pos) => {
                write!(f, "{}{}", if pos { "" } else { "~" }, Formula::Pred(p.clone(), args.clone()))
            }
            (Atom::Eq(a, b), true) => write!(f, "{a} = {b}"),
            (Atom::Eq(a, b), false) => write!(f, "{a} != {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub literals: Vec<Literal>,
    pub tag: Tag,
}

impl Clause {
    /// Complementary literals, or a positive `t = t`.
    pub fn is_tautology(&self) -> bool {
        self.literals.iter().any(|l| match &l.atom {
            Atom::Eq(a, b) if l.positive && a == b => true,
            _ => self.literals.contains(&l.complement()),
        })
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for l in &self.literals {
            l.for_each_term(|t| collect_ordered(t, &mut out));
        }
        out
    }
}

fn collect_ordered(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Term::App(_, args) => args.iter().for_each(|a| collect_ordered(a, out)),
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("$false");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClauseSet {
    pub clauses: Vec<Clause>,
}

impl ClauseSet {
    pub fn extend(&mut self, other: ClauseSet) {
        self.clauses.extend(other.clauses);
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Constants occurring anywhere in the set.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_symbols(&mut |name, arity| {
            if arity == 0 {
                out.insert(name.to_string());
            }
        });
        out
    }

    /// Function symbols of arity at least one, with arities.
    pub fn functions(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.walk_symbols(&mut |name, arity| {
            if arity > 0 {
                out.insert(name.to_string(), arity);
            }
        });
        out
    }

    fn walk_symbols(&self, visit: &mut impl FnMut(&str, usize)) {
        fn walk(t: &Term, visit: &mut impl FnMut(&str, usize)) {
            if let Term::App(f, args) = t {
                visit(f, args.len());
                args.iter().for_each(|a| walk(a, visit));
            }
        }
        for c in &self.clauses {
            for l in &c.literals {
                l.for_each_term(|t| walk(t, visit));
            }
        }
    }
}

/// Deterministic `skN` names, skipping reserved symbols.
#[derive(Debug, Clone, Default)]
pub struct SkolemSource {
    next: usize,
    reserved: BTreeSet<String>,
}

impl SkolemSource {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_reserved<I: IntoIterator<Item = String>>(names: I) -> Self {
        SkolemSource { next: 0, reserved: names.into_iter().collect() }
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let name = alloc::format!("sk{}", self.next);
            self.next += 1;
            if !self.reserved.contains(&name) {
                return name;
            }
        }
    }
}

/// Negation normal form over `~`, `&`, `|` and quantifiers.
pub(crate) fn nnf(f: &Formula, positive: bool) -> Formula {
    match f {
        Formula::Pred(..) | Formula::Eq(..) => {
            if positive {
                f.clone()
            } else {
                Formula::Not(Box::new(f.clone()))
            }
        }
        Formula::Not(g) => nnf(g, !positive),
        Formula::And(fs) | Formula::Or(fs) => {
            let items = fs.iter().map(|g| nnf(g, positive)).collect();
            if matches!(f, Formula::And(_)) == positive {
                Formula::And(items)
            } else {
                Formula::Or(items)
            }
        }
        Formula::Implies(a, b) => {
            if positive {
                Formula::Or(alloc::vec![nnf(a, false), nnf(b, true)])
            } else {
                Formula::And(alloc::vec![nnf(a, true), nnf(b, false)])
            }
        }
        Formula::Iff(a, b) => {
            if positive {
                Formula::And(alloc::vec![
                    Formula::Or(alloc::vec![nnf(a, false), nnf(b, true)]),
                    Formula::Or(alloc::vec![nnf(a, true), nnf(b, false)]),
                ])
            } else {
                Formula::And(alloc::vec![
                    Formula::Or(alloc::vec![nnf(a, true), nnf(b, true)]),
                    Formula::Or(alloc::vec![nnf(a, false), nnf(b, false)]),
                ])
            }
        }
        Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
            let body = Box::new(nnf(g, positive));
            if matches!(f, Formula::Forall(..)) == positive {
                Formula::Forall(vs.clone(), body)
            } else {
                Formula::Exists(vs.clone(), body)
            }
        }
    }
}

fn subst_formula(f: &Formula, map: &BTreeMap<String, Term>) -> Formula {
    match f {
        Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| a.substitute(map)).collect()),
        Formula::Eq(a, b) => Formula::Eq(a.substitute(map), b.substitute(map)),
        Formula::Not(g) => Formula::Not(Box::new(subst_formula(g, map))),
        Formula::And(fs) => Formula::And(fs.iter().map(|g| subst_formula(g, map)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| subst_formula(g, map)).collect()),
        Formula::Implies(a, b) => Formula::implies(subst_formula(a, map), subst_formula(b, map)),
        Formula::Iff(a, b) => Formula::iff(subst_formula(a, map), subst_formula(b, map)),
        Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
            let mut inner = map.clone();
            vs.iter().for_each(|v| {
                inner.remove(v);
            });
            let body = Box::new(subst_formula(g, &inner));
            if matches!(f, Formula::Forall(..)) {
                Formula::Forall(vs.clone(), body)
            } else {
                Formula::Exists(vs.clone(), body)
            }
        }
    }
}

/// Renames every bound variable to a fresh `_N` name.
fn rename_apart(f: &Formula, counter: &mut usize) -> Formula {
    match f {
        Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
            let mut map = BTreeMap::new();
            let fresh: Vec<String> = vs
                .iter()
                .map(|v| {
                    let n = alloc::format!("_{}", *counter);
                    *counter += 1;
                    map.insert(v.clone(), Term::Var(n.clone()));
                    n
                })
                .collect();
            let body = Box::new(rename_apart(&subst_formula(g, &map), counter));
            if matches!(f, Formula::Forall(..)) {
                Formula::Forall(fresh, body)
            } else {
                Formula::Exists(fresh, body)
            }
        }
        Formula::Not(g) => Formula::Not(Box::new(rename_apart(g, counter))),
        Formula::And(fs) => Formula::And(fs.iter().map(|g| rename_apart(g, counter)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| rename_apart(g, counter)).collect()),
        Formula::Implies(a, b) => Formula::implies(rename_apart(a, counter), rename_apart(b, counter)),
        Formula::Iff(a, b) => Formula::iff(rename_apart(a, counter), rename_apart(b, counter)),
        atom => atom.clone(),
    }
}

/// Skolemizes an NNF formula with bound variables renamed apart and drops
/// the universal quantifiers.
fn skolemize(f: &Formula, universals: &mut Vec<String>, fresh: &mut SkolemSource) -> Formula {
    match f {
        Formula::Forall(vs, g) => {
            let len = universals.len();
            universals.extend(vs.iter().cloned());
            let out = skolemize(g, universals, fresh);
            universals.truncate(len);
            out
        }
        Formula::Exists(vs, g) => {
            let free = f.free_vars();
            let args: Vec<Term> = universals.iter().filter(|u| free.contains(*u)).map(|u| Term::Var(u.clone())).collect();
            let mut map = BTreeMap::new();
            for v in vs {
                map.insert(v.clone(), Term::App(fresh.fresh(), args.clone()));
            }
            skolemize(&subst_formula(g, &map), universals, fresh)
        }
        Formula::And(fs) => Formula::And(fs.iter().map(|g| skolemize(g, universals, fresh)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| skolemize(g, universals, fresh)).collect()),
        other => other.clone(),
    }
}

fn to_literal(f: &Formula) -> Literal {
    match f {
        Formula::Pred(p, args) => Literal { positive: true, atom: Atom::Pred(p.clone(), args.clone()) },
        Formula::Eq(a, b) => Literal { positive: true, atom: Atom::Eq(a.clone(), b.clone()) },
        Formula::Not(g) => to_literal(g).complement(),
        _ => unreachable!("matrix is quantifier-free NNF"),
    }
}

/// CNF of a quantifier-free NNF matrix as literal lists.
fn distribute(f: &Formula) -> Vec<Vec<Literal>> {
    match f {
        Formula::And(fs) => fs.iter().flat_map(distribute).collect(),
        Formula::Or(fs) => {
            let mut acc: Vec<Vec<Literal>> = alloc::vec![Vec::new()];
            for g in fs {
                let part = distribute(g);
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for b in &part {
                        let mut c = a.clone();
                        c.extend(b.iter().cloned());
                        next.push(c);
                    }
                }
                acc = next;
            }
            acc
        }
        atom => alloc::vec![alloc::vec![to_literal(atom)]],
    }
}

/// Removes duplicate literals and false `t != t` literals; orients
/// equations; renames variables to `X0, X1, ...` by first occurrence.
fn tidy(literals: Vec<Literal>, tag: Tag) -> Clause {
    let mut out: Vec<Literal> = Vec::new();
    for l in literals {
        if let Atom::Eq(a, b) = &l.atom {
            if !l.positive && a == b {
                continue;
            }
        }
        if !out.contains(&l) {
            out.push(l);
        }
    }
    let mut clause = Clause { literals: out, tag };
    let vars = clause.variables();
    if !vars.is_empty() {
        let map: BTreeMap<String, Term> =
            vars.iter().enumerate().map(|(i, v)| (v.clone(), Term::Var(alloc::format!("X{i}")))).collect();
        clause.literals = clause.literals.iter().map(|l| l.map_terms(&|t| t.substitute(&map))).collect();
    }
    clause
}

/// Clausifies a sentence. Every clause carries `tag`; tautologies and
/// duplicate clauses are dropped.
pub fn clausify(f: &Formula, tag: Tag, fresh: &mut SkolemSource) -> ClauseSet {
    let mut counter = 0;
    let prepared = rename_apart(&nnf(f, true), &mut counter);
    let matrix = skolemize(&prepared, &mut Vec::new(), fresh);
    let mut clauses: Vec<Clause> = Vec::new();
    for lits in distribute(&matrix) {
        let c = tidy(lits, tag);
        if !c.is_tautology() && !clauses.contains(&c) {
            clauses.push(c);
        }
    }
    ClauseSet { clauses }
}

/// True iff no function symbol of arity one or more occurs.
pub fn is_epr(cs: &ClauseSet) -> bool {
    cs.functions().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::formula::{negate, parse_formula, Signature};

    fn ax(name: &str) -> Formula {
        corpus::axiom(name).unwrap().formula.clone()
    }

    #[test]
    fn axiom_a_is_one_binary_clause() {
        let cs = clausify(&ax("huntington.A"), Tag(0), &mut SkolemSource::new());
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.clauses[0].to_string(), "~sb(X0,X1,X2) | sb(X2,X1,X0)");
    }

    #[test]
    fn mcphee_one_has_single_skolem_constant() {
        let cs = clausify(&ax("mcphee.1"), Tag(3), &mut SkolemSource::new());
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.clauses[0].literals.len(), 6);
        assert_eq!(cs.constants().into_iter().collect::<Vec<_>>(), alloc::vec!["sk0".to_string()]);
        assert!(is_epr(&cs));
        assert!(cs.clauses.iter().all(|c| c.tag == Tag(3)));
    }

    #[test]
    fn negated_mcphee_one_needs_functions() {
        let cs = clausify(&negate(&ax("mcphee.1")), Tag(0), &mut SkolemSource::new());
        assert!(!is_epr(&cs));
        assert_eq!(cs.functions().len(), 2);
        assert!(cs.functions().values().all(|&a| a == 1));
        assert_eq!(cs.len(), 6);
    }

    #[test]
    fn negated_nine_has_four_skolem_constants() {
        let cs = clausify(&negate(&ax("huntington.9")), Tag(0), &mut SkolemSource::new());
        assert_eq!(cs.constants().len(), 4);
        assert!(is_epr(&cs));
        // sb(a,b,c), six disequalities, two negated conclusions
        assert_eq!(cs.len(), 9);
        assert!(cs.clauses.iter().all(|c| c.literals.len() == 1));
    }

    #[test]
    fn negated_b_shape() {
        let cs = clausify(&negate(&ax("huntington.B")), Tag(0), &mut SkolemSource::new());
        assert_eq!(cs.constants().len(), 3);
        let diseq = cs.clauses.iter().filter(|c| matches!(c.literals[0].atom, Atom::Eq(..)) && !c.literals[0].positive).count();
        let neg_sb = cs.clauses.iter().filter(|c| matches!(c.literals[0].atom, Atom::Pred(..)) && !c.literals[0].positive).count();
        assert_eq!((diseq, neg_sb, cs.len()), (3, 6, 9));
    }

    #[test]
    fn negated_d_asserts_degenerate_strict_triple() {
        let cs = clausify(&negate(&ax("huntington.D")), Tag(0), &mut SkolemSource::new());
        let texts: Vec<String> = cs.clauses.iter().map(|c| c.to_string()).collect();
        assert!(texts.contains(&"sb(sk0,sk1,sk2)".to_string()), "{texts:?}");
        assert!(texts.contains(&"sk0 = sk1 | sk0 = sk2 | sk1 = sk2".to_string()), "{texts:?}");
    }

    #[test]
    fn tautologies_are_dropped() {
        let mut sig = Signature::new();
        sig.add_relation("p", 1).unwrap();
        let f = parse_formula("![X]: (p(X) | ~ p(X))", &sig).unwrap();
        assert!(clausify(&f, Tag(0), &mut SkolemSource::new()).is_empty());
        let f = parse_formula("![X]: (X = X | p(X))", &sig).unwrap();
        assert!(clausify(&f, Tag(0), &mut SkolemSource::new()).is_empty());
        let f = parse_formula("![X]: (X != X | p(X))", &sig).unwrap();
        assert_eq!(clausify(&f, Tag(0), &mut SkolemSource::new()).clauses[0].to_string(), "p(X0)");
    }

    #[test]
    fn tautology_flag() {
        let p = Literal { positive: true, atom: Atom::Pred("p".into(), alloc::vec![]) };
        let c = Clause { literals: alloc::vec![p.clone(), p.complement()], tag: Tag(0) };
        assert!(c.is_tautology());
    }

    #[test]
    fn skolem_names_skip_reserved() {
        let mut src = SkolemSource::with_reserved(["sk0".to_string()]);
        assert_eq!(src.fresh(), "sk1");
    }

    #[test]
    fn empty_set_is_epr() {
        assert!(is_epr(&ClauseSet::default()));
    }
}
