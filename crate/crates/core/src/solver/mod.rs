//! Grounding to propositional clauses and satisfiability with selector
//! assumptions.
//!
//! Every clause derived from input formula `i` is guarded by a selector
//! variable for [`Tag`]`(i)`; solving under a set of tags enables exactly
//! those formulas, and an unsatisfiable answer names the tags involved.

pub mod sat;
mod symmetry;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use sat::{Lit, Outcome, Solver, Var};
pub use symmetry::add_symmetry_breaking;

use crate::formula::clausify::nnf;
use crate::formula::{Formula, Tag, Term};
use crate::model::{index_tuple, tuple_index, FiniteModel};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundClause {
    pub lits: Vec<Lit>,
    /// `None` for background clauses that are always active.
    pub tag: Option<Tag>,
}

/// Where each relation tuple and constant choice lives in a fixed-domain
/// problem. Relation atoms occupy the first variables, in relation-name
/// order, then one variable per (constant, element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainLayout {
    pub n: usize,
    pub relations: Vec<(String, usize, u32)>,
    pub constants: Vec<(String, u32)>,
}

impl DomainLayout {
    pub fn atom(&self, relation: usize, tuple: &[usize]) -> Var {
        let (_, _, base) = &self.relations[relation];
        Var(base + tuple_index(self.n, tuple) as u32)
    }

    fn constant_is(&self, constant: usize, element: usize) -> Var {
        Var(self.constants[constant].1 + element as u32)
    }

    /// Number of relation-atom variables.
    pub fn cube_len(&self) -> usize {
        self.relations.iter().map(|(_, a, _)| self.n.pow(*a as u32)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundProblem {
    pub num_vars: usize,
    pub clauses: Vec<GroundClause>,
    /// Selector variable per tag, in tag order.
    pub selectors: BTreeMap<Tag, Var>,
    /// Present for problems built by [`ground_over_domain`].
    pub layout: Option<DomainLayout>,
}

impl GroundProblem {
    pub fn new(num_vars: usize) -> Self {
        GroundProblem { num_vars, clauses: Vec::new(), selectors: BTreeMap::new(), layout: None }
    }

    pub fn new_var(&mut self) -> Var {
        self.num_vars += 1;
        Var(self.num_vars as u32 - 1)
    }

    pub fn selector(&mut self, tag: Tag) -> Var {
        if let Some(v) = self.selectors.get(&tag) {
            return *v;
        }
        let v = self.new_var();
        self.selectors.insert(tag, v);
        v
    }

    pub fn tags(&self) -> Vec<Tag> {
        self.selectors.keys().copied().collect()
    }

    pub fn add(&mut self, lits: Vec<Lit>, tag: Option<Tag>) {
        if let Some(t) = tag {
            self.selector(t);
        }
        self.clauses.push(GroundClause { lits, tag });
    }

    /// Diagnostic DIMACS dump; selectors are listed in comments.
    pub fn to_dimacs(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (tag, var) in &self.selectors {
            let _ = writeln!(out, "c selector {} tag {}", var.0 + 1, tag.0);
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in &c.lits {
                let _ = write!(out, "{} ", l.to_dimacs());
            }
            if let Some(t) = c.tag {
                let _ = write!(out, "{} ", -(self.selectors[&t].0 as i64 + 1));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Propositional structure produced while grounding, in negation normal
/// form.
#[derive(Debug, Clone)]
enum Ground {
    True,
    False,
    Lit(Lit),
    And(Vec<Ground>),
    Or(Vec<Ground>),
}

fn and(items: Vec<Ground>) -> Ground {
    let mut out = Vec::with_capacity(items.len());
    for g in items {
        match g {
            Ground::False => return Ground::False,
            Ground::True => {}
            Ground::And(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Ground::True,
        1 => out.pop().unwrap(),
        _ => Ground::And(out),
    }
}

fn or(items: Vec<Ground>) -> Ground {
    let mut out = Vec::with_capacity(items.len());
    for g in items {
        match g {
            Ground::True => return Ground::True,
            Ground::False => {}
            Ground::Or(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Ground::False,
        1 => out.pop().unwrap(),
        _ => Ground::Or(out),
    }
}

#[derive(Clone, Copy)]
enum Value {
    Element(usize),
    Constant(usize),
}

struct Grounder<'a> {
    layout: &'a DomainLayout,
}

impl Grounder<'_> {
    fn term(&self, t: &Term, env: &[(String, usize)]) -> Result<Value, Error> {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(name, _)| name == v)
                .map(|(_, e)| Value::Element(*e))
                .ok_or_else(|| Error::NotASentence(v.clone())),
            Term::App(c, args) if args.is_empty() => self
                .layout
                .constants
                .iter()
                .position(|(name, _)| name == c)
                .map(Value::Constant)
                .ok_or_else(|| Error::Uninterpreted(c.clone())),
            Term::App(f, _) => Err(Error::Uninterpreted(f.clone())),
        }
    }

    /// `f` is in NNF.
    fn formula(&self, f: &Formula, env: &mut Vec<(String, usize)>) -> Result<Ground, Error> {
        let n = self.layout.n;
        Ok(match f {
            Formula::Pred(p, args) => {
                let rel = self.layout.relations.iter().position(|(name, _, _)| name == p).ok_or_else(|| Error::Uninterpreted(p.clone()))?;
                let values = args.iter().map(|a| self.term(a, env)).collect::<Result<Vec<_>, _>>()?;
                let open: Vec<usize> = values.iter().filter_map(|v| if let Value::Constant(c) = v { Some(*c) } else { None }).collect();
                if open.is_empty() {
                    let tuple: Vec<usize> = values.iter().map(|v| if let Value::Element(e) = v { *e } else { 0 }).collect();
                    return Ok(Ground::Lit(Lit::pos(self.layout.atom(rel, &tuple))));
                }
                // one branch per choice of elements for the constants involved
                let mut branches = Vec::new();
                for choice in 0..n.pow(open.len() as u32) {
                    let picks = index_tuple(n, open.len(), choice);
                    let mut k = 0;
                    let mut guards = Vec::new();
                    let tuple: Vec<usize> = values
                        .iter()
                        .map(|v| match v {
                            Value::Element(e) => *e,
                            Value::Constant(c) => {
                                let e = picks[k];
                                k += 1;
                                guards.push(Ground::Lit(Lit::pos(self.layout.constant_is(*c, e))));
                                e
                            }
                        })
                        .collect();
                    guards.push(Ground::Lit(Lit::pos(self.layout.atom(rel, &tuple))));
                    branches.push(and(guards));
                }
                or(branches)
            }
            Formula::Eq(a, b) => match (self.term(a, env)?, self.term(b, env)?) {
                (Value::Element(x), Value::Element(y)) => {
                    if x == y {
                        Ground::True
                    } else {
                        Ground::False
                    }
                }
                (Value::Constant(c), Value::Element(e)) | (Value::Element(e), Value::Constant(c)) => {
                    Ground::Lit(Lit::pos(self.layout.constant_is(c, e)))
                }
                (Value::Constant(c), Value::Constant(d)) if c == d => Ground::True,
                (Value::Constant(c), Value::Constant(d)) => or((0..n)
                    .map(|e| {
                        and(alloc::vec![
                            Ground::Lit(Lit::pos(self.layout.constant_is(c, e))),
                            Ground::Lit(Lit::pos(self.layout.constant_is(d, e))),
                        ])
                    })
                    .collect()),
            },
            Formula::Not(g) => self.negated_atom(g, env)?,
            Formula::And(fs) => and(fs.iter().map(|g| self.formula(g, env)).collect::<Result<_, _>>()?),
            Formula::Or(fs) => or(fs.iter().map(|g| self.formula(g, env)).collect::<Result<_, _>>()?),
            Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                let base = env.len();
                let mut items = Vec::new();
                for i in 0..n.pow(vs.len() as u32) {
                    let tuple = index_tuple(n, vs.len(), i);
                    env.extend(vs.iter().cloned().zip(tuple));
                    let item = self.formula(g, env);
                    env.truncate(base);
                    items.push(item?);
                }
                if matches!(f, Formula::Forall(..)) {
                    and(items)
                } else {
                    or(items)
                }
            }
            Formula::Implies(..) | Formula::Iff(..) => unreachable!("input is in NNF"),
        })
    }

    fn negated_atom(&self, g: &Formula, env: &mut Vec<(String, usize)>) -> Result<Ground, Error> {
        Ok(match self.formula(g, env)? {
            Ground::True => Ground::False,
            Ground::False => Ground::True,
            Ground::Lit(l) => Ground::Lit(!l),
            Ground::And(items) => or(items.into_iter().map(negate_ground).collect()),
            Ground::Or(items) => and(items.into_iter().map(negate_ground).collect()),
        })
    }
}

fn negate_ground(g: Ground) -> Ground {
    match g {
        Ground::True => Ground::False,
        Ground::False => Ground::True,
        Ground::Lit(l) => Ground::Lit(!l),
        Ground::And(items) => or(items.into_iter().map(negate_ground).collect()),
        Ground::Or(items) => and(items.into_iter().map(negate_ground).collect()),
    }
}

/// Clause form with one-directional definitions for nested conjunctions.
fn emit(p: &mut GroundProblem, g: Ground, tag: Option<Tag>) {
    match g {
        Ground::True => {}
        Ground::And(items) => items.into_iter().for_each(|i| emit(p, i, tag)),
        other => {
            let lits = clause_lits(p, other, tag);
            p.add(lits, tag);
        }
    }
}

fn clause_lits(p: &mut GroundProblem, g: Ground, tag: Option<Tag>) -> Vec<Lit> {
    match g {
        Ground::False => Vec::new(),
        Ground::True => unreachable!("simplified away"),
        Ground::Lit(l) => alloc::vec![l],
        Ground::Or(items) => items.into_iter().flat_map(|i| clause_lits(p, i, tag)).collect(),
        Ground::And(items) => {
            let aux = p.new_var();
            for item in items {
                let mut lits = alloc::vec![Lit::neg(aux)];
                lits.extend(clause_lits(p, item, tag));
                p.add(lits, tag);
            }
            alloc::vec![Lit::pos(aux)]
        }
    }
}

/// Relation symbols with arities and constants used by `formulas`, checking
/// that every relation is used at one arity only.
pub(crate) fn vocabulary(formulas: &[Formula]) -> Result<(BTreeMap<String, usize>, Vec<String>), Error> {
    let mut relations: BTreeMap<String, usize> = BTreeMap::new();
    let mut constants = alloc::collections::BTreeSet::new();
    for f in formulas {
        for (name, arity) in f.relations() {
            match relations.get(&name) {
                Some(&a) if a != arity => {
                    return Err(Error::SignatureMismatch { symbol: name, first: a, second: arity });
                }
                _ => {
                    relations.insert(name, arity);
                }
            }
        }
        constants.extend(f.constants());
    }
    Ok((relations, constants.into_iter().collect()))
}

/// Grounds `formulas` over the domain `0..n`, tagging formula `i` with
/// `Tag(i)`. Quantifiers expand over the domain and equality between
/// elements is decided during grounding.
pub fn ground_over_domain(formulas: &[Formula], n: usize) -> Result<GroundProblem, Error> {
    ground_over_domain_with(formulas, n, &[])
}

/// As [`ground_over_domain`], with extra relations interpreted even when no
/// formula mentions them (so extracted models carry them).
pub fn ground_over_domain_with(formulas: &[Formula], n: usize, extra: &[(&str, usize)]) -> Result<GroundProblem, Error> {
    assert!(n >= 1, "domains are non-empty");
    for f in formulas {
        if let Some(v) = f.free_vars().into_iter().next() {
            return Err(Error::NotASentence(v));
        }
    }
    let (mut relations, constants) = vocabulary(formulas)?;
    for (name, arity) in extra {
        relations.entry(name.to_string()).or_insert(*arity);
    }
    let mut next = 0u32;
    let relations: Vec<(String, usize, u32)> = relations
        .into_iter()
        .map(|(name, arity)| {
            let base = next;
            next += n.pow(arity as u32) as u32;
            (name, arity, base)
        })
        .collect();
    let constants: Vec<(String, u32)> = constants
        .into_iter()
        .map(|c| {
            let base = next;
            next += n as u32;
            (c, base)
        })
        .collect();
    let layout = DomainLayout { n, relations, constants };
    let mut problem = GroundProblem::new(next as usize);
    // exactly one element per constant
    for k in 0..layout.constants.len() {
        problem.add((0..n).map(|e| Lit::pos(layout.constant_is(k, e))).collect(), None);
        for a in 0..n {
            for b in a + 1..n {
                problem.add(alloc::vec![Lit::neg(layout.constant_is(k, a)), Lit::neg(layout.constant_is(k, b))], None);
            }
        }
    }
    for i in 0..formulas.len() {
        problem.selector(Tag(i as u32));
    }
    let grounder = Grounder { layout: &layout };
    for (i, f) in formulas.iter().enumerate() {
        let g = grounder.formula(&nnf(f, true), &mut Vec::new())?;
        emit(&mut problem, g, Some(Tag(i as u32)));
    }
    problem.layout = Some(layout);
    Ok(problem)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Vec<bool>),
    /// Tags whose clauses are jointly unsatisfiable (with the background
    /// clauses), sorted.
    Unsat(Vec<Tag>),
}

/// Solves with the clauses of `assumptions` enabled and every other tagged
/// clause disabled.
pub fn solve(p: &GroundProblem, assumptions: &[Tag]) -> SatResult {
    let mut solver = Solver::new(p.num_vars);
    for c in &p.clauses {
        match c.tag {
            None => solver.add_clause(&c.lits),
            Some(t) => {
                let mut lits = c.lits.clone();
                lits.push(Lit::neg(p.selectors[&t]));
                solver.add_clause(&lits);
            }
        }
    }
    let mut lits = Vec::new();
    for (tag, var) in &p.selectors {
        if assumptions.contains(tag) {
            lits.push(Lit::pos(*var));
        } else {
            solver.add_clause(&[Lit::neg(*var)]);
        }
    }
    match solver.solve(&lits) {
        Outcome::Sat(values) => SatResult::Sat(values),
        Outcome::Unsat(core) => {
            let mut tags: Vec<Tag> =
                core.iter().filter_map(|l| p.selectors.iter().find(|(_, v)| **v == l.var()).map(|(t, _)| *t)).collect();
            tags.sort();
            tags.dedup();
            SatResult::Unsat(tags)
        }
    }
}

/// Solves with every tag enabled.
pub fn solve_all(p: &GroundProblem) -> SatResult {
    solve(p, &p.tags())
}

/// Deletion-based core minimization: drops each tag in turn and keeps the
/// smaller core whenever the rest stays unsatisfiable.
pub fn minimize_core(p: &GroundProblem, core: &[Tag]) -> Vec<Tag> {
    let mut current: Vec<Tag> = core.to_vec();
    let mut i = 0;
    while i < current.len() {
        let mut trial = current.clone();
        let dropped = trial.remove(i);
        match solve(p, &trial) {
            SatResult::Unsat(smaller) => {
                current = smaller;
                i = current.iter().position(|t| *t > dropped).unwrap_or(current.len());
            }
            SatResult::Sat(_) => i += 1,
        }
    }
    current
}

/// Reads the model out of a satisfying assignment of a fixed-domain problem.
pub fn extract_model(p: &GroundProblem, assignment: &[bool]) -> FiniteModel {
    let layout = p.layout.as_ref().expect("fixed-domain problem");
    let mut m = FiniteModel::new(layout.n);
    for (r, (name, arity, _)) in layout.relations.iter().enumerate() {
        m.add_relation(name, *arity);
        for i in 0..layout.n.pow(*arity as u32) {
            let tuple = index_tuple(layout.n, *arity, i);
            if assignment[layout.atom(r, &tuple).0 as usize] {
                m.set(name, &tuple, true);
            }
        }
    }
    for (k, (name, _)) in layout.constants.iter().enumerate() {
        let e = (0..layout.n).find(|&e| assignment[layout.constant_is(k, e).0 as usize]).expect("exactly-one constraint");
        m.set_constant(name, e);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{axiom, get_system, signed_set};
    use crate::formula::{parse_formula, Signature};
    use crate::model::{evaluate, parse_triples};

    fn ax(name: &str) -> Formula {
        axiom(name).unwrap().formula
    }

    #[test]
    fn axiom_a_at_two() {
        let p = ground_over_domain(&[ax("huntington.A")], 2).unwrap();
        let layout = p.layout.as_ref().unwrap();
        assert_eq!(layout.cube_len(), 8);
        assert_eq!(p.clauses.len(), 8);
        assert!(p.clauses.iter().all(|c| c.lits.len() == 2 && c.tag == Some(Tag(0))));
    }

    #[test]
    fn mcphee_one_at_two_uses_branch_definitions() {
        let p = ground_over_domain(&[ax("mcphee.1")], 2).unwrap();
        // one clause choosing a branch, plus each branch's clauses
        let top = p.clauses.iter().filter(|c| c.lits.iter().all(|l| l.var().0 >= 8 && l.var().0 != p.selectors[&Tag(0)].0)).count();
        assert_eq!(top, 1);
        assert!(matches!(solve_all(&p), SatResult::Sat(_)));
    }

    #[test]
    fn nine_fails_negated_below_four() {
        let h = get_system("huntington").unwrap();
        let fs = signed_set(&h, &"++++-".parse().unwrap()).unwrap();
        let p = ground_over_domain(&fs, 3).unwrap();
        assert_eq!(solve_all(&p), SatResult::Unsat(alloc::vec![Tag(4)]));
    }

    #[test]
    fn negated_d_at_one() {
        let h = get_system("huntington").unwrap();
        let fs = signed_set(&h, &"+++-+".parse().unwrap()).unwrap();
        let p = ground_over_domain(&fs, 1).unwrap();
        let SatResult::Sat(a) = solve_all(&p) else { panic!() };
        assert_eq!(extract_model(&p, &a), parse_triples("111", 1).unwrap());
    }

    #[test]
    fn direct_contradiction_core() {
        let mut p = GroundProblem::new(1);
        p.add(alloc::vec![Lit::pos(Var(0))], Some(Tag(7)));
        p.add(alloc::vec![Lit::neg(Var(0))], Some(Tag(7)));
        assert_eq!(solve_all(&p), SatResult::Unsat(alloc::vec![Tag(7)]));
        assert_eq!(solve(&GroundProblem::new(0), &[]), SatResult::Sat(alloc::vec![]));
    }

    #[test]
    fn cores_re_solve_unsat_and_minimize() {
        let h = get_system("huntington").unwrap();
        let mut fs = h.formulas();
        fs.push(axiom("hyp.nontrivial").unwrap().formula);
        let p = ground_over_domain(&fs, 2).unwrap();
        let SatResult::Unsat(core) = solve_all(&p) else { panic!() };
        assert!(matches!(solve(&p, &core), SatResult::Unsat(_)));
        let min = minimize_core(&p, &core);
        // D and the hypothesis suffice
        assert_eq!(min, alloc::vec![Tag(3), Tag(5)]);
    }

    #[test]
    fn constants_ground_with_one_hot_choice() {
        let mut sig = Signature::new();
        sig.add_relation("p", 1).unwrap();
        sig.add_constant("a").unwrap();
        sig.add_constant("b").unwrap();
        let fs = [parse_formula("p(a) & ~ p(b)", &sig).unwrap()];
        let p1 = ground_over_domain(&fs, 1).unwrap();
        assert!(matches!(solve_all(&p1), SatResult::Unsat(_)));
        let p2 = ground_over_domain(&fs, 2).unwrap();
        let SatResult::Sat(a) = solve_all(&p2) else { panic!() };
        let m = extract_model(&p2, &a);
        assert!(evaluate(&m, &fs[0]).unwrap());
        let eq = [parse_formula("a = b & p(a) & ~ p(b)", &sig).unwrap()];
        assert!(matches!(solve_all(&ground_over_domain(&eq, 3).unwrap()), SatResult::Unsat(_)));
    }

    #[test]
    fn functions_are_rejected() {
        let mut sig = Signature::new();
        sig.add_function("f", 1).unwrap();
        let fs = [parse_formula("![X]: f(X) = X", &sig).unwrap()];
        assert!(matches!(ground_over_domain(&fs, 2), Err(Error::Uninterpreted(_))));
    }

    #[test]
    fn dimacs_header() {
        let p = ground_over_domain(&[ax("huntington.A")], 2).unwrap();
        let text = p.to_dimacs();
        assert!(text.contains("p cnf 9 8"), "{text}");
    }
}
