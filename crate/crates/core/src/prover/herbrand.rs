//! Grounding of clause sets over a depth-bounded Herbrand universe.
//!
//! Equality is kept propositional: one variable per unordered pair of
//! distinct terms, constrained by transitivity and by congruence for every
//! function application and predicate atom in the grounding. Reflexivity
//! and symmetry are built into the encoding.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::formula::clausify::Atom;
use crate::formula::{ClauseSet, Tag, Term};
use crate::model::FiniteModel;
use crate::solver::{GroundProblem, Lit, Var};

pub(crate) struct Herbrand {
    pub problem: GroundProblem,
    terms: Vec<Term>,
    index: BTreeMap<Term, usize>,
    atoms: BTreeMap<(String, Vec<usize>), Var>,
    equalities: BTreeMap<(usize, usize), Var>,
}

/// Terms of depth at most `depth` built from the constants and functions of
/// `clauses`, with `fresh` standing in when there are no constants. Sorted
/// by depth, then structurally.
pub(crate) fn universe(clauses: &ClauseSet, depth: usize, fresh: &str) -> Vec<Term> {
    let mut terms: BTreeSet<Term> = clauses.constants().into_iter().map(|c| Term::App(c, Vec::new())).collect();
    if terms.is_empty() {
        terms.insert(Term::constant(fresh));
    }
    let functions = clauses.functions();
    for _ in 0..depth {
        let current: Vec<Term> = terms.iter().cloned().collect();
        for (f, &arity) in &functions {
            for i in 0..current.len().pow(arity as u32) {
                let args = crate::model::index_tuple(current.len(), arity, i).into_iter().map(|k| current[k].clone()).collect();
                terms.insert(Term::App(f.clone(), args));
            }
        }
    }
    let mut out: Vec<Term> = terms.into_iter().collect();
    out.sort_by(|a, b| a.depth().cmp(&b.depth()).then_with(|| a.cmp(b)));
    out
}

enum Ground {
    True,
    Lit(Lit),
}

impl Herbrand {
    /// Grounds `clauses` over `terms`. Instances that would create a term
    /// outside the universe are skipped, so an unsatisfiable result is
    /// conclusive while a satisfiable one is only conclusive when the set
    /// has no functions. `tags` are registered as selectors up front.
    pub fn new(clauses: &ClauseSet, terms: Vec<Term>, tags: &[Tag]) -> Herbrand {
        let index = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut h = Herbrand {
            problem: GroundProblem::new(0),
            terms,
            index,
            atoms: BTreeMap::new(),
            equalities: BTreeMap::new(),
        };
        for &t in tags {
            h.problem.selector(t);
        }
        let mut uses_equality = false;
        for clause in &clauses.clauses {
            let vars = clause.variables();
            let k = h.terms.len();
            'instances: for i in 0..k.pow(vars.len() as u32) {
                let choice = crate::model::index_tuple(k, vars.len(), i);
                let map: BTreeMap<String, Term> = vars.iter().cloned().zip(choice.iter().map(|&c| h.terms[c].clone())).collect();
                let mut lits = Vec::new();
                for l in &clause.literals {
                    let g = match &l.atom {
                        Atom::Pred(p, args) => {
                            let mut idx = Vec::with_capacity(args.len());
                            for a in args {
                                match h.index.get(&a.substitute(&map)) {
                                    Some(&k) => idx.push(k),
                                    None => continue 'instances,
                                }
                            }
                            Ground::Lit(Lit::pos(h.atom(p, idx)))
                        }
                        Atom::Eq(a, b) => {
                            let (Some(&x), Some(&y)) = (h.index.get(&a.substitute(&map)), h.index.get(&b.substitute(&map))) else {
                                continue 'instances;
                            };
                            uses_equality = true;
                            if x == y {
                                Ground::True
                            } else {
                                Ground::Lit(Lit::pos(h.equal(x, y)))
                            }
                        }
                    };
                    match (g, l.positive) {
                        (Ground::True, true) => continue 'instances,
                        (Ground::True, false) => {}
                        (Ground::Lit(x), positive) => lits.push(if positive { x } else { !x }),
                    }
                }
                lits.sort();
                lits.dedup();
                if lits.windows(2).any(|w| w[0] == !w[1]) {
                    continue;
                }
                h.problem.add(lits, Some(clause.tag));
            }
        }
        if uses_equality {
            h.add_equality_axioms();
        }
        h
    }

    fn atom(&mut self, p: &str, args: Vec<usize>) -> Var {
        let key = (String::from(p), args);
        if let Some(v) = self.atoms.get(&key) {
            return *v;
        }
        let v = self.problem.new_var();
        self.atoms.insert(key, v);
        v
    }

    fn equal(&mut self, x: usize, y: usize) -> Var {
        let key = (x.min(y), x.max(y));
        if let Some(v) = self.equalities.get(&key) {
            return *v;
        }
        let v = self.problem.new_var();
        self.equalities.insert(key, v);
        v
    }

    /// `None` when the two terms are identical (trivially equal).
    fn eq_lit(&mut self, x: usize, y: usize) -> Option<Lit> {
        (x != y).then(|| Lit::pos(self.equal(x, y)))
    }

    fn add_equality_axioms(&mut self) {
        let k = self.terms.len();
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    let (ij, jl, il) = (self.equal(i, j), self.equal(j, l), self.equal(i, l));
                    self.problem.add(alloc::vec![Lit::neg(ij), Lit::neg(jl), Lit::pos(il)], None);
                    self.problem.add(alloc::vec![Lit::neg(ij), Lit::neg(il), Lit::pos(jl)], None);
                    self.problem.add(alloc::vec![Lit::neg(il), Lit::neg(jl), Lit::pos(ij)], None);
                }
            }
        }
        // function congruence over applications inside the universe
        let applications: Vec<(String, Vec<usize>, usize)> = self
            .terms
            .iter()
            .enumerate()
            .filter_map(|(i, t)| match t {
                Term::App(f, args) if !args.is_empty() => Some((f.clone(), args.iter().map(|a| self.index[a]).collect(), i)),
                _ => None,
            })
            .collect();
        for (a, (f, s, fs)) in applications.iter().enumerate() {
            for (g, t, gt) in &applications[a + 1..] {
                if f != g {
                    continue;
                }
                let mut lits: Vec<Lit> = s.iter().zip(t).filter_map(|(&x, &y)| self.eq_lit(x, y)).map(|l| !l).collect();
                lits.push(Lit::pos(self.equal(*fs, *gt)));
                self.problem.add(lits, None);
            }
        }
        let atoms: Vec<((String, Vec<usize>), Var)> = self.atoms.iter().map(|(k, v)| (k.clone(), *v)).collect();
        for ((p, s), x) in &atoms {
            for ((q, t), y) in &atoms {
                if p != q || s == t {
                    continue;
                }
                let mut lits: Vec<Lit> = s.iter().zip(t).filter_map(|(&a, &b)| self.eq_lit(a, b)).map(|l| !l).collect();
                lits.extend([Lit::neg(*x), Lit::pos(*y)]);
                self.problem.add(lits, None);
            }
        }
    }

    /// Quotient of a satisfying assignment by the equality variables. Every
    /// relation in `relations` is interpreted; `keep` lists the constants
    /// to carry over.
    pub fn model(&self, assignment: &[bool], relations: &BTreeMap<String, usize>, keep: &BTreeSet<String>) -> FiniteModel {
        let k = self.terms.len();
        let mut class: Vec<usize> = (0..k).collect();
        for (&(x, y), v) in &self.equalities {
            if assignment[v.0 as usize] {
                let (a, b) = (class[x], class[y]);
                let (lo, hi) = (a.min(b), a.max(b));
                class.iter_mut().filter(|c| **c == hi).for_each(|c| *c = lo);
            }
        }
        let mut reps: Vec<usize> = class.clone();
        reps.sort();
        reps.dedup();
        let element = |t: usize| reps.binary_search(&class[t]).unwrap();
        let mut m = FiniteModel::new(reps.len());
        for (name, &arity) in relations {
            m.add_relation(name, arity);
        }
        for ((p, args), v) in &self.atoms {
            if assignment[v.0 as usize] {
                let tuple: Vec<usize> = args.iter().map(|&a| element(a)).collect();
                m.set(p, &tuple, true);
            }
        }
        for (i, t) in self.terms.iter().enumerate() {
            if let Term::App(c, args) = t {
                if args.is_empty() && keep.contains(c) {
                    m.set_constant(c, element(i));
                }
            }
        }
        m
    }
}
