//! Entailment between finite premise sets and a goal.
//!
//! Premises and the negated goal are clausified with one tag each. A
//! function-free clause set is decided by grounding over its constants: an
//! unsatisfiable grounding yields the premises in the core, a satisfiable
//! one is quotiented into a countermodel. With Skolem functions present,
//! Herbrand grounding at increasing depth alternates with finite
//! countermodel search until one succeeds or both bounds run out.

mod herbrand;

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::finder::{find_model, minimal_model_size, validate, SizeVerdict};
use crate::formula::print::fof_line;
use crate::formula::{clausify, is_epr, negate, ClauseSet, Formula, SkolemSource, Tag};
use crate::model::{evaluate, FiniteModel};
use crate::solver::{minimize_core, solve, solve_all, vocabulary, SatResult};
use crate::Error;
use herbrand::{universe, Herbrand};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Premise {
    pub name: String,
    pub formula: Formula,
}

impl Premise {
    pub fn new(name: &str, formula: Formula) -> Self {
        Premise { name: name.to_string(), formula }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest Herbrand term depth tried when Skolem functions occur.
    pub depth_cap: usize,
    /// Largest countermodel size tried when Skolem functions occur.
    pub size_cap: usize,
    /// Shrink premise cores by deletion.
    pub minimize: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { depth_cap: 2, size_cap: 4, minimize: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    /// Names of the premises in the core, in premise order.
    pub used: Vec<String>,
    /// False when the premises are inconsistent on their own.
    pub goal_used: bool,
    /// Herbrand depth at which the grounding became unsatisfiable.
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntailmentVerdict {
    Proved(Proof),
    /// A finite model of the premises in which the goal is false, minimal
    /// in size and in canonical form.
    Countermodel(FiniteModel),
    Unknown { depth_cap: usize, size_cap: usize },
}

impl EntailmentVerdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, EntailmentVerdict::Proved(_))
    }

    pub fn countermodel(&self) -> Option<&FiniteModel> {
        match self {
            EntailmentVerdict::Countermodel(m) => Some(m),
            _ => None,
        }
    }
}

/// Premise names of a proof's core; `None` for other verdicts.
pub fn used_premises(verdict: &EntailmentVerdict) -> Option<&[String]> {
    match verdict {
        EntailmentVerdict::Proved(p) => Some(&p.used),
        _ => None,
    }
}

fn obligation(premises: &[Premise], goal: &Formula) -> Result<Vec<Formula>, Error> {
    let mut formulas: Vec<Formula> = premises.iter().map(|p| p.formula.clone()).collect();
    formulas.push(negate(goal));
    for f in &formulas {
        if let Some(v) = f.free_vars().into_iter().next() {
            return Err(Error::NotASentence(v));
        }
    }
    vocabulary(&formulas)?;
    Ok(formulas)
}

pub fn entails(premises: &[Premise], goal: &Formula, limits: &Limits) -> Result<EntailmentVerdict, Error> {
    let formulas = obligation(premises, goal)?;
    let (relations, constants) = vocabulary(&formulas)?;
    let constants: BTreeSet<String> = constants.into_iter().collect();
    let mut skolem = SkolemSource::with_reserved(constants.iter().cloned());
    let mut clauses = ClauseSet::default();
    for (i, f) in formulas.iter().enumerate() {
        clauses.extend(clausify(f, Tag(i as u32), &mut skolem));
    }
    let fresh = skolem.fresh();
    let tags: Vec<Tag> = (0..formulas.len() as u32).map(Tag).collect();
    let goal_tag = Tag(premises.len() as u32);

    let refute = |depth: usize| -> Option<Proof> {
        let h = Herbrand::new(&clauses, universe(&clauses, depth, &fresh), &tags);
        match solve_all(&h.problem) {
            SatResult::Sat(_) => None,
            SatResult::Unsat(core) => {
                let core = if limits.minimize { minimize_core(&h.problem, &core) } else { core };
                assert!(matches!(solve(&h.problem, &core), SatResult::Unsat(_)), "cores re-solve unsatisfiable");
                Some(Proof {
                    used: core.iter().filter(|t| **t != goal_tag).map(|t| premises[t.0 as usize].name.clone()).collect(),
                    goal_used: core.contains(&goal_tag),
                    depth,
                })
            }
        }
    };

    if is_epr(&clauses) {
        let h = Herbrand::new(&clauses, universe(&clauses, 0, &fresh), &tags);
        return match solve_all(&h.problem) {
            SatResult::Unsat(_) => Ok(EntailmentVerdict::Proved(refute(0).expect("same grounding"))),
            SatResult::Sat(assignment) => {
                let quotient = h.model(&assignment, &relations, &constants);
                validate(&quotient, &formulas)?;
                let shrunk = minimal_model_size(&formulas, quotient.size())?;
                let model = shrunk.witness.expect("the quotient has this size");
                Ok(EntailmentVerdict::Countermodel(model))
            }
        };
    }

    for step in 0..=limits.depth_cap.max(limits.size_cap) {
        if step <= limits.depth_cap {
            if let Some(proof) = refute(step) {
                return Ok(EntailmentVerdict::Proved(proof));
            }
        }
        if (1..=limits.size_cap).contains(&(step + 1)) {
            if let SizeVerdict::Satisfiable(m) = find_model(&formulas, step + 1)? {
                return Ok(EntailmentVerdict::Countermodel(m));
            }
        }
    }
    Ok(EntailmentVerdict::Unknown { depth_cap: limits.depth_cap, size_cap: limits.size_cap })
}

/// Per-premise verdict from [`needed_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Need {
    /// Dropping the premise leaves the goal countersatisfiable.
    Needed(FiniteModel),
    /// The goal still follows without it.
    NotNeeded,
    Unknown,
}

impl Need {
    pub fn is_needed(&self) -> bool {
        matches!(self, Need::Needed(_))
    }
}

/// For each premise, whether the goal stops following once it is dropped.
/// Fails unless the goal follows from all the premises.
pub fn needed_axioms(premises: &[Premise], goal: &Formula, limits: &Limits) -> Result<Vec<(String, Need)>, Error> {
    match entails(premises, goal, limits)? {
        EntailmentVerdict::Proved(_) => {}
        EntailmentVerdict::Countermodel(_) => return Err(Error::GoalNotDerivable("countermodel found".to_string())),
        EntailmentVerdict::Unknown { .. } => return Err(Error::GoalNotDerivable("bounds exhausted".to_string())),
    }
    let mut out = Vec::with_capacity(premises.len());
    for i in 0..premises.len() {
        let mut rest = premises.to_vec();
        let dropped = rest.remove(i);
        let need = match entails(&rest, goal, limits)? {
            EntailmentVerdict::Proved(_) => Need::NotNeeded,
            EntailmentVerdict::Countermodel(m) => Need::Needed(m),
            EntailmentVerdict::Unknown { .. } => Need::Unknown,
        };
        out.push((dropped.name, need));
    }
    Ok(out)
}

/// True iff `m` satisfies every premise and falsifies the goal.
pub fn is_countermodel(m: &FiniteModel, premises: &[Premise], goal: &Formula) -> Result<bool, Error> {
    for p in premises {
        if !evaluate(m, &p.formula)? {
            return Ok(false);
        }
    }
    Ok(!evaluate(m, goal)?)
}

/// A TPTP problem: each premise as an axiom, the goal as the conjecture.
pub fn export_tptp(premises: &[Premise], goal_name: &str, goal: &Formula) -> String {
    let mut out = String::new();
    for p in premises {
        out.push_str(&fof_line(&tptp_name(&p.name), "axiom", &p.formula));
        out.push('\n');
    }
    out.push_str(&fof_line(&tptp_name(goal_name), "conjecture", goal));
    out.push('\n');
    out
}

/// TPTP names are lower words: `huntington.A` becomes `huntington_A`.
fn tptp_name(name: &str) -> String {
    let mut out: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    if !out.starts_with(|c: char| c.is_ascii_lowercase()) {
        out.insert_str(0, "f_");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{axiom, get_definition, get_system};
    use crate::formula::{parse_formula, Signature};

    fn system(name: &str) -> Vec<Premise> {
        get_system(name).unwrap().axioms.iter().map(|a| Premise::new(&a.name, a.formula.clone())).collect()
    }

    fn def(name: &str) -> Premise {
        Premise::new(name, get_definition(name).unwrap())
    }

    fn ax(name: &str) -> Formula {
        axiom(name).unwrap().formula
    }

    #[test]
    fn validity_needs_no_premises() {
        let f = parse_formula("![X]: X = X", &Signature::new()).unwrap();
        let v = entails(&[], &f, &Limits::default()).unwrap();
        assert_eq!(v, EntailmentVerdict::Proved(Proof { used: alloc::vec![], goal_used: true, depth: 0 }));
    }

    #[test]
    fn goal_among_premises() {
        let ps = [Premise::new("huntington.A", ax("huntington.A")), Premise::new("huntington.D", ax("huntington.D"))];
        let v = entails(&ps, &ax("huntington.A"), &Limits { minimize: true, ..Limits::default() }).unwrap();
        assert_eq!(used_premises(&v).unwrap(), ["huntington.A"]);
    }

    #[test]
    fn sole_premise_is_needed() {
        let mut sig = Signature::new();
        sig.add_relation("p", 1).unwrap();
        sig.add_constant("a").unwrap();
        let pa = parse_formula("p(a)", &sig).unwrap();
        let verdicts = needed_axioms(&[Premise::new("p", pa.clone())], &pa, &Limits::default()).unwrap();
        assert_eq!(verdicts.len(), 1);
        let Need::Needed(m) = &verdicts[0].1 else { panic!() };
        assert!(!evaluate(m, &pa).unwrap());
    }

    #[test]
    fn huntington_with_definition_gives_mcphee_three() {
        let mut ps = system("huntington");
        ps.push(def("def.weak_from_strict"));
        assert!(entails(&ps, &ax("mcphee.3"), &Limits::default()).unwrap().is_proved());
    }

    #[test]
    fn mcphee_three_gives_d() {
        let mut ps = system("mcphee3");
        ps.push(def("def.strict_from_weak"));
        assert!(entails(&ps, &ax("huntington.D"), &Limits::default()).unwrap().is_proved());
    }

    #[test]
    fn countermodels_are_validated() {
        let ps = system("huntington_prime");
        let goal = ax("huntington.D");
        let EntailmentVerdict::Countermodel(m) = entails(&ps, &goal, &Limits::default()).unwrap() else { panic!() };
        assert_eq!(m.size(), 1);
        assert!(is_countermodel(&m, &ps, &goal).unwrap());
    }

    #[test]
    fn mcphee_one_through_functions() {
        let ps = system("mcphee2");
        let v = entails(&ps, &ax("mcphee.1"), &Limits::default()).unwrap();
        let EntailmentVerdict::Proved(p) = v else { panic!("{v:?}") };
        assert!(p.depth >= 1);
        assert!(p.used.contains(&"mcphee.5".to_string()));
    }

    #[test]
    fn arity_clash_is_an_error() {
        let mut s1 = Signature::new();
        s1.add_relation("p", 1).unwrap();
        let mut s2 = Signature::new();
        s2.add_relation("p", 2).unwrap();
        let a = parse_formula("![X]: p(X)", &s1).unwrap();
        let b = parse_formula("![X]: p(X,X)", &s2).unwrap();
        assert!(matches!(entails(&[Premise::new("a", a)], &b, &Limits::default()), Err(Error::SignatureMismatch { .. })));
    }

    #[test]
    fn tptp_export() {
        let ps = [Premise::new("huntington.A", ax("huntington.A"))];
        let text = export_tptp(&ps, "mcphee.5", &ax("mcphee.5"));
        assert!(text.starts_with("fof(huntington_A, axiom, ![A,B,C]: (sb(A,B,C) => sb(C,B,A)))."), "{text}");
        assert!(text.contains("fof(mcphee_5, conjecture, "));
    }
}
