//! Clausification preserves satisfiability in every small model: a sentence
//! holds iff some interpretation of its Skolem symbols satisfies its
//! clauses.

use std::collections::BTreeMap;

use axlab_core::corpus::{axiom, axiom_names};
use axlab_core::formula::{clausify, negate, Clause, ClauseSet, Formula, SkolemSource, Tag, Term};
use axlab_core::formula::clausify::Atom;
use axlab_core::model::{evaluate, FiniteModel};
use proptest::prelude::*;

/// Largest number of Skolem interpretations enumerated per check.
const BUDGET: usize = 1 << 16;

fn skolem_symbols(cs: &ClauseSet) -> Vec<(String, usize)> {
    fn walk(t: &Term, out: &mut BTreeMap<String, usize>) {
        if let Term::App(f, args) = t {
            out.insert(f.clone(), args.len());
            args.iter().for_each(|a| walk(a, out));
        }
    }
    let mut out = BTreeMap::new();
    for c in &cs.clauses {
        for l in &c.literals {
            match &l.atom {
                Atom::Pred(_, args) => args.iter().for_each(|a| walk(a, &mut out)),
                Atom::Eq(a, b) => {
                    walk(a, &mut out);
                    walk(b, &mut out);
                }
            }
        }
    }
    out.into_iter().collect()
}

struct Interp<'a> {
    model: &'a FiniteModel,
    symbols: &'a [(String, usize)],
    tables: &'a [Vec<usize>],
}

impl Interp<'_> {
    fn term(&self, t: &Term, env: &BTreeMap<&str, usize>) -> usize {
        match t {
            Term::Var(v) => env[v.as_str()],
            Term::App(f, args) => {
                let k = self.symbols.iter().position(|(s, _)| s == f).unwrap();
                let n = self.model.size();
                let index = args.iter().fold(0, |acc, a| acc * n + self.term(a, env));
                self.tables[k][index]
            }
        }
    }

    fn clause(&self, c: &Clause) -> bool {
        let vars = c.variables();
        let n = self.model.size();
        let mut values = vec![0; vars.len()];
        loop {
            let env: BTreeMap<&str, usize> = vars.iter().map(String::as_str).zip(values.iter().copied()).collect();
            let some_true = c.literals.iter().any(|l| {
                let truth = match &l.atom {
                    Atom::Pred(p, args) => {
                        let tuple: Vec<usize> = args.iter().map(|a| self.term(a, &env)).collect();
                        self.model.holds(p, &tuple).unwrap_or(false)
                    }
                    Atom::Eq(a, b) => self.term(a, &env) == self.term(b, &env),
                };
                truth == l.positive
            });
            if !some_true {
                return false;
            }
            if !advance(&mut values, n) {
                return true;
            }
        }
    }
}

/// Odometer step; false once every digit wrapped.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Whether some Skolem interpretation satisfies `cs` in `model`, or `None`
/// past the budget.
fn clauses_satisfiable(cs: &ClauseSet, model: &FiniteModel) -> Option<bool> {
    let n = model.size();
    let symbols = skolem_symbols(cs);
    let cells: Vec<usize> = symbols.iter().map(|(_, a)| n.pow(*a as u32)).collect();
    let total: usize = cells.iter().sum();
    if (n as f64).powi(total as i32) > BUDGET as f64 {
        return None;
    }
    let mut flat = vec![0; total];
    loop {
        let mut tables = Vec::new();
        let mut rest = &flat[..];
        for c in &cells {
            tables.push(rest[..*c].to_vec());
            rest = &rest[*c..];
        }
        let interp = Interp { model, symbols: &symbols, tables: &tables };
        if cs.clauses.iter().all(|c| interp.clause(c)) {
            return Some(true);
        }
        if !advance(&mut flat, n) {
            return Some(false);
        }
    }
}

fn corpus_sentences() -> Vec<(String, Formula)> {
    let mut out = Vec::new();
    for name in axiom_names() {
        let f = axiom(name).unwrap().formula;
        out.push((format!("~{name}"), negate(&f)));
        out.push((name.to_string(), f));
    }
    out
}

fn model(n: usize, sb: u64, wb: u64) -> FiniteModel {
    let mut m = FiniteModel::new(n);
    m.add_relation("sb", 3);
    m.add_relation("wb", 3);
    for i in 0..n * n * n {
        let t = [i / (n * n), i / n % n, i % n];
        m.set("sb", &t, sb >> i & 1 == 1);
        m.set("wb", &t, wb >> i & 1 == 1);
    }
    m
}

fn check(name: &str, f: &Formula, m: &FiniteModel) -> bool {
    let cs = clausify(f, Tag(0), &mut SkolemSource::new());
    match clauses_satisfiable(&cs, m) {
        Some(sat) => {
            assert_eq!(sat, evaluate(m, f).unwrap(), "{name} in {m:?}");
            true
        }
        None => false,
    }
}

#[test]
fn every_sentence_on_one_element() {
    for (name, f) in corpus_sentences() {
        for bits in 0..4u64 {
            assert!(check(&name, &f, &model(1, bits & 1, bits >> 1)));
        }
    }
}

#[test]
fn every_sentence_on_some_two_element_models() {
    // the all-empty and all-full cubes, and a cube with only degenerate triples
    for (name, f) in corpus_sentences() {
        for (sb, wb) in [(0, 0), (0xff, 0xff), (0x81, 0x99)] {
            assert!(check(&name, &f, &model(2, sb, wb)), "{name} exceeds the Skolem budget");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn two_element_models(index in 0usize..64, sb in 0u64..256, wb in 0u64..256) {
        let sentences = corpus_sentences();
        let (name, f) = &sentences[index % sentences.len()];
        check(name, f, &model(2, sb, wb));
    }

    #[test]
    fn three_element_models(index in 0usize..64, sb in 0u64..1 << 27, wb in 0u64..1 << 27) {
        let sentences = corpus_sentences();
        let (name, f) = &sentences[index % sentences.len()];
        check(name, f, &model(3, sb, wb));
    }
}
