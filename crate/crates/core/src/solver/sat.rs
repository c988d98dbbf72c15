//! A small CDCL solver: two watched literals, first-UIP learning, static
//! decision order by variable index with the negative phase first, and
//! assumption cores via final-conflict analysis. No restarts and no clause
//! deletion; the problems here have at most a few hundred thousand clauses.

use alloc::vec::Vec;
use core::ops::Not;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

/// `2 * var + sign`, sign 1 meaning negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | (!positive) as u32)
    }

    pub fn pos(var: Var) -> Lit {
        Lit::new(var, true)
    }

    pub fn neg(var: Var) -> Lit {
        Lit::new(var, false)
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn code(self) -> usize {
        self.0 as usize
    }

    /// DIMACS integer (1-based, negative for negated).
    pub fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Value of every variable.
    Sat(Vec<bool>),
    /// Assumptions that together are refuted; empty when the clauses alone
    /// are unsatisfiable.
    Unsat(Vec<Lit>),
}

const UNDEF: u8 = 2;

pub struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    value: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    order_head: usize,
    seen: Vec<bool>,
    inconsistent: bool,
}

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        Solver {
            num_vars,
            clauses: Vec::new(),
            watches: alloc::vec![Vec::new(); 2 * num_vars],
            value: alloc::vec![UNDEF; num_vars],
            level: alloc::vec![0; num_vars],
            reason: alloc::vec![None; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            order_head: 0,
            seen: alloc::vec![false; num_vars],
            inconsistent: false,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// 1 true, 0 false, `UNDEF` unassigned.
    fn lit_value(&self, l: Lit) -> u8 {
        let v = self.value[l.var().0 as usize];
        if v == UNDEF {
            UNDEF
        } else {
            v ^ (!l.is_positive()) as u8
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        let v = l.var().0 as usize;
        self.value[v] = l.is_positive() as u8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Adds a clause before solving. Must be called at decision level 0.
    pub fn add_clause(&mut self, lits: &[Lit]) {
        debug_assert_eq!(self.decision_level(), 0);
        if self.inconsistent {
            return;
        }
        let mut c: Vec<Lit> = Vec::with_capacity(lits.len());
        for &l in lits {
            assert!((l.var().0 as usize) < self.num_vars, "literal out of range");
            match self.lit_value(l) {
                1 => return,
                0 => continue,
                _ => {}
            }
            if c.contains(&!l) {
                return;
            }
            if !c.contains(&l) {
                c.push(l);
            }
        }
        match c.len() {
            0 => self.inconsistent = true,
            1 => {
                self.enqueue(c[0], None);
                if self.propagate().is_some() {
                    self.inconsistent = true;
                }
            }
            _ => {
                self.attach(c);
            }
        }
    }

    fn attach(&mut self, c: Vec<Lit>) -> u32 {
        let ci = self.clauses.len() as u32;
        self.watches[c[0].code()].push(ci);
        self.watches[c[1].code()].push(ci);
        self.clauses.push(c);
        ci
    }

    /// Watch lists are indexed by the watched literal and visited when that
    /// literal becomes false.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = !p;
            let mut ws = core::mem::take(&mut self.watches[false_lit.code()]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let c = &mut self.clauses[ci as usize];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if self_lit_value(&self.value, first) == 1 {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    if self_lit_value(&self.value, c[k]) != 0 {
                        c.swap(1, k);
                        let w = c[1];
                        self.watches[w.code()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = ci;
                j += 1;
                if self_lit_value(&self.value, first) == 0 {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, Some(ci));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for k in (lim..self.trail.len()).rev() {
            let v = self.trail[k].var().0 as usize;
            self.value[v] = UNDEF;
            self.reason[v] = None;
            self.order_head = self.order_head.min(v);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    /// First-UIP learning. Returns the learnt clause (asserting literal
    /// first, a literal of the backtrack level second) and the backtrack
    /// level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = alloc::vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level();
        loop {
            let start = if p.is_some() { 1 } else { 0 };
            let clause = &self.clauses[confl as usize];
            for &q in &clause[start..] {
                let v = q.var().0 as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().0 as usize] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            self.seen[lit.var().0 as usize] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[lit.var().0 as usize].expect("implied literal has a reason");
        }
        learnt[0] = !p.unwrap();
        for l in &learnt[1..] {
            self.seen[l.var().0 as usize] = false;
        }
        let backtrack = if learnt.len() == 1 {
            0
        } else {
            let (best, _) = learnt[1..]
                .iter()
                .enumerate()
                .max_by_key(|(i, l)| (self.level[l.var().0 as usize], core::cmp::Reverse(*i)))
                .unwrap();
            learnt.swap(1, best + 1);
            self.level[learnt[1].var().0 as usize]
        };
        (learnt, backtrack)
    }

    /// Assumptions responsible for the assumption `a` being false,
    /// including `a`.
    fn analyze_final(&mut self, a: Lit) -> Vec<Lit> {
        let mut core = alloc::vec![a];
        if self.decision_level() == 0 {
            return core;
        }
        self.seen[a.var().0 as usize] = true;
        for k in (self.trail_lim[0]..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.var().0 as usize;
            if !self.seen[v] {
                continue;
            }
            match self.reason[v] {
                None => core.push(l),
                Some(ci) => {
                    for &q in &self.clauses[ci as usize][1..] {
                        if self.level[q.var().0 as usize] > 0 {
                            self.seen[q.var().0 as usize] = true;
                        }
                    }
                }
            }
            self.seen[v] = false;
        }
        self.seen[a.var().0 as usize] = false;
        core.sort();
        core.dedup();
        core
    }

    fn next_decision(&mut self) -> Option<Var> {
        while self.order_head < self.num_vars {
            if self.value[self.order_head] == UNDEF {
                return Some(Var(self.order_head as u32));
            }
            self.order_head += 1;
        }
        None
    }

    /// Solves under `assumptions`. The solver is left at level 0 and can be
    /// called again with different assumptions.
    pub fn solve(&mut self, assumptions: &[Lit]) -> Outcome {
        let outcome = self.search(assumptions);
        self.cancel_until(0);
        outcome
    }

    fn search(&mut self, assumptions: &[Lit]) -> Outcome {
        if self.inconsistent {
            return Outcome::Unsat(Vec::new());
        }
        loop {
            if let Some(confl) = self.propagate() {
                if self.decision_level() == 0 {
                    self.inconsistent = true;
                    return Outcome::Unsat(Vec::new());
                }
                let (learnt, backtrack) = self.analyze(confl);
                self.cancel_until(backtrack);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let first = learnt[0];
                    let ci = self.attach(learnt);
                    self.enqueue(first, Some(ci));
                }
                continue;
            }
            let level = self.decision_level() as usize;
            if level < assumptions.len() {
                let a = assumptions[level];
                match self.lit_value(a) {
                    1 => self.trail_lim.push(self.trail.len()),
                    0 => return Outcome::Unsat(self.analyze_final(a)),
                    _ => {
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(a, None);
                    }
                }
                continue;
            }
            match self.next_decision() {
                None => return Outcome::Sat(self.value.iter().map(|&v| v == 1).collect()),
                Some(v) => {
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(Lit::neg(v), None);
                }
            }
        }
    }
}

fn self_lit_value(value: &[u8], l: Lit) -> u8 {
    let v = value[l.var().0 as usize];
    if v == UNDEF {
        UNDEF
    } else {
        v ^ (!l.is_positive()) as u8
    }
}
