//! Finite structures over `{1..n}`.
//!
//! Elements are 0-based in the API (`0..n`) and printed 1-based. Relations
//! are packed bit cubes indexed lexicographically by argument tuple.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::corpus::{signed_set, AxiomSystem, SignPattern};
use crate::formula::{Formula, Term};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    len: usize,
    words: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize, arity: usize) -> Self {
        let len = n.pow(arity as u32);
        Relation { arity, len, words: alloc::vec![0; len.div_ceil(64)] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of slots, `n^arity`.
    pub fn slots(&self) -> usize {
        self.len
    }

    pub fn get_index(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set_index(&mut self, i: usize, value: bool) {
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Lexicographic slot of `tuple` in an `n`-element cube.
pub fn tuple_index(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &e| acc * n + e)
}

/// Inverse of [`tuple_index`].
pub fn index_tuple(n: usize, arity: usize, mut index: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteModel {
    n: usize,
    relations: BTreeMap<String, Relation>,
    constants: BTreeMap<String, usize>,
}

impl FiniteModel {
    /// Panics if `n == 0`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "domains are non-empty");
        FiniteModel { n, relations: BTreeMap::new(), constants: BTreeMap::new() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn add_relation(&mut self, name: &str, arity: usize) -> &mut Relation {
        let n = self.n;
        self.relations.entry(name.to_string()).or_insert_with(|| Relation::empty(n, arity))
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Sets a tuple (0-based elements), declaring the relation if needed.
    pub fn set(&mut self, name: &str, tuple: &[usize], value: bool) {
        let n = self.n;
        assert!(tuple.iter().all(|&e| e < n), "element out of range");
        let rel = self.add_relation(name, tuple.len());
        assert_eq!(rel.arity, tuple.len(), "arity mismatch for {name}");
        rel.set_index(tuple_index(n, tuple), value);
    }

    pub fn holds(&self, name: &str, tuple: &[usize]) -> Option<bool> {
        let rel = self.relations.get(name)?;
        (rel.arity == tuple.len()).then(|| rel.get_index(tuple_index(self.n, tuple)))
    }

    /// True tuples of a relation in lexicographic order.
    pub fn tuples(&self, name: &str) -> Vec<Vec<usize>> {
        let Some(rel) = self.relations.get(name) else { return Vec::new() };
        (0..rel.len).filter(|&i| rel.get_index(i)).map(|i| index_tuple(self.n, rel.arity, i)).collect()
    }

    pub fn set_constant(&mut self, name: &str, element: usize) {
        assert!(element < self.n, "element out of range");
        self.constants.insert(name.to_string(), element);
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.get(name).copied()
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, usize)> {
        self.constants.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Drops constant interpretations.
    pub fn without_constants(&self) -> FiniteModel {
        FiniteModel { constants: BTreeMap::new(), ..self.clone() }
    }

    /// The image of the model under `perm`, where element `e` becomes
    /// `perm[e]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteModel {
        assert_eq!(perm.len(), self.n);
        let mut out = FiniteModel::new(self.n);
        for (name, rel) in &self.relations {
            let mut image = Relation::empty(self.n, rel.arity);
            for i in (0..rel.len).filter(|&i| rel.get_index(i)) {
                let t: Vec<usize> = index_tuple(self.n, rel.arity, i).into_iter().map(|e| perm[e]).collect();
                image.set_index(tuple_index(self.n, &t), true);
            }
            out.relations.insert(name.clone(), image);
        }
        out.constants = self.constants.iter().map(|(k, &v)| (k.clone(), perm[v])).collect();
        out
    }

    /// Fixed serialization: size, then each relation (by name) as one byte
    /// per slot, then each constant (by name) as its element.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = alloc::vec![self.n as u8];
        for (name, rel) in &self.relations {
            out.extend_from_slice(name.as_bytes());
            out.push(0);
            out.push(rel.arity as u8);
            out.extend((0..rel.len).map(|i| rel.get_index(i) as u8));
        }
        for (name, &e) in &self.constants {
            out.extend_from_slice(name.as_bytes());
            out.push(0);
            out.push(e as u8);
        }
        out
    }
}

/// Calls `visit` on every permutation of `0..n`, identity first.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        visit(&perm);
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { return };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// Minimum of [`FiniteModel::encode`] over all domain permutations. Equal
/// iff the models are isomorphic.
pub fn canonicalize(m: &FiniteModel) -> Vec<u8> {
    canonical_form(m).encode()
}

/// The permuted copy of `m` whose encoding is minimal.
pub fn canonical_form(m: &FiniteModel) -> FiniteModel {
    let mut best: Option<(Vec<u8>, FiniteModel)> = None;
    for_each_permutation(m.n, |perm| {
        let image = m.permuted(perm);
        let code = image.encode();
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, image));
        }
    });
    best.unwrap().1
}

fn eval_term(m: &FiniteModel, t: &Term, env: &[(String, usize)]) -> Result<usize, Error> {
    match t {
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|(_, e)| *e)
            .ok_or_else(|| Error::NotASentence(v.clone())),
        Term::App(f, args) if args.is_empty() => m.constant(f).ok_or_else(|| Error::Uninterpreted(f.clone())),
        Term::App(f, _) => Err(Error::Uninterpreted(f.clone())),
    }
}

fn eval(m: &FiniteModel, f: &Formula, env: &mut Vec<(String, usize)>) -> Result<bool, Error> {
    Ok(match f {
        Formula::Pred(p, args) => {
            let tuple = args.iter().map(|a| eval_term(m, a, env)).collect::<Result<Vec<_>, _>>()?;
            m.holds(p, &tuple).ok_or_else(|| Error::Uninterpreted(p.clone()))?
        }
        Formula::Eq(a, b) => eval_term(m, a, env)? == eval_term(m, b, env)?,
        Formula::Not(g) => !eval(m, g, env)?,
        Formula::And(fs) => {
            for g in fs {
                if !eval(m, g, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(fs) => {
            for g in fs {
                if eval(m, g, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !eval(m, a, env)? || eval(m, b, env)?,
        Formula::Iff(a, b) => eval(m, a, env)? == eval(m, b, env)?,
        Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
            let universal = matches!(f, Formula::Forall(..));
            let base = env.len();
            env.extend(vs.iter().map(|v| (v.clone(), 0)));
            let result = loop {
                let value = eval(m, g, env)?;
                if value != universal {
                    break !universal;
                }
                // odometer over the bound block
                let mut k = env.len();
                loop {
                    if k == base {
                        env.truncate(base);
                        return Ok(universal);
                    }
                    k -= 1;
                    env[k].1 += 1;
                    if env[k].1 < m.n {
                        break;
                    }
                    env[k].1 = 0;
                }
            };
            env.truncate(base);
            result
        }
    })
}

/// Tarskian truth of a sentence; quantifiers range over the domain and `=`
/// is element identity.
pub fn evaluate(m: &FiniteModel, f: &Formula) -> Result<bool, Error> {
    eval(m, f, &mut Vec::new())
}

/// Every `+` axiom true and every `-` axiom false.
pub fn satisfies_signed(m: &FiniteModel, system: &AxiomSystem, pattern: &SignPattern) -> Result<bool, Error> {
    for f in signed_set(system, pattern)? {
        if !evaluate(m, &f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses compact notation (`"123, 132"` or `"(none)"`) into a model of
/// size `n` interpreting `relation`. Digits are 1-based; `n <= 9`.
pub fn parse_triples_for(relation: &str, text: &str, n: usize) -> Result<FiniteModel, Error> {
    if !(1..=9).contains(&n) {
        return Err(Error::Triples(alloc::format!("domain size {n} outside 1..=9")));
    }
    let mut m = FiniteModel::new(n);
    m.add_relation(relation, 3);
    let text = text.trim();
    if text == "(none)" || text.is_empty() {
        return Ok(m);
    }
    for token in text.split(',').map(str::trim) {
        let digits: Vec<u32> = token.chars().map(|c| c.to_digit(10).unwrap_or(u32::MAX)).collect();
        if digits.len() != 3 || digits.contains(&u32::MAX) {
            return Err(Error::Triples(alloc::format!("malformed triple `{token}`")));
        }
        if let Some(d) = digits.iter().find(|&&d| d == 0 || d as usize > n) {
            return Err(Error::Triples(alloc::format!("digit {d} in `{token}` outside 1..={n}")));
        }
        let t: Vec<usize> = digits.iter().map(|&d| d as usize - 1).collect();
        m.set(relation, &t, true);
    }
    Ok(m)
}

/// [`parse_triples_for`] on strict betweenness `sb`.
pub fn parse_triples(text: &str, n: usize) -> Result<FiniteModel, Error> {
    parse_triples_for("sb", text, n)
}

/// Sorted compact notation of a ternary relation; `(none)` when empty.
pub fn format_triples_for(m: &FiniteModel, relation: &str) -> String {
    let tuples = m.tuples(relation);
    if tuples.is_empty() {
        return "(none)".to_string();
    }
    let items: Vec<String> = tuples.iter().map(|t| t.iter().map(|e| ((e + 1) as u8 + b'0') as char).collect()).collect();
    items.join(", ")
}

pub fn format_triples(m: &FiniteModel) -> String {
    format_triples_for(m, "sb")
}
