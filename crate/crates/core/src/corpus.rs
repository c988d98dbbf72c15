//! Embedded axioms for betweenness on the affine line.
//!
//! Huntington's system uses strict betweenness `sb` (all three points
//! distinct); McPhee's systems use weak betweenness `wb`. Each axiom is stored
//! once as text and parsed against [`Signature::betweenness`] on access.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::formula::{negate, parse_formula, Formula, Signature};
use crate::Error;

struct Entry {
    name: &'static str,
    text: &'static str,
}

const ENTRIES: &[Entry] = &[
    Entry { name: "huntington.A", text: "![A,B,C]: (sb(A,B,C) => sb(C,B,A))" },
    Entry {
        name: "huntington.B",
        text: "![A,B,C]: ((A != B & A != C & B != C) => (sb(B,A,C) | sb(C,A,B) | sb(A,B,C) | sb(C,B,A) | sb(A,C,B) | sb(B,C,A)))",
    },
    Entry { name: "huntington.C", text: "![A,X,Y]: ((A != X & A != Y & X != Y) => ~ (sb(A,X,Y) & sb(A,Y,X)))" },
    Entry { name: "huntington.D", text: "![A,B,C]: (sb(A,B,C) => (A != B & A != C & B != C))" },
    Entry {
        name: "huntington.9",
        text: "![A,B,C,X]: ((sb(A,B,C) & (A != B & A != C & A != X & B != C & B != X & C != X)) => (sb(A,B,X) | sb(X,B,C)))",
    },
    Entry { name: "mcphee.1", text: "?[Z]: ![A,B]: (wb(A,B,Z) | wb(A,Z,B) | wb(B,Z,A) | wb(B,A,Z) | wb(Z,A,B) | wb(Z,B,A))" },
    Entry { name: "mcphee.2", text: "![A,B,C,D]: ((wb(B,A,C) & wb(C,D,A)) => wb(D,A,B))" },
    Entry { name: "mcphee.3", text: "![A,B,C,D]: ((wb(B,A,C) & wb(D,B,A)) => (wb(C,A,D) | A = B))" },
    Entry { name: "mcphee.4", text: "![A,B,C,D]: ((wb(B,A,C) & wb(C,A,D) & wb(D,A,B)) => (A = B | A = C | A = D))" },
    Entry { name: "mcphee.5", text: "![A,B,C]: (wb(A,B,C) | wb(B,C,A) | wb(B,A,C))" },
    Entry { name: "mcphee.6", text: "![A,B,C]: (wb(A,B,C) | wb(A,C,B) | wb(B,C,A) | wb(B,A,C) | wb(C,A,B) | wb(C,B,A))" },
    Entry {
        name: "mcphee.7",
        text: "![A,B,C,D]: ((wb(C,A,D) & wb(C,B,D) & wb(A,C,B) & wb(A,D,B)) => (A = C | B = C | A = D | B = D))",
    },
    // Weak betweenness holds when the middle point coincides with an
    // endpoint. The `x = z` disjunct of the printed definition is kept
    // separately as `def.weak_from_strict_printed`.
    Entry { name: "def.weak_from_strict", text: "![X,Y,Z]: (wb(X,Y,Z) <=> (sb(X,Y,Z) | X = Y | Y = Z))" },
    Entry { name: "def.weak_from_strict_printed", text: "![X,Y,Z]: (wb(X,Y,Z) <=> (sb(X,Y,Z) | X = Y | X = Z | Y = Z))" },
    Entry { name: "def.strict_from_weak", text: "![X,Y,Z]: (sb(X,Y,Z) <=> (wb(X,Y,Z) & X != Y & X != Z & Y != Z))" },
    Entry { name: "hyp.nontrivial", text: "?[A,B,C]: sb(A,B,C)" },
];

/// A named corpus sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    /// Qualified name, e.g. `huntington.A` or `mcphee.3`.
    pub name: String,
    pub text: &'static str,
    pub formula: Formula,
}

impl Axiom {
    /// The part after the dot: `A`, `9`, `3`, `weak_from_strict`.
    pub fn short_name(&self) -> &str {
        self.name.split_once('.').map_or(self.name.as_str(), |(_, s)| s)
    }
}

/// Looks up any corpus sentence by qualified name.
pub fn axiom(name: &str) -> Result<Axiom, Error> {
    let entry = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownAxiom(name.to_string()))?;
    let formula = parse_formula(entry.text, &Signature::betweenness())?;
    Ok(Axiom { name: entry.name.to_string(), text: entry.text, formula })
}

/// Qualified names of every corpus sentence, in storage order.
pub fn axiom_names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.name)
}

/// `def.weak_from_strict`, `def.strict_from_weak` or `hyp.nontrivial`;
/// the `def.`/`hyp.` prefix may be omitted.
pub fn get_definition(name: &str) -> Result<Formula, Error> {
    let qualified = match name {
        "weak_from_strict" | "def_weak_from_strict" => "def.weak_from_strict",
        "weak_from_strict_printed" => "def.weak_from_strict_printed",
        "strict_from_weak" | "def_strict_from_weak" => "def.strict_from_weak",
        "nontrivial" | "nontriviality" => "hyp.nontrivial",
        other => other,
    };
    if !(qualified.starts_with("def.") || qualified.starts_with("hyp.")) {
        return Err(Error::UnknownAxiom(name.to_string()));
    }
    Ok(axiom(qualified)?.formula)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSystem {
    pub name: &'static str,
    /// The relation the system axiomatizes.
    pub subject: &'static str,
    pub axioms: Vec<Axiom>,
}

impl AxiomSystem {
    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.axioms.iter().map(|a| a.formula.clone()).collect()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.axioms.iter().position(|a| a.name == name || a.short_name() == name)
    }

    pub fn without(&self, name: &str) -> AxiomSystem {
        let mut out = self.clone();
        out.axioms.retain(|a| !(a.name == name || a.short_name() == name));
        out
    }
}

pub const SYSTEM_NAMES: [&str; 5] = ["huntington", "huntington_prime", "mcphee1", "mcphee2", "mcphee3"];

/// Huntington's H (order A, B, C, D, 9), H without D, and McPhee's three
/// systems.
pub fn get_system(name: &str) -> Result<AxiomSystem, Error> {
    let (name, subject, members): (&'static str, _, &[&str]) = match name {
        "huntington" => ("huntington", "sb", &["huntington.A", "huntington.B", "huntington.C", "huntington.D", "huntington.9"]),
        "huntington_prime" => ("huntington_prime", "sb", &["huntington.A", "huntington.B", "huntington.C", "huntington.9"]),
        "mcphee1" => ("mcphee1", "wb", &["mcphee.1", "mcphee.2", "mcphee.3", "mcphee.4"]),
        "mcphee2" => ("mcphee2", "wb", &["mcphee.3", "mcphee.4", "mcphee.5"]),
        "mcphee3" => ("mcphee3", "wb", &["mcphee.2", "mcphee.6", "mcphee.7"]),
        other => return Err(Error::UnknownSystem(other.to_string())),
    };
    let axioms = members.iter().map(|m| axiom(m)).collect::<Result<_, _>>()?;
    Ok(AxiomSystem { name, subject, axioms })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Holds,
    Fails,
}

/// Holds/fails marks aligned with a system's axiom order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern(pub Vec<Mark>);

impl SignPattern {
    pub fn all_holds(len: usize) -> Self {
        SignPattern(alloc::vec![Mark::Holds; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn fails(&self, i: usize) -> bool {
        self.0[i] == Mark::Fails
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Mark::Holds),
                '-' => Ok(Mark::Fails),
                _ => Err(Error::BadPattern(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignPattern)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            f.write_str(if *m == Mark::Holds { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Keeps `+` axioms and negates `-` axioms, preserving order.
pub fn signed_set(system: &AxiomSystem, pattern: &SignPattern) -> Result<Vec<Formula>, Error> {
    if pattern.len() != system.len() {
        return Err(Error::PatternLength { expected: system.len(), found: pattern.len() });
    }
    Ok(system
        .axioms
        .iter()
        .zip(&pattern.0)
        .map(|(a, m)| if *m == Mark::Holds { a.formula.clone() } else { negate(&a.formula) })
        .collect())
}

/// All `2^k` patterns, counting in binary with `-` as one, so the all-holds
/// pattern comes first.
pub fn all_patterns(system: &AxiomSystem) -> Vec<SignPattern> {
    let k = system.len();
    (0..1usize << k)
        .map(|bits| SignPattern((0..k).map(|i| if bits >> (k - 1 - i) & 1 == 1 { Mark::Fails } else { Mark::Holds }).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::expand_distinct;
    use alloc::string::ToString;

    #[test]
    fn every_entry_round_trips() {
        let sig = Signature::betweenness();
        for name in axiom_names() {
            let a = axiom(name).unwrap();
            assert!(a.formula.is_sentence(), "{name}");
            let printed = a.formula.to_string();
            assert_eq!(parse_formula(&printed, &sig).unwrap(), a.formula, "{name}: {printed}");
        }
    }

    #[test]
    fn huntington_order() {
        let h = get_system("huntington").unwrap();
        let names: Vec<&str> = h.axioms.iter().map(|a| a.short_name()).collect();
        assert_eq!(names, ["A", "B", "C", "D", "9"]);
        assert_eq!(h.subject, "sb");
    }

    #[test]
    fn huntington_prime_is_h_without_d() {
        let h = get_system("huntington").unwrap();
        let hp = get_system("huntington_prime").unwrap();
        assert_eq!(hp.len(), 4);
        assert!(hp.position("D").is_none());
        assert_eq!(h.without("huntington.D").axioms, hp.axioms);
    }

    #[test]
    fn mcphee_systems_share_axioms() {
        let m1 = get_system("mcphee1").unwrap();
        let m2 = get_system("mcphee2").unwrap();
        let m3 = get_system("mcphee3").unwrap();
        let short = |s: &AxiomSystem| s.axioms.iter().map(|a| a.short_name().to_string()).collect::<Vec<_>>();
        assert_eq!(short(&m2), ["3", "4", "5"]);
        assert_eq!(short(&m3), ["2", "6", "7"]);
        assert_eq!(m1.axioms[2], m2.axioms[0]);
        assert_eq!(m1.axioms[3], m2.axioms[1]);
        assert_eq!(m1.axioms[1], m3.axioms[0]);
        assert!(matches!(get_system("tarski"), Err(Error::UnknownSystem(_))));
    }

    #[test]
    fn distinctness_antecedents_match_expand_distinct() {
        let body = |name: &str| match axiom(name).unwrap().formula {
            Formula::Forall(_, b) => *b,
            _ => panic!(),
        };
        let Formula::Implies(ante, _) = body("huntington.B") else { panic!() };
        assert_eq!(*ante, expand_distinct(&["A", "B", "C"]).unwrap());
        let Formula::Implies(ante, _) = body("huntington.C") else { panic!() };
        assert_eq!(*ante, expand_distinct(&["A", "X", "Y"]).unwrap());
        let Formula::Implies(ante, _) = body("huntington.9") else { panic!() };
        assert_eq!(ante.conjuncts()[1], expand_distinct(&["A", "B", "C", "X"]).unwrap());
    }

    #[test]
    fn definitions() {
        let weak = get_definition("def.weak_from_strict").unwrap();
        let Formula::Forall(_, body) = weak else { panic!() };
        let Formula::Iff(_, rhs) = *body else { panic!() };
        assert!(matches!(*rhs, Formula::Or(ref d) if d.len() == 3));
        let printed = get_definition("weak_from_strict_printed").unwrap();
        let Formula::Forall(_, body) = printed else { panic!() };
        let Formula::Iff(_, rhs) = *body else { panic!() };
        assert!(matches!(*rhs, Formula::Or(ref d) if d.len() == 4));
        let strict = get_definition("def.strict_from_weak").unwrap();
        let Formula::Forall(_, body) = strict else { panic!() };
        let Formula::Iff(_, rhs) = *body else { panic!() };
        assert!(matches!(*rhs, Formula::And(ref c) if c.len() == 4));
        let hyp = get_definition("hyp.nontrivial").unwrap();
        assert!(matches!(hyp, Formula::Exists(ref vs, _) if vs.len() == 3));
        assert!(get_definition("huntington.A").is_err());
        assert!(get_definition("def.nope").is_err());
    }

    #[test]
    fn signed_sets() {
        let h = get_system("huntington").unwrap();
        assert_eq!(signed_set(&h, &"+++++".parse().unwrap()).unwrap(), h.formulas());
        let s = signed_set(&h, &"+++-+".parse().unwrap()).unwrap();
        assert_eq!(s[3], negate(&h.axioms[3].formula));
        assert_eq!(s[4], h.axioms[4].formula);
        let all = signed_set(&h, &"-----".parse().unwrap()).unwrap();
        assert!(all.iter().zip(&h.axioms).all(|(f, a)| *f == negate(&a.formula)));
        assert!(matches!(signed_set(&h, &"++".parse().unwrap()), Err(Error::PatternLength { expected: 5, found: 2 })));
    }

    #[test]
    fn pattern_parsing() {
        assert!("+-x".parse::<SignPattern>().is_err());
        assert_eq!("-+".parse::<SignPattern>().unwrap().to_string(), "-+");
    }

    #[test]
    fn pattern_enumeration() {
        let h = get_system("huntington").unwrap();
        let ps = all_patterns(&h);
        assert_eq!(ps.len(), 32);
        assert_eq!(ps[0].to_string(), "+++++");
        assert_eq!(ps[1].to_string(), "++++-");
        assert_eq!(ps[31].to_string(), "-----");
        assert_eq!(all_patterns(&get_system("mcphee2").unwrap()).len(), 8);
    }
}
