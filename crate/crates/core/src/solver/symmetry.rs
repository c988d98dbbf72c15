//! Lex-leader symmetry breaking over domain permutations.

use alloc::vec::Vec;

use super::{GroundProblem, Lit, Var};
use crate::model::{for_each_permutation, index_tuple};

/// Requires the relation cube (relations in name order, slots in tuple
/// order) to be lexicographically no greater than its image under every
/// nontrivial permutation of `0..n`, with `false < true`. The surviving
/// member of each isomorphism class is the one whose encoding is minimal.
pub fn add_symmetry_breaking(p: &mut GroundProblem, n: usize) {
    let layout = p.layout.clone().expect("fixed-domain problem");
    assert_eq!(layout.n, n);
    if n < 2 {
        return;
    }
    let mut constraints: Vec<Vec<(Var, Var)>> = Vec::new();
    for_each_permutation(n, |perm| {
        if perm.iter().enumerate().all(|(i, &e)| i == e) {
            return;
        }
        let mut inverse = alloc::vec![0; n];
        for (i, &e) in perm.iter().enumerate() {
            inverse[e] = i;
        }
        let mut pairs = Vec::new();
        for (r, (_, arity, _)) in layout.relations.iter().enumerate() {
            for i in 0..n.pow(*arity as u32) {
                let tuple = index_tuple(n, *arity, i);
                let source: Vec<usize> = tuple.iter().map(|&e| inverse[e]).collect();
                let x = layout.atom(r, &tuple);
                let y = layout.atom(r, &source);
                if x != y && !pairs.contains(&(y, x)) {
                    pairs.push((x, y));
                }
            }
        }
        constraints.push(pairs);
    });
    for pairs in constraints {
        // `prefix` is true while every earlier pair is equal
        let mut prefix: Option<Var> = None;
        for (k, &(x, y)) in pairs.iter().enumerate() {
            let guard: Vec<Lit> = prefix.map(Lit::neg).into_iter().collect();
            let mut le = guard.clone();
            le.extend([Lit::neg(x), Lit::pos(y)]);
            p.add(le, None);
            if k + 1 == pairs.len() {
                break;
            }
            let e = p.new_var();
            let mut both = guard.clone();
            both.extend([Lit::pos(x), Lit::pos(y), Lit::pos(e)]);
            p.add(both, None);
            let mut neither = guard;
            neither.extend([Lit::neg(x), Lit::neg(y), Lit::pos(e)]);
            p.add(neither, None);
            prefix = Some(e);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{extract_model, ground_over_domain, solve_all, SatResult};
    use super::*;
    use crate::corpus::{get_system, signed_set};
    use crate::model::canonical_form;

    #[test]
    fn size_one_adds_nothing() {
        let h = get_system("huntington").unwrap();
        let mut p = ground_over_domain(&h.formulas(), 1).unwrap();
        let before = p.clone();
        add_symmetry_breaking(&mut p, 1);
        assert_eq!(p, before);
    }

    #[test]
    fn witness_is_canonical() {
        let h = get_system("huntington").unwrap();
        let fs = signed_set(&h, &"++-++".parse().unwrap()).unwrap();
        let plain = ground_over_domain(&fs, 3).unwrap();
        let mut broken = plain.clone();
        add_symmetry_breaking(&mut broken, 3);
        let (SatResult::Sat(a), SatResult::Sat(b)) = (solve_all(&plain), solve_all(&broken)) else { panic!() };
        let m = extract_model(&broken, &b);
        assert_eq!(m, canonical_form(&extract_model(&plain, &a)));
        assert_eq!(m, canonical_form(&m));
    }
}
