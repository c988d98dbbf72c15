use axlab_core::corpus::{all_patterns, get_system, signed_set};
use axlab_core::finder::find_model;
use axlab_core::formula::{negate, Formula, Tag};
use axlab_core::model::{canonical_form, evaluate, FiniteModel};
use axlab_core::solver::{add_symmetry_breaking, extract_model, ground_over_domain, solve, solve_all, SatResult};
use proptest::prelude::*;

/// H's axioms followed by their negations.
fn formulas() -> Vec<Formula> {
    let h = get_system("huntington").unwrap().formulas();
    h.iter().cloned().chain(h.iter().map(negate)).collect()
}

fn cube(n: usize, bits: u64) -> FiniteModel {
    let mut m = FiniteModel::new(n);
    m.add_relation("sb", 3);
    for i in 0..n * n * n {
        m.set("sb", &[i / (n * n), i / n % n, i % n], bits >> i & 1 == 1);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn selectors_enable_exactly_the_assumed_formulas(n in 1usize..3, chosen in prop::collection::vec(any::<bool>(), 10)) {
        let fs = formulas();
        let p = ground_over_domain(&fs, n).unwrap();
        let assumed: Vec<Tag> = (0..10).filter(|&i| chosen[i]).map(|i| Tag(i as u32)).collect();
        match solve(&p, &assumed) {
            SatResult::Sat(values) => {
                let m = extract_model(&p, &values);
                for t in &assumed {
                    prop_assert!(evaluate(&m, &fs[t.0 as usize]).unwrap());
                }
            }
            SatResult::Unsat(core) => {
                prop_assert!(core.iter().all(|t| assumed.contains(t)));
                prop_assert!(!matches!(solve(&p, &core), SatResult::Sat(_)));
                let none = (0..1u64 << (n * n * n))
                    .all(|bits| core.iter().any(|t| !evaluate(&cube(n, bits), &fs[t.0 as usize]).unwrap()));
                prop_assert!(none, "core {core:?} has a model of size {n}");
            }
        }
    }

    #[test]
    fn symmetry_breaking_keeps_satisfiability(index in 0usize..32, n in 1usize..4) {
        let h = get_system("huntington").unwrap();
        let fs = signed_set(&h, &all_patterns(&h)[index]).unwrap();
        let plain = ground_over_domain(&fs, n).unwrap();
        let mut broken = plain.clone();
        add_symmetry_breaking(&mut broken, n);
        match (solve_all(&plain), solve_all(&broken)) {
            (SatResult::Sat(_), SatResult::Sat(values)) => {
                let m = extract_model(&broken, &values);
                prop_assert_eq!(canonical_form(&m), m);
            }
            (SatResult::Unsat(_), SatResult::Unsat(_)) => {}
            (a, b) => prop_assert!(false, "plain {:?} vs broken {:?}", a, b),
        }
    }
}

#[test]
fn grounding_and_search_are_deterministic() {
    let h = get_system("huntington").unwrap();
    for pattern in all_patterns(&h) {
        let fs = signed_set(&h, &pattern).unwrap();
        assert_eq!(ground_over_domain(&fs, 3).unwrap().to_dimacs(), ground_over_domain(&fs, 3).unwrap().to_dimacs());
        assert_eq!(find_model(&fs, 3).unwrap(), find_model(&fs, 3).unwrap());
    }
}
