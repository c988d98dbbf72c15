use axlab_core::corpus::{axiom, get_definition, get_system};
use axlab_core::prover::{entails, is_countermodel, EntailmentVerdict, Limits, Premise};
use proptest::prelude::*;

/// H, H' and both definitions.
fn pool() -> Vec<Premise> {
    let mut out: Vec<Premise> = get_system("huntington")
        .unwrap()
        .axioms
        .into_iter()
        .map(|a| Premise::new(&a.name, a.formula))
        .collect();
    for d in ["def.weak_from_strict", "def.strict_from_weak"] {
        out.push(Premise::new(d, get_definition(d).unwrap()));
    }
    out
}

const GOALS: [&str; 6] = ["mcphee.2", "mcphee.3", "mcphee.4", "mcphee.6", "huntington.A", "huntington.D"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Proofs survive added premises; countermodels survive removed ones.
    #[test]
    fn verdicts_are_monotone(chosen in prop::collection::vec(any::<bool>(), 7), extra in 0usize..7, goal in 0usize..6) {
        let all = pool();
        let goal = axiom(GOALS[goal]).unwrap().formula;
        let limits = Limits::default();
        let subset: Vec<Premise> = all.iter().zip(&chosen).filter(|(_, c)| **c).map(|(p, _)| p.clone()).collect();
        match entails(&subset, &goal, &limits).unwrap() {
            EntailmentVerdict::Proved(proof) => {
                prop_assert!(proof.used.iter().all(|u| subset.iter().any(|p| &p.name == u)));
                let mut more = subset.clone();
                if !more.iter().any(|p| p.name == all[extra].name) {
                    more.push(all[extra].clone());
                }
                prop_assert!(entails(&more, &goal, &limits).unwrap().is_proved());
            }
            EntailmentVerdict::Countermodel(m) => {
                prop_assert!(is_countermodel(&m, &subset, &goal).unwrap());
                let fewer: Vec<Premise> = subset.iter().filter(|p| p.name != all[extra].name).cloned().collect();
                prop_assert!(is_countermodel(&m, &fewer, &goal).unwrap());
                prop_assert!(entails(&fewer, &goal, &limits).unwrap().countermodel().is_some());
            }
            EntailmentVerdict::Unknown { .. } => prop_assert!(false, "EPR obligations are decided"),
        }
    }
}
