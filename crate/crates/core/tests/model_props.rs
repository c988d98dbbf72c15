use axlab_core::model::{canonical_form, canonicalize, for_each_permutation, format_triples, parse_triples, FiniteModel};
use proptest::prelude::*;

fn model(n: usize, bits: &[bool], constant: Option<usize>) -> FiniteModel {
    let mut m = FiniteModel::new(n);
    m.add_relation("sb", 3);
    m.add_relation("p", 1);
    for i in 0..n * n * n {
        m.set("sb", &[i / (n * n), i / n % n, i % n], bits[i]);
    }
    for e in 0..n {
        m.set("p", &[e], bits[n * n * n + e]);
    }
    if let Some(c) = constant {
        m.set_constant("c", c % n);
    }
    m
}

fn arbitrary() -> impl Strategy<Value = FiniteModel> {
    (1usize..5).prop_flat_map(|n| {
        (prop::collection::vec(any::<bool>(), n * n * n + n), prop::option::of(0usize..n)).prop_map(move |(bits, c)| model(n, &bits, c))
    })
}

proptest! {
    #[test]
    fn canonical_encoding_ignores_relabelling(m in arbitrary()) {
        let code = canonicalize(&m);
        let mut perms = Vec::new();
        for_each_permutation(m.size(), |p| perms.push(p.to_vec()));
        for p in &perms {
            prop_assert_eq!(canonicalize(&m.permuted(p)), code.clone());
        }
        prop_assert_eq!(canonicalize(&canonical_form(&m)), code);
    }

    #[test]
    fn canonical_form_is_isomorphic_and_minimal(m in arbitrary()) {
        let c = canonical_form(&m);
        prop_assert_eq!(c.encode(), canonicalize(&m));
        let mut images = Vec::new();
        for_each_permutation(m.size(), |p| images.push(m.permuted(p).encode()));
        prop_assert!(images.contains(&c.encode()));
        prop_assert_eq!(images.iter().min().unwrap(), &c.encode());
    }

    #[test]
    fn triples_round_trip(n in 1usize..5, bits in prop::collection::vec(any::<bool>(), 64)) {
        let m = model(n, &[&bits[..], &[false; 4]].concat(), None);
        let mut only_sb = FiniteModel::new(n);
        only_sb.add_relation("sb", 3);
        for t in m.tuples("sb") {
            only_sb.set("sb", &t, true);
        }
        let text = format_triples(&only_sb);
        prop_assert_eq!(parse_triples(&text, n).unwrap(), only_sb);
    }
}

#[test]
fn every_small_cube_has_a_relabelling_invariant_code() {
    for n in 1..=2usize {
        for bits in 0..1u32 << (n * n * n + n) {
            let flags: Vec<bool> = (0..n * n * n + n).map(|i| bits >> i & 1 == 1).collect();
            let m = model(n, &flags, None);
            let code = canonicalize(&m);
            for_each_permutation(n, |p| assert_eq!(canonicalize(&m.permuted(p)), code));
        }
    }
}
