mod common;

use std::collections::HashMap;

use common::{arb_diagram, d};
use lvk_core::exec::Mode;
use lvk_core::fuzz::{random_diagram, random_walk, rng};
use lvk_core::invariants::{catalog, default_catalog};
use lvk_core::search::{equivalent_within_in, replay, Witness};
use lvk_core::{commute_check, equivalent_within, fingerprint, Budget, GaussDiagram, Verdict};
use proptest::prelude::*;

#[test]
fn fingerprints_do_not_collide_on_fuzz_corpus() {
    let mut g = rng(0xf1);
    let mut by_print: HashMap<u64, GaussDiagram> = HashMap::new();
    let mut distinct = std::collections::HashSet::new();
    for i in 0..30_000 {
        let x = random_diagram(&mut g, i % 11);
        distinct.insert(x.clone());
        let f = fingerprint(&x).0;
        if let Some(prev) = by_print.insert(f, x.clone()) {
            assert_eq!(prev, x, "collision at {f:016x}");
        }
    }
    assert_eq!(by_print.len(), distinct.len());
    assert!(distinct.len() > 15_000);
}

fn label(v: &Verdict) -> &'static str {
    match v {
        Verdict::Equivalent { .. } => "equivalent",
        Verdict::Distinct { .. } => "distinct",
        Verdict::Inconclusive { .. } => "inconclusive",
    }
}

/// Pairs known to be equivalent (walks) or distinct (invariants).
fn regression_pairs() -> Vec<(GaussDiagram, GaussDiagram)> {
    let mut g = rng(0xb0);
    let mut out = Vec::new();
    for n in 0..=3 {
        let base = random_diagram(&mut g, n);
        let (end, _) = random_walk(&mut g, &base, 4, n + 2);
        out.push((base, end));
    }
    out.push((d("O1+ O2+ U1+ U2+"), d("O1- O2- U1- U2-")));
    out.push((d("O1+ U2+ O3+ U1+ O2+ U3+"), d("")));
    out.push((d("O1+ U1+"), d("")));
    out.push((d("O1+ U2- U1+ O2-"), d("U1+ O2- O1+ U2-")));
    out
}

#[test]
fn verdicts_are_monotone_in_budget() {
    for (a, b) in regression_pairs() {
        let n = a.crossings().max(b.crossings());
        let small = Budget::new(n + 1, 20_000, 6).unwrap();
        let r1 = equivalent_within(&a, &b, &small);
        let r2 = equivalent_within(&a, &b, &small.doubled());
        match (&r1.verdict, &r2.verdict) {
            (Verdict::Equivalent { .. }, Verdict::Distinct { .. }) | (Verdict::Distinct { .. }, Verdict::Equivalent { .. }) => {
                panic!("{a} vs {b}: {} then {}", label(&r1.verdict), label(&r2.verdict))
            }
            _ => {}
        }
        if let Verdict::Distinct { witness } = &r1.verdict {
            assert_eq!(r2.verdict, Verdict::Distinct { witness: witness.clone() });
        }
    }
}

#[test]
fn runs_are_deterministic_across_modes() {
    for (a, b) in regression_pairs() {
        let budget = Budget::default_for(&[&a, &b]);
        let budget = Budget::new(budget.max_crossings, 50_000, budget.max_depth).unwrap();
        let s = equivalent_within_in(Mode::Sequential, &a, &b, &budget);
        let p = equivalent_within_in(Mode::Parallel, &a, &b, &budget);
        let p2 = equivalent_within_in(Mode::Parallel, &a, &b, &budget);
        assert_eq!(s.timeless_json(), p.timeless_json());
        assert_eq!(p.timeless_json(), p2.timeless_json());
    }
}

#[test]
fn classical_trefoil_commutes_with_virtual_trefoil() {
    let t = d("O1+ U2+ O3+ U1+ O2+ U3+");
    let v = d("O1+ O2+ U1+ U2+");
    let budget = Budget::new(7, 50_000, 8).unwrap();
    let r = commute_check(&t, &v, &budget, &catalog(3));
    assert_ne!(label(&r.verdict), "distinct");
}

#[test]
fn witnessed_pair_does_not_commute() {
    let r = commute_check(&d("O1+ U2- U1+ O2-"), &d("U1+ O2- O1+ U2-"), &Budget::new(4, 10, 1).unwrap(), &catalog(4));
    let Verdict::Distinct { witness: Witness::Commutator { structure, cell } } = r.verdict else {
        panic!("expected a commutator witness");
    };
    assert!(structure.starts_with("bq4."));
    assert_ne!(cell.lhs_count, cell.rhs_count);
    assert!(default_catalog().iter().all(|x| x.name != structure));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn walks_are_recovered_with_replayable_paths(x in arb_diagram(3), seed in any::<u64>()) {
        let mut g = rng(seed);
        let (y, _) = random_walk(&mut g, &x, 5, x.crossings() + 2);
        let budget = Budget::new(x.crossings().max(y.crossings()) + 2, 200_000, 16).unwrap();
        let r = equivalent_within(&x, &y, &budget);
        let Verdict::Equivalent { path } = &r.verdict else {
            return Err(TestCaseError::fail(format!("{x} -> {y}: {}", label(&r.verdict))));
        };
        prop_assert_eq!(replay(&x, path).unwrap(), y.canonicalize());
        prop_assert!(path.len() <= 10);
    }
}
