mod common;

use common::{arb_diagram, brute_coloring, chord_positions, d};
use lvk_core::monoid::{concat_all, interior_cut_points};
use lvk_core::{concat, coloring_matrix, cut_points, odd_writhe, split_at, FiniteBiquandle, GaussDiagram};
use lvk_core::gauss::{Endpoint, GaussError};
use proptest::prelude::*;

/// Same diagram with labels scattered over a large range.
fn relabeled(x: &GaussDiagram, salt: u32) -> GaussDiagram {
    let eps = x
        .endpoints()
        .iter()
        .map(|e| Endpoint::new(e.label.wrapping_mul(7919).wrapping_add(salt) % 1_000_000 + 1, e.role, e.sign))
        .collect();
    GaussDiagram::new(eps).unwrap()
}

#[test]
fn rejects_malformed_codes() {
    for bad in [
        " ", "O1+  U1+", "O1+ U1+ ", " O1+ U1+", "O1 + U1 +", "o1+ u1+", "O01+ U01+", "O0+ U0+", "O1+", "O1+ O1+",
        "O1+ U1-", "O1+ U1+ O1+", "X1+ U1+", "O1* U1*", "O1+\tU1+", "O-1+ U-1+", "O4294967296+ U4294967296+",
    ] {
        assert!(bad.parse::<GaussDiagram>().is_err(), "{bad:?}");
    }
    assert!(matches!("O1+ U1-".parse::<GaussDiagram>(), Err(GaussError::SignMismatch { label: 1 })));
    assert_eq!(d("O7- U7-").to_string(), "O1- U1-");
    assert_eq!(d("0"), d(""));
}

#[test]
fn corpus_round_trips() {
    for e in lvk_core::corpus::entries() {
        let text = e.diagram.to_string();
        assert_eq!(d(&text), e.diagram, "{}", e.name);
        assert_eq!(d(&text).to_string(), text);
    }
}

#[test]
fn concat_examples() {
    let t = d("O1+ U2+ O3+ U1+ O2+ U3+");
    let v = d("O1+ O2+ U1+ U2+");
    assert_eq!(concat(&v, &t).to_string(), "O1+ O2+ U1+ U2+ O3+ U4+ O5+ U3+ O4+ U5+");
    assert_eq!(concat_all([&v, &v, &v]).crossings(), 6);
    let cuts: Vec<usize> = cut_points(&concat(&v, &t)).iter().map(|c| c.gap).collect();
    assert_eq!(cuts, vec![0, 4, 10]);
}

proptest! {
    #[test]
    fn parse_serialize_is_canonicalize(x in arb_diagram(10), salt in 0u32..1000) {
        let y = relabeled(&x, salt);
        let text = y.to_string();
        prop_assert_eq!(d(&text), y.canonicalize());
        prop_assert!(d(&text).is_canonical());
    }

    #[test]
    fn arbitrary_text_never_panics(s in "[OU0-9+\\- ]{0,24}") {
        if let Ok(x) = s.parse::<GaussDiagram>() {
            prop_assert_eq!(d(&x.to_string()), x.canonicalize());
        }
    }

    #[test]
    fn identity_and_associativity(a in arb_diagram(4), b in arb_diagram(4), c in arb_diagram(4)) {
        let e = GaussDiagram::trivial();
        prop_assert_eq!(concat(&e, &a), a.clone());
        prop_assert_eq!(concat(&a, &e), a.clone());
        prop_assert_eq!(concat(&concat(&a, &b), &c), concat(&a, &concat(&b, &c)));
    }

    #[test]
    fn cut_points_match_oracle(x in arb_diagram(8)) {
        let chords = chord_positions(&x);
        let expected: Vec<usize> = (0..=x.endpoints().len())
            .filter(|&g| chords.iter().all(|&(p, q, _)| !(p.min(q) < g && g <= p.max(q))))
            .collect();
        let got: Vec<usize> = cut_points(&x).iter().map(|c| c.gap).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn split_then_concat_restores(a in arb_diagram(4), b in arb_diagram(4)) {
        let ab = concat(&a, &b);
        for cut in cut_points(&ab) {
            let (l, r) = split_at(&ab, cut).unwrap();
            prop_assert_eq!(concat(&l, &r), ab.clone());
        }
        let seam = lvk_core::CutPoint { gap: a.endpoints().len() };
        prop_assert_eq!(split_at(&ab, seam).unwrap(), (a.clone(), b.clone()));
        prop_assert_eq!(
            interior_cut_points(&ab).is_empty(),
            !(a.crossings() > 0 && b.crossings() > 0) && interior_cut_points(&a).is_empty() && interior_cut_points(&b).is_empty()
        );
    }

    #[test]
    fn invariants_are_multiplicative(a in arb_diagram(3), b in arb_diagram(3)) {
        let ab = concat(&a, &b);
        prop_assert_eq!(odd_writhe(&ab), odd_writhe(&a) + odd_writhe(&b));
        for x in [FiniteBiquandle::dihedral(3), FiniteBiquandle::dihedral(5)] {
            let ma = coloring_matrix(&a, &x).unwrap();
            let mb = coloring_matrix(&b, &x).unwrap();
            prop_assert_eq!(coloring_matrix(&ab, &x).unwrap(), ma.checked_mul(&mb).unwrap());
        }
        let x = FiniteBiquandle::dihedral(3);
        prop_assert_eq!(coloring_matrix(&ab, &x).unwrap().rows, brute_coloring(&ab, &x));
    }
}
