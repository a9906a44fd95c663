mod common;

use common::{arb_diagram, d, surface_oracle};
use lvk_core::corpus::{self, Class};
use lvk_core::fuzz::{random_realizable, rng};
use lvk_core::surface::{build_band_surface, gauss_from_surface, summarize};
use proptest::prelude::*;

fn library(d: &lvk_core::GaussDiagram) -> (i64, usize, i64) {
    let s = summarize(&build_band_surface(d)).unwrap();
    (s.chi, s.boundary_total, s.genus as i64)
}

#[test]
fn oracle_on_known_diagrams() {
    assert_eq!(surface_oracle(&d("")), (-1, 3, 0));
    assert_eq!(surface_oracle(&d("O1+ O2+ U1+ U2+")), (-3, 3, 1));
    assert_eq!(surface_oracle(&d("O1+ U2+ O3+ U1+ O2+ U3+")), (-4, 6, 0));
}

#[test]
fn corpus_agrees_with_oracle() {
    for e in corpus::entries() {
        let n = e.diagram.crossings() as i64;
        let got = library(&e.diagram);
        assert_eq!(got, surface_oracle(&e.diagram), "{}", e.name);
        assert_eq!(got.0, -n - 1, "{}", e.name);
        if e.class == Class::Classical {
            assert_eq!(got.2, 0, "{}", e.name);
        }
    }
}

#[test]
fn realizable_codes_are_planar() {
    let mut g = rng(0x5eed);
    for strands in 2..=5 {
        for len in 1..=9 {
            let r = random_realizable(&mut g, strands, len);
            assert_eq!(library(&r).2, 0, "{r}");
            assert_eq!(surface_oracle(&r).2, 0, "{r}");
        }
    }
}

proptest! {
    #[test]
    fn random_diagrams_agree_with_oracle(x in arb_diagram(8)) {
        let got = library(&x);
        prop_assert_eq!(got, surface_oracle(&x));
        prop_assert_eq!(got.0, -(x.crossings() as i64) - 1);
        prop_assert!(got.2 <= x.crossings() as i64);
    }

    #[test]
    fn natural_walk_reads_back_the_diagram(x in arb_diagram(8)) {
        let rg = build_band_surface(&x);
        prop_assert_eq!(gauss_from_surface(&rg, &rg.natural_traversal()).unwrap(), x);
    }

    #[test]
    fn mirror_keeps_the_surface(x in arb_diagram(7)) {
        prop_assert_eq!(library(&x), library(&x.mirror()));
    }
}
