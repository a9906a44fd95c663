//! Odd writhe and end-coloring matrices over finite biquandles.

mod coloring;
mod enumerate;
mod linear;
mod structure;

use crate::gauss::GaussDiagram;

pub use coloring::{
    coloring_matrix, commutator_witness, matrix_commutator, ColoringError, ColoringMatrix, Colorer, CommutatorWitness,
};
pub use enumerate::{canonical_tables, enumerate_biquandles, enumerate_quandles};
pub use structure::{Axiom, AxiomViolation, FiniteBiquandle, StructureError, StructureKind};

/// Signed count of odd chords, those linked with an odd number of others.
pub fn odd_writhe(d: &GaussDiagram) -> i64 {
    let chords = d.chords();
    chords
        .iter()
        .filter(|c| {
            let (lo, hi) = c.span();
            let inside = |p: usize| lo < p && p < hi;
            let linked = chords
                .iter()
                .filter(|o| inside(o.over_pos) != inside(o.under_pos))
                .count();
            linked % 2 == 1
        })
        .map(|c| c.sign.value())
        .sum()
}

/// The structures used when a caller does not pick any: dihedral quandles on 3 and 5 colors.
pub fn default_catalog() -> Vec<FiniteBiquandle> {
    vec![FiniteBiquandle::dihedral(3), FiniteBiquandle::dihedral(5)]
}

/// Every shipped structure of size at most `max_m`, deduplicated up to isomorphism.
///
/// Sizes up to 4 come from [`enumerate_biquandles`]. Size 5 adds the quandles
/// from [`enumerate_quandles`]; larger sizes add trivial quandles only.
pub fn catalog(max_m: usize) -> Vec<FiniteBiquandle> {
    let mut out: Vec<FiniteBiquandle> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut push = |x: FiniteBiquandle, out: &mut Vec<FiniteBiquandle>| {
        if seen.insert((x.m, canonical_tables(&x))) {
            out.push(x);
        }
    };
    for m in 1..=max_m.min(4) {
        for x in enumerate_biquandles(m) {
            push(x, &mut out);
        }
    }
    if max_m >= 5 {
        for x in enumerate_quandles(5) {
            push(x, &mut out);
        }
    }
    for m in 6..=max_m {
        push(FiniteBiquandle::trivial(m), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn odd_writhe_examples() {
        assert_eq!(odd_writhe(&d("")), 0);
        assert_eq!(odd_writhe(&d("O1+ O2+ U1+ U2+")), 2);
        assert_eq!(odd_writhe(&d("O1- O2- U1- U2-")), -2);
        assert_eq!(odd_writhe(&d("O1+ U2+ O3+ U1+ O2+ U3+")), 0);
        assert_eq!(odd_writhe(&d("O1+ O2- U1+ U2-")), 0);
    }
}
