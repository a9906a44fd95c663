//! Concatenation of long diagrams and diagram-level cut points.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{canonical_endpoints, Endpoint, GaussDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("gap {0} is spanned by a chord")]
    NotACutPoint(usize),
}

/// A gap `0..=2n` between consecutive endpoints that no chord spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutPoint {
    pub gap: usize,
}

/// `d1 # d2`: the endpoints of `d1` followed by those of `d2`.
pub fn concat(d1: &GaussDiagram, d2: &GaussDiagram) -> GaussDiagram {
    let shift = d1.endpoints().iter().map(|e| e.label).max().unwrap_or(0);
    let endpoints: Vec<Endpoint> = d1
        .endpoints()
        .iter()
        .copied()
        .chain(d2.endpoints().iter().map(|e| Endpoint::new(e.label + shift, e.role, e.sign)))
        .collect();
    GaussDiagram::from_valid(canonical_endpoints(&endpoints))
}

/// Left-to-right product of any number of diagrams.
pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a GaussDiagram>) -> GaussDiagram {
    parts.into_iter().fold(GaussDiagram::trivial(), |acc, d| concat(&acc, d))
}

pub fn cut_points(d: &GaussDiagram) -> Vec<CutPoint> {
    let len = d.endpoints().len();
    // depth[g] = number of chords spanning gap g
    let mut delta = vec![0i64; len + 2];
    for c in d.chords() {
        let (lo, hi) = c.span();
        delta[lo + 1] += 1;
        delta[hi + 1] -= 1;
    }
    let mut depth = 0;
    (0..=len)
        .filter(|&g| {
            depth += delta[g];
            depth == 0
        })
        .map(|gap| CutPoint { gap })
        .collect()
}

pub fn split_at(d: &GaussDiagram, cut: CutPoint) -> Result<(GaussDiagram, GaussDiagram), MonoidError> {
    if !cut_points(d).contains(&cut) {
        return Err(MonoidError::NotACutPoint(cut.gap));
    }
    let (left, right) = d.endpoints().split_at(cut.gap);
    Ok((
        GaussDiagram::from_valid(canonical_endpoints(left)),
        GaussDiagram::from_valid(canonical_endpoints(right)),
    ))
}

/// Interior cut points, i.e. those with chords on both sides.
pub fn interior_cut_points(d: &GaussDiagram) -> Vec<CutPoint> {
    let len = d.endpoints().len();
    cut_points(d).into_iter().filter(|c| c.gap > 0 && c.gap < len).collect()
}

/// Whether this representative splits as a concatenation of two non-empty diagrams.
/// Says nothing about other diagrams of the same knot.
pub fn is_diagram_decomposable(d: &GaussDiagram) -> bool {
    !interior_cut_points(d).is_empty()
}
