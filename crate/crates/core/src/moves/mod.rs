//! Reidemeister rewrites on open Gauss diagrams.
//!
//! Sites are addressed by 0-based line positions, which canonical relabeling
//! never changes, so a move recorded against one diagram replays against any
//! relabeling of it. Detour moves do not change the Gauss diagram and have no
//! representation here.

mod table;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{canonical_endpoints, Endpoint, GaussDiagram, Role, Sign};

pub use table::{MoveTable, Pattern, R2Shape, Rule, RuleKind, TableError, BUILTIN_TABLE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("illegal move {event:?}: {reason}")]
    IllegalMove { event: MoveEvent, reason: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1_insert")]
    R1Insert,
    #[serde(rename = "R1_remove")]
    R1Remove,
    #[serde(rename = "R2_insert")]
    R2Insert,
    #[serde(rename = "R2_remove")]
    R2Remove,
    #[serde(rename = "R3")]
    R3,
}

/// One Reidemeister rewrite, addressed by line positions of its source diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MoveEvent {
    /// New kink at `gap` (0..=2n); its endpoints land at `gap` and `gap + 1`.
    #[serde(rename = "R1_insert")]
    R1Insert { gap: usize, sign: Sign, over_first: bool },
    /// Removes the kink whose endpoints sit at `pos` and `pos + 1`.
    #[serde(rename = "R1_remove")]
    R1Remove { pos: usize },
    /// Inserts the first pair of `shape` at `gaps[0]` and the second at `gaps[1]`
    /// (`gaps[0] <= gaps[1]`, both gaps of the source diagram).
    #[serde(rename = "R2_insert")]
    R2Insert { gaps: [usize; 2], shape: R2Shape },
    /// Removes the bigon whose pairs start at `pairs[0] < pairs[1]`.
    #[serde(rename = "R2_remove")]
    R2Remove { pairs: [usize; 2] },
    /// Swaps the three pairs starting at `pairs` (increasing).
    #[serde(rename = "R3")]
    R3 { pairs: [usize; 3] },
}

impl MoveEvent {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveEvent::R1Insert { .. } => MoveKind::R1Insert,
            MoveEvent::R1Remove { .. } => MoveKind::R1Remove,
            MoveEvent::R2Insert { .. } => MoveKind::R2Insert,
            MoveEvent::R2Remove { .. } => MoveKind::R2Remove,
            MoveEvent::R3 { .. } => MoveKind::R3,
        }
    }

    /// Change in crossing number.
    pub fn delta(&self) -> isize {
        match self {
            MoveEvent::R1Insert { .. } => 1,
            MoveEvent::R1Remove { .. } => -1,
            MoveEvent::R2Insert { .. } => 2,
            MoveEvent::R2Remove { .. } => -2,
            MoveEvent::R3 { .. } => 0,
        }
    }

    /// The move undoing `self`, addressed against `apply(source, self)`.
    pub fn inverse(&self, source: &GaussDiagram) -> Result<MoveEvent, MoveError> {
        let eps = source.endpoints();
        let illegal = |reason| MoveError::IllegalMove { event: *self, reason };
        Ok(match *self {
            MoveEvent::R1Insert { gap, .. } => MoveEvent::R1Remove { pos: gap },
            MoveEvent::R1Remove { pos } => {
                let e = eps.get(pos).ok_or_else(|| illegal("site out of range"))?;
                MoveEvent::R1Insert { gap: pos, sign: e.sign, over_first: e.role == Role::Over }
            }
            MoveEvent::R2Insert { gaps, .. } => MoveEvent::R2Remove { pairs: [gaps[0], gaps[1] + 2] },
            MoveEvent::R2Remove { pairs: [i, j] } => {
                if j < i + 2 || j + 1 >= eps.len() {
                    return Err(illegal("site out of range"));
                }
                let shape = r2_shape_at(eps, i, j).ok_or_else(|| illegal("not an R2 site"))?;
                MoveEvent::R2Insert { gaps: [i, j - 2], shape }
            }
            MoveEvent::R3 { pairs } => MoveEvent::R3 { pairs },
        })
    }
}

/// Applies `m` using the built-in rule table.
pub fn apply(d: &GaussDiagram, m: &MoveEvent) -> Result<GaussDiagram, MoveError> {
    apply_with(MoveTable::builtin(), d, m)
}

pub fn apply_with(table: &MoveTable, d: &GaussDiagram, m: &MoveEvent) -> Result<GaussDiagram, MoveError> {
    let eps = d.endpoints();
    let len = eps.len();
    let illegal = |reason| MoveError::IllegalMove { event: *m, reason };
    let fresh = eps.iter().map(|e| e.label).max().unwrap_or(0);
    let out = match *m {
        MoveEvent::R1Insert { gap, sign, over_first } => {
            if gap > len {
                return Err(illegal("gap out of range"));
            }
            let (r1, r2) = if over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
            let label = fresh + 1;
            splice(eps, &[(gap, [Endpoint::new(label, r1, sign), Endpoint::new(label, r2, sign)])])
        }
        MoveEvent::R1Remove { pos } => {
            if pos + 1 >= len || eps[pos].label != eps[pos + 1].label {
                return Err(illegal("no kink at this position"));
            }
            remove_positions(eps, &[pos, pos + 1])
        }
        MoveEvent::R2Insert { gaps: [g1, g2], shape } => {
            if g1 > g2 || g2 > len {
                return Err(illegal("gaps out of range"));
            }
            if !table.allows_r2(&shape.pattern()) {
                return Err(illegal("R2 shape not in rule table"));
            }
            let (a, b) = (fresh + 1, fresh + 2);
            let (r1, r2) = if shape.over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
            let [sa, sb] = shape.signs;
            let first = [Endpoint::new(a, r1, sa), Endpoint::new(b, r1, sb)];
            let second = if shape.crossed {
                [Endpoint::new(b, r2, sb), Endpoint::new(a, r2, sa)]
            } else {
                [Endpoint::new(a, r2, sa), Endpoint::new(b, r2, sb)]
            };
            splice(eps, &[(g1, first), (g2, second)])
        }
        MoveEvent::R2Remove { pairs: [i, j] } => {
            if j < i + 2 || j + 1 >= len {
                return Err(illegal("site out of range"));
            }
            match r2_shape_at(eps, i, j) {
                Some(shape) if table.allows_r2(&shape.pattern()) => {}
                Some(_) => return Err(illegal("R2 configuration not in rule table")),
                None => return Err(illegal("not an R2 site")),
            }
            remove_positions(eps, &[i, i + 1, j, j + 1])
        }
        MoveEvent::R3 { pairs } => {
            if !r3_site(eps, pairs) {
                return Err(illegal("not an R3 site"));
            }
            if !table.allows_r3(&Pattern::at(eps, &pairs)) {
                return Err(illegal("R3 configuration not in rule table"));
            }
            let mut v = eps.to_vec();
            for p in pairs {
                v.swap(p, p + 1);
            }
            v
        }
    };
    Ok(GaussDiagram::from_valid(canonical_endpoints(&out)))
}

/// Every single-move neighbour of `d` with at most `cap` crossings, paired with
/// the move producing it; sorted by result and free of duplicate results.
pub fn enumerate_moves(d: &GaussDiagram, cap: usize) -> Vec<(MoveEvent, GaussDiagram)> {
    enumerate_moves_with(MoveTable::builtin(), d, cap)
}

pub fn enumerate_moves_with(table: &MoveTable, d: &GaussDiagram, cap: usize) -> Vec<(MoveEvent, GaussDiagram)> {
    let mut out: Vec<(MoveEvent, GaussDiagram)> = candidate_moves(table, d, cap)
        .into_iter()
        .map(|m| {
            let r = apply_with(table, d, &m).expect("enumerated moves are legal");
            (m, r)
        })
        .collect();
    out.sort_unstable_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
    out.dedup_by(|later, earlier| later.1 == earlier.1);
    out
}

/// Legal moves at `d` (results within `cap`), before applying them.
pub fn candidate_moves(table: &MoveTable, d: &GaussDiagram, cap: usize) -> Vec<MoveEvent> {
    let eps = d.endpoints();
    let len = eps.len();
    let n = d.crossings();
    let partners = d.partners();
    let mut moves = Vec::new();

    if n <= cap + 1 && n >= 1 {
        for pos in 0..len - 1 {
            if partners[pos] == pos + 1 {
                moves.push(MoveEvent::R1Remove { pos });
            }
        }
    }
    if n <= cap + 2 && n >= 2 {
        for i in 0..len - 1 {
            let (p, q) = (partners[i], partners[i + 1]);
            if p == i + 1 || eps[i].role != eps[i + 1].role {
                continue;
            }
            let j = p.min(q);
            if p.abs_diff(q) != 1 || j < i + 2 {
                continue;
            }
            if let Some(shape) = r2_shape_at(eps, i, j) {
                if table.allows_r2(&shape.pattern()) {
                    moves.push(MoveEvent::R2Remove { pairs: [i, j] });
                }
            }
        }
    }
    if n >= 3 && n <= cap {
        for pairs in r3_sites(eps, &partners) {
            if table.allows_r3(&Pattern::at(eps, &pairs)) {
                moves.push(MoveEvent::R3 { pairs });
            }
        }
    }
    if n < cap {
        for gap in 0..=len {
            for sign in [Sign::Pos, Sign::Neg] {
                for over_first in [true, false] {
                    moves.push(MoveEvent::R1Insert { gap, sign, over_first });
                }
            }
        }
    }
    if n + 2 <= cap {
        for g1 in 0..=len {
            for g2 in g1..=len {
                for &shape in table.r2_shapes() {
                    moves.push(MoveEvent::R2Insert { gaps: [g1, g2], shape });
                }
            }
        }
    }
    moves
}

fn splice(eps: &[Endpoint], inserts: &[(usize, [Endpoint; 2])]) -> Vec<Endpoint> {
    let mut v = Vec::with_capacity(eps.len() + 2 * inserts.len());
    let mut from = 0;
    for &(gap, pair) in inserts {
        v.extend_from_slice(&eps[from..gap]);
        v.extend_from_slice(&pair);
        from = gap;
    }
    v.extend_from_slice(&eps[from..]);
    v
}

fn remove_positions(eps: &[Endpoint], sorted: &[usize]) -> Vec<Endpoint> {
    eps.iter()
        .enumerate()
        .filter(|(i, _)| !sorted.contains(i))
        .map(|(_, e)| *e)
        .collect()
}

/// Shape of a bigon at pairs `i` and `j` (`i + 2 <= j`), if the four endpoints form one.
fn r2_shape_at(eps: &[Endpoint], i: usize, j: usize) -> Option<R2Shape> {
    let (a, b, c, d) = (eps[i], eps[i + 1], eps[j], eps[j + 1]);
    if a.label == b.label || a.role != b.role || c.role != d.role || a.role == c.role {
        return None;
    }
    let crossed = if (c.label, d.label) == (a.label, b.label) {
        false
    } else if (c.label, d.label) == (b.label, a.label) {
        true
    } else {
        return None;
    };
    Some(R2Shape { over_first: a.role == Role::Over, crossed, signs: [a.sign, b.sign] })
}

/// Three disjoint adjacent pairs, each joining two distinct chords, each chord in two pairs.
fn r3_site(eps: &[Endpoint], pairs: [usize; 3]) -> bool {
    let [i, j, k] = pairs;
    if j < i + 2 || k < j + 2 || k + 1 >= eps.len() {
        return false;
    }
    let mut labels: Vec<u32> = pairs.iter().flat_map(|&p| [eps[p].label, eps[p + 1].label]).collect();
    if pairs.iter().any(|&p| eps[p].label == eps[p + 1].label) {
        return false;
    }
    labels.sort_unstable();
    labels.dedup();
    labels.len() == 3
}

fn r3_sites(eps: &[Endpoint], partners: &[usize]) -> BTreeSet<[usize; 3]> {
    let len = eps.len();
    let mut sites = BTreeSet::new();
    let pair_of = |p: usize| -> [Option<usize>; 2] {
        [p.checked_sub(1), if p + 1 < len { Some(p) } else { None }]
    };
    for i in 0..len.saturating_sub(1) {
        if partners[i] == i + 1 {
            continue;
        }
        let (pc, pd) = (partners[i], partners[i + 1]);
        for s2 in pair_of(pc).into_iter().flatten() {
            for s3 in pair_of(pd).into_iter().flatten() {
                let mut pairs = [i, s2, s3];
                pairs.sort_unstable();
                if pairs[0] != i || !r3_site(eps, pairs) {
                    continue;
                }
                let e1 = if s2 == pc { s2 + 1 } else { s2 };
                let e2 = if s3 == pd { s3 + 1 } else { s3 };
                if partners[e1] == e2 {
                    sites.insert(pairs);
                }
            }
        }
    }
    sites
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn r1_on_trivial() {
        let res = enumerate_moves(&d(""), 1);
        assert_eq!(res.len(), 4);
        for (m, r) in &res {
            assert_eq!(m.kind(), MoveKind::R1Insert);
            assert_eq!(r.crossings(), 1);
            assert_eq!(r.partners(), vec![1, 0]);
        }
        assert!(enumerate_moves(&d(""), 0).is_empty());
    }

    #[test]
    fn r1_insert_and_remove() {
        let m = MoveEvent::R1Insert { gap: 0, sign: Sign::Pos, over_first: true };
        assert_eq!(apply(&d(""), &m).unwrap().to_string(), "O1+ U1+");
        assert_eq!(apply(&d("O1+ U1+"), &MoveEvent::R1Remove { pos: 0 }).unwrap(), d(""));
        let res = enumerate_moves(&d("O1+ U1+"), 1);
        assert!(res.iter().any(|(m, r)| m.kind() == MoveKind::R1Remove && r.is_trivial()));
    }

    #[test]
    fn virtual_trefoil_has_no_removals() {
        let res = enumerate_moves(&d("O1+ O2+ U1+ U2+"), 4);
        assert!(!res.is_empty());
        assert!(res.iter().all(|(m, _)| !matches!(m.kind(), MoveKind::R1Remove | MoveKind::R2Remove)));
    }

    #[test]
    fn r2_parallel_and_crossed() {
        assert_eq!(apply(&d("O1+ O2- U1+ U2-"), &MoveEvent::R2Remove { pairs: [0, 2] }).unwrap(), d(""));
        assert_eq!(apply(&d("U1- U2+ O2+ O1-"), &MoveEvent::R2Remove { pairs: [0, 2] }).unwrap(), d(""));
        assert!(apply(&d("O1+ O2+ U1+ U2+"), &MoveEvent::R2Remove { pairs: [0, 2] }).is_err());
        // chords separated by other material
        let x = d("O1+ O2- O3+ U3+ U1+ U2-");
        assert_eq!(apply(&x, &MoveEvent::R2Remove { pairs: [0, 4] }).unwrap().to_string(), "O1+ U1+");
    }

    #[test]
    fn r3_swaps_pairs() {
        let x = d("O1+ O2- O3+ U1+ U2- U3+");
        let sites = r3_sites(x.endpoints(), &x.partners());
        assert!(sites.contains(&[0, 2, 4]));
        let y = apply(&x, &MoveEvent::R3 { pairs: [0, 2, 4] }).unwrap();
        assert_eq!(y.to_string(), "O1- O2+ U2+ O3+ U3+ U1-");
        assert_eq!(apply(&y, &MoveEvent::R3 { pairs: [0, 2, 4] }).unwrap(), x);
        // same chords, sign pattern outside the table
        let z = d("O1+ O2+ O3+ U1+ U2+ U3+");
        assert!(apply(&z, &MoveEvent::R3 { pairs: [0, 2, 4] }).is_err());
    }

    #[test]
    fn illegal_sites_rejected() {
        let x = d("O1+ O2+ U1+ U2+");
        assert!(apply(&x, &MoveEvent::R1Remove { pos: 0 }).is_err());
        assert!(apply(&x, &MoveEvent::R1Remove { pos: 9 }).is_err());
        assert!(apply(&x, &MoveEvent::R1Insert { gap: 5, sign: Sign::Pos, over_first: true }).is_err());
        assert!(apply(&x, &MoveEvent::R3 { pairs: [0, 1, 2] }).is_err());
    }

    #[test]
    fn crossing_count_bookkeeping() {
        let x = d("O1+ U2- O3+ U1+ O2- U3+");
        for (m, r) in enumerate_moves(&x, 5) {
            assert_eq!(r.crossings() as isize, 3 + m.delta(), "{m:?}");
        }
    }

    #[test]
    fn inverse_restores() {
        let x = d("O1+ U2- O3+ U1+ O2- U3+");
        for (m, r) in enumerate_moves(&x, 5) {
            let back = m.inverse(&x).unwrap();
            assert_eq!(apply(&r, &back).unwrap(), x.canonicalize(), "{m:?}");
        }
    }
}
