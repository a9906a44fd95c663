//! Budgeted exploration of move orbits.
//!
//! Every search runs under a [`Budget`] and reports it back. Frontiers are
//! kept sorted by fingerprint and expanded in that order, so verdicts, paths
//! and witnesses do not depend on scheduling.

use std::time::Instant;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exec::{self, Mode};
use crate::gauss::GaussDiagram;
use crate::invariants::{default_catalog, odd_writhe, Colorer, ColoringMatrix, CommutatorWitness, FiniteBiquandle};
use crate::monoid::{concat, cut_points, split_at, CutPoint};
use crate::moves::{enumerate_moves, MoveEvent};
use crate::surface::supporting_genus;

/// Frontier nodes expanded per parallel batch.
const CHUNK: usize = 256;

/// Cap on decompositions listed by [`prime_scan`]; the total is always reported.
pub const PRIME_SCAN_LIST_LIMIT: usize = 64;

/// First 64 bits of the SHA-256 of the canonical code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint(pub u64);

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl Serialize for Fingerprint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn fingerprint(d: &GaussDiagram) -> Fingerprint {
    let digest = Sha256::digest(d.canonicalize().code().as_bytes());
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    Fingerprint(u64::from_be_bytes(head))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("{0} must be at least 1")]
    Zero(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_crossings: usize,
    pub max_states: usize,
    pub max_depth: usize,
}

impl Budget {
    pub const DEFAULT_MAX_STATES: usize = 1_000_000;
    pub const DEFAULT_MAX_DEPTH: usize = 16;
    /// Crossings allowed above the largest input.
    pub const CROSSING_SLACK: usize = 2;

    pub fn new(max_crossings: usize, max_states: usize, max_depth: usize) -> Result<Self, BudgetError> {
        let b = Budget { max_crossings, max_states, max_depth };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), BudgetError> {
        if self.max_crossings == 0 {
            return Err(BudgetError::Zero("max_crossings"));
        }
        if self.max_states == 0 {
            return Err(BudgetError::Zero("max_states"));
        }
        if self.max_depth == 0 {
            return Err(BudgetError::Zero("max_depth"));
        }
        Ok(())
    }

    /// Default budget for searches starting from `inputs`.
    pub fn default_for(inputs: &[&GaussDiagram]) -> Self {
        let n = inputs.iter().map(|d| d.crossings()).max().unwrap_or(0);
        Budget {
            max_crossings: n + Self::CROSSING_SLACK,
            max_states: Self::DEFAULT_MAX_STATES,
            max_depth: Self::DEFAULT_MAX_DEPTH,
        }
    }

    pub fn doubled(&self) -> Self {
        Budget {
            max_crossings: 2 * self.max_crossings,
            max_states: 2 * self.max_states,
            max_depth: 2 * self.max_depth,
        }
    }
}

/// A move-invariant quantity that tells two diagrams apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Witness {
    OddWrithe { left: i64, right: i64 },
    ColoringMatrix { structure: String, left: ColoringMatrix, right: ColoringMatrix },
    /// `M(A)M(B)` and `M(B)M(A)` differ at `(a, b)`.
    Commutator {
        structure: String,
        #[serde(flatten)]
        cell: CommutatorWitness,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Some side has no unexplored diagrams left within the crossing cap.
    Exhausted,
    MaxStates,
    MaxDepth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrontierStats {
    pub stopped_by: StopReason,
    pub forward_depth: usize,
    pub backward_depth: usize,
    pub forward_frontier: usize,
    pub backward_frontier: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Equivalent { path: Vec<MoveEvent> },
    Distinct { witness: Witness },
    Inconclusive { frontier: FrontierStats },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub budget: Budget,
    pub states_visited: usize,
    /// Elapsed time; the only field that varies between identical runs.
    pub wall_ms: u64,
}

impl SearchReport {
    /// JSON with `wall_ms` zeroed, for run-to-run comparison.
    pub fn timeless_json(&self) -> String {
        let mut r = self.clone();
        r.wall_ms = 0;
        serde_json::to_string(&r).expect("reports serialize")
    }
}

/// Odd writhe, then coloring matrices over `catalog` in order.
pub fn distinguish(d1: &GaussDiagram, d2: &GaussDiagram, catalog: &[FiniteBiquandle]) -> Option<Witness> {
    let (w1, w2) = (odd_writhe(d1), odd_writhe(d2));
    if w1 != w2 {
        return Some(Witness::OddWrithe { left: w1, right: w2 });
    }
    for x in catalog {
        let c = Colorer::new(x).ok()?;
        let (m1, m2) = (c.matrix(d1).ok()?, c.matrix(d2).ok()?);
        if m1 != m2 {
            return Some(Witness::ColoringMatrix { structure: x.name.clone(), left: m1, right: m2 });
        }
    }
    None
}

struct Node {
    diagram: GaussDiagram,
    /// Parent index and the move taking the parent here.
    parent: Option<(u32, MoveEvent)>,
}

struct Arena {
    nodes: Vec<Node>,
    index: FxHashMap<GaussDiagram, u32>,
    frontier: Vec<u32>,
    depth: usize,
}

impl Arena {
    fn new(root: GaussDiagram) -> Self {
        let mut index = FxHashMap::default();
        index.insert(root.clone(), 0);
        Arena { nodes: vec![Node { diagram: root, parent: None }], index, frontier: vec![0], depth: 0 }
    }

    fn insert(&mut self, diagram: GaussDiagram, parent: u32, m: MoveEvent) -> u32 {
        let i = self.nodes.len() as u32;
        self.index.insert(diagram.clone(), i);
        self.nodes.push(Node { diagram, parent: Some((parent, m)) });
        i
    }

    /// Moves from the root to node `i`.
    fn path_from_root(&self, mut i: u32) -> Vec<MoveEvent> {
        let mut out = Vec::new();
        while let Some((p, m)) = self.nodes[i as usize].parent {
            out.push(m);
            i = p;
        }
        out.reverse();
        out
    }

    /// Moves from node `i` back to the root.
    fn path_to_root(&self, mut i: u32) -> Vec<MoveEvent> {
        let mut out = Vec::new();
        while let Some((p, m)) = self.nodes[i as usize].parent {
            let parent = &self.nodes[p as usize].diagram;
            out.push(m.inverse(parent).expect("recorded moves invert"));
            i = p;
        }
        out
    }

    fn sort_frontier(&mut self, mut next: Vec<u32>) {
        let mut keyed: Vec<(Fingerprint, u32)> =
            next.drain(..).map(|i| (fingerprint(&self.nodes[i as usize].diagram), i)).collect();
        keyed.sort();
        self.frontier = keyed.into_iter().map(|(_, i)| i).collect();
    }
}

/// What one layer expansion produced.
enum Layer {
    Done,
    Met { parent: u32, m: MoveEvent, other: u32 },
    Full,
}

/// Expands every frontier node of `side` by one move. Children already in
/// `other` end the search; new children join `side` while room remains.
fn expand(mode: Mode, side: &mut Arena, other: Option<&Arena>, b: &Budget, used: &mut usize) -> Layer {
    let frontier = std::mem::take(&mut side.frontier);
    let mut next = Vec::new();
    for chunk in frontier.chunks(CHUNK) {
        let diagrams: Vec<&GaussDiagram> = chunk.iter().map(|&i| &side.nodes[i as usize].diagram).collect();
        let children = exec::map(mode, &diagrams, |d| enumerate_moves(d, b.max_crossings));
        for (&parent, kids) in chunk.iter().zip(children) {
            for (m, child) in kids {
                if side.index.contains_key(&child) {
                    continue;
                }
                if let Some(&o) = other.and_then(|a| a.index.get(&child)) {
                    return Layer::Met { parent, m, other: o };
                }
                if *used >= b.max_states {
                    side.sort_frontier(next);
                    return Layer::Full;
                }
                next.push(side.insert(child, parent, m));
                *used += 1;
            }
        }
    }
    side.sort_frontier(next);
    side.depth += 1;
    Layer::Done
}

pub fn equivalent_within(d1: &GaussDiagram, d2: &GaussDiagram, b: &Budget) -> SearchReport {
    equivalent_within_in(Mode::default(), d1, d2, b)
}

/// Invariants first, then bidirectional breadth-first search.
///
/// Distinct verdicts do not depend on the budget, so checking invariants
/// first returns the same verdict as searching first, without the search.
pub fn equivalent_within_in(mode: Mode, d1: &GaussDiagram, d2: &GaussDiagram, b: &Budget) -> SearchReport {
    equivalent_within_with_in(mode, d1, d2, b, &default_catalog())
}

/// As [`equivalent_within`], checking coloring matrices over `catalog`.
pub fn equivalent_within_with(
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    b: &Budget,
    catalog: &[FiniteBiquandle],
) -> SearchReport {
    equivalent_within_with_in(Mode::default(), d1, d2, b, catalog)
}

pub fn equivalent_within_with_in(
    mode: Mode,
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    b: &Budget,
    catalog: &[FiniteBiquandle],
) -> SearchReport {
    let start = Instant::now();
    let (verdict, states_visited) = equivalence_verdict(mode, d1, d2, b, catalog);
    SearchReport { verdict, budget: *b, states_visited, wall_ms: start.elapsed().as_millis() as u64 }
}

fn equivalence_verdict(
    mode: Mode,
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    b: &Budget,
    catalog: &[FiniteBiquandle],
) -> (Verdict, usize) {
    let (d1, d2) = (d1.canonicalize(), d2.canonicalize());
    if d1 == d2 {
        return (Verdict::Equivalent { path: vec![] }, 1);
    }
    if let Some(witness) = distinguish(&d1, &d2, catalog) {
        return (Verdict::Distinct { witness }, 0);
    }
    let mut fwd = Arena::new(d1);
    let mut bwd = Arena::new(d2);
    let mut used = 2;
    let stopped_by = loop {
        if fwd.depth + bwd.depth >= b.max_depth {
            break StopReason::MaxDepth;
        }
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            break StopReason::Exhausted;
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let layer = if forward {
            expand(mode, &mut fwd, Some(&bwd), b, &mut used)
        } else {
            expand(mode, &mut bwd, Some(&fwd), b, &mut used)
        };
        match layer {
            Layer::Done => {}
            Layer::Full => break StopReason::MaxStates,
            Layer::Met { parent, m, other } => {
                let path = if forward {
                    let mut p = fwd.path_from_root(parent);
                    p.push(m);
                    p.extend(bwd.path_to_root(other));
                    p
                } else {
                    let mut p = fwd.path_from_root(other);
                    p.push(m.inverse(&bwd.nodes[parent as usize].diagram).expect("recorded moves invert"));
                    p.extend(bwd.path_to_root(parent));
                    p
                };
                return (Verdict::Equivalent { path }, used);
            }
        }
    };
    let frontier = FrontierStats {
        stopped_by,
        forward_depth: fwd.depth,
        backward_depth: bwd.depth,
        forward_frontier: fwd.frontier.len(),
        backward_frontier: bwd.frontier.len(),
    };
    (Verdict::Inconclusive { frontier }, used)
}

/// Outcome of a one-sided orbit exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExploreStats {
    pub states_visited: usize,
    pub depth: usize,
    /// `None` when the visitor asked to stop.
    pub stopped_by: Option<StopReason>,
}

/// Breadth-first walk of the orbit of `d` within `b`, calling `visit` on each
/// diagram in discovery order. `visit` returns `true` to stop.
pub fn explore(
    mode: Mode,
    d: &GaussDiagram,
    b: &Budget,
    mut visit: impl FnMut(&GaussDiagram) -> bool,
) -> ExploreStats {
    let mut arena = Arena::new(d.canonicalize());
    let mut used = 1;
    let mut seen = 0;
    let stopped_by = loop {
        while seen < arena.nodes.len() {
            if visit(&arena.nodes[seen].diagram) {
                return ExploreStats { states_visited: used, depth: arena.depth, stopped_by: None };
            }
            seen += 1;
        }
        if arena.depth >= b.max_depth {
            break StopReason::MaxDepth;
        }
        if arena.frontier.is_empty() {
            break StopReason::Exhausted;
        }
        if let Layer::Full = expand(mode, &mut arena, None, b, &mut used) {
            break StopReason::MaxStates;
        }
    };
    for node in &arena.nodes[seen..] {
        if visit(&node.diagram) {
            return ExploreStats { states_visited: used, depth: arena.depth, stopped_by: None };
        }
    }
    ExploreStats { states_visited: used, depth: arena.depth, stopped_by: Some(stopped_by) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    /// Least supporting genus seen; an upper bound for the class.
    pub genus: usize,
    pub certificate: GaussDiagram,
    pub budget: Budget,
    pub states_visited: usize,
    pub stopped_by: Option<StopReason>,
    pub wall_ms: u64,
}

pub fn min_genus_in_orbit(d: &GaussDiagram, b: &Budget) -> GenusReport {
    min_genus_in_orbit_in(Mode::default(), d, b)
}

pub fn min_genus_in_orbit_in(mode: Mode, d: &GaussDiagram, b: &Budget) -> GenusReport {
    let start = Instant::now();
    let mut best: Option<(usize, GaussDiagram)> = None;
    let stats = explore(mode, d, b, |x| {
        let g = supporting_genus(x).expect("band surfaces have integral genus");
        if best.as_ref().is_none_or(|(bg, _)| g < *bg) {
            best = Some((g, x.clone()));
        }
        g == 0
    });
    let (genus, certificate) = best.expect("the input itself is visited");
    GenusReport {
        genus,
        certificate,
        budget: *b,
        states_visited: stats.states_visited,
        stopped_by: stats.stopped_by,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn commute_check(a: &GaussDiagram, b: &GaussDiagram, budget: &Budget, catalog: &[FiniteBiquandle]) -> SearchReport {
    commute_check_in(Mode::default(), a, b, budget, catalog)
}

/// The first catalog structure with a commutator witness, else a search
/// for a path from `A#B` to `B#A`.
pub fn commute_check_in(
    mode: Mode,
    a: &GaussDiagram,
    b: &GaussDiagram,
    budget: &Budget,
    catalog: &[FiniteBiquandle],
) -> SearchReport {
    let start = Instant::now();
    if let Some((i, cell)) = exec::find_first(mode, catalog, |x| {
        crate::invariants::commutator_witness(a, b, x).ok().flatten()
    }) {
        let witness = Witness::Commutator { structure: catalog[i].name.clone(), cell };
        return SearchReport {
            verdict: Verdict::Distinct { witness },
            budget: *budget,
            states_visited: 0,
            wall_ms: start.elapsed().as_millis() as u64,
        };
    }
    let mut r = equivalent_within_with_in(mode, &concat(a, b), &concat(b, a), budget, catalog);
    r.wall_ms = start.elapsed().as_millis() as u64;
    r
}

/// Why a part of a split counts as non-trivial.
fn nontrivial(d: &GaussDiagram, catalog: &[Colorer]) -> bool {
    odd_writhe(d) != 0 || catalog.iter().any(|c| c.matrix(d).map(|m| !m.is_identity()).unwrap_or(false))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub representative: GaussDiagram,
    pub cut: CutPoint,
    pub left: GaussDiagram,
    pub right: GaussDiagram,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeScanReport {
    pub input: GaussDiagram,
    /// At most [`PRIME_SCAN_LIST_LIMIT`] certified decompositions, in discovery order.
    pub decompositions: Vec<Decomposition>,
    /// Certified decompositions found, listed or not.
    pub decompositions_found: usize,
    /// Interior cuts skipped because a part was not certified non-trivial.
    pub uncertified_cuts: usize,
    pub budget: Budget,
    pub states_visited: usize,
    pub stopped_by: Option<StopReason>,
    pub wall_ms: u64,
}

pub fn prime_scan(d: &GaussDiagram, b: &Budget) -> PrimeScanReport {
    prime_scan_in(Mode::default(), d, b)
}

/// Visits the orbit of `d` and records cuts whose two parts are both
/// certified non-trivial by odd writhe or a non-identity coloring matrix over
/// the default catalog. An empty list means none was found within budget.
pub fn prime_scan_in(mode: Mode, d: &GaussDiagram, b: &Budget) -> PrimeScanReport {
    let start = Instant::now();
    let colorers: Vec<Colorer> = default_catalog().iter().map(|x| Colorer::new(x).expect("shipped")).collect();
    let mut decompositions = Vec::new();
    let mut found = 0;
    let mut uncertified = 0;
    let stats = explore(mode, d, b, |x| {
        let len = x.endpoints().len();
        for cut in cut_points(x).into_iter().filter(|c| c.gap > 0 && c.gap < len) {
            let (left, right) = split_at(x, cut).expect("cut points split");
            if nontrivial(&left, &colorers) && nontrivial(&right, &colorers) {
                found += 1;
                if decompositions.len() < PRIME_SCAN_LIST_LIMIT {
                    decompositions.push(Decomposition { representative: x.clone(), cut, left, right });
                }
            } else {
                uncertified += 1;
            }
        }
        false
    });
    PrimeScanReport {
        input: d.canonicalize(),
        decompositions,
        decompositions_found: found,
        uncertified_cuts: uncertified,
        budget: *b,
        states_visited: stats.states_visited,
        stopped_by: stats.stopped_by,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

/// Applies `path` to `d`, returning the final diagram.
pub fn replay(d: &GaussDiagram, path: &[MoveEvent]) -> Result<GaussDiagram, crate::moves::MoveError> {
    path.iter().try_fold(d.canonicalize(), |cur, m| crate::moves::apply(&cur, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    fn small(n: usize) -> Budget {
        Budget::new(n, 20_000, 6).unwrap()
    }

    #[test]
    fn fingerprints() {
        assert_eq!(fingerprint(&d("O7- U7-")), fingerprint(&d("O1- U1-")));
        assert_ne!(fingerprint(&d("")), fingerprint(&d("O1+ U1+")));
        assert_eq!(fingerprint(&d("")).to_string().len(), 16);
    }

    #[test]
    fn budgets_validate() {
        assert_eq!(Budget::new(0, 1, 1), Err(BudgetError::Zero("max_crossings")));
        assert_eq!(Budget::new(1, 0, 1), Err(BudgetError::Zero("max_states")));
        assert_eq!(Budget::new(1, 1, 0), Err(BudgetError::Zero("max_depth")));
        let b = Budget::default_for(&[&d("O1+ U1+"), &d("")]);
        assert_eq!((b.max_crossings, b.max_states, b.max_depth), (3, 1_000_000, 16));
    }

    #[test]
    fn equivalence_examples() {
        let x = d("O1+ O2+ U1+ U2+");
        assert_eq!(equivalent_within(&x, &x, &small(4)).verdict, Verdict::Equivalent { path: vec![] });
        let r = equivalent_within(&d("O1+ U1+"), &d(""), &small(3));
        assert_eq!(r.verdict, Verdict::Equivalent { path: vec![MoveEvent::R1Remove { pos: 0 }] });
        let r = equivalent_within(&x, &d(""), &small(4));
        assert_eq!(r.verdict, Verdict::Distinct { witness: Witness::OddWrithe { left: 2, right: 0 } });
    }

    #[test]
    fn paths_replay() {
        let a = d("O1+ U2- O3+ U1+ O2- U3+");
        let b = d("O1- U1- O2+ U3- O4+ U2+ O3- U4+");
        let r = equivalent_within(&a, &b, &Budget::new(6, 50_000, 8).unwrap());
        let Verdict::Equivalent { path } = r.verdict else { panic!("{r:?}") };
        assert_eq!(replay(&a, &path).unwrap(), b.canonicalize());
    }

    #[test]
    fn report_json_shape() {
        let r = equivalent_within(&d("O1+ U1+"), &d(""), &small(3));
        let v: serde_json::Value = serde_json::from_str(&r.timeless_json()).unwrap();
        assert_eq!(v["verdict"], "equivalent");
        assert_eq!(v["path"][0]["kind"], "R1_remove");
        assert_eq!(v["budget"]["max_depth"], 6);
        assert_eq!(v["wall_ms"], 0);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(min_genus_in_orbit(&d(""), &small(2)).genus, 0);
        let t = d("O1+ U2+ O3+ U1+ O2+ U3+");
        let r = min_genus_in_orbit(&t, &small(5));
        assert_eq!((r.genus, r.certificate.clone(), r.states_visited), (0, t, 1));
        let r = min_genus_in_orbit(&d("O1+ O2+ U1+ U2+"), &Budget::new(3, 5_000, 3).unwrap());
        assert_eq!(r.genus, 1);
    }

    #[test]
    fn prime_scan_examples() {
        let vt = d("O1+ O2+ U1+ U2+");
        let r = prime_scan(&concat(&vt, &vt), &Budget::new(4, 1, 1).unwrap());
        assert_eq!(r.decompositions.len(), 1);
        assert_eq!(r.decompositions[0].cut, CutPoint { gap: 4 });
        assert!(prime_scan(&d(""), &small(2)).decompositions.is_empty());
        let r = prime_scan(&vt, &Budget::new(3, 5_000, 3).unwrap());
        assert!(r.decompositions.is_empty());
        assert!(r.uncertified_cuts > 0);
    }

    #[test]
    fn commute_examples() {
        let vt = d("O1+ O2+ U1+ U2+");
        let r = commute_check(&vt, &vt, &small(4), &default_catalog());
        assert_eq!(r.verdict, Verdict::Equivalent { path: vec![] });
    }

    #[test]
    fn modes_agree() {
        let a = d("O1+ U2- O3+ U1+ O2- U3+");
        let b = d("O1- U1- O2+ U3- O4+ U2+ O3- U4+");
        let budget = Budget::new(6, 20_000, 8).unwrap();
        let s = equivalent_within_in(Mode::Sequential, &a, &b, &budget);
        let p = equivalent_within_in(Mode::Parallel, &a, &b, &budget);
        assert_eq!(s.timeless_json(), p.timeless_json());
    }
}
