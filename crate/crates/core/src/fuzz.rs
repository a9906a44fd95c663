//! Seeded generators for random diagrams, realizable diagrams and move walks.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gauss::{canonical_endpoints, Endpoint, GaussDiagram, Role, Sign};
use crate::moves::{apply, enumerate_moves, MoveEvent, MoveKind};

/// Seed used when `LVK_SEED` is unset or unparsable.
pub const DEFAULT_SEED: u64 = 0x4c56_4b31;

pub fn seed_from_env() -> u64 {
    std::env::var("LVK_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A uniformly shuffled diagram with exactly `n` chords and random signs.
pub fn random_diagram<R: Rng>(rng: &mut R, n: usize) -> GaussDiagram {
    let mut eps = Vec::with_capacity(2 * n);
    for label in 1..=n as u32 {
        let sign = random_sign(rng);
        eps.push(Endpoint::new(label, Role::Over, sign));
        eps.push(Endpoint::new(label, Role::Under, sign));
    }
    eps.shuffle(rng);
    GaussDiagram::new(canonical_endpoints(&eps)).expect("shuffled chords stay valid")
}

/// Braid generator `σ_i^{±1}`: strands at positions `i - 1` and `i` cross.
/// For `+` the left strand goes over and the crossing is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub i: usize,
    pub sign: Sign,
}

/// The long knot obtained by closing `word` and cutting the closing arc of
/// strand 0. Closing arcs pass to the left, so that arc borders the outer
/// face and the result is planar. `None` unless the closure is a knot.
pub fn braid_closure(strands: usize, word: &[Letter]) -> Option<GaussDiagram> {
    assert!(word.iter().all(|l| l.i >= 1 && l.i < strands), "generator out of range");
    let mut eps = Vec::with_capacity(2 * word.len());
    let mut pos = 0;
    for pass in 0..strands {
        if pass > 0 && pos == 0 {
            return None;
        }
        for (k, l) in word.iter().enumerate() {
            let left = pos == l.i - 1;
            if !left && pos != l.i {
                continue;
            }
            let over = left == (l.sign == Sign::Pos);
            let role = if over { Role::Over } else { Role::Under };
            eps.push(Endpoint::new(k as u32 + 1, role, l.sign));
            pos = if left { l.i } else { l.i - 1 };
        }
    }
    (pos == 0).then(|| GaussDiagram::new(canonical_endpoints(&eps)).expect("closure is a knot"))
}

/// A realizable diagram: the closure of a random braid word on `strands`
/// strands whose permutation is a single cycle.
///
/// A single cycle on `k` strands needs at least `k - 1` letters and has the
/// parity of `k - 1`, so `len` is raised to the least admissible length.
pub fn random_realizable<R: Rng>(rng: &mut R, strands: usize, len: usize) -> GaussDiagram {
    assert!(strands >= 1);
    if strands == 1 {
        return GaussDiagram::trivial();
    }
    let len = len.max(strands - 1);
    let len = if (len + strands - 1) % 2 == 0 { len } else { len + 1 };
    loop {
        let word: Vec<Letter> =
            (0..len).map(|_| Letter { i: rng.random_range(1..strands), sign: random_sign(rng) }).collect();
        if let Some(d) = braid_closure(strands, &word) {
            return d;
        }
    }
}

/// A random legal move at `d` within `cap`: the kind is drawn uniformly from
/// the kinds available, then the move uniformly within that kind.
pub fn random_move<R: Rng>(rng: &mut R, d: &GaussDiagram, cap: usize) -> Option<MoveEvent> {
    let moves = enumerate_moves(d, cap);
    let mut kinds: Vec<MoveKind> = moves.iter().map(|(m, _)| m.kind()).collect();
    kinds.sort();
    kinds.dedup();
    let kind = *kinds.choose(rng)?;
    let of_kind: Vec<MoveEvent> = moves.iter().map(|(m, _)| *m).filter(|m| m.kind() == kind).collect();
    of_kind.choose(rng).copied()
}

/// Applies up to `steps` random moves, never exceeding `cap` crossings.
pub fn random_walk<R: Rng>(rng: &mut R, d: &GaussDiagram, steps: usize, cap: usize) -> (GaussDiagram, Vec<MoveEvent>) {
    let mut cur = d.canonicalize();
    let mut path = Vec::with_capacity(steps);
    for _ in 0..steps {
        let Some(m) = random_move(rng, &cur, cap) else { break };
        cur = apply(&cur, &m).expect("enumerated moves apply");
        path.push(m);
    }
    (cur, path)
}
