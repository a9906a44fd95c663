//! Exhaustive search for small biquandles, one per isomorphism class.

use std::collections::BTreeSet;

use super::structure::{FiniteBiquandle, StructureKind};

const UNSET: u8 = u8::MAX;

/// Canonical tables: the lexicographically least `(up, down)` over all relabelings.
pub fn canonical_tables(x: &FiniteBiquandle) -> (Vec<usize>, Vec<usize>) {
    let m = x.m;
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for perm in permutations(m) {
        let mut up = vec![0; m * m];
        let mut down = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                up[perm[a] * m + perm[b]] = perm[x.up(a, b)];
                down[perm[a] * m + perm[b]] = perm[x.down(a, b)];
            }
        }
        let cand = (up, down);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("at least one permutation")
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    heap_permute(m, &mut cur, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        let j = if k % 2 == 0 { i } else { 0 };
        cur.swap(j, k - 1);
    }
}

struct Search {
    m: usize,
    up: Vec<u8>,
    down: Vec<u8>,
    /// `(table, a, b)` in assignment order; table 0 is `up`.
    cells: Vec<(usize, usize, usize)>,
    found: BTreeSet<(Vec<usize>, Vec<usize>)>,
}

impl Search {
    /// With `quandle` set, `down` is fixed to `down[a][b] = a` and only `up` is searched.
    fn new(m: usize, quandle: bool) -> Self {
        let mut cells = Vec::with_capacity(2 * m * m);
        for k in 0..m {
            for b in 0..=k {
                for a in 0..=k {
                    if a.max(b) == k {
                        cells.push((0, a, b));
                        if !quandle {
                            cells.push((1, a, b));
                        }
                    }
                }
            }
        }
        let down = if quandle { (0..m * m).map(|i| (i / m) as u8).collect() } else { vec![UNSET; m * m] };
        Search { m, up: vec![UNSET; m * m], down, cells, found: BTreeSet::new() }
    }

    fn get(&self, table: usize, a: u8, b: u8) -> u8 {
        if a == UNSET || b == UNSET {
            return UNSET;
        }
        let t = if table == 0 { &self.up } else { &self.down };
        t[a as usize * self.m + b as usize]
    }

    fn braid(&self, a: u8, b: u8) -> (u8, u8) {
        (self.get(0, b, a), self.get(1, a, b))
    }

    /// False if some fully determined Yang–Baxter component already fails.
    fn consistent(&self) -> bool {
        let m = self.m as u8;
        let clash = |x: u8, y: u8| x != UNSET && y != UNSET && x != y;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let (x1, y1) = self.braid(a, b);
                    let (y2, z2) = self.braid(y1, c);
                    let (x3, y3) = self.braid(x1, y2);
                    let (p1, q1) = self.braid(b, c);
                    let (x2, p2) = self.braid(a, p1);
                    let (p3, q3) = self.braid(p2, q1);
                    if clash(x3, x2) || clash(y3, p3) || clash(z2, q3) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize) {
        if i == self.cells.len() {
            let m = self.m;
            let up: Vec<usize> = self.up.iter().map(|&v| v as usize).collect();
            let down: Vec<usize> = self.down.iter().map(|&v| v as usize).collect();
            let x = FiniteBiquandle::biquandle("candidate", m, up, down);
            if x.is_valid() {
                self.found.insert(canonical_tables(&x));
            }
            return;
        }
        let (table, a, b) = self.cells[i];
        let m = self.m;
        for v in 0..m as u8 {
            let t = if table == 0 { &self.up } else { &self.down };
            // columns are permutations
            if (0..m).any(|r| r != a && t[r * m + b] == v) {
                continue;
            }
            let t = if table == 0 { &mut self.up } else { &mut self.down };
            t[a * m + b] = v;
            if self.consistent() {
                self.run(i + 1);
            }
            let t = if table == 0 { &mut self.up } else { &mut self.down };
            t[a * m + b] = UNSET;
        }
    }
}

/// All biquandles of size `m` up to isomorphism, in canonical-table order.
///
/// Structures whose over map is trivial are tagged as quandles. Names are
/// `bq{m}.{index}`.
pub fn enumerate_biquandles(m: usize) -> Vec<FiniteBiquandle> {
    collect(m, false, "bq")
}

/// All quandles of size `m` up to isomorphism, named `q{m}.{index}`.
pub fn enumerate_quandles(m: usize) -> Vec<FiniteBiquandle> {
    collect(m, true, "q")
}

fn collect(m: usize, quandles_only: bool, prefix: &str) -> Vec<FiniteBiquandle> {
    assert!(m >= 1, "structures need at least one color");
    let mut search = Search::new(m, quandles_only);
    search.run(0);
    search
        .found
        .into_iter()
        .enumerate()
        .map(|(i, (up, down))| {
            let name = format!("{prefix}{m}.{i}");
            let quandle = (0..m).all(|a| (0..m).all(|b| down[a * m + b] == a));
            let mut x = FiniteBiquandle::biquandle(name, m, up, down);
            if quandle {
                x.kind = StructureKind::Quandle;
            }
            x
        })
        .collect()
}
