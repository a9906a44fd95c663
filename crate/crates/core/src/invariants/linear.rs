//! Exact coloring counts for structures that are affine over a prime field.
//!
//! When `up(a, b) = αa + βb + γ` and `down(a, b) = δa + εb + ζ` modulo a prime
//! `p`, every crossing imposes two affine equations on the semiarc colors, so
//! the colorings with fixed end colors form an affine subspace of `GF(p)`.

use super::structure::FiniteBiquandle;
use crate::gauss::{GaussDiagram, Role, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) struct Affine {
    p: usize,
    up: [usize; 3],
    down: [usize; 3],
}

fn is_prime(m: usize) -> bool {
    m >= 2 && (2..m).take_while(|k| k * k <= m).all(|k| m % k != 0)
}

fn fit(m: usize, f: impl Fn(usize, usize) -> usize) -> Option<[usize; 3]> {
    let c = f(0, 0);
    let a = (f(1, 0) + m - c) % m;
    let b = (f(0, 1) + m - c) % m;
    let ok = (0..m).all(|x| (0..m).all(|y| f(x, y) == (a * x + b * y + c) % m));
    ok.then_some([a, b, c])
}

/// The affine form of `x`, if it has one over a prime field.
pub(super) fn detect(x: &FiniteBiquandle) -> Option<Affine> {
    if !is_prime(x.m) {
        return None;
    }
    Some(Affine { p: x.m, up: fit(x.m, |a, b| x.up(a, b))?, down: fit(x.m, |a, b| x.down(a, b))? })
}

fn inverse(a: usize, p: usize) -> usize {
    let mut result = 1;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl Affine {
    /// End-coloring counts, or `None` if some count overflows `u64`.
    pub(super) fn rows(&self, d: &GaussDiagram) -> Option<Vec<Vec<u64>>> {
        let p = self.p;
        let eps = d.endpoints();
        let last = eps.len();
        if last == 0 {
            return Some((0..p).map(|a| (0..p).map(|b| u64::from(a == b)).collect()).collect());
        }
        // columns: interior semiarcs 1..last, then x_0, x_last, then the constant
        let interior = last - 1;
        let col = |arc: usize| match arc {
            0 => interior,
            a if a == last => interior + 1,
            a => a - 1,
        };
        let width = interior + 3;
        let mut rows: Vec<Vec<usize>> = Vec::with_capacity(last);
        let partners = d.partners();
        for (i, e) in eps.iter().enumerate() {
            if e.role != Role::Over {
                continue;
            }
            let (po, pu) = (i, partners[i]);
            // (target, source_a, source_b): target = f(source_a, source_b)
            let (u_t, u_a, u_b, o_t, o_a, o_b) = match e.sign {
                Sign::Pos => (pu + 1, pu, po, po + 1, po, pu),
                Sign::Neg => (pu, pu + 1, po + 1, po, po + 1, pu + 1),
            };
            for (form, t, a, b) in [(self.up, u_t, u_a, u_b), (self.down, o_t, o_a, o_b)] {
                let mut row = vec![0; width];
                row[col(t)] = 1;
                row[col(a)] = (row[col(a)] + p - form[0]) % p;
                row[col(b)] = (row[col(b)] + p - form[1]) % p;
                row[width - 1] = form[2];
                rows.push(row);
            }
        }
        let mut rank = 0;
        for c in 0..interior {
            let Some(r) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
            rows.swap(rank, r);
            let inv = inverse(rows[rank][c], p);
            for v in rows[rank].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let f = rows[r][c];
                    for k in 0..width {
                        rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k]) % p;
                    }
                }
            }
            rank += 1;
        }
        let constraints = &rows[rank..];
        let count = (p as u64).checked_pow((interior - rank) as u32)?;
        Some(
            (0..p)
                .map(|a| {
                    (0..p)
                        .map(|b| {
                            let ok = constraints
                                .iter()
                                .all(|r| (r[interior] * a + r[interior + 1] * b) % p == r[width - 1]);
                            if ok {
                                count
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_dihedral_and_trivial_only_when_prime() {
        assert!(detect(&FiniteBiquandle::dihedral(3)).is_some());
        assert!(detect(&FiniteBiquandle::dihedral(5)).is_some());
        assert!(detect(&FiniteBiquandle::trivial(2)).is_some());
        assert!(detect(&FiniteBiquandle::dihedral(4)).is_none());
        assert!(detect(&FiniteBiquandle::trivial(1)).is_none());
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7] {
            for a in 1..p {
                assert_eq!(a * inverse(a, p) % p, 1);
            }
        }
    }
}
