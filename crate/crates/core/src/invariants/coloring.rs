//! End-coloring count matrices.
//!
//! The line is cut into `2n + 1` semiarcs by its passages. A coloring assigns
//! one color to each semiarc so that every crossing obeys the crossing map of
//! its sign; entry `[a][b]` counts colorings whose first semiarc is `a` and last
//! is `b`. Counting sweeps the line left to right, merging partial colorings
//! that agree on the current color and on what every open chord still expects.

use std::hash::Hash;

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use super::linear::{self, Affine};
use super::structure::{sign_index, FiniteBiquandle, StructureError, StructureKind};
use crate::gauss::{GaussDiagram, Role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(transparent)]
    InvalidStructure(#[from] StructureError),
    #[error("coloring count exceeds 64 bits")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ColoringMatrix {
    pub m: usize,
    pub rows: Vec<Vec<u64>>,
}

impl ColoringMatrix {
    pub fn identity(m: usize) -> Self {
        let rows = (0..m).map(|a| (0..m).map(|b| u64::from(a == b)).collect()).collect();
        ColoringMatrix { m, rows }
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.rows[a][b]
    }

    pub fn checked_mul(&self, other: &ColoringMatrix) -> Option<ColoringMatrix> {
        assert_eq!(self.m, other.m, "matrix sizes differ");
        let m = self.m;
        let mut rows = vec![vec![0u64; m]; m];
        for (a, row) in rows.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let mut acc = 0u64;
                for k in 0..m {
                    acc = acc.checked_add(self.rows[a][k].checked_mul(other.rows[k][b])?)?;
                }
                *cell = acc;
            }
        }
        Some(ColoringMatrix { m, rows })
    }

    pub fn is_identity(&self) -> bool {
        *self == ColoringMatrix::identity(self.m)
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().flatten().sum()
    }
}

impl std::ops::Mul for &ColoringMatrix {
    type Output = ColoringMatrix;

    /// Panics on overflow; use [`ColoringMatrix::checked_mul`] to handle it.
    fn mul(self, rhs: &ColoringMatrix) -> ColoringMatrix {
        self.checked_mul(rhs).expect("coloring matrix product overflow")
    }
}

/// A validated structure with its crossing maps precomputed.
#[derive(Debug, Clone)]
pub struct Colorer {
    m: usize,
    quandle: bool,
    /// `(under_out, over_out)` by `[sign][u * m + o]`.
    tables: [Vec<(u8, u8)>; 2],
    affine: Option<Affine>,
}

/// Marks an open chord whose quandle over passage came first; the under
/// passage will read the stored over color instead of checking a guess.
const OVER_ONLY: u8 = 0xF;

#[derive(Clone, Copy)]
struct Step {
    role: Role,
    sign: usize,
    first: bool,
    slot: usize,
}

impl Colorer {
    pub fn new(x: &FiniteBiquandle) -> Result<Self, ColoringError> {
        let x = x.clone().validated()?;
        let tables = x.crossing_tables().expect("validated structures have invertible S");
        Ok(Colorer { m: x.m, quandle: x.kind == StructureKind::Quandle, tables, affine: linear::detect(&x) })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// `(under_out, over_out)` at a crossing.
    pub fn cross(&self, sign: usize, u: usize, o: usize) -> (usize, usize) {
        let (x, y) = self.tables[sign][u * self.m + o];
        (x as usize, y as usize)
    }

    /// Solves a linear system when the structure is affine over a prime
    /// field, and sweeps otherwise.
    pub fn matrix(&self, d: &GaussDiagram) -> Result<ColoringMatrix, ColoringError> {
        match &self.affine {
            Some(a) => {
                let rows = a.rows(d).ok_or(ColoringError::Overflow)?;
                Ok(ColoringMatrix { m: self.m, rows })
            }
            None => self.matrix_by_sweep(d),
        }
    }

    /// The left-to-right sweep, valid for every structure.
    pub fn matrix_by_sweep(&self, d: &GaussDiagram) -> Result<ColoringMatrix, ColoringError> {
        let (steps, width) = plan(d);
        let rows = if self.m < OVER_ONLY as usize && 1 + 2 * width <= 32 {
            self.sweep::<u128>(&steps, width)?
        } else {
            self.sweep::<Vec<u8>>(&steps, width)?
        };
        Ok(ColoringMatrix { m: self.m, rows })
    }

    fn sweep<K: Key>(&self, steps: &[Step], width: usize) -> Result<Vec<Vec<u64>>, ColoringError> {
        let m = self.m;
        let mut rows = vec![vec![0u64; m]; m];
        let mut states: FxHashMap<K, u64> = FxHashMap::default();
        let mut next: FxHashMap<K, u64> = FxHashMap::default();
        for (a, row) in rows.iter_mut().enumerate() {
            states.clear();
            let mut k = K::blank(1 + 2 * width);
            k.set(0, a as u8);
            states.insert(k, 1);
            for step in steps {
                next.clear();
                let (zi, oi) = (1 + 2 * step.slot, 2 + 2 * step.slot);
                for (key, &count) in &states {
                    let c = key.get(0) as usize;
                    if step.first {
                        if self.quandle && step.role == Role::Over {
                            let mut k = key.clone();
                            k.set(zi, c as u8);
                            k.set(oi, OVER_ONLY);
                            bump(&mut next, k, count)?;
                            continue;
                        }
                        for z in 0..m {
                            let (mine, theirs) = match step.role {
                                Role::Over => {
                                    let (uo, oo) = self.cross(step.sign, z, c);
                                    (oo, uo)
                                }
                                Role::Under => self.cross(step.sign, c, z),
                            };
                            let mut k = key.clone();
                            k.set(0, mine as u8);
                            k.set(zi, z as u8);
                            k.set(oi, theirs as u8);
                            bump(&mut next, k, count)?;
                        }
                    } else {
                        let (z, out) = (key.get(zi), key.get(oi));
                        let cur = if out == OVER_ONLY {
                            self.cross(step.sign, c, z as usize).0 as u8
                        } else if c == z as usize {
                            out
                        } else {
                            continue;
                        };
                        let mut k = key.clone();
                        k.set(0, cur);
                        k.set(zi, 0);
                        k.set(oi, 0);
                        bump(&mut next, k, count)?;
                    }
                }
                std::mem::swap(&mut states, &mut next);
            }
            for (key, &count) in &states {
                let cell = &mut row[key.get(0) as usize];
                *cell = cell.checked_add(count).ok_or(ColoringError::Overflow)?;
            }
        }
        Ok(rows)
    }
}

fn bump<K: Key>(map: &mut FxHashMap<K, u64>, k: K, count: u64) -> Result<(), ColoringError> {
    let e = map.entry(k).or_insert(0);
    *e = e.checked_add(count).ok_or(ColoringError::Overflow)?;
    Ok(())
}

/// Per-position work list and the number of chord slots it needs.
fn plan(d: &GaussDiagram) -> (Vec<Step>, usize) {
    let partners = d.partners();
    let mut slot_of = vec![usize::MAX; partners.len()];
    let mut free: Vec<bool> = Vec::new();
    let mut steps = Vec::with_capacity(partners.len());
    for (p, e) in d.endpoints().iter().enumerate() {
        let first = partners[p] > p;
        let slot = if first {
            let s = free.iter().position(|&f| f).unwrap_or_else(|| {
                free.push(true);
                free.len() - 1
            });
            free[s] = false;
            slot_of[partners[p]] = s;
            s
        } else {
            free[slot_of[p]] = true;
            slot_of[p]
        };
        steps.push(Step { role: e.role, sign: sign_index(e.sign), first, slot });
    }
    (steps, free.len())
}

trait Key: Clone + Eq + Hash {
    fn blank(len: usize) -> Self;
    fn get(&self, i: usize) -> u8;
    fn set(&mut self, i: usize, v: u8);
}

impl Key for u128 {
    fn blank(_: usize) -> Self {
        0
    }

    fn get(&self, i: usize) -> u8 {
        ((self >> (4 * i)) & 0xF) as u8
    }

    fn set(&mut self, i: usize, v: u8) {
        *self = (*self & !(0xF << (4 * i))) | (u128::from(v) << (4 * i));
    }
}

impl Key for Vec<u8> {
    fn blank(len: usize) -> Self {
        vec![0; len]
    }

    fn get(&self, i: usize) -> u8 {
        self[i]
    }

    fn set(&mut self, i: usize, v: u8) {
        self[i] = v;
    }
}

pub fn coloring_matrix(d: &GaussDiagram, x: &FiniteBiquandle) -> Result<ColoringMatrix, ColoringError> {
    Colorer::new(x)?.matrix(d)
}

/// A cell where `M(A)M(B)` and `M(B)M(A)` differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorWitness {
    pub a: usize,
    pub b: usize,
    pub lhs_count: u64,
    pub rhs_count: u64,
}

/// The first differing cell in row-major order, if any.
pub fn matrix_commutator(ma: &ColoringMatrix, mb: &ColoringMatrix) -> Result<Option<CommutatorWitness>, ColoringError> {
    let ab = ma.checked_mul(mb).ok_or(ColoringError::Overflow)?;
    let ba = mb.checked_mul(ma).ok_or(ColoringError::Overflow)?;
    for a in 0..ab.m {
        for b in 0..ab.m {
            if ab.rows[a][b] != ba.rows[a][b] {
                return Ok(Some(CommutatorWitness { a, b, lhs_count: ab.rows[a][b], rhs_count: ba.rows[a][b] }));
            }
        }
    }
    Ok(None)
}

pub fn commutator_witness(
    a: &GaussDiagram,
    b: &GaussDiagram,
    x: &FiniteBiquandle,
) -> Result<Option<CommutatorWitness>, ColoringError> {
    let c = Colorer::new(x)?;
    matrix_commutator(&c.matrix(a)?, &c.matrix(b)?)
}
