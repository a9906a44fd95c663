//! Finite biquandles, their text format and the axiom checker.
//!
//! Colors live on semiarcs of the line. At a crossing with incoming under
//! color `u` and over color `o`, a positive crossing produces
//! `(under_out, over_out) = S(u, o) = (up[u][o], down[o][u])`; a negative one
//! applies `S^-1`. A quandle is the case `down[a][b] = a`, with
//! `up[a][b] = a ◁ b`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("structure file line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("unknown structure spec {0:?} (expected dihedral:M, trivial:M or file:PATH)")]
    Spec(String),
    #[error("reading {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("structure {name} violates {count} axiom(s), first: {first}")]
    InvalidStructure { name: String, count: usize, first: AxiomViolation },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Quandle,
    Biquandle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// A table entry outside `0..m`.
    Range,
    /// `a -> up[a][b]` and `a -> down[a][b]` must be bijections for each `b`.
    SidewaysInvertibility,
    /// `S` must be a bijection of pairs.
    Invertibility,
    /// Each kink must admit exactly one coloring, with matching end colors.
    Idempotence,
    /// Set-theoretic Yang–Baxter equation for the braid map.
    YangBaxter,
    /// Quandles leave the over color unchanged.
    QuandleOver,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Range => "range",
            Axiom::SidewaysInvertibility => "sideways_invertibility",
            Axiom::Invertibility => "invertibility",
            Axiom::Idempotence => "idempotence",
            Axiom::YangBaxter => "yang_baxter",
            Axiom::QuandleOver => "quandle_over",
        };
        f.write_str(s)
    }
}

/// First failing instance of an axiom. Unused witness slots are 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: [usize; 3],
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.witness;
        write!(f, "{} at ({a}, {b}, {c})", self.axiom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteBiquandle {
    pub name: String,
    pub m: usize,
    pub kind: StructureKind,
    /// Row-major `up[a][b]`.
    pub up: Vec<usize>,
    /// Row-major `down[a][b]`.
    pub down: Vec<usize>,
}

impl FiniteBiquandle {
    pub fn quandle(name: impl Into<String>, m: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut up = Vec::with_capacity(m * m);
        let mut down = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                up.push(op(a, b));
                down.push(a);
            }
        }
        FiniteBiquandle { name: name.into(), m, kind: StructureKind::Quandle, up, down }
    }

    pub fn biquandle(name: impl Into<String>, m: usize, up: Vec<usize>, down: Vec<usize>) -> Self {
        FiniteBiquandle { name: name.into(), m, kind: StructureKind::Biquandle, up, down }
    }

    /// `a ◁ b = a`.
    pub fn trivial(m: usize) -> Self {
        Self::quandle(format!("trivial:{m}"), m, |a, _| a)
    }

    /// `a ◁ b = 2b - a mod m`.
    pub fn dihedral(m: usize) -> Self {
        Self::quandle(format!("dihedral:{m}"), m, |a, b| (2 * b + m - a % m) % m)
    }

    /// Parses `dihedral:M`, `trivial:M` or `file:PATH`.
    pub fn from_spec(spec: &str) -> Result<Self, StructureError> {
        let bad = || StructureError::Spec(spec.to_string());
        let (head, arg) = spec.split_once(':').ok_or_else(bad)?;
        let size = || arg.parse::<usize>().ok().filter(|&m| m >= 1).ok_or_else(bad);
        match head {
            "dihedral" => Ok(Self::dihedral(size()?)),
            "trivial" => Ok(Self::trivial(size()?)),
            "file" => Self::from_file(Path::new(arg)),
            _ => Err(bad()),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, StructureError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| StructureError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        let mut s = Self::parse(&text)?;
        s.name = format!("file:{}", path.display());
        Ok(s)
    }

    /// Reads the text format: a header `m kind`, then `m` rows of `up`, then
    /// `m` rows of `down` for biquandles. Blank lines and `#` lines are skipped.
    pub fn parse(text: &str) -> Result<Self, StructureError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, msg: &str| StructureError::Format { line, msg: msg.to_string() };
        let (hline, header) = lines.next().ok_or_else(|| err(0, "missing header"))?;
        let mut words = header.split_whitespace();
        let m: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .filter(|&m| m >= 1)
            .ok_or_else(|| err(hline, "expected a positive size"))?;
        let kind = match words.next() {
            Some("quandle") => StructureKind::Quandle,
            Some("biquandle") => StructureKind::Biquandle,
            _ => return Err(err(hline, "expected kind quandle or biquandle")),
        };
        if words.next().is_some() {
            return Err(err(hline, "trailing words after kind"));
        }
        let mut read_table = |what: &str| -> Result<Vec<usize>, StructureError> {
            let mut out = Vec::with_capacity(m * m);
            for _ in 0..m {
                let (line, row) = lines.next().ok_or_else(|| err(0, &format!("missing {what} row")))?;
                let vals: Vec<usize> = row
                    .split_whitespace()
                    .map(|w| w.parse::<usize>().ok().filter(|&v| v < m))
                    .collect::<Option<_>>()
                    .ok_or_else(|| err(line, "entries must be integers in 0..m"))?;
                if vals.len() != m {
                    return Err(err(line, &format!("expected {m} entries")));
                }
                out.extend(vals);
            }
            Ok(out)
        };
        let up = read_table("up")?;
        let s = match kind {
            StructureKind::Quandle => Self::quandle("inline", m, |a, b| up[a * m + b]),
            StructureKind::Biquandle => {
                let down = read_table("down")?;
                Self::biquandle("inline", m, up, down)
            }
        };
        if let Some((line, _)) = lines.next() {
            return Err(err(line, "trailing content"));
        }
        Ok(s)
    }

    /// The text format read by [`FiniteBiquandle::parse`].
    pub fn to_text(&self) -> String {
        let kind = match self.kind {
            StructureKind::Quandle => "quandle",
            StructureKind::Biquandle => "biquandle",
        };
        let mut out = format!("{} {kind}\n", self.m);
        let mut table = |t: &[usize]| {
            for row in t.chunks(self.m) {
                let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        };
        table(&self.up);
        if self.kind == StructureKind::Biquandle {
            table(&self.down);
        }
        out
    }

    pub fn up(&self, a: usize, b: usize) -> usize {
        self.up[a * self.m + b]
    }

    pub fn down(&self, a: usize, b: usize) -> usize {
        self.down[a * self.m + b]
    }

    /// `S(u, o) = (up[u][o], down[o][u])`.
    pub fn s(&self, u: usize, o: usize) -> (usize, usize) {
        (self.up(u, o), self.down(o, u))
    }

    /// Braid form: strands `(a, b)` with `a` crossing over `b` from the left.
    fn braid(&self, a: usize, b: usize) -> (usize, usize) {
        (self.up(b, a), self.down(a, b))
    }

    /// `(under_out, over_out)` tables indexed by `u * m + o`, one per sign.
    /// `None` if `S` is not a bijection.
    pub fn crossing_tables(&self) -> Option<[Vec<(u8, u8)>; 2]> {
        let m = self.m;
        let mut pos = Vec::with_capacity(m * m);
        let mut neg = vec![None; m * m];
        for u in 0..m {
            for o in 0..m {
                let (x, y) = self.s(u, o);
                if x >= m || y >= m || neg[x * m + y].is_some() {
                    return None;
                }
                pos.push((x as u8, y as u8));
                neg[x * m + y] = Some((u as u8, o as u8));
            }
        }
        let neg = neg.into_iter().collect::<Option<Vec<_>>>()?;
        Some([pos, neg])
    }

    /// Every violated axiom with its first witness; empty iff valid.
    pub fn check_axioms(&self) -> Vec<AxiomViolation> {
        let m = self.m;
        let mut out = Vec::new();
        let mut flag = |axiom, witness| {
            if !out.iter().any(|v: &AxiomViolation| v.axiom == axiom) {
                out.push(AxiomViolation { axiom, witness });
            }
        };
        if self.up.len() != m * m || self.down.len() != m * m {
            flag(Axiom::Range, [self.up.len(), self.down.len(), 0]);
            return out;
        }
        if let Some(i) = self.up.iter().chain(&self.down).position(|&v| v >= m) {
            let i = i % (m * m);
            flag(Axiom::Range, [i / m, i % m, 0]);
            return out;
        }
        for b in 0..m {
            for table in [&self.up, &self.down] {
                let mut seen = vec![None; m];
                for a in 0..m {
                    let v = table[a * m + b];
                    if let Some(prev) = seen[v] {
                        flag(Axiom::SidewaysInvertibility, [prev, a, b]);
                    }
                    seen[v] = Some(a);
                }
            }
        }
        let tables = self.crossing_tables();
        if tables.is_none() {
            let mut seen = vec![None; m * m];
            'outer: for u in 0..m {
                for o in 0..m {
                    let (x, y) = self.s(u, o);
                    if let Some((pu, po)) = seen[x * m + y] {
                        flag(Axiom::Invertibility, [pu * m + po, u * m + o, 0]);
                        break 'outer;
                    }
                    seen[x * m + y] = Some((u, o));
                }
            }
        }
        if self.kind == StructureKind::Quandle {
            for a in 0..m {
                for b in 0..m {
                    if self.down(a, b) != a {
                        flag(Axiom::QuandleOver, [a, b, 0]);
                    }
                }
                if self.up(a, a) != a {
                    flag(Axiom::Idempotence, [a, a, self.up(a, a)]);
                }
            }
        }
        if let Some(tables) = &tables {
            if let Some(w) = kink_violation(m, tables) {
                flag(Axiom::Idempotence, w);
            }
        }
        'ybe: for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let (x1, y1) = self.braid(a, b);
                    let (y2, z2) = self.braid(y1, c);
                    let (x3, y3) = self.braid(x1, y2);
                    let lhs = (x3, y3, z2);
                    let (p1, q1) = self.braid(b, c);
                    let (x2, p2) = self.braid(a, p1);
                    let (p3, q3) = self.braid(p2, q1);
                    let rhs = (x2, p3, q3);
                    if lhs != rhs {
                        flag(Axiom::YangBaxter, [a, b, c]);
                        break 'ybe;
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check_axioms().is_empty()
    }

    pub fn validated(self) -> Result<Self, StructureError> {
        let v = self.check_axioms();
        match v.first() {
            None => Ok(self),
            Some(&first) => Err(StructureError::InvalidStructure { name: self.name, count: v.len(), first }),
        }
    }
}

/// Checks the four one-crossing diagrams. Witness: `(start color, sign index, case)`.
fn kink_violation(m: usize, tables: &[Vec<(u8, u8)>; 2]) -> Option<[usize; 3]> {
    for (si, t) in tables.iter().enumerate() {
        for a in 0..m {
            // over passage first: s0 over-in, s1 over-out = under-in, s2 under-out
            let over_first: Vec<usize> = (0..m)
                .filter(|&s1| t[s1 * m + a].1 as usize == s1)
                .map(|s1| t[s1 * m + a].0 as usize)
                .collect();
            if over_first != [a] {
                return Some([a, si, 0]);
            }
            // under passage first: s0 under-in, s1 under-out = over-in, s2 over-out
            let under_first: Vec<usize> = (0..m)
                .filter(|&s1| t[a * m + s1].0 as usize == s1)
                .map(|s1| t[a * m + s1].1 as usize)
                .collect();
            if under_first != [a] {
                return Some([a, si, 1]);
            }
        }
    }
    None
}

/// Index of the crossing table for a sign.
pub(crate) fn sign_index(sign: Sign) -> usize {
    match sign {
        Sign::Pos => 0,
        Sign::Neg => 1,
    }
}

impl fmt::Display for FiniteBiquandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
