//! Open Gauss diagrams of long virtual knots.
//!
//! A long diagram is read from `-inf` to `+inf`; every classical crossing is
//! met twice, once on the over-strand and once on the under-strand, and the
//! two passages are joined by a signed chord. Virtual crossings leave no
//! trace, so two planar diagrams with the same open Gauss diagram differ by
//! detour moves only.
//!
//! Text form (exact):
//!
//! ```text
//! code  := "" | token (" " token)*
//! token := ('O' | 'U') label ('+' | '-')
//! label := nonzero decimal integer without leading zeros
//! ```
//!
//! `"0"` is accepted as an alias of the empty code.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("malformed token {token:?} at index {index}")]
    MalformedToken { index: usize, token: String },
    #[error("label {label} appears {count} time(s), expected exactly 2")]
    LabelArity { label: u32, count: usize },
    #[error("label {label} appears twice with role {role}")]
    RoleClash { label: u32, role: Role },
    #[error("label {label} carries both signs")]
    SignMismatch { label: u32 },
    #[error("unknown label {0}")]
    UnknownLabel(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "O")]
    Over,
    #[serde(rename = "U")]
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Crossing sign (writhe contribution) of a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

/// One passage of the line through a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub label: u32,
    pub role: Role,
    pub sign: Sign,
}

impl Endpoint {
    pub fn new(label: u32, role: Role, sign: Sign) -> Self {
        Endpoint { label, role, sign }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.role, self.label, self.sign.symbol())
    }
}

/// A chord: the two passages of one classical crossing (0-based positions).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub label: u32,
    pub sign: Sign,
    pub over_pos: usize,
    pub under_pos: usize,
}

impl Chord {
    pub fn span(&self) -> (usize, usize) {
        if self.over_pos < self.under_pos {
            (self.over_pos, self.under_pos)
        } else {
            (self.under_pos, self.over_pos)
        }
    }
}

/// An open Gauss diagram: `2n` endpoints along the oriented line.
///
/// Construction always validates, so every value of this type satisfies the
/// chord invariants (each label twice, once per role, one sign per label).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussDiagram {
    endpoints: Vec<Endpoint>,
}

impl GaussDiagram {
    /// The long trivial knot.
    pub fn trivial() -> Self {
        GaussDiagram::default()
    }

    pub fn new(endpoints: Vec<Endpoint>) -> Result<Self, GaussError> {
        validate(&endpoints)?;
        Ok(GaussDiagram { endpoints })
    }

    /// Skips validation; callers inside the crate guarantee the invariants.
    pub(crate) fn from_valid(endpoints: Vec<Endpoint>) -> Self {
        debug_assert!(validate(&endpoints).is_ok(), "invalid endpoints {endpoints:?}");
        GaussDiagram { endpoints }
    }

    /// Number of classical crossings.
    pub fn crossings(&self) -> usize {
        self.endpoints.len() / 2
    }

    pub fn is_trivial(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn into_endpoints(self) -> Vec<Endpoint> {
        self.endpoints
    }

    /// `partners()[p]` is the position of the other endpoint of the chord at `p`.
    pub fn partners(&self) -> Vec<usize> {
        let mut first: FxHashMap<u32, usize> = FxHashMap::default();
        let mut out = vec![0; self.endpoints.len()];
        for (pos, e) in self.endpoints.iter().enumerate() {
            if let Some(q) = first.remove(&e.label) {
                out[pos] = q;
                out[q] = pos;
            } else {
                first.insert(e.label, pos);
            }
        }
        out
    }

    /// Chords in order of first appearance along the line.
    pub fn chords(&self) -> Vec<Chord> {
        let partners = self.partners();
        self.endpoints
            .iter()
            .enumerate()
            .filter(|&(pos, _)| partners[pos] > pos)
            .map(|(pos, e)| {
                let other = partners[pos];
                let (over_pos, under_pos) = match e.role {
                    Role::Over => (pos, other),
                    Role::Under => (other, pos),
                };
                Chord { label: e.label, sign: e.sign, over_pos, under_pos }
            })
            .collect()
    }

    pub fn chord(&self, label: u32) -> Result<Chord, GaussError> {
        self.chords()
            .into_iter()
            .find(|c| c.label == label)
            .ok_or(GaussError::UnknownLabel(label))
    }

    /// Relabels chords `1..=n` in order of first appearance.
    pub fn canonicalize(&self) -> GaussDiagram {
        GaussDiagram { endpoints: canonical_endpoints(&self.endpoints) }
    }

    pub fn is_canonical(&self) -> bool {
        let mut next = 1;
        let mut seen = FxHashMap::default();
        for e in &self.endpoints {
            match seen.get(&e.label) {
                Some(_) => {}
                None => {
                    if e.label != next {
                        return false;
                    }
                    seen.insert(e.label, ());
                    next += 1;
                }
            }
        }
        true
    }

    /// Swaps over/under at every crossing, which negates every sign.
    pub fn mirror(&self) -> GaussDiagram {
        let endpoints = self
            .endpoints
            .iter()
            .map(|e| Endpoint::new(e.label, e.role.flip(), e.sign.flip()))
            .collect();
        GaussDiagram { endpoints }.canonicalize()
    }

    /// True iff exactly one endpoint of `b` lies strictly between the endpoints of `a`.
    pub fn linked(&self, a: u32, b: u32) -> Result<bool, GaussError> {
        let ca = self.chord(a)?;
        let cb = self.chord(b)?;
        if a == b {
            return Ok(false);
        }
        let (lo, hi) = ca.span();
        let inside = |p: usize| lo < p && p < hi;
        Ok(inside(cb.over_pos) != inside(cb.under_pos))
    }

    /// Canonical code string (same as `Display`).
    pub fn code(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn canonical_endpoints(endpoints: &[Endpoint]) -> Vec<Endpoint> {
    let mut map: FxHashMap<u32, u32> = FxHashMap::default();
    let mut next = 0u32;
    endpoints
        .iter()
        .map(|e| {
            let label = *map.entry(e.label).or_insert_with(|| {
                next += 1;
                next
            });
            Endpoint::new(label, e.role, e.sign)
        })
        .collect()
}

fn validate(endpoints: &[Endpoint]) -> Result<(), GaussError> {
    let mut seen: FxHashMap<u32, (usize, Role, Sign)> = FxHashMap::default();
    for e in endpoints {
        match seen.get_mut(&e.label) {
            None => {
                seen.insert(e.label, (1, e.role, e.sign));
            }
            Some(entry) => {
                entry.0 += 1;
                if entry.0 > 2 {
                    return Err(GaussError::LabelArity { label: e.label, count: entry.0 });
                }
                if entry.1 == e.role {
                    return Err(GaussError::RoleClash { label: e.label, role: e.role });
                }
                if entry.2 != e.sign {
                    return Err(GaussError::SignMismatch { label: e.label });
                }
            }
        }
    }
    let mut lonely: Vec<u32> = seen
        .iter()
        .filter(|(_, v)| v.0 != 2)
        .map(|(&label, _)| label)
        .collect();
    lonely.sort_unstable();
    match lonely.first() {
        Some(&label) => Err(GaussError::LabelArity { label, count: seen[&label].0 }),
        None => Ok(()),
    }
}

fn parse_token(index: usize, token: &str) -> Result<Endpoint, GaussError> {
    let malformed = || GaussError::MalformedToken { index, token: token.to_string() };
    let bytes = token.as_bytes();
    if bytes.len() < 3 {
        return Err(malformed());
    }
    let role = match bytes[0] {
        b'O' => Role::Over,
        b'U' => Role::Under,
        _ => return Err(malformed()),
    };
    let sign = match bytes[bytes.len() - 1] {
        b'+' => Sign::Pos,
        b'-' => Sign::Neg,
        _ => return Err(malformed()),
    };
    let digits = &token[1..token.len() - 1];
    if digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let label: u32 = digits.parse().map_err(|_| malformed())?;
    Ok(Endpoint::new(label, role, sign))
}

/// Parses a code without canonicalizing labels.
pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram, GaussError> {
    if text.is_empty() || text == "0" {
        return Ok(GaussDiagram::trivial());
    }
    let endpoints = text
        .split(' ')
        .enumerate()
        .map(|(i, tok)| parse_token(i, tok))
        .collect::<Result<Vec<_>, _>>()?;
    GaussDiagram::new(endpoints)
}

impl FromStr for GaussDiagram {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_code(s)
    }
}

/// Writes the canonical code.
impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canonical;
        let endpoints = if self.is_canonical() {
            &self.endpoints
        } else {
            canonical = canonical_endpoints(&self.endpoints);
            &canonical
        };
        for (i, e) in endpoints.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl Serialize for GaussDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reads a corpus-style text: one code per line, `#` lines are comments, blank lines skipped.
pub fn parse_lines(text: &str) -> Result<Vec<GaussDiagram>, (usize, GaussError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty())
        .map(|(i, l)| parse_gauss_code(l.trim_end_matches('\r')).map_err(|e| (i + 1, e)))
        .collect()
}
