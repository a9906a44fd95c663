//! Legality tables for the oriented R2 and R3 rewrites.
//!
//! The rules live in `assets/moves.table` (format documented in the file
//! header) and are compiled into the crate, so the exact set of oriented
//! variants in use can be diffed and audited.

use std::fmt;
use std::sync::OnceLock;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{Endpoint, Role, Sign};

pub const BUILTIN_TABLE: &str = include_str!("../../assets/moves.table");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing or unsupported version line")]
    Version,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleKind {
    R2,
    R3,
}

/// A local configuration: pairs of (chord letter, role) plus one sign per letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub pairs: Vec<[(u8, Role); 2]>,
    pub signs: Vec<Sign>,
}

impl Pattern {
    /// Reads the pattern at the given pair starts, lettering chords by first appearance.
    pub fn at(endpoints: &[Endpoint], starts: &[usize]) -> Pattern {
        let mut labels: Vec<u32> = Vec::with_capacity(3);
        let mut signs = Vec::with_capacity(3);
        let mut letter = |e: &Endpoint| -> u8 {
            match labels.iter().position(|&l| l == e.label) {
                Some(i) => i as u8,
                None => {
                    labels.push(e.label);
                    signs.push(e.sign);
                    (labels.len() - 1) as u8
                }
            }
        };
        let pairs = starts
            .iter()
            .map(|&s| {
                let (x, y) = (&endpoints[s], &endpoints[s + 1]);
                [(letter(x), x.role), (letter(y), y.role)]
            })
            .collect();
        Pattern { pairs, signs }
    }

    /// Packed form used for set lookups.
    pub fn key(&self) -> u32 {
        let mut key = self.pairs.len() as u32;
        let mut shift = 2;
        for pair in &self.pairs {
            for &(letter, role) in pair {
                let bits = (letter as u32) << 1 | (role == Role::Under) as u32;
                key |= bits << shift;
                shift += 3;
            }
        }
        for &s in &self.signs {
            key |= ((s == Sign::Neg) as u32) << shift;
            shift += 1;
        }
        key
    }

    /// Every pair's tokens swapped, re-lettered by first appearance.
    pub fn swapped(&self) -> Pattern {
        let mut order: Vec<u8> = Vec::new();
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for pair in &self.pairs {
            let mut out = [pair[1], pair[0]];
            for tok in out.iter_mut() {
                let idx = match order.iter().position(|&l| l == tok.0) {
                    Some(i) => i,
                    None => {
                        order.push(tok.0);
                        order.len() - 1
                    }
                };
                tok.0 = idx as u8;
            }
            pairs.push(out);
        }
        let signs = order.iter().map(|&l| self.signs[l as usize]).collect();
        Pattern { pairs, signs }
    }

    fn letters(&self) -> usize {
        self.signs.len()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |l: u8| (b'a' + l) as char;
        for (i, pair) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}{} {}{}", pair[0].1, name(pair[0].0), pair[1].1, name(pair[1].0))?;
        }
        f.write_str(" ;")?;
        for (l, s) in self.signs.iter().enumerate() {
            write!(f, " {}{}", name(l as u8), s.symbol())?;
        }
        Ok(())
    }
}

/// Insertion data for an R2 rule: which pair comes first on the line, how the
/// second pair is ordered, and the signs of chords `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct R2Shape {
    pub over_first: bool,
    pub crossed: bool,
    pub signs: [Sign; 2],
}

impl R2Shape {
    pub fn pattern(&self) -> Pattern {
        let (r1, r2) = if self.over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
        let second = if self.crossed { [(1, r2), (0, r2)] } else { [(0, r2), (1, r2)] };
        Pattern { pairs: vec![[(0, r1), (1, r1)], second], signs: self.signs.to_vec() }
    }

    fn from_pattern(p: &Pattern) -> Option<R2Shape> {
        if p.pairs.len() != 2 || p.letters() != 2 {
            return None;
        }
        let [a, b] = p.pairs[0];
        let [c, d] = p.pairs[1];
        if a.1 != b.1 || c.1 != d.1 || a.1 == c.1 || (a.0, b.0) != (0, 1) {
            return None;
        }
        let crossed = match (c.0, d.0) {
            (0, 1) => false,
            (1, 0) => true,
            _ => return None,
        };
        Some(R2Shape { over_first: a.1 == Role::Over, crossed, signs: [p.signs[0], p.signs[1]] })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub kind: RuleKind,
    pub pattern: Pattern,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {}", self.kind, self.pattern)
    }
}

#[derive(Debug, Clone)]
pub struct MoveTable {
    version: u32,
    rules: Vec<Rule>,
    r2_shapes: Vec<R2Shape>,
    r2_keys: FxHashSet<u32>,
    r3_keys: FxHashSet<u32>,
}

impl MoveTable {
    pub fn builtin() -> &'static MoveTable {
        static TABLE: OnceLock<MoveTable> = OnceLock::new();
        TABLE.get_or_init(|| MoveTable::parse(BUILTIN_TABLE).expect("builtin move table parses"))
    }

    pub fn parse(text: &str) -> Result<MoveTable, TableError> {
        let mut version = None;
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("version ") {
                version = v.trim().parse::<u32>().ok();
                continue;
            }
            rules.push(parse_rule(line).map_err(|message| TableError::Syntax { line: i + 1, message })?);
        }
        match version {
            Some(1) => Ok(MoveTable::from_rules(1, rules)),
            _ => Err(TableError::Version),
        }
    }

    pub fn from_rules(version: u32, rules: Vec<Rule>) -> MoveTable {
        let mut table = MoveTable {
            version,
            rules: Vec::new(),
            r2_shapes: Vec::new(),
            r2_keys: FxHashSet::default(),
            r3_keys: FxHashSet::default(),
        };
        for rule in rules {
            let fresh = match rule.kind {
                RuleKind::R2 => table.r2_keys.insert(rule.pattern.key()),
                RuleKind::R3 => table.r3_keys.insert(rule.pattern.key()),
            };
            if !fresh {
                continue;
            }
            if rule.kind == RuleKind::R2 {
                table.r2_shapes.push(R2Shape::from_pattern(&rule.pattern).expect("validated at parse"));
            }
            table.rules.push(rule);
        }
        table
    }

    /// A copy of this table with one rule removed.
    pub fn without(&self, index: usize) -> MoveTable {
        let rules = self.rules.iter().enumerate().filter(|&(i, _)| i != index).map(|(_, r)| r.clone()).collect();
        MoveTable::from_rules(self.version, rules)
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn r2_shapes(&self) -> &[R2Shape] {
        &self.r2_shapes
    }

    pub fn allows_r2(&self, p: &Pattern) -> bool {
        self.r2_keys.contains(&p.key())
    }

    pub fn allows_r3(&self, p: &Pattern) -> bool {
        self.r3_keys.contains(&p.key())
    }
}

fn parse_rule(line: &str) -> Result<Rule, String> {
    let (head, rest) = line.split_once(' ').ok_or("missing rule body")?;
    let kind = match head {
        "R2" => RuleKind::R2,
        "R3" => RuleKind::R3,
        other => return Err(format!("unknown rule kind {other:?}")),
    };
    let (body, signs) = rest.split_once(';').ok_or("missing ';' before signs")?;
    let mut pairs = Vec::new();
    for chunk in body.split('|') {
        let toks: Vec<&str> = chunk.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(format!("pair {chunk:?} must hold two tokens"));
        }
        let mut pair = [(0u8, Role::Over); 2];
        for (slot, tok) in pair.iter_mut().zip(&toks) {
            let b = tok.as_bytes();
            if b.len() != 2 || !(b'a'..=b'c').contains(&b[1]) {
                return Err(format!("bad token {tok:?}"));
            }
            let role = match b[0] {
                b'O' => Role::Over,
                b'U' => Role::Under,
                _ => return Err(format!("bad role in {tok:?}")),
            };
            *slot = (b[1] - b'a', role);
        }
        pairs.push(pair);
    }
    let mut sign_list = Vec::new();
    for (i, tok) in signs.split_whitespace().enumerate() {
        let b = tok.as_bytes();
        if b.len() != 2 || b[0] != b'a' + i as u8 {
            return Err(format!("sign {tok:?} out of order"));
        }
        sign_list.push(match b[1] {
            b'+' => Sign::Pos,
            b'-' => Sign::Neg,
            _ => return Err(format!("bad sign {tok:?}")),
        });
    }
    let pattern = Pattern { pairs, signs: sign_list };
    check_shape(kind, &pattern)?;
    Ok(Rule { kind, pattern })
}

fn check_shape(kind: RuleKind, p: &Pattern) -> Result<(), String> {
    let want = match kind {
        RuleKind::R2 => 2,
        RuleKind::R3 => 3,
    };
    if p.pairs.len() != want || p.letters() != want {
        return Err(format!("{kind:?} rule needs {want} pairs and {want} signs"));
    }
    // letters in first-appearance order, each chord once per role
    let mut next = 0u8;
    let mut roles = vec![Vec::new(); want];
    let mut pairs_of = vec![Vec::new(); want];
    for (pi, pair) in p.pairs.iter().enumerate() {
        if pair[0].0 == pair[1].0 {
            return Err("a pair must join two different chords".into());
        }
        for &(l, r) in pair {
            if l as usize >= want {
                return Err("chord letter out of range".into());
            }
            if l == next {
                next += 1;
            } else if l > next {
                return Err("chord letters must appear in order".into());
            }
            roles[l as usize].push(r);
            pairs_of[l as usize].push(pi);
        }
    }
    for (rs, ps) in roles.iter().zip(&pairs_of) {
        if rs.len() != 2 || rs[0] == rs[1] || ps[0] == ps[1] {
            return Err("each chord needs one over and one under endpoint in distinct pairs".into());
        }
    }
    if kind == RuleKind::R2 && R2Shape::from_pattern(p).is_none() {
        return Err("R2 rule needs one all-over pair and one all-under pair".into());
    }
    Ok(())
}
