//! The curated regression corpus shipped with the crate.
//!
//! Corpus files hold one code per line with `#` comments. An entry is a
//! `#@ name class kind` annotation followed by its code; plain comments carry
//! provenance.

use serde::Serialize;
use thiserror::Error;

use crate::gauss::{parse_gauss_code, GaussDiagram, GaussError};

pub const CLASSICAL: &str = include_str!("../corpus/classical.gauss");
pub const VIRTUAL: &str = include_str!("../corpus/virtual.gauss");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Classical,
    Virtual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Trivial,
    Prime,
    Composite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub class: Class,
    pub kind: Kind,
    pub diagram: GaussDiagram,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Code { line: usize, source: GaussError },
}

fn format_error(line: usize, msg: impl Into<String>) -> CorpusError {
    CorpusError::Format { line, msg: msg.into() }
}

/// Parses annotated corpus text. Unannotated codes are rejected.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut out = Vec::new();
    let mut pending: Option<(usize, String, Class, Kind)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if let Some(ann) = l.strip_prefix("#@") {
            if pending.is_some() {
                return Err(format_error(line, "annotation without a code"));
            }
            let fields: Vec<&str> = ann.split_whitespace().collect();
            let [name, class, kind] = fields[..] else {
                return Err(format_error(line, "expected `#@ name class kind`"));
            };
            let class = match class {
                "classical" => Class::Classical,
                "virtual" => Class::Virtual,
                other => return Err(format_error(line, format!("unknown class {other:?}"))),
            };
            let kind = match kind {
                "trivial" => Kind::Trivial,
                "prime" => Kind::Prime,
                "composite" => Kind::Composite,
                other => return Err(format_error(line, format!("unknown kind {other:?}"))),
            };
            pending = Some((line, name.to_string(), class, kind));
            continue;
        }
        if l.starts_with('#') || l.trim().is_empty() {
            continue;
        }
        let Some((_, name, class, kind)) = pending.take() else {
            return Err(format_error(line, "code without an annotation"));
        };
        let diagram = parse_gauss_code(l).map_err(|source| CorpusError::Code { line, source })?;
        out.push(CorpusEntry { name, class, kind, diagram });
    }
    if let Some((line, ..)) = pending {
        return Err(format_error(line, "annotation without a code"));
    }
    Ok(out)
}

/// Every shipped entry, classical first.
pub fn entries() -> Vec<CorpusEntry> {
    let mut out = parse_corpus(CLASSICAL).expect("shipped classical corpus parses");
    out.extend(parse_corpus(VIRTUAL).expect("shipped virtual corpus parses"));
    out
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_files_parse() {
        let all = entries();
        assert!(all.iter().any(|e| e.class == Class::Classical));
        assert!(all.iter().any(|e| e.class == Class::Virtual));
        let mut names: Vec<&str> = all.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len(), "names are unique");
        assert!(all.iter().all(|e| e.diagram.is_canonical()));
        assert_eq!(by_name("unknot").unwrap().diagram, GaussDiagram::trivial());
    }

    #[test]
    fn malformed_corpora() {
        assert!(matches!(parse_corpus("O1+ U1+"), Err(CorpusError::Format { line: 1, .. })));
        assert!(matches!(parse_corpus("#@ a virtual prime\n"), Err(CorpusError::Format { .. })));
        assert!(matches!(parse_corpus("#@ a odd prime\nO1+ U1+"), Err(CorpusError::Format { .. })));
        assert!(matches!(parse_corpus("#@ a virtual prime\nO1+ U2+"), Err(CorpusError::Code { line: 2, .. })));
        let ok = parse_corpus("# c\n#@ k classical prime\n\nO1+ U1+\n").unwrap();
        assert_eq!(ok.len(), 1);
        assert_eq!(ok[0].kind, Kind::Prime);
    }
}
