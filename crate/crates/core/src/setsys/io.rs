//! Text and JSON encodings of set systems.
//!
//! Text: one member per line, labels separated by commas, `#` starts a
//! comment, blank lines are ignored.
//!
//! ```text
//! # four triples on six taxa
//! a,b,c
//! a,b,d
//! ```
//!
//! JSON: `{"sets": [["a","b","c"], ...]}`, with an optional `"taxa"` array
//! listing the full universe when it contains taxa that appear in no member.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::taxa::validate_label;

use super::SetSystem;

#[derive(Serialize, Deserialize)]
struct SetSystemJson {
    sets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    taxa: Option<Vec<String>>,
}

/// Parses the line-oriented text format.
pub fn parse_text(text: &str) -> Result<SetSystem> {
    let mut sets = Vec::new();
    let mut origin = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut labels = Vec::new();
        let mut column = 1;
        for field in line.split(',') {
            let label = field.trim();
            let offset = field.len() - field.trim_start().len();
            validate_label(label).map_err(|e| {
                let msg = match e {
                    Error::Input(m) => m,
                    other => other.to_string(),
                };
                Error::parse(lineno + 1, column + offset, msg)
            })?;
            labels.push(label.to_string());
            column += field.chars().count() + 1;
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parse(lineno + 1, 1, "member repeats a label"));
        }
        if let Some(prev) = origin
            .iter()
            .position(|(_, s): &(usize, Vec<String>)| *s == sorted)
        {
            return Err(Error::parse(
                lineno + 1,
                1,
                format!("duplicate member (first seen on line {})", origin[prev].0),
            ));
        }
        origin.push((lineno + 1, sorted));
        sets.push(labels);
    }
    if sets.is_empty() {
        return Err(Error::input("the set system has no members"));
    }
    SetSystem::from_labels::<String>(&sets, &[])
}

/// Parses the JSON encoding.
pub fn parse_json(text: &str) -> Result<SetSystem> {
    let doc: SetSystemJson = serde_json::from_str(text).map_err(|e| {
        Error::parse(e.line(), e.column(), format!("invalid set-system JSON: {e}"))
    })?;
    if doc.sets.is_empty() {
        return Err(Error::input("the set system has no members"));
    }
    let extra = doc.taxa.unwrap_or_default();
    SetSystem::from_labels(&doc.sets, &extra)
}

/// Writes the text format: members in canonical order, labels sorted.
pub fn to_text(system: &SetSystem) -> String {
    let mut out = String::new();
    for i in 0..system.len() {
        out.push_str(&system.render_member(i));
        out.push('\n');
    }
    out
}

/// Writes the JSON format; `taxa` is emitted only when the universe is larger
/// than the leaf set.
pub fn to_json(system: &SetSystem) -> String {
    let u = system.universe();
    let sets = system
        .members()
        .iter()
        .map(|m| m.iter().map(|&t| u.label(t).to_string()).collect())
        .collect();
    let taxa = (system.leaf_set().len() != u.len()).then(|| u.labels().to_vec());
    serde_json::to_string(&SetSystemJson { sets, taxa }).expect("plain data serializes")
}
