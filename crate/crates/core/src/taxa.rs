//! Taxon interning.
//!
//! A [`Universe`] keeps its labels sorted, so the numeric order of taxon ids
//! is the lexicographic order of the labels. Every "smallest label" rule in
//! the crate therefore reduces to "smallest id".

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a taxon inside its [`Universe`].
pub type TaxonId = usize;

/// Characters that may not appear in a taxon label.
const FORBIDDEN: &[char] = &['(', ')', ',', ';', ':', '|', '#', '<', '"'];

/// Checks that `label` is usable as a taxon name.
pub fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::input("empty taxon label"));
    }
    if let Some(c) = label
        .chars()
        .find(|c| c.is_whitespace() || FORBIDDEN.contains(c))
    {
        return Err(Error::input(format!(
            "taxon label {label:?} contains forbidden character {c:?}"
        )));
    }
    Ok(())
}

/// An ordered, duplicate-free set of taxon labels.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, TaxonId>,
}

impl Universe {
    /// Builds a universe from arbitrary labels; duplicates are merged and the
    /// result is sorted.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut labels: Vec<String> = labels
            .into_iter()
            .map(|s| s.as_ref().to_string())
            .collect();
        for l in &labels {
            validate_label(l)?;
        }
        labels.sort();
        labels.dedup();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Ok(Universe { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: TaxonId) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id(&self, label: &str) -> Option<TaxonId> {
        self.index.get(label).copied()
    }

    /// Like [`Universe::id`] but reports unknown labels as input errors.
    pub fn require(&self, label: &str) -> Result<TaxonId> {
        self.id(label)
            .ok_or_else(|| Error::input(format!("unknown taxon {label:?}")))
    }

    pub fn ids(&self) -> std::ops::Range<TaxonId> {
        0..self.labels.len()
    }

    /// Joins the labels of `ids` with `sep`.
    pub fn render(&self, ids: &[TaxonId], sep: &str) -> String {
        ids.iter()
            .map(|&i| self.label(i))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_follow_label_order() {
        let u = Universe::new(["c", "a", "b", "a"]).unwrap();
        assert_eq!(u.labels(), &["a", "b", "c"]);
        assert_eq!(u.id("b"), Some(1));
        assert_eq!(u.label(2), "c");
    }

    #[test]
    fn labels_are_case_sensitive() {
        let u = Universe::new(["A", "a"]).unwrap();
        assert_eq!(u.len(), 2);
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(Universe::new(["a b"]).is_err());
        assert!(Universe::new(["a,b"]).is_err());
        assert!(Universe::new([""]).is_err());
        assert!(Universe::new(["x:1"]).is_err());
    }
}
