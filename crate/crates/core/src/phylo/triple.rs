//! Rooted triples `ab|c` and insertion-ordered triple sets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::taxa::{TaxonId, Universe};

use super::tree::{Nested, RootedPhyloTree};

/// The rooted binary tree on three leaves grouping `a` and `b` against `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTriple {
    a: TaxonId,
    b: TaxonId,
    c: TaxonId,
}

impl RootedTriple {
    pub fn new(x: TaxonId, y: TaxonId, outgroup: TaxonId) -> Result<Self> {
        if x == y || x == outgroup || y == outgroup {
            return Err(Error::input("a rooted triple needs three distinct taxa"));
        }
        Ok(RootedTriple {
            a: x.min(y),
            b: x.max(y),
            c: outgroup,
        })
    }

    /// The cherry pair, smaller id first.
    pub fn cherry(&self) -> (TaxonId, TaxonId) {
        (self.a, self.b)
    }

    pub fn outgroup(&self) -> TaxonId {
        self.c
    }

    /// The three taxa in id order.
    pub fn leaves(&self) -> [TaxonId; 3] {
        let mut l = [self.a, self.b, self.c];
        l.sort_unstable();
        l
    }

    pub fn contains(&self, t: TaxonId) -> bool {
        self.a == t || self.b == t || self.c == t
    }

    pub fn to_tree(&self) -> RootedPhyloTree {
        RootedPhyloTree::from_nested(Nested::Node(vec![
            Nested::Node(vec![Nested::Leaf(self.a), Nested::Leaf(self.b)]),
            Nested::Leaf(self.c),
        ]))
        .expect("three distinct leaves")
    }

    /// `a,b|c`.
    pub fn render(&self, universe: &Universe) -> String {
        format!(
            "{},{}|{}",
            universe.label(self.a),
            universe.label(self.b),
            universe.label(self.c)
        )
    }
}

/// Parses `a,b|c`, with surrounding whitespace allowed around each label.
pub fn parse_triple(text: &str, universe: &Universe) -> Result<RootedTriple> {
    let (pair, out) = text
        .split_once('|')
        .ok_or_else(|| Error::input(format!("expected `a,b|c`, got `{text}`")))?;
    let (x, y) = pair
        .split_once(',')
        .ok_or_else(|| Error::input(format!("expected `a,b|c`, got `{text}`")))?;
    RootedTriple::new(
        universe.require(x.trim())?,
        universe.require(y.trim())?,
        universe.require(out.trim())?,
    )
}

/// A set of triples that remembers insertion order.
#[derive(Debug, Clone, Default)]
pub struct TripleSet {
    items: Vec<RootedTriple>,
    index: BTreeSet<RootedTriple>,
}

impl PartialEq for TripleSet {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for TripleSet {}

impl TripleSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `t`; returns false if it was already present.
    pub fn insert(&mut self, t: RootedTriple) -> bool {
        if self.index.insert(t) {
            self.items.push(t);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, t: &RootedTriple) -> bool {
        self.index.contains(t)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Triples in insertion order.
    pub fn iter(&self) -> std::slice::Iter<'_, RootedTriple> {
        self.items.iter()
    }

    pub fn as_slice(&self) -> &[RootedTriple] {
        &self.items
    }

    /// Triples in sorted order.
    pub fn sorted(&self) -> impl Iterator<Item = &RootedTriple> {
        self.index.iter()
    }

    /// `L(R)`, in id order.
    pub fn leaf_set(&self) -> Vec<TaxonId> {
        let set: BTreeSet<TaxonId> = self.items.iter().flat_map(|t| t.leaves()).collect();
        set.into_iter().collect()
    }

    /// `‖R‖`: the distinct leaf 3-sets, sorted.
    pub fn leaf_sets(&self) -> Vec<[TaxonId; 3]> {
        let set: BTreeSet<[TaxonId; 3]> = self.items.iter().map(|t| t.leaves()).collect();
        set.into_iter().collect()
    }

    /// Triples with all three leaves in `taxa` (sorted).
    pub fn restricted_to(&self, taxa: &[TaxonId]) -> TripleSet {
        self.items
            .iter()
            .filter(|t| t.leaves().iter().all(|x| taxa.binary_search(x).is_ok()))
            .copied()
            .collect()
    }
}

impl FromIterator<RootedTriple> for TripleSet {
    fn from_iter<I: IntoIterator<Item = RootedTriple>>(iter: I) -> Self {
        let mut s = TripleSet::new();
        s.extend(iter);
        s
    }
}

impl Extend<RootedTriple> for TripleSet {
    fn extend<I: IntoIterator<Item = RootedTriple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

impl<'a> IntoIterator for &'a TripleSet {
    type Item = &'a RootedTriple;
    type IntoIter = std::slice::Iter<'a, RootedTriple>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cherry_is_unordered() {
        assert_eq!(RootedTriple::new(1, 0, 2).unwrap(), RootedTriple::new(0, 1, 2).unwrap());
        assert!(RootedTriple::new(0, 0, 2).is_err());
    }

    #[test]
    fn parse_and_render() {
        let u = Universe::new(["a", "bb", "c"]).unwrap();
        let t = parse_triple(" bb , a | c", &u).unwrap();
        assert_eq!(t.render(&u), "a,bb|c");
        assert!(parse_triple("a,bb,c", &u).is_err());
        assert!(parse_triple("a,b|c", &u).is_err());
    }

    #[test]
    fn set_keeps_order_and_dedups() {
        let t1 = RootedTriple::new(1, 2, 3).unwrap();
        let t2 = RootedTriple::new(0, 1, 2).unwrap();
        let mut s: TripleSet = [t1, t2].into_iter().collect();
        assert!(!s.insert(t1));
        assert_eq!(s.as_slice(), &[t1, t2]);
        assert_eq!(s.leaf_set(), vec![0, 1, 2, 3]);
        assert_eq!(s.leaf_sets(), vec![[0, 1, 2], [1, 2, 3]]);
        assert_eq!(s.restricted_to(&[0, 1, 2]).as_slice(), &[t2]);
    }
}
