//! Exhaustive enumeration of rooted binary leaf-labelled trees.

use crate::error::{Error, Result};
use crate::phylo::{Nested, RootedPhyloTree};
use crate::taxa::TaxonId;

/// Default largest leaf count for enumeration (135135 trees).
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// `(2m - 3)!!`, the number of rooted binary trees on `m >= 1` leaves.
pub fn rooted_binary_tree_count(m: usize) -> Option<u128> {
    if m == 0 {
        return None;
    }
    (1..m).try_fold(1u128, |acc, k| acc.checked_mul(2 * k as u128 - 1))
}

/// All rooted binary trees on `leaves`, built by inserting the leaves in
/// id order onto every edge and above the root. No two are isomorphic.
pub fn enumerate_binary_trees(leaves: &[TaxonId]) -> Result<Vec<RootedPhyloTree>> {
    enumerate_binary_trees_with_cap(leaves, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_binary_trees_with_cap(leaves: &[TaxonId], cap: usize) -> Result<Vec<RootedPhyloTree>> {
    let mut sorted = leaves.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != leaves.len() {
        return Err(Error::input("leaf set repeats a taxon"));
    }
    if sorted.is_empty() {
        return Err(Error::input("cannot enumerate trees on no leaves"));
    }
    if sorted.len() > cap {
        return Err(Error::CapExceeded {
            what: "tree enumeration leaves",
            requested: sorted.len() as u128,
            limit: cap as u128,
            hint: "enumeration grows as (2m-3)!!",
        });
    }
    let mut shapes = vec![Nested::Leaf(sorted[0])];
    for &x in &sorted[1..] {
        shapes = shapes.iter().flat_map(|n| insertions(n, x)).collect();
    }
    shapes
        .into_iter()
        .map(RootedPhyloTree::from_nested)
        .collect()
}

/// Every tree obtained by hanging leaf `x` from an edge of `n` or above its root.
fn insertions(n: &Nested, x: TaxonId) -> Vec<Nested> {
    let mut out = vec![Nested::Node(vec![n.clone(), Nested::Leaf(x)])];
    if let Nested::Node(children) = n {
        for (i, child) in children.iter().enumerate() {
            for replaced in insertions(child, x) {
                let mut kids = children.clone();
                kids[i] = replaced;
                out.push(Nested::Node(kids));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_double_factorial() {
        for m in 1..=6 {
            let trees = enumerate_binary_trees(&(0..m).collect::<Vec<_>>()).unwrap();
            assert_eq!(trees.len() as u128, rooted_binary_tree_count(m).unwrap());
            let distinct: HashSet<_> = trees.iter().collect();
            assert_eq!(distinct.len(), trees.len());
            assert!(trees.iter().all(|t| t.is_binary() && t.leaf_count() == m));
        }
        assert_eq!(rooted_binary_tree_count(7), Some(10395));
        assert_eq!(rooted_binary_tree_count(8), Some(135135));
    }

    #[test]
    fn cap_and_input_errors() {
        assert!(matches!(
            enumerate_binary_trees(&(0..9).collect::<Vec<_>>()),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_binary_trees(&[]).is_err());
        assert!(enumerate_binary_trees(&[1, 1]).is_err());
    }
}
