//! Counting displaying trees, and triple sets that pin down a single tree.

use crate::error::{Error, Result};
use crate::phylo::{RootedPhyloTree, RootedTriple, TripleSet};
use crate::taxa::TaxonId;

use super::enumerate::{enumerate_binary_trees, rooted_binary_tree_count};

/// Number of binary trees on `taxa` displaying every triple in `triples`.
pub fn count_displaying_triples(triples: &TripleSet, taxa: &[TaxonId]) -> Result<u64> {
    let mut sorted = taxa.to_vec();
    sorted.sort_unstable();
    if let Some(t) = triples.leaf_set().into_iter().find(|t| sorted.binary_search(t).is_err()) {
        return Err(Error::input(format!("taxon id {t} is outside the counted taxon set")));
    }
    let trees = enumerate_binary_trees(taxa)?;
    let mut count = 0;
    for tree in &trees {
        if triples.iter().all(|t| tree.displays_triple(t).expect("taxa covered")) {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of binary trees on `taxa` displaying every tree in `trees`.
pub fn count_displaying(trees: &[RootedPhyloTree], taxa: &[TaxonId]) -> Result<u64> {
    if trees.iter().any(|t| !t.is_binary()) {
        return Err(Error::Precondition("displayed trees must be binary".into()));
    }
    let pooled: TripleSet = trees.iter().flat_map(|t| t.triples_of().as_slice().to_vec()).collect();
    let mut sorted = taxa.to_vec();
    sorted.sort_unstable();
    for t in trees.iter().flat_map(|t| t.leaves()) {
        if sorted.binary_search(t).is_err() {
            return Err(Error::input(format!("taxon id {t} is outside the counted taxon set")));
        }
    }
    count_displaying_triples(&pooled, taxa)
}

/// `(2n - 3)!! / 3^(n/3)`: binary trees on `n` taxa displaying `n/3` fixed
/// disjoint triples. The division is checked to be exact.
pub fn disjoint_count_formula(n: u64) -> Result<u128> {
    if n < 3 || !n.is_multiple_of(3) {
        return Err(Error::input(format!("n must be a positive multiple of 3, got {n}")));
    }
    let overflow = || Error::CapExceeded {
        what: "disjoint count formula n",
        requested: n as u128,
        limit: 0,
        hint: "the double factorial overflows 128 bits",
    };
    let numerator = rooted_binary_tree_count(n as usize).ok_or_else(overflow)?;
    let denominator = 3u128.checked_pow((n / 3) as u32).ok_or_else(overflow)?;
    if numerator % denominator != 0 {
        return Err(Error::Internal(format!("(2n-3)!! is not divisible by 3^(n/3) for n = {n}")));
    }
    Ok(numerator / denominator)
}

/// `n - 2` triples displayed only by `tree`: repeatedly take the cherry
/// `{a,b}` with the smallest label, pair it with the smallest leaf `c` below
/// the cherry's sibling, record `ab|c`, and delete `a`. Triples of the
/// smaller tree come first.
pub fn defining_triples(tree: &RootedPhyloTree) -> Result<TripleSet> {
    if !tree.is_binary() {
        return Err(Error::Precondition("defining triples need a binary tree".into()));
    }
    if tree.leaf_count() < 3 {
        return Err(Error::Precondition("defining triples need at least three leaves".into()));
    }
    let mut emitted = Vec::new();
    let mut current = tree.clone();
    while current.leaf_count() > 3 {
        let (a, b, c) = cherry_step(&current);
        emitted.push(RootedTriple::new(a, b, c)?);
        let rest: Vec<TaxonId> = current.leaves().iter().copied().filter(|&t| t != a).collect();
        current = current.restrict(&rest)?;
    }
    let base = current.triples_of();
    let mut out: TripleSet = base.iter().copied().collect();
    out.extend(emitted.into_iter().rev());
    Ok(out)
}

fn cherry_step(tree: &RootedPhyloTree) -> (TaxonId, TaxonId, TaxonId) {
    let (p, a, b) = tree
        .interior_vertices()
        .filter_map(|v| match tree.children(v) {
            [x, y] if tree.is_leaf(*x) && tree.is_leaf(*y) => {
                Some((v, tree.taxon(*x).unwrap(), tree.taxon(*y).unwrap()))
            }
            _ => None,
        })
        .min_by_key(|&(_, a, _)| a)
        .expect("a binary tree with at least two leaves has a cherry");
    let u = tree.parent(p).expect("a cherry below the root when n >= 3");
    let sibling = *tree.children(u).iter().find(|&&w| w != p).expect("binary");
    let c = tree.cluster(sibling)[0];
    (a, b, c)
}

/// Exactly one binary tree on `L(R)` displays `R`.
pub fn is_unique_display(triples: &TripleSet) -> Result<bool> {
    let taxa = triples.leaf_set();
    if taxa.is_empty() {
        return Err(Error::input("uniqueness of display needs at least one triple"));
    }
    is_unique_display_on(triples, &taxa)
}

/// Exactly one binary tree on `taxa` (a superset of `L(R)`) displays `R`.
pub fn is_unique_display_on(triples: &TripleSet, taxa: &[TaxonId]) -> Result<bool> {
    Ok(count_displaying_triples(triples, taxa)? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phylo::{parse_newick_standalone, parse_triple};
    use crate::taxa::Universe;

    #[test]
    fn formula_values() {
        assert_eq!(disjoint_count_formula(3).unwrap(), 1);
        assert_eq!(disjoint_count_formula(6).unwrap(), 105);
        assert_eq!(disjoint_count_formula(9).unwrap(), 75075);
        assert!(disjoint_count_formula(4).is_err());
        assert!(disjoint_count_formula(0).is_err());
    }

    #[test]
    fn counts() {
        let u = Universe::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let one: TripleSet = [parse_triple("a,b|c", &u).unwrap()].into_iter().collect();
        assert_eq!(count_displaying_triples(&one, &[0, 1, 2]).unwrap(), 1);
        let two: TripleSet = ["a,b|c", "d,e|f"].iter().map(|s| parse_triple(s, &u).unwrap()).collect();
        assert_eq!(count_displaying_triples(&two, &[0, 1, 2, 3, 4, 5]).unwrap(), 105);
        assert_eq!(count_displaying_triples(&TripleSet::new(), &[0, 1, 2, 3]).unwrap(), 15);
        assert!(count_displaying_triples(&one, &[0, 1]).is_err());
    }

    #[test]
    fn defining_triples_of_small_trees() {
        let (u, t) = parse_newick_standalone("((a,b),c);").unwrap();
        let r = defining_triples(&t).unwrap();
        assert_eq!(r.iter().map(|x| x.render(&u)).collect::<Vec<_>>(), ["a,b|c"]);

        let (u, t) = parse_newick_standalone("(((a,b),c),d);").unwrap();
        let r = defining_triples(&t).unwrap();
        assert_eq!(r.iter().map(|x| x.render(&u)).collect::<Vec<_>>(), ["b,c|d", "a,b|c"]);
        assert!(is_unique_display(&r).unwrap());
    }

    #[test]
    fn shared_cherry_is_not_unique() {
        let u = Universe::new(["1", "2", "3", "4", "5", "6"]).unwrap();
        let r: TripleSet = ["1,2|3", "1,2|4", "1,2|5", "1,2|6"]
            .iter()
            .map(|s| parse_triple(s, &u).unwrap())
            .collect();
        assert!(!is_unique_display(&r).unwrap());
        assert!(!is_unique_display_on(&TripleSet::new(), &[0, 1, 2, 3]).unwrap());
    }
}
