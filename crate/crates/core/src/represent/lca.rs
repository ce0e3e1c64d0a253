//! Rooted caterpillars separating the pairs of a thin pair system by lca.
//!
//! The rooted caterpillar `(((l0,l1),l2),…)` has spine vertices `w1…w(n-1)`
//! from the cherry up to the root, and `lca(li,lj) = w(max(i,j))` with
//! position 0 counted as 1.

use std::collections::BTreeSet;

use crate::taxa::TaxonId;

use super::caterpillar::next_permutation;

pub(crate) type Pair = [TaxonId; 2];

fn lcas_distinct(seq: &[TaxonId], members: &[Pair]) -> bool {
    let max = seq.iter().copied().max().map_or(0, |m| m + 1);
    let mut pos = vec![0usize; max];
    for (i, &t) in seq.iter().enumerate() {
        pos[t] = i;
    }
    let mut spine: Vec<usize> = members.iter().map(|m| pos[m[0]].max(pos[m[1]]).max(1)).collect();
    spine.sort_unstable();
    spine.windows(2).all(|w| w[0] != w[1])
}

/// A leaf sequence on `taxa` whose lcas separate `members`.
pub(crate) fn build(members: &[Pair], taxa: &[TaxonId]) -> Option<Vec<TaxonId>> {
    let leaves: Vec<TaxonId> = members
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if leaves.len() < taxa.len() {
        let mut seq = if leaves.is_empty() { Vec::new() } else { build(members, &leaves)? };
        seq.extend(taxa.iter().copied().filter(|t| leaves.binary_search(t).is_err()));
        return Some(seq);
    }
    if taxa.len() <= 3 {
        return search(members, taxa);
    }
    let x = *taxa
        .iter()
        .min_by_key(|&&t| (members.iter().filter(|m| m.contains(&t)).count(), t))
        .expect("non-empty taxa");
    let containing: Vec<&Pair> = members.iter().filter(|m| m.contains(&x)).collect();
    let [pair] = containing[..] else {
        return None;
    };
    let a = if pair[0] == x { pair[1] } else { pair[0] };
    let rest: Vec<Pair> = members.iter().filter(|m| *m != pair).copied().collect();
    let a_remains = rest.iter().any(|m| m.contains(&a));
    let mut seq = if a_remains {
        let smaller: Vec<TaxonId> = taxa.iter().copied().filter(|&t| t != x).collect();
        build(&rest, &smaller)?
    } else {
        let smaller: Vec<TaxonId> = taxa.iter().copied().filter(|&t| t != x && t != a).collect();
        let mut s = build(&rest, &smaller)?;
        s.push(a);
        s
    };
    seq.push(x);
    lcas_distinct(&seq, members).then_some(seq)
}

fn search(members: &[Pair], taxa: &[TaxonId]) -> Option<Vec<TaxonId>> {
    let mut seq = taxa.to_vec();
    seq.sort_unstable();
    loop {
        if lcas_distinct(&seq, members) {
            return Some(seq);
        }
        if !next_permutation(&mut seq) {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_pairs() {
        let members = [[0, 1], [1, 2], [2, 3]];
        let seq = build(&members, &[0, 1, 2, 3]).unwrap();
        assert!(lcas_distinct(&seq, &members));
    }

    #[test]
    fn star_of_pairs_with_isolated_taxon() {
        let members = [[0, 1], [0, 2], [0, 3]];
        let seq = build(&members, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(seq.len(), 5);
        assert_eq!(seq[4], 4);
        assert!(lcas_distinct(&seq, &members));
    }
}
