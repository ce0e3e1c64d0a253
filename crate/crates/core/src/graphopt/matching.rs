//! Augmenting-path bipartite matching and systems of distinct representatives.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::setsys::{require_uniform, SetSystem};
use crate::taxa::TaxonId;

/// A maximum matching; `left[i] = Some(j)` iff `right[j] = Some(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left.iter().flatten().count()
    }
}

/// Maximum matching by repeated augmenting paths, trying left vertices and
/// their neighbours in index order.
pub fn maximum_matching(adjacency: &[Vec<usize>], right_len: usize) -> Matching {
    let mut m = Matching {
        left: vec![None; adjacency.len()],
        right: vec![None; right_len],
    };
    let mut visited = vec![false; right_len];
    for u in 0..adjacency.len() {
        visited.iter_mut().for_each(|v| *v = false);
        try_augment(adjacency, u, &mut visited, &mut m);
    }
    m
}

fn try_augment(adj: &[Vec<usize>], u: usize, visited: &mut [bool], m: &mut Matching) -> bool {
    for &v in &adj[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        let free = match m.right[v] {
            None => true,
            Some(w) => try_augment(adj, w, visited, m),
        };
        if free {
            m.left[u] = Some(v);
            m.right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Left vertices reachable from `start` by alternating paths, and their
/// neighbourhood. When `start` is unmatched in a maximum matching this is a
/// Hall violator: the neighbourhood is one smaller than the set.
pub fn hall_violator(adjacency: &[Vec<usize>], m: &Matching, start: usize) -> (Vec<usize>, Vec<usize>) {
    let mut seen_left = vec![false; adjacency.len()];
    let mut seen_right = vec![false; m.right.len()];
    seen_left[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if seen_right[v] {
                continue;
            }
            seen_right[v] = true;
            if let Some(w) = m.right[v] {
                if !seen_left[w] {
                    seen_left[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let left = (0..adjacency.len()).filter(|&i| seen_left[i]).collect();
    let right = (0..m.right.len()).filter(|&j| seen_right[j]).collect();
    (left, right)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SdrOutcome {
    /// `(member index, representative)` for every member, representatives distinct.
    Representatives(Vec<(usize, TaxonId)>),
    /// Members whose reduced sets jointly cover fewer taxa than there are members.
    HallViolator {
        members: Vec<usize>,
        neighborhood: Vec<TaxonId>,
    },
}

/// Distinct representatives for `{s - B : s ∈ τ}` where every member has size
/// `r` and `|B| = r - 1`. Thin systems always succeed.
pub fn sdr(system: &SetSystem, removed: &[TaxonId]) -> Result<SdrOutcome> {
    let r = system
        .uniform_size()
        .ok_or_else(|| Error::input("sdr needs members of a common size"))?;
    require_uniform(system, r)?;
    let mut b = removed.to_vec();
    b.sort_unstable();
    b.dedup();
    if b.len() != removed.len() {
        return Err(Error::input("the removed set repeats a taxon"));
    }
    if b.len() + 1 != r {
        return Err(Error::input(format!(
            "the removed set must have {} taxa, got {}",
            r - 1,
            b.len()
        )));
    }
    if let Some(&t) = b.iter().find(|&&t| t >= system.universe().len()) {
        return Err(Error::input(format!("taxon id {t} is not in the universe")));
    }
    let n = system.universe().len();
    let adjacency: Vec<Vec<usize>> = system
        .members()
        .iter()
        .map(|m| m.iter().copied().filter(|t| b.binary_search(t).is_err()).collect())
        .collect();
    let matching = maximum_matching(&adjacency, n);
    if let Some(u) = matching.left.iter().position(Option::is_none) {
        let (members, neighborhood) = hall_violator(&adjacency, &matching, u);
        return Ok(SdrOutcome::HallViolator {
            members,
            neighborhood,
        });
    }
    Ok(SdrOutcome::Representatives(
        matching
            .left
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.expect("all members matched")))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(sets: &[&str]) -> SetSystem {
        SetSystem::from_compact(sets).unwrap()
    }

    fn ids(s: &SetSystem, labels: &str) -> Vec<TaxonId> {
        labels.chars().map(|c| s.universe().require(&c.to_string()).unwrap()).collect()
    }

    fn assert_valid(s: &SetSystem, b: &[TaxonId], reps: &[(usize, TaxonId)]) {
        let mut seen: Vec<TaxonId> = reps.iter().map(|r| r.1).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), s.len());
        for &(i, t) in reps {
            assert!(s.member(i).contains(&t) && !b.contains(&t));
        }
    }

    #[test]
    fn four_triples_sdr() {
        let s = sys(&["abc", "abd", "bce", "def"]);
        let b = ids(&s, "ab");
        match sdr(&s, &b).unwrap() {
            SdrOutcome::Representatives(reps) => {
                assert_valid(&s, &b, &reps);
                let got: String = reps.iter().map(|&(_, t)| s.universe().label(t)).collect();
                assert_eq!(got, "cdef");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_member_keeps_remaining_element() {
        let s = sys(&["abc"]);
        let b = ids(&s, "ac");
        assert_eq!(sdr(&s, &b).unwrap(), SdrOutcome::Representatives(vec![(0, 1)]));
    }

    #[test]
    fn five_triples_has_hall_violator() {
        let s = sys(&["abc", "abd", "bce", "def", "bde"]);
        let b = ids(&s, "ac");
        match sdr(&s, &b).unwrap() {
            SdrOutcome::HallViolator { members, neighborhood } => {
                let rendered: Vec<String> = members.iter().map(|&i| s.render_member(i)).collect();
                assert_eq!(rendered, ["a,b,c", "a,b,d", "b,c,e", "b,d,e"]);
                assert_eq!(s.universe().render(&neighborhood, ""), "bde");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_removed_size() {
        let s = sys(&["abc"]);
        assert!(sdr(&s, &ids(&s, "a")).is_err());
        assert!(sdr(&s, &[0, 0]).is_err());
        assert!(sdr(&sys(&["abc", "abcd"]), &[0, 1]).is_err());
    }

    #[test]
    fn matching_finds_augmenting_path() {
        let adj = vec![vec![0, 1], vec![0]];
        let m = maximum_matching(&adj, 2);
        assert_eq!(m.size(), 2);
        assert_eq!(m.left, vec![Some(1), Some(0)]);
    }
}
