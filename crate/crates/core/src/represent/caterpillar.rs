//! Caterpillar median representations of thin triple systems.
//!
//! An unrooted caterpillar on `n >= 3` leaves is stored as its leaf sequence
//! `l0 … l(n-1)`. Leaf `li` hangs from spine vertex `clamp(i, 1, n-2)`, so
//! `l0,l1` and `l(n-2),l(n-1)` are the two cherries. The median of three
//! leaves is the spine vertex at the median of their spine indices.

use std::collections::BTreeSet;

use crate::graphopt::{minimize_surplus, BipartiteIncidenceGraph};
use crate::report::Stats;
use crate::taxa::TaxonId;

pub(crate) type Member3 = [TaxonId; 3];

/// Largest leaf count for the last-resort search over all sequences.
const SEARCH_LIMIT: usize = 9;

fn spine(i: usize, n: usize) -> usize {
    i.clamp(1, n - 2)
}

fn positions(seq: &[TaxonId]) -> Vec<usize> {
    let max = seq.iter().copied().max().map_or(0, |m| m + 1);
    let mut pos = vec![usize::MAX; max];
    for (i, &t) in seq.iter().enumerate() {
        pos[t] = i;
    }
    pos
}

/// Spine index of the median of each member.
pub(crate) fn spine_medians(seq: &[TaxonId], members: &[Member3]) -> Vec<usize> {
    let n = seq.len();
    let pos = positions(seq);
    members
        .iter()
        .map(|m| {
            let mut s = m.map(|t| spine(pos[t], n));
            s.sort_unstable();
            s[1]
        })
        .collect()
}

fn medians_distinct(seq: &[TaxonId], members: &[Member3]) -> bool {
    let mut med = spine_medians(seq, members);
    med.sort_unstable();
    med.windows(2).all(|w| w[0] != w[1])
}

fn thin(members: &[Member3]) -> bool {
    if members.is_empty() {
        return true;
    }
    let right = members.iter().flatten().max().map_or(0, |m| m + 1);
    let graph = BipartiteIncidenceGraph::from_adjacency(
        right,
        members.iter().map(|m| m.to_vec()).collect(),
        vec![1; members.len()],
    );
    minimize_surplus(&graph).is_ok_and(|r| r.value >= 2)
}

fn inserted(seq: &[TaxonId], p: usize, x: TaxonId) -> Vec<TaxonId> {
    let mut s = seq.to_vec();
    s.insert(p, x);
    s
}

/// Hangs `x` from a new vertex adjacent to `anchor`'s vertex on the path
/// towards `toward`. When the two form a cherry, `x` pairs with `toward`.
fn next_to(seq: &[TaxonId], anchor: TaxonId, toward: TaxonId, x: TaxonId) -> Vec<TaxonId> {
    let pos = positions(seq);
    let (i, j) = (pos[anchor], pos[toward]);
    if i > j {
        let rev: Vec<TaxonId> = seq.iter().rev().copied().collect();
        let mut out = next_to(&rev, anchor, toward, x);
        out.reverse();
        return out;
    }
    let n = seq.len();
    if i == 0 && j == 1 {
        // Subdivide the pendant edge of `toward`: x joins it in a new end cherry.
        let mut out = vec![x, toward, anchor];
        out.extend_from_slice(&seq[2..]);
        return out;
    }
    if i == 0 {
        return inserted(seq, 2, x);
    }
    if i == n - 2 && j == n - 1 {
        let mut out = seq[..n - 2].to_vec();
        out.extend([anchor, toward, x]);
        return out;
    }
    inserted(seq, i + 1, x)
}

/// Which side of `y`'s spine vertex `z` lies on: -1, +1, or 0 when `z`
/// shares that vertex.
fn side(seq: &[TaxonId], z: TaxonId, y: TaxonId) -> i32 {
    let pos = positions(seq);
    let n = seq.len();
    (spine(pos[z], n) as i64 - spine(pos[y], n) as i64).signum() as i32
}

fn same_side(seq: &[TaxonId], p: TaxonId, q: TaxonId, y: TaxonId) -> bool {
    let (sp, sq) = (side(seq, p, y), side(seq, q, y));
    sp != 0 && sp == sq
}

fn distance(seq: &[TaxonId], p: TaxonId, q: TaxonId) -> usize {
    let pos = positions(seq);
    pos[p].abs_diff(pos[q])
}

/// The insertion for two members `{x,a,b}` and `{x,a,b'}` sharing `a`,
/// given a representation in which `{a,b,b'}` stands in for them.
fn shared_pair_insertion(seq: &[TaxonId], a: TaxonId, b: TaxonId, pivot: TaxonId, x: TaxonId) -> Vec<TaxonId> {
    if same_side(seq, a, b, pivot) {
        let nearer = if distance(seq, a, pivot) <= distance(seq, b, pivot) { a } else { b };
        next_to(seq, pivot, nearer, x)
    } else {
        next_to(seq, pivot, b, x)
    }
}

type Insertion = Box<dyn Fn(&[TaxonId]) -> Vec<Vec<TaxonId>>>;

struct Reduction {
    rest: Vec<Member3>,
    insertion: Insertion,
}

fn sorted3(a: TaxonId, b: TaxonId, c: TaxonId) -> Member3 {
    let mut m = [a, b, c];
    m.sort_unstable();
    m
}

fn replace(members: &[Member3], drop: &[Member3], add: Option<Member3>) -> Vec<Member3> {
    let mut set: BTreeSet<Member3> = members.iter().filter(|m| !drop.contains(m)).copied().collect();
    if let Some(m) = add {
        set.insert(m);
    }
    set.into_iter().collect()
}

fn others(m: &Member3, x: TaxonId) -> (TaxonId, TaxonId) {
    let v: Vec<TaxonId> = m.iter().copied().filter(|&t| t != x).collect();
    (v[0], v[1])
}

fn reductions(members: &[Member3], x: TaxonId) -> Vec<Reduction> {
    let containing: Vec<Member3> = members.iter().filter(|m| m.contains(&x)).copied().collect();
    match containing.as_slice() {
        [t] => {
            let (a, b) = others(t, x);
            vec![Reduction {
                rest: replace(members, &[*t], None),
                insertion: Box::new(move |seq| {
                    let pos = positions(seq);
                    let (i, j) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                    (i + 1..=j).map(|p| inserted(seq, p, x)).collect()
                }),
            }]
        }
        [t, u] => {
            let (ta, tb) = others(t, x);
            let (ua, ub) = others(u, x);
            let common: Vec<TaxonId> = [ta, tb].into_iter().filter(|&v| v == ua || v == ub).collect();
            if let [a] = common[..] {
                let b = if ta == a { tb } else { ta };
                let b2 = if ua == a { ub } else { ua };
                let rest = replace(members, &[*t, *u], Some(sorted3(a, b, b2)));
                vec![Reduction {
                    rest,
                    insertion: Box::new(move |seq| {
                        vec![
                            shared_pair_insertion(seq, a, b, b2, x),
                            shared_pair_insertion(seq, a, b2, b, x),
                        ]
                    }),
                }]
            } else {
                disjoint_pair_reductions(members, *t, *u, x)
            }
        }
        _ => Vec::new(),
    }
}

/// Members `{x,a,b}` and `{x,a',b'}` meeting only in `x`: replace them by
/// `{a,a',b}` for each labelling that keeps the system thin.
fn disjoint_pair_reductions(members: &[Member3], t: Member3, u: Member3, x: TaxonId) -> Vec<Reduction> {
    let (t0, t1) = others(&t, x);
    let (u0, u1) = others(&u, x);
    let mut labellings = Vec::new();
    for (p, q) in [((t0, t1), (u0, u1)), ((u0, u1), (t0, t1))] {
        for (a, b) in [p, (p.1, p.0)] {
            for (a2, b2) in [q, (q.1, q.0)] {
                labellings.push((a, b, a2, b2));
            }
        }
    }
    labellings
        .into_iter()
        .filter_map(|(a, b, a2, b2)| {
            let rest = replace(members, &[t, u], Some(sorted3(a, a2, b)));
            if !thin(&rest) {
                return None;
            }
            Some(Reduction {
                rest,
                insertion: Box::new(move |seq| vec![disjoint_pair_insertion(seq, a, b, a2, b2, x)]),
            })
        })
        .collect()
}

fn disjoint_pair_insertion(
    seq: &[TaxonId],
    a: TaxonId,
    b: TaxonId,
    a2: TaxonId,
    b2: TaxonId,
    x: TaxonId,
) -> Vec<TaxonId> {
    if same_side(seq, a, b, b2) {
        if same_side(seq, a2, a, b2) {
            shared_pair_insertion(seq, a, b, a2, x)
        } else {
            next_to(seq, b2, a2, x)
        }
    } else if same_side(seq, a2, a, b2) && !same_side(seq, a2, b2, a) {
        let nearer = if distance(seq, a, a2) <= distance(seq, b, a2) { a } else { b };
        next_to(seq, a2, nearer, x)
    } else {
        next_to(seq, a2, b, x)
    }
}

/// A caterpillar sequence on `taxa` whose medians separate `members`.
pub(crate) fn build(members: &[Member3], taxa: &[TaxonId], stats: &mut Stats) -> Option<Vec<TaxonId>> {
    let leaves: Vec<TaxonId> = members
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if leaves.len() < taxa.len() {
        let mut seq = if leaves.is_empty() { Vec::new() } else { build(members, &leaves, stats)? };
        seq.extend(taxa.iter().copied().filter(|t| leaves.binary_search(t).is_err()));
        return Some(seq);
    }
    if taxa.len() <= 4 {
        stats.add("base_searches", 1);
        return search(members, taxa);
    }
    let x = *taxa
        .iter()
        .min_by_key(|&&t| (members.iter().filter(|m| m.contains(&t)).count(), t))
        .expect("non-empty taxa");
    let smaller: Vec<TaxonId> = taxa.iter().copied().filter(|&t| t != x).collect();

    let mut built: Vec<Vec<TaxonId>> = Vec::new();
    for reduction in reductions(members, x) {
        let Some(seq) = build(&reduction.rest, &smaller, stats) else {
            continue;
        };
        for candidate in (reduction.insertion)(&seq) {
            if medians_distinct(&candidate, members) {
                stats.add("direct_steps", 1);
                return Some(candidate);
            }
        }
        built.push(seq);
    }
    for seq in &built {
        for p in 0..=seq.len() {
            let candidate = inserted(seq, p, x);
            if medians_distinct(&candidate, members) {
                stats.add("gap_fallbacks", 1);
                return Some(candidate);
            }
        }
    }
    if taxa.len() <= SEARCH_LIMIT {
        stats.add("search_fallbacks", 1);
        return search(members, taxa);
    }
    None
}

/// Tries every sequence, up to reversal.
fn search(members: &[Member3], taxa: &[TaxonId]) -> Option<Vec<TaxonId>> {
    let mut seq = taxa.to_vec();
    seq.sort_unstable();
    if seq.len() < 3 {
        return Some(seq);
    }
    loop {
        if seq[0] < seq[seq.len() - 1] && medians_distinct(&seq, members) {
            return Some(seq);
        }
        if !next_permutation(&mut seq) {
            return None;
        }
    }
}

pub(crate) fn next_permutation(v: &mut [TaxonId]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
