//! Acyclicity of incidence graphs and degree-two spanning forests.

use std::collections::VecDeque;

use crate::error::{Error, Result};

use super::incidence::{BipartiteIncidenceGraph, IncidenceNode};
use super::minimize::minimize_surplus;

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Result of [`is_forest`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestCheck {
    pub is_forest: bool,
    /// Alternating member/taxon cycle; the last vertex is adjacent to the first.
    pub cycle: Option<Vec<IncidenceNode>>,
}

/// Checks whether the graph is acyclic and returns a cycle otherwise.
pub fn is_forest(graph: &BipartiteIncidenceGraph) -> ForestCheck {
    let left = graph.left_len();
    let n = left + graph.right_len();
    let mut sets = DisjointSets::new(n);
    let mut tree: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j) in graph.edges() {
        let (u, v) = (i, left + j);
        if sets.union(u, v) {
            tree[u].push(v);
            tree[v].push(u);
            continue;
        }
        let path = tree_path(&tree, u, v);
        let cycle = path
            .into_iter()
            .map(|x| {
                if x < left {
                    graph.left_node(x)
                } else {
                    graph.right_node(x - left)
                }
            })
            .collect();
        return ForestCheck {
            is_forest: false,
            cycle: Some(cycle),
        };
    }
    ForestCheck {
        is_forest: true,
        cycle: None,
    }
}

fn tree_path(tree: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; tree.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &tree[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    path
}

/// A subgraph in which every member has degree exactly two and no cycle exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurplusForest {
    /// `(left position, right position)` pairs, two per left vertex.
    pub edges: Vec<(usize, usize)>,
}

impl SurplusForest {
    /// Edges in system terms.
    pub fn nodes(&self, graph: &BipartiteIncidenceGraph) -> Vec<(IncidenceNode, IncidenceNode)> {
        self.edges
            .iter()
            .map(|&(i, j)| (graph.left_node(i), graph.right_node(j)))
            .collect()
    }
}

/// Checks the degree-two and acyclicity conditions against `graph`.
pub fn verify_surplus_forest(graph: &BipartiteIncidenceGraph, forest: &SurplusForest) -> bool {
    let left = graph.left_len();
    let mut degree = vec![0usize; left];
    let mut sets = DisjointSets::new(left + graph.right_len());
    for &(i, j) in &forest.edges {
        if i >= left || !graph.neighbors(i).contains(&j) {
            return false;
        }
        degree[i] += 1;
        if !sets.union(i, left + j) {
            return false;
        }
    }
    degree.iter().all(|&d| d == 2)
}

/// A forest `F ⊆ G` with every member of degree exactly two, which exists iff
/// the graph has positive surplus (`σ* >= 1`). Returns `None` otherwise.
///
/// Picking two taxa per member amounts to choosing one edge of the clique on
/// each member so that the chosen taxon pairs form a forest; this is a
/// common independent set of a partition matroid (one pair per member) and a
/// graphic matroid (pairs acyclic), found by augmenting along shortest paths
/// in the exchange graph.
pub fn surplus_forest(graph: &BipartiteIncidenceGraph) -> Result<Option<SurplusForest>> {
    if graph.weights().iter().any(|&w| w != 1) {
        return Err(Error::input("surplus forests need unit weights"));
    }
    if graph.left_len() == 0 {
        return Ok(Some(SurplusForest { edges: Vec::new() }));
    }
    if minimize_surplus(graph)?.value < 1 {
        return Ok(None);
    }

    let mut ground: Vec<(usize, usize, usize)> = Vec::new();
    for u in 0..graph.left_len() {
        let nb = graph.neighbors(u);
        for a in 0..nb.len() {
            for b in a + 1..nb.len() {
                ground.push((u, nb[a], nb[b]));
            }
        }
    }
    let chosen = matroid_intersection(&ground, graph.left_len(), graph.right_len());
    if chosen.len() != graph.left_len() {
        return Err(Error::Internal(
            "positive surplus but no degree-two forest was found".into(),
        ));
    }
    let mut edges: Vec<(usize, usize)> = chosen
        .iter()
        .flat_map(|&e| {
            let (u, x, y) = ground[e];
            [(u, x), (u, y)]
        })
        .collect();
    edges.sort_unstable();
    let forest = SurplusForest { edges };
    if !verify_surplus_forest(graph, &forest) {
        return Err(Error::Internal("constructed forest failed verification".into()));
    }
    Ok(Some(forest))
}

fn matroid_intersection(ground: &[(usize, usize, usize)], parts: usize, vertices: usize) -> Vec<usize> {
    let mut inside = vec![false; ground.len()];
    loop {
        let current: Vec<usize> = (0..ground.len()).filter(|&e| inside[e]).collect();
        let mut covered = vec![false; parts];
        for &e in &current {
            covered[ground[e].0] = true;
        }
        // Components of the current forest, and of the forest minus each element.
        let comp_all = components(ground, &current, None, vertices);
        let comp_without: Vec<Vec<usize>> = current
            .iter()
            .map(|&y| components(ground, &current, Some(y), vertices))
            .collect();

        let n = ground.len();
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for e in 0..n {
            if !inside[e] && !covered[ground[e].0] {
                prev[e] = e;
                queue.push_back(e);
            }
        }
        let mut end = None;
        while let Some(e) = queue.pop_front() {
            if inside[e] {
                // y -> x when swapping y for x keeps one pair per member.
                for x in 0..n {
                    if !inside[x] && prev[x] == usize::MAX && ground[x].0 == ground[e].0 {
                        prev[x] = e;
                        queue.push_back(x);
                    }
                }
            } else {
                let (_, a, b) = ground[e];
                if comp_all[a] != comp_all[b] {
                    end = Some(e);
                    break;
                }
                // x -> y when swapping y for x keeps the pairs acyclic.
                for (k, &y) in current.iter().enumerate() {
                    if prev[y] == usize::MAX && comp_without[k][a] != comp_without[k][b] {
                        prev[y] = e;
                        queue.push_back(y);
                    }
                }
            }
        }
        let Some(mut e) = end else {
            return current;
        };
        loop {
            inside[e] = !inside[e];
            if prev[e] == e {
                break;
            }
            e = prev[e];
        }
    }
}

fn components(
    ground: &[(usize, usize, usize)],
    current: &[usize],
    skip: Option<usize>,
    vertices: usize,
) -> Vec<usize> {
    let mut sets = DisjointSets::new(vertices);
    for &e in current {
        if Some(e) != skip {
            sets.union(ground[e].1, ground[e].2);
        }
    }
    (0..vertices).map(|v| sets.find(v)).collect()
}
