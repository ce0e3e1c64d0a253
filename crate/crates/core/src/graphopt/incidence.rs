use crate::error::Result;
use crate::setsys::require_min_size;
use crate::setsys::SetSystem;
use crate::taxa::TaxonId;

/// Left-vertex weighting of an incidence graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weighting {
    /// Every member weighs 1 (surplus, thin).
    Unit,
    /// A member `s` weighs `|s| - 2` (slim); needs `|s| >= 3`.
    SizeMinusTwo,
}

/// A vertex of [`BipartiteIncidenceGraph`], named in system terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IncidenceNode {
    /// Position in the system's canonical member order.
    Member(usize),
    Taxon(TaxonId),
}

/// The member-versus-taxon containment graph `G(τ)`.
///
/// Left vertices are members (in canonical order), right vertices are the taxa
/// of `L(τ)` in id order. Adjacency is stored as positions into the right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteIncidenceGraph {
    members: Vec<usize>,
    taxa: Vec<TaxonId>,
    adjacency: Vec<Vec<usize>>,
    weights: Vec<i64>,
}

impl BipartiteIncidenceGraph {
    /// Builds a graph from raw adjacency; right vertex `j` is reported as taxon `j`.
    pub fn from_adjacency(right_len: usize, adjacency: Vec<Vec<usize>>, weights: Vec<i64>) -> Self {
        assert_eq!(adjacency.len(), weights.len(), "one weight per left vertex");
        let mut adjacency = adjacency;
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
            assert!(row.iter().all(|&j| j < right_len), "right vertex out of range");
        }
        BipartiteIncidenceGraph {
            members: (0..adjacency.len()).collect(),
            taxa: (0..right_len).collect(),
            adjacency,
            weights,
        }
    }

    pub fn left_len(&self) -> usize {
        self.members.len()
    }

    pub fn right_len(&self) -> usize {
        self.taxa.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Right positions adjacent to left vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Member index of left vertex `i`.
    pub fn member(&self, i: usize) -> usize {
        self.members[i]
    }

    /// Taxon id of right vertex `j`.
    pub fn taxon(&self, j: usize) -> TaxonId {
        self.taxa[j]
    }

    pub fn left_node(&self, i: usize) -> IncidenceNode {
        IncidenceNode::Member(self.members[i])
    }

    pub fn right_node(&self, j: usize) -> IncidenceNode {
        IncidenceNode::Taxon(self.taxa[j])
    }

    /// All edges as `(left, right)` positions, in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&j| (i, j)))
    }

    /// `|N(Y)| - Σ_{u∈Y} w(u)` for a set of left positions.
    pub fn surplus(&self, left: &[usize]) -> i64 {
        let mut seen = vec![false; self.taxa.len()];
        let mut n = 0i64;
        let mut w = 0i64;
        for &i in left {
            w += self.weights[i];
            for &j in &self.adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    n += 1;
                }
            }
        }
        n - w
    }
}

/// `G(τ)` with the requested left weights.
pub fn incidence_graph(system: &SetSystem, weighting: Weighting) -> Result<BipartiteIncidenceGraph> {
    if weighting == Weighting::SizeMinusTwo {
        require_min_size(system, 3)?;
    }
    let taxa = system.leaf_set();
    let mut position = vec![usize::MAX; system.universe().len()];
    for (j, &t) in taxa.iter().enumerate() {
        position[t] = j;
    }
    let adjacency = system
        .members()
        .iter()
        .map(|m| m.iter().map(|&t| position[t]).collect())
        .collect();
    let weights = system
        .members()
        .iter()
        .map(|m| match weighting {
            Weighting::Unit => 1,
            Weighting::SizeMinusTwo => m.len() as i64 - 2,
        })
        .collect();
    Ok(BipartiteIncidenceGraph {
        members: (0..system.len()).collect(),
        taxa,
        adjacency,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph() {
        let s = SetSystem::from_compact(&["ab", "bc"]).unwrap();
        let g = incidence_graph(&s, Weighting::Unit).unwrap();
        assert_eq!((g.left_len(), g.right_len(), g.edge_count()), (2, 3, 4));
    }

    #[test]
    fn triangle_graph() {
        let s = SetSystem::from_compact(&["ab", "bc", "ac"]).unwrap();
        let g = incidence_graph(&s, Weighting::Unit).unwrap();
        assert_eq!((g.left_len(), g.right_len(), g.edge_count()), (3, 3, 6));
    }

    #[test]
    fn star_and_weights() {
        let s = SetSystem::from_compact(&["abc"]).unwrap();
        let g = incidence_graph(&s, Weighting::SizeMinusTwo).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.weight(0), 1);
        let big = SetSystem::from_compact(&["abcde"]).unwrap();
        assert_eq!(incidence_graph(&big, Weighting::SizeMinusTwo).unwrap().weight(0), 3);
        let small = SetSystem::from_compact(&["ab"]).unwrap();
        assert!(incidence_graph(&small, Weighting::SizeMinusTwo).is_err());
    }

    #[test]
    fn skips_taxa_outside_members() {
        let s = SetSystem::from_compact(&["ab"]).unwrap().with_extra_taxa(&["z"]).unwrap();
        let g = incidence_graph(&s, Weighting::Unit).unwrap();
        assert_eq!(g.right_len(), 2);
        assert_eq!(g.surplus(&[0]), 1);
    }
}
