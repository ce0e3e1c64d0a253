//! Unrooted phylogenetic trees and medians of leaf triples.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::taxa::{TaxonId, Universe};

use super::newick::write_nested;
use super::tree::{Nested, RootedPhyloTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrootedPhyloTree {
    adjacency: Vec<Vec<usize>>,
    taxon: Vec<Option<TaxonId>>,
    /// `(taxon, vertex)` sorted by taxon.
    leaf_vertex: Vec<(TaxonId, usize)>,
}

impl UnrootedPhyloTree {
    /// Builds a tree on vertices `0..vertex_count` from its edges; `leaves`
    /// labels exactly the degree-one vertices.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(usize, usize)],
        leaves: &[(usize, TaxonId)],
    ) -> Result<Self> {
        if vertex_count == 0 || edges.len() + 1 != vertex_count {
            return Err(Error::input("a tree on n vertices has n - 1 edges"));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count || u == v {
                return Err(Error::input(format!("invalid edge ({u}, {v})")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        let mut taxon = vec![None; vertex_count];
        let mut leaf_vertex = Vec::with_capacity(leaves.len());
        for &(v, t) in leaves {
            if v >= vertex_count || taxon[v].is_some() {
                return Err(Error::input(format!("invalid leaf vertex {v}")));
            }
            taxon[v] = Some(t);
            leaf_vertex.push((t, v));
        }
        leaf_vertex.sort_unstable();
        if leaf_vertex.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::input("a taxon labels more than one leaf"));
        }
        let tree = UnrootedPhyloTree {
            adjacency,
            taxon,
            leaf_vertex,
        };
        if tree.distances(0).contains(&usize::MAX) {
            return Err(Error::input("the edges do not form a connected tree"));
        }
        for v in 0..vertex_count {
            let deg = tree.adjacency[v].len();
            match tree.taxon[v] {
                Some(_) if deg > 1 => return Err(Error::input(format!("labelled vertex {v} is not a leaf"))),
                None if deg < 3 => {
                    return Err(Error::input(format!("unlabelled vertex {v} has degree {deg} < 3")))
                }
                _ => {}
            }
        }
        Ok(tree)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn taxon(&self, v: usize) -> Option<TaxonId> {
        self.taxon[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.taxon[v].is_some()
    }

    /// Leaf taxa in id order.
    pub fn leaves(&self) -> Vec<TaxonId> {
        self.leaf_vertex.iter().map(|e| e.0).collect()
    }

    pub fn leaf_vertex(&self, taxon: TaxonId) -> Option<usize> {
        self.leaf_vertex
            .binary_search_by_key(&taxon, |e| e.0)
            .ok()
            .map(|i| self.leaf_vertex[i].1)
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| !self.is_leaf(v))
    }

    /// Every interior vertex has degree three.
    pub fn is_binary(&self) -> bool {
        self.interior_vertices().all(|v| self.adjacency[v].len() == 3)
    }

    /// Interior vertices adjacent to at least two leaves.
    pub fn cherry_count(&self) -> usize {
        self.interior_vertices()
            .filter(|&v| self.adjacency[v].iter().filter(|&&w| self.is_leaf(w)).count() >= 2)
            .count()
    }

    /// Binary with at most two cherries.
    pub fn is_caterpillar(&self) -> bool {
        self.is_binary() && self.cherry_count() <= 2
    }

    fn distances(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// The unique vertex lying on all three paths between the given leaves.
    pub fn median(&self, taxa: &[TaxonId]) -> Result<usize> {
        let [a, b, c] = taxa else {
            return Err(Error::input("a median needs exactly three taxa"));
        };
        if a == b || a == c || b == c {
            return Err(Error::input("a median needs three distinct taxa"));
        }
        let vertex = |t: TaxonId| {
            self.leaf_vertex(t)
                .ok_or_else(|| Error::input(format!("taxon id {t} is not a leaf of the tree")))
        };
        let (va, vb, vc) = (vertex(*a)?, vertex(*b)?, vertex(*c)?);
        let (da, db, dc) = (self.distances(va), self.distances(vb), self.distances(vc));
        // The median sits at total distance half the perimeter of the three paths.
        let half = (da[vb] + da[vc] + db[vc]) / 2;
        (0..self.vertex_count())
            .find(|&v| da[v] + db[v] + dc[v] == half)
            .ok_or_else(|| Error::Internal("no median vertex found".into()))
    }

    /// Rooted view hanging from the interior neighbour of the smallest leaf,
    /// or from that leaf's neighbour when the tree has two leaves.
    pub fn to_nested(&self) -> Nested {
        let Some(&(_, leaf)) = self.leaf_vertex.first() else {
            return Nested::Node(Vec::new());
        };
        if self.vertex_count() == 1 {
            return Nested::Leaf(self.taxon[leaf].unwrap());
        }
        if self.vertex_count() == 2 {
            let other = self.adjacency[leaf][0];
            return Nested::Node(vec![
                Nested::Leaf(self.taxon[leaf].unwrap()),
                Nested::Leaf(self.taxon[other].unwrap()),
            ]);
        }
        let root = self.adjacency[leaf][0];
        self.hang(root, usize::MAX)
    }

    fn hang(&self, v: usize, from: usize) -> Nested {
        match self.taxon[v] {
            Some(t) => Nested::Leaf(t),
            None => Nested::Node(
                self.adjacency[v]
                    .iter()
                    .filter(|&&w| w != from)
                    .map(|&w| self.hang(w, v))
                    .collect(),
            ),
        }
    }

    /// Canonical Newick for the rooted view of [`Self::to_nested`].
    pub fn to_newick(&self, universe: &Universe) -> String {
        let canonical = RootedPhyloTree::from_nested(self.to_nested()).map(|t| t.to_nested());
        let mut out = String::new();
        write_nested(&canonical.unwrap_or_else(|_| self.to_nested()), universe, &mut out);
        out.push(';');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ((a,b),(c,d)) unrooted: vertices 0,1 interior, 2..6 leaves a..d.
    fn quartet() -> UnrootedPhyloTree {
        UnrootedPhyloTree::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
            &[(2, 0), (3, 1), (4, 2), (5, 3)],
        )
        .unwrap()
    }

    #[test]
    fn quartet_medians() {
        let q = quartet();
        assert_eq!(q.median(&[0, 1, 2]).unwrap(), 0);
        assert_eq!(q.median(&[0, 2, 3]).unwrap(), 1);
        assert!(q.median(&[0, 1]).is_err());
        assert!(q.median(&[0, 1, 9]).is_err());
        assert!(q.is_caterpillar());
        assert_eq!(q.cherry_count(), 2);
    }

    #[test]
    fn newick_view() {
        let u = Universe::new(["a", "b", "c", "d"]).unwrap();
        assert_eq!(quartet().to_newick(&u), "(a,b,(c,d));");
    }

    #[test]
    fn validation() {
        assert!(UnrootedPhyloTree::from_edges(3, &[(0, 1), (0, 2)], &[(1, 0), (2, 1)]).is_err());
        assert!(UnrootedPhyloTree::from_edges(4, &[(0, 1), (0, 2)], &[]).is_err());
        let star = UnrootedPhyloTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)], &[(1, 0), (2, 1), (3, 2)]).unwrap();
        assert_eq!(star.median(&[0, 1, 2]).unwrap(), 0);
    }
}
