//! The cluster graph `[R,S]` and the BUILD supertree algorithm.

use crate::error::{Error, Result};
use crate::taxa::TaxonId;

use super::tree::{Nested, RootedPhyloTree};
use super::triple::{RootedTriple, TripleSet};

/// `[R,S]`: vertex set `S`, with `{a,b}` an edge iff some `ab|c ∈ R` has `c ∈ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterGraph {
    pub vertices: Vec<TaxonId>,
    /// Sorted, deduplicated pairs with the smaller id first.
    pub edges: Vec<(TaxonId, TaxonId)>,
}

impl ClusterGraph {
    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<TaxonId>> {
        let pos = |t: TaxonId| self.vertices.binary_search(&t).expect("edge endpoint is a vertex");
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, pos(a)), find(&mut parent, pos(b)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: Vec<Vec<TaxonId>> = Vec::new();
        let mut slot = vec![usize::MAX; self.vertices.len()];
        for i in 0..self.vertices.len() {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(self.vertices[i]);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Builds `[R,S]`. Only triples with all three leaves in `S` contribute.
pub fn cluster_graph(triples: &TripleSet, taxa: &[TaxonId]) -> ClusterGraph {
    let mut vertices = taxa.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let inside = |t: TaxonId| vertices.binary_search(&t).is_ok();
    let mut edges: Vec<(TaxonId, TaxonId)> = triples
        .iter()
        .filter(|t| t.leaves().iter().all(|&x| inside(x)))
        .map(RootedTriple::cherry)
        .collect();
    edges.sort_unstable();
    edges.dedup();
    ClusterGraph { vertices, edges }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildOutcome {
    Tree(RootedPhyloTree),
    /// The first leaf set (in recursion order) whose cluster graph is connected.
    Incompatible { witness: Vec<TaxonId> },
}

impl BuildOutcome {
    pub fn tree(&self) -> Option<&RootedPhyloTree> {
        match self {
            BuildOutcome::Tree(t) => Some(t),
            BuildOutcome::Incompatible { .. } => None,
        }
    }

    pub fn is_compatible(&self) -> bool {
        matches!(self, BuildOutcome::Tree(_))
    }
}

/// BUILD on `L(R)`.
pub fn build_supertree(triples: &TripleSet) -> Result<BuildOutcome> {
    let taxa = triples.leaf_set();
    if taxa.is_empty() {
        return Err(Error::input("BUILD needs at least one taxon"));
    }
    build_supertree_on(triples, &taxa)
}

/// BUILD on an explicit taxon set containing `L(R)`; with no triples the
/// result is the star tree.
pub fn build_supertree_on(triples: &TripleSet, taxa: &[TaxonId]) -> Result<BuildOutcome> {
    let mut s = taxa.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::input("BUILD needs at least one taxon"));
    }
    if let Some(t) = triples.leaf_set().into_iter().find(|t| s.binary_search(t).is_err()) {
        return Err(Error::input(format!("taxon id {t} of a triple is outside the taxon set")));
    }
    let all: Vec<RootedTriple> = triples.iter().copied().collect();
    match build(s, all) {
        Ok(nested) => Ok(BuildOutcome::Tree(RootedPhyloTree::from_nested(nested)?)),
        Err(witness) => Ok(BuildOutcome::Incompatible { witness }),
    }
}

/// Compatibility without assembling the tree.
pub fn is_compatible(triples: &TripleSet) -> bool {
    let taxa = triples.leaf_set();
    taxa.is_empty() || build(taxa, triples.iter().copied().collect()).is_ok()
}

fn build(s: Vec<TaxonId>, triples: Vec<RootedTriple>) -> std::result::Result<Nested, Vec<TaxonId>> {
    if s.len() == 1 {
        return Ok(Nested::Leaf(s[0]));
    }
    let graph = ClusterGraph {
        edges: triples.iter().map(RootedTriple::cherry).collect(),
        vertices: s,
    };
    let components = graph.components();
    if components.len() == 1 {
        return Err(graph.vertices);
    }
    let mut owner = std::collections::HashMap::new();
    for (k, comp) in components.iter().enumerate() {
        for &t in comp {
            owner.insert(t, k);
        }
    }
    let mut parts: Vec<Vec<RootedTriple>> = vec![Vec::new(); components.len()];
    for t in triples {
        let [x, y, z] = t.leaves();
        let k = owner[&x];
        if owner[&y] == k && owner[&z] == k {
            parts[k].push(t);
        }
    }
    let children = components
        .into_iter()
        .zip(parts)
        .map(|(comp, part)| build(comp, part))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Nested::Node(children))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phylo::newick::{parse_newick, write_newick};
    use crate::phylo::triple::parse_triple;
    use crate::taxa::Universe;

    fn universe() -> Universe {
        Universe::new(["a", "b", "c", "d", "e", "f"]).unwrap()
    }

    fn triples(u: &Universe, lines: &[&str]) -> TripleSet {
        lines.iter().map(|l| parse_triple(l, u).unwrap()).collect()
    }

    #[test]
    fn four_triples_assignment_is_incompatible() {
        let u = universe();
        let r = triples(&u, &["a,b|c", "b,d|a", "b,c|e", "d,f|e", "b,e|d"]);
        let g = cluster_graph(&r, &u.ids().collect::<Vec<_>>());
        assert_eq!(g.edges, vec![(0, 1), (1, 2), (1, 3), (1, 4), (3, 5)]);
        assert!(g.is_connected());
        assert_eq!(
            build_supertree(&r).unwrap(),
            BuildOutcome::Incompatible {
                witness: vec![0, 1, 2, 3, 4, 5]
            }
        );
    }

    #[test]
    fn cluster_graph_ignores_outside_outgroups() {
        let u = universe();
        let r = triples(&u, &["a,b|c"]);
        assert!(cluster_graph(&r, &[0, 1]).edges.is_empty());
        assert_eq!(cluster_graph(&r, &[0, 1, 2]).edges, vec![(0, 1)]);
    }

    #[test]
    fn small_builds() {
        let u = universe();
        let t = build_supertree(&triples(&u, &["a,b|c"])).unwrap();
        assert_eq!(write_newick(t.tree().unwrap(), &u), "((a,b),c);");
        let r = triples(&u, &["a,b|c", "b,c|d"]);
        let t = build_supertree(&r).unwrap();
        let tree = t.tree().unwrap();
        assert_eq!(write_newick(tree, &u), "(((a,b),c),d);");
        assert!(r.iter().all(|x| tree.displays_triple(x).unwrap()));
    }

    #[test]
    fn star_for_no_triples() {
        let u = universe();
        let t = build_supertree_on(&TripleSet::new(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(write_newick(t.tree().unwrap(), &u), "(a,b,c,d);");
        assert!(build_supertree(&TripleSet::new()).is_err());
    }

    #[test]
    fn recovers_binary_tree() {
        let u = universe();
        let t = parse_newick("((a,(b,c)),((d,e),f));", &u).unwrap();
        let built = build_supertree(&t.triples_of()).unwrap();
        assert_eq!(built.tree(), Some(&t));
    }
}
