//! Rooted phylogenetic trees over interned taxa.
//!
//! Trees are stored in canonical form: children are ordered by the smallest
//! taxon id below them and vertices are numbered in preorder, so two trees are
//! isomorphic (as leaf-labelled trees) iff they compare equal.

use crate::error::{Error, Result};
use crate::taxa::TaxonId;

use super::triple::{RootedTriple, TripleSet};

/// A tree written as nested children lists; the input to tree construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Nested {
    Leaf(TaxonId),
    Node(Vec<Nested>),
}

impl Nested {
    fn canonicalize(self) -> (Nested, TaxonId) {
        match self {
            Nested::Leaf(t) => (Nested::Leaf(t), t),
            Nested::Node(children) => {
                let mut keyed: Vec<(Nested, TaxonId)> =
                    children.into_iter().map(Nested::canonicalize).collect();
                keyed.sort_by_key(|k| k.1);
                let min = keyed[0].1;
                (Nested::Node(keyed.into_iter().map(|k| k.0).collect()), min)
            }
        }
    }

    fn validate(&self, seen: &mut Vec<TaxonId>) -> Result<()> {
        match self {
            Nested::Leaf(t) => {
                seen.push(*t);
                Ok(())
            }
            Nested::Node(children) => {
                if children.len() < 2 {
                    return Err(Error::input("interior vertex with fewer than two children"));
                }
                children.iter().try_for_each(|c| c.validate(seen))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedPhyloTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    taxon: Vec<Option<TaxonId>>,
    depth: Vec<usize>,
    leaves: Vec<TaxonId>,
    /// `(taxon, vertex)` sorted by taxon.
    leaf_vertex: Vec<(TaxonId, usize)>,
}

impl RootedPhyloTree {
    pub fn from_nested(nested: Nested) -> Result<Self> {
        let mut seen = Vec::new();
        nested.validate(&mut seen)?;
        let count = seen.len();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != count {
            return Err(Error::input("a taxon labels more than one leaf"));
        }
        let (nested, _) = nested.canonicalize();
        let mut tree = RootedPhyloTree {
            parent: Vec::new(),
            children: Vec::new(),
            taxon: Vec::new(),
            depth: Vec::new(),
            leaves: seen,
            leaf_vertex: Vec::new(),
        };
        tree.lay_out(&nested, None, 0);
        tree.leaf_vertex.sort_unstable();
        Ok(tree)
    }

    fn lay_out(&mut self, node: &Nested, parent: Option<usize>, depth: usize) -> usize {
        let v = self.parent.len();
        self.parent.push(parent);
        self.children.push(Vec::new());
        self.depth.push(depth);
        match node {
            Nested::Leaf(t) => {
                self.taxon.push(Some(*t));
                self.leaf_vertex.push((*t, v));
            }
            Nested::Node(children) => {
                self.taxon.push(None);
                for c in children {
                    let w = self.lay_out(c, Some(v), depth + 1);
                    self.children[v].push(w);
                }
            }
        }
        v
    }

    /// The one-vertex tree.
    pub fn leaf(taxon: TaxonId) -> Self {
        Self::from_nested(Nested::Leaf(taxon)).expect("a single leaf is valid")
    }

    /// The rooted caterpillar `(((l0,l1),l2),…)`.
    pub fn caterpillar(sequence: &[TaxonId]) -> Result<Self> {
        let (&first, rest) = sequence
            .split_first()
            .ok_or_else(|| Error::input("a caterpillar needs at least one leaf"))?;
        let nested = rest
            .iter()
            .fold(Nested::Leaf(first), |acc, &t| Nested::Node(vec![acc, Nested::Leaf(t)]));
        Self::from_nested(nested)
    }

    pub fn to_nested(&self) -> Nested {
        self.subtree_nested(self.root())
    }

    pub fn subtree_nested(&self, v: usize) -> Nested {
        match self.taxon[v] {
            Some(t) => Nested::Leaf(t),
            None => Nested::Node(self.children[v].iter().map(|&c| self.subtree_nested(c)).collect()),
        }
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Leaf taxa in id order.
    pub fn leaves(&self) -> &[TaxonId] {
        &self.leaves
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn taxon(&self, v: usize) -> Option<TaxonId> {
        self.taxon[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.taxon[v].is_some()
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| !self.is_leaf(v))
    }

    pub fn leaf_vertex(&self, taxon: TaxonId) -> Option<usize> {
        self.leaf_vertex
            .binary_search_by_key(&taxon, |e| e.0)
            .ok()
            .map(|i| self.leaf_vertex[i].1)
    }

    fn require_leaf(&self, taxon: TaxonId) -> Result<usize> {
        self.leaf_vertex(taxon)
            .ok_or_else(|| Error::input(format!("taxon id {taxon} is not a leaf of the tree")))
    }

    pub fn contains_taxon(&self, taxon: TaxonId) -> bool {
        self.leaf_vertex(taxon).is_some()
    }

    /// Every interior vertex has exactly two children.
    pub fn is_binary(&self) -> bool {
        self.children.iter().all(|c| c.is_empty() || c.len() == 2)
    }

    /// Deepest common ancestor of two vertices.
    pub fn lca_vertices(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].expect("deeper vertex has a parent");
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].expect("deeper vertex has a parent");
        }
        while u != v {
            u = self.parent[u].expect("non-root");
            v = self.parent[v].expect("non-root");
        }
        u
    }

    /// Deepest common ancestor of the leaves carrying `taxa`.
    pub fn lca(&self, taxa: &[TaxonId]) -> Result<usize> {
        let (&first, rest) = taxa
            .split_first()
            .ok_or_else(|| Error::input("lca of an empty taxon set"))?;
        let mut v = self.require_leaf(first)?;
        for &t in rest {
            v = self.lca_vertices(v, self.require_leaf(t)?);
        }
        Ok(v)
    }

    /// Is `u` a proper descendant of `v`?
    pub fn is_strict_descendant(&self, mut u: usize, v: usize) -> bool {
        while let Some(p) = self.parent[u] {
            if p == v {
                return true;
            }
            u = p;
        }
        false
    }

    /// Taxa below `v`, in id order.
    pub fn cluster(&self, v: usize) -> Vec<TaxonId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            match self.taxon[x] {
                Some(t) => out.push(t),
                None => stack.extend(&self.children[x]),
            }
        }
        out.sort_unstable();
        out
    }

    /// `ab|c` is displayed iff `lca(a,b)` lies strictly below `lca(a,c)`.
    pub fn displays_triple(&self, triple: &RootedTriple) -> Result<bool> {
        let (a, b) = triple.cherry();
        let c = triple.outgroup();
        let (va, vb, vc) = (self.require_leaf(a)?, self.require_leaf(b)?, self.require_leaf(c)?);
        let ab = self.lca_vertices(va, vb);
        let ac = self.lca_vertices(va, vc);
        Ok(ab != ac && self.is_strict_descendant(ab, ac))
    }

    /// The vertex a displayed triple `ab|c` supports, namely `lca(a,b)`, or
    /// `None` when the triple is not displayed. Only defined for binary trees.
    pub fn supported_vertex(&self, triple: &RootedTriple) -> Result<Option<usize>> {
        if !self.is_binary() {
            return Err(Error::Precondition("support is only defined for binary trees".into()));
        }
        if !self.displays_triple(triple)? {
            return Ok(None);
        }
        let (a, b) = triple.cherry();
        Ok(Some(self.lca(&[a, b])?))
    }

    /// All displayed triples, ordered by their sorted leaf sets.
    pub fn triples_of(&self) -> TripleSet {
        let leaves = &self.leaves;
        let vertex: Vec<usize> = leaves.iter().map(|&t| self.leaf_vertex(t).unwrap()).collect();
        let mut out = TripleSet::new();
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                let ij = self.lca_vertices(vertex[i], vertex[j]);
                for k in j + 1..leaves.len() {
                    let ik = self.lca_vertices(vertex[i], vertex[k]);
                    let jk = self.lca_vertices(vertex[j], vertex[k]);
                    let (x, y, z) = (leaves[i], leaves[j], leaves[k]);
                    let triple = if ij == ik && ik == jk {
                        continue;
                    } else if ik == jk {
                        RootedTriple::new(x, y, z)
                    } else if ij == jk {
                        RootedTriple::new(x, z, y)
                    } else {
                        RootedTriple::new(y, z, x)
                    };
                    out.insert(triple.expect("distinct leaves"));
                }
            }
        }
        out
    }

    /// The minimal subtree spanning `taxa` with degree-two vertices suppressed.
    pub fn restrict(&self, taxa: &[TaxonId]) -> Result<Self> {
        if taxa.is_empty() {
            return Err(Error::input("cannot restrict to an empty taxon set"));
        }
        let mut keep = vec![false; self.vertex_count()];
        for &t in taxa {
            keep[self.require_leaf(t)?] = true;
        }
        let nested = self.restricted_nested(self.root(), &keep).expect("non-empty restriction");
        Self::from_nested(nested)
    }

    fn restricted_nested(&self, v: usize, keep: &[bool]) -> Option<Nested> {
        if let Some(t) = self.taxon[v] {
            return keep[v].then_some(Nested::Leaf(t));
        }
        let mut kids: Vec<Nested> = self.children[v]
            .iter()
            .filter_map(|&c| self.restricted_nested(c, keep))
            .collect();
        match kids.len() {
            0 => None,
            1 => kids.pop(),
            _ => Some(Nested::Node(kids)),
        }
    }

    /// Whether this tree displays the binary `guest`: every triple of the
    /// guest is displayed here.
    pub fn displays_tree(&self, guest: &RootedPhyloTree) -> Result<bool> {
        if !guest.is_binary() {
            return Err(Error::Precondition("the displayed tree must be binary".into()));
        }
        if let Some(&t) = guest.leaves().iter().find(|&&t| !self.contains_taxon(t)) {
            return Err(Error::input(format!(
                "taxon id {t} of the displayed tree is not a leaf of the host"
            )));
        }
        for triple in guest.triples_of().iter() {
            if !self.displays_triple(triple)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Resolves every vertex with more than two children left-leaning in
    /// canonical child order: children `c1..ck` become `((c1,c2),…),ck`.
    pub fn make_binary(&self) -> Self {
        fn resolve(tree: &RootedPhyloTree, v: usize) -> Nested {
            match tree.taxon[v] {
                Some(t) => Nested::Leaf(t),
                None => {
                    let mut kids = tree.children[v].iter().map(|&c| resolve(tree, c));
                    let first = kids.next().expect("interior vertex has children");
                    kids.fold(first, |acc, k| Nested::Node(vec![acc, k]))
                }
            }
        }
        Self::from_nested(resolve(self, self.root())).expect("refinement of a valid tree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(t: TaxonId) -> Nested {
        Nested::Leaf(t)
    }

    fn node(c: Vec<Nested>) -> Nested {
        Nested::Node(c)
    }

    fn abc() -> RootedPhyloTree {
        RootedPhyloTree::from_nested(node(vec![node(vec![leaf(0), leaf(1)]), leaf(2)])).unwrap()
    }

    #[test]
    fn canonical_form_decides_isomorphism() {
        let t1 = RootedPhyloTree::from_nested(node(vec![leaf(2), node(vec![leaf(1), leaf(0)])])).unwrap();
        assert_eq!(t1, abc());
        assert_eq!(t1.to_nested(), node(vec![node(vec![leaf(0), leaf(1)]), leaf(2)]));
    }

    #[test]
    fn rejects_bad_trees() {
        assert!(RootedPhyloTree::from_nested(node(vec![leaf(0)])).is_err());
        assert!(RootedPhyloTree::from_nested(node(vec![leaf(0), leaf(0)])).is_err());
    }

    #[test]
    fn lca_and_display() {
        let t = abc();
        let cherry = t.lca(&[0, 1]).unwrap();
        assert_eq!(t.children(cherry).len(), 2);
        assert_eq!(t.lca(&[0, 2]).unwrap(), t.root());
        assert!(t.displays_triple(&RootedTriple::new(0, 1, 2).unwrap()).unwrap());
        assert!(!t.displays_triple(&RootedTriple::new(0, 2, 1).unwrap()).unwrap());
        let star = RootedPhyloTree::from_nested(node(vec![leaf(0), leaf(1), leaf(2)])).unwrap();
        assert!(!star.displays_triple(&RootedTriple::new(0, 1, 2).unwrap()).unwrap());
        assert!(t.displays_triple(&RootedTriple::new(0, 1, 3).unwrap()).is_err());
    }

    #[test]
    fn caterpillar_triples() {
        let t = RootedPhyloTree::caterpillar(&[0, 1, 2, 3]).unwrap();
        let got: Vec<RootedTriple> = t.triples_of().iter().copied().collect();
        let want = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
            .map(|(a, b, c)| RootedTriple::new(a, b, c).unwrap());
        assert_eq!(got, want);
        let star = RootedPhyloTree::from_nested(node((0..4).map(leaf).collect())).unwrap();
        assert!(star.triples_of().is_empty());
    }

    #[test]
    fn restriction() {
        let t = abc();
        let r = t.restrict(&[0, 2]).unwrap();
        assert_eq!(r.to_nested(), node(vec![leaf(0), leaf(2)]));
        let big = RootedPhyloTree::caterpillar(&[0, 1, 2, 3, 4]).unwrap();
        let once = big.restrict(&[1, 3, 4]).unwrap();
        assert_eq!(once.restrict(&[1, 3, 4]).unwrap(), once);
        assert!(t.restrict(&[5]).is_err());
    }

    #[test]
    fn display_of_trees() {
        let host = RootedPhyloTree::from_nested(node(vec![
            node(vec![leaf(0), leaf(1)]),
            node(vec![leaf(2), leaf(3)]),
        ]))
        .unwrap();
        assert!(host.displays_tree(&host).unwrap());
        let guest = RootedPhyloTree::from_nested(node(vec![node(vec![leaf(0), leaf(2)]), leaf(1)])).unwrap();
        assert!(!host.displays_tree(&guest).unwrap());
        assert!(host.displays_tree(&abc()).unwrap());
        let guest = RootedPhyloTree::from_nested(node(vec![node(vec![leaf(0), leaf(1)]), leaf(3)])).unwrap();
        assert!(host.displays_tree(&guest).unwrap());
    }

    #[test]
    fn make_binary_is_left_leaning() {
        let star = RootedPhyloTree::from_nested(node((0..4).map(leaf).collect())).unwrap();
        assert_eq!(star.make_binary(), RootedPhyloTree::caterpillar(&[0, 1, 2, 3]).unwrap());
        assert!(star.make_binary().is_binary());
        assert!(!star.is_binary());
    }

    #[test]
    fn supported_vertex_needs_binary_host() {
        let t = abc();
        let v = t.supported_vertex(&RootedTriple::new(0, 1, 2).unwrap()).unwrap();
        assert_eq!(v, Some(t.lca(&[0, 1]).unwrap()));
        let star = RootedPhyloTree::from_nested(node(vec![leaf(0), leaf(1), leaf(2)])).unwrap();
        assert!(star.supported_vertex(&RootedTriple::new(0, 1, 2).unwrap()).is_err());
    }
}
