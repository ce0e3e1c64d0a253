//! Rooted and unrooted phylogenetic trees, rooted triples, Newick I/O and
//! the BUILD supertree algorithm.

mod build;
mod newick;
mod tree;
mod triple;
mod unrooted;

pub use build::{build_supertree, build_supertree_on, cluster_graph, is_compatible, BuildOutcome, ClusterGraph};
pub use newick::{parse_newick, parse_newick_standalone, parse_tree_list, write_newick};
pub use tree::{Nested, RootedPhyloTree};
pub use triple::{parse_triple, RootedTriple, TripleSet};
pub use unrooted::UnrootedPhyloTree;
