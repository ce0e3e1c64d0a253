//! Caterpillar median and lca representations, and total-order flexibility
//! of pair systems.

mod caterpillar;
mod lca;
mod order;

use crate::error::{Error, Result};
use crate::graphopt::is_thin;
use crate::phylo::{write_newick, RootedPhyloTree, UnrootedPhyloTree};
use crate::report::Stats;
use crate::setsys::{require_uniform, SetSystem};
use crate::taxa::{TaxonId, Universe};

pub use order::{
    extend_to_total_order, is_total_order_flexible, OrderMode, OrderOutcome, Orientation, ORIENTATION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepresentedTree {
    Unrooted(UnrootedPhyloTree),
    Rooted(RootedPhyloTree),
}

impl RepresentedTree {
    pub fn newick(&self, universe: &Universe) -> String {
        match self {
            RepresentedTree::Unrooted(t) => t.to_newick(universe),
            RepresentedTree::Rooted(t) => write_newick(t, universe),
        }
    }
}

/// A caterpillar together with the vertex each member maps to.
///
/// Unrooted caterpillars number their interior vertices `0..n-2` along the
/// spine from the `l0` end, then the leaves `l0…l(n-1)`. Rooted caterpillars
/// number vertices in preorder, so the spine runs `0..n-1` from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationReport {
    pub tree: RepresentedTree,
    /// Leaf order along the caterpillar.
    pub sequence: Vec<TaxonId>,
    /// `vertex_map[i]` is the median (or lca) vertex of member `i`.
    pub vertex_map: Vec<usize>,
    /// Taxa of the universe that belong to no member; they sit at the end of the sequence.
    pub appended: Vec<TaxonId>,
    /// Recomputed injectivity of `vertex_map`; always true for returned reports.
    pub verified: bool,
    pub stats: Stats,
}

/// Result of [`verify_median_injective`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianCheck {
    pub injective: bool,
    pub medians: Vec<usize>,
    /// Two members sharing a median, when not injective.
    pub collision: Option<(usize, usize)>,
}

/// Computes the median of every member and checks that they are distinct.
pub fn verify_median_injective(tree: &UnrootedPhyloTree, system: &SetSystem) -> Result<MedianCheck> {
    require_uniform(system, 3)?;
    let medians = system
        .members()
        .iter()
        .map(|m| tree.median(m))
        .collect::<Result<Vec<_>>>()?;
    let collision = first_collision(&medians);
    Ok(MedianCheck {
        injective: collision.is_none(),
        medians,
        collision,
    })
}

fn first_collision(values: &[usize]) -> Option<(usize, usize)> {
    for j in 0..values.len() {
        for i in 0..j {
            if values[i] == values[j] {
                return Some((i, j));
            }
        }
    }
    None
}

fn require_thin(system: &SetSystem, r: usize) -> Result<()> {
    let report = is_thin(system, r)?;
    if report.verdict {
        return Ok(());
    }
    let min = report.minimizer().expect("min-cut report");
    let witness: Vec<String> = min.witness.iter().map(|i| system.render_member(i)).collect();
    Err(Error::Precondition(format!(
        "the system is not thin: σ* = {} < {} on {{{}}}",
        min.value,
        r - 1,
        witness.join("; ")
    )))
}

fn appended(system: &SetSystem) -> Vec<TaxonId> {
    let leaves = system.leaf_set();
    system.universe().ids().filter(|t| leaves.binary_search(t).is_err()).collect()
}

/// The unrooted caterpillar with the given leaf sequence, numbered as in
/// [`RepresentationReport`].
pub fn unrooted_caterpillar(sequence: &[TaxonId]) -> Result<UnrootedPhyloTree> {
    let n = sequence.len();
    if n < 3 {
        return Err(Error::input("an unrooted caterpillar needs at least three leaves"));
    }
    let interior = n - 2;
    let mut edges: Vec<(usize, usize)> = (1..interior).map(|k| (k - 1, k)).collect();
    let mut leaves = Vec::with_capacity(n);
    for (i, &t) in sequence.iter().enumerate() {
        let v = interior + i;
        edges.push((i.clamp(1, n - 2) - 1, v));
        leaves.push((v, t));
    }
    UnrootedPhyloTree::from_edges(interior + n, &edges, &leaves)
}

/// An unrooted caterpillar on the whole universe on which distinct members
/// have distinct medians. Needs a thin system of 3-sets over at least four
/// taxa.
pub fn caterpillar_median_representation(system: &SetSystem) -> Result<RepresentationReport> {
    require_uniform(system, 3)?;
    if system.is_empty() {
        return Err(Error::input("cannot represent an empty system"));
    }
    if system.universe().len() < 4 {
        return Err(Error::Precondition("a caterpillar representation needs at least four taxa".into()));
    }
    require_thin(system, 3)?;
    let members: Vec<caterpillar::Member3> =
        system.members().iter().map(|m| [m[0], m[1], m[2]]).collect();
    let taxa: Vec<TaxonId> = system.universe().ids().collect();
    let mut stats = Stats::new();
    let sequence = caterpillar::build(&members, &taxa, &mut stats)
        .ok_or_else(|| Error::Internal("no caterpillar representation was found".into()))?;
    let tree = unrooted_caterpillar(&sequence)?;
    let check = verify_median_injective(&tree, system)?;
    let interior = sequence.len() - 2;
    if !check.injective || !tree.is_caterpillar() || check.medians.iter().any(|&v| v >= interior) {
        return Err(Error::Internal("caterpillar representation failed verification".into()));
    }
    Ok(RepresentationReport {
        tree: RepresentedTree::Unrooted(tree),
        sequence,
        vertex_map: check.medians,
        appended: appended(system),
        verified: true,
        stats,
    })
}

/// A rooted caterpillar on the whole universe on which distinct pairs have
/// distinct lcas. Needs a thin system of 2-sets.
pub fn lca_caterpillar_representation(system: &SetSystem) -> Result<RepresentationReport> {
    require_uniform(system, 2)?;
    if system.is_empty() {
        return Err(Error::input("cannot represent an empty system"));
    }
    require_thin(system, 2)?;
    let members: Vec<lca::Pair> = system.members().iter().map(|m| [m[0], m[1]]).collect();
    let taxa: Vec<TaxonId> = system.universe().ids().collect();
    let sequence = lca::build(&members, &taxa)
        .ok_or_else(|| Error::Internal("no lca caterpillar was found".into()))?;
    let tree = RootedPhyloTree::caterpillar(&sequence)?;
    let vertex_map = system
        .members()
        .iter()
        .map(|m| tree.lca(m))
        .collect::<Result<Vec<_>>>()?;
    if first_collision(&vertex_map).is_some() || vertex_map.iter().any(|&v| tree.is_leaf(v)) {
        return Err(Error::Internal("lca caterpillar failed verification".into()));
    }
    Ok(RepresentationReport {
        tree: RepresentedTree::Rooted(tree),
        sequence,
        vertex_map,
        appended: appended(system),
        verified: true,
        stats: Stats::new(),
    })
}
