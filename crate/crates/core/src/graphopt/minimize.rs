//! Exact minimization of `σ` and `γ` over non-empty member selections.
//!
//! Both functions have the form `f(Y) = |N(Y)| - w(Y)` on the incidence graph.
//! For a fixed member `s0` that must be selected, build
//!
//! ```text
//! source --w(s)--> member s        (s0's arc is unbounded)
//! member --∞-----> taxon x         for x ∈ s
//! taxon  --1-----> sink
//! ```
//!
//! A finite cut with source-side members `Y ∋ s0` costs `w(τ) - w(Y) + |N(Y)|`,
//! so `min cut - w(τ) = min { f(Y) : s0 ∈ Y }`. Taking the best forced member
//! gives the minimum over all non-empty `Y`.

use crate::error::{Error, Result};
use crate::report::{Certificate, CheckReport, Method, Stats};
use crate::setsys::{require_min_size, require_uniform, Measure, SetSystem, SubsetSelection};
use crate::taxa::TaxonId;

use super::flow::{max_flow, FlowNetwork};
use super::incidence::{incidence_graph, BipartiteIncidenceGraph, Weighting};

/// An arc crossing the minimum cut, named in system terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CutArc {
    /// The member is on the sink side; its weight is paid.
    SourceToMember(usize),
    /// The taxon is a neighbour of the witness; one unit is paid.
    TaxonToSink(TaxonId),
}

/// Minimum value of `σ` or `γ` with the selection attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizerReport {
    pub value: i64,
    pub witness: SubsetSelection,
    /// Arcs of the certifying cut; their capacities sum to `value + offset`.
    pub cut: Vec<CutArc>,
    /// Total member weight `w(τ)` subtracted from the cut capacity.
    pub offset: i64,
    /// Member whose inclusion was forced in the winning network.
    pub forced: usize,
    pub maxflow_calls: usize,
}

/// Minimizes `|N(Y)| - w(Y)` over non-empty sets `Y` of left vertices.
pub fn minimize_surplus(graph: &BipartiteIncidenceGraph) -> Result<MinimizerReport> {
    let m = graph.left_len();
    if m == 0 {
        return Err(Error::input("cannot minimize over an empty system"));
    }
    if graph.weights().iter().any(|&w| w < 0) {
        return Err(Error::input("member weights must be non-negative"));
    }
    let total_weight: i64 = graph.weights().iter().sum();
    let infinite = 1 + total_weight + graph.right_len() as i64;
    let (source, sink) = (0, 1);
    let member_node = |i: usize| 2 + i;
    let taxon_node = |j: usize| 2 + m + j;

    let mut best: Option<MinimizerReport> = None;
    for forced in 0..m {
        let mut net = FlowNetwork::new(2 + m + graph.right_len(), source, sink);
        for i in 0..m {
            let cap = if i == forced { infinite } else { graph.weight(i) };
            net.add_arc(source, member_node(i), cap);
        }
        for (i, j) in graph.edges() {
            net.add_arc(member_node(i), taxon_node(j), infinite);
        }
        for j in 0..graph.right_len() {
            net.add_arc(taxon_node(j), sink, 1);
        }
        let flow = max_flow(&net);
        if flow.value >= infinite {
            return Err(Error::Internal("forced member arc was cut".into()));
        }
        let value = flow.value - total_weight;
        if best.as_ref().is_some_and(|b| b.value <= value) {
            continue;
        }
        let left: Vec<usize> = (0..m).filter(|&i| flow.source_side[member_node(i)]).collect();
        let cut = flow
            .cut_arcs
            .iter()
            .map(|&a| {
                let arc = net.arcs()[a];
                if arc.from == source {
                    CutArc::SourceToMember(graph.member(arc.to - 2))
                } else {
                    CutArc::TaxonToSink(graph.taxon(arc.from - 2 - m))
                }
            })
            .collect();
        if graph.surplus(&left) != value {
            return Err(Error::Internal(format!(
                "cut value {value} disagrees with the surplus of its source side"
            )));
        }
        let witness = SubsetSelection::new(left.iter().map(|&i| graph.member(i)).collect())?;
        best = Some(MinimizerReport {
            value,
            witness,
            cut,
            offset: total_weight,
            forced: graph.member(forced),
            maxflow_calls: 0,
        });
    }
    let mut best = best.expect("at least one forced member");
    best.maxflow_calls = m;
    Ok(best)
}

fn minimize(system: &SetSystem, measure: Measure) -> Result<MinimizerReport> {
    if system.is_empty() {
        return Err(Error::input("cannot minimize over an empty system"));
    }
    let weighting = match measure {
        Measure::Sigma => Weighting::Unit,
        Measure::Gamma => Weighting::SizeMinusTwo,
    };
    let report = minimize_surplus(&incidence_graph(system, weighting)?)?;
    if measure.evaluate(system, &report.witness)? != report.value {
        return Err(Error::Internal("minimizer witness does not re-evaluate".into()));
    }
    Ok(report)
}

/// `σ*(τ) = min { |L(τ′)| - |τ′| : ∅ ≠ τ′ ⊆ τ }`.
pub fn sigma_star(system: &SetSystem) -> Result<MinimizerReport> {
    minimize(system, Measure::Sigma)
}

/// `γ*(τ) = min { |L(τ′)| - Σ(|s| - 2) : ∅ ≠ τ′ ⊆ τ }`; members need size >= 3.
pub fn gamma_star(system: &SetSystem) -> Result<MinimizerReport> {
    require_min_size(system, 3)?;
    minimize(system, Measure::Gamma)
}

/// Thin test for a system whose members all have size `r`: `σ* >= r - 1`.
///
/// The report's `threshold` stat records `r - 1`; for `r = 2` that is 1.
pub fn is_thin(system: &SetSystem, r: usize) -> Result<CheckReport> {
    require_uniform(system, r)?;
    let min = sigma_star(system)?;
    let threshold = r as i64 - 1;
    let mut stats = Stats::new();
    stats.set("maxflow_calls", min.maxflow_calls as u64);
    stats.set("threshold", threshold as u64);
    Ok(
        CheckReport::new(min.value >= threshold, Method::Mincut, Certificate::Minimizer(min))
            .with_stats(stats),
    )
}

/// Slim test: `γ* >= 2`.
pub fn is_slim(system: &SetSystem) -> Result<CheckReport> {
    let min = gamma_star(system)?;
    let mut stats = Stats::new();
    stats.set("maxflow_calls", min.maxflow_calls as u64);
    stats.set("threshold", 2);
    Ok(CheckReport::new(min.value >= 2, Method::Mincut, Certificate::Minimizer(min)).with_stats(stats))
}
