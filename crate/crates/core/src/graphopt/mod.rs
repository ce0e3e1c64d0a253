//! Incidence graphs, flows and matchings: polynomial thin/slim tests,
//! distinct representatives and the forest characterizations for pairs.

mod flow;
mod forest;
mod incidence;
mod matching;
mod minimize;

pub use flow::{max_flow, FlowArc, FlowNetwork, FlowResult};
pub use forest::{is_forest, surplus_forest, verify_surplus_forest, ForestCheck, SurplusForest};
pub use incidence::{incidence_graph, BipartiteIncidenceGraph, IncidenceNode, Weighting};
pub use matching::{hall_violator, maximum_matching, sdr, Matching, SdrOutcome};
pub use minimize::{
    gamma_star, is_slim, is_thin, minimize_surplus, sigma_star, CutArc, MinimizerReport,
};
