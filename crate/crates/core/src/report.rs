//! Verdicts and certificates shared by every decision procedure.

use std::collections::BTreeMap;
use std::fmt;

use crate::flex::TreeAssignment;
use crate::graphopt::{IncidenceNode, MinimizerReport};
use crate::represent::Orientation;
use crate::setsys::{ExcessReport, SubsetSelection};
use crate::taxa::TaxonId;

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exhaustive,
    Mincut,
    Bruteforce,
    Forest,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Mincut => "mincut",
            Method::Bruteforce => "bruteforce",
            Method::Forest => "forest",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Two zero-excess subsets whose union or intersection has non-zero excess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchworkViolation {
    pub first: SubsetSelection,
    pub second: SubsetSelection,
}

/// Evidence backing a verdict. Each variant can be re-checked with a library call:
///
/// * `Subset`: re-evaluate the measure on the witness selection.
/// * `Minimizer`: evaluate `sigma`/`gamma` on the witness.
/// * `Assignment`: pool the assigned trees' triples and run `build_supertree`.
/// * `GraphCycle`: walk the cycle in `incidence_graph`.
/// * `Orientation`: run `extend_to_total_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    None,
    Subset(ExcessReport),
    Minimizer(MinimizerReport),
    Assignment(TreeAssignment),
    GraphCycle(Vec<IncidenceNode>),
    Orientation {
        orientation: Orientation,
        cycle: Vec<TaxonId>,
    },
    Patchwork(PatchworkViolation),
}

/// Named counters attached to a report. Ordered so that output is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats(BTreeMap<&'static str, u64>);

impl Stats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &'static str, value: u64) {
        self.0.insert(key, value);
    }

    pub fn add(&mut self, key: &'static str, value: u64) {
        *self.0.entry(key).or_insert(0) += value;
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.0.get(key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, u64)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: bool,
    pub method: Method,
    pub certificate: Certificate,
    pub stats: Stats,
}

impl CheckReport {
    pub fn new(verdict: bool, method: Method, certificate: Certificate) -> Self {
        CheckReport {
            verdict,
            method,
            certificate,
            stats: Stats::new(),
        }
    }

    pub fn with_stats(mut self, stats: Stats) -> Self {
        self.stats = stats;
        self
    }

    /// The minimizer carried by a min-cut report, if any.
    pub fn minimizer(&self) -> Option<&MinimizerReport> {
        match &self.certificate {
            Certificate::Minimizer(m) => Some(m),
            _ => None,
        }
    }
}
