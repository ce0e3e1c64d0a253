//! Brute-force phylogenetic flexibility: try every binary tree on every member.

use crate::error::{Error, Result};
use crate::phylo::{is_compatible, RootedPhyloTree, RootedTriple, TripleSet};
use crate::report::{Certificate, CheckReport, Method, Stats};
use crate::setsys::{require_min_size, SetSystem};

use super::enumerate::{enumerate_binary_trees, rooted_binary_tree_count, DEFAULT_ENUMERATION_CAP};

/// Default largest number of assignments a brute-force scan may visit.
pub const DEFAULT_BRUTEFORCE_BUDGET: u128 = 1_000_000;

/// One binary tree per member, with leaf set equal to that member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeAssignment {
    /// Indexed like the system's members.
    pub trees: Vec<RootedPhyloTree>,
}

impl TreeAssignment {
    /// Union of the triples displayed by the assigned trees.
    pub fn pooled_triples(&self) -> TripleSet {
        self.trees.iter().flat_map(|t| t.triples_of().as_slice().to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlexReport {
    pub verdict: bool,
    /// The first incompatible assignment in scan order.
    pub counterexample: Option<TreeAssignment>,
    pub assignments_checked: u64,
}

impl From<FlexReport> for CheckReport {
    fn from(r: FlexReport) -> Self {
        let mut stats = Stats::new();
        stats.set("assignments_checked", r.assignments_checked);
        let certificate = r.counterexample.map_or(Certificate::None, Certificate::Assignment);
        CheckReport::new(r.verdict, Method::Bruteforce, certificate).with_stats(stats)
    }
}

/// Number of assignments, `Π (2|s| - 3)!!`, or `None` on overflow.
pub fn assignment_count(system: &SetSystem) -> Option<u128> {
    system
        .members()
        .iter()
        .try_fold(1u128, |acc, m| acc.checked_mul(rooted_binary_tree_count(m.len())?))
}

pub fn is_flexible_bruteforce(system: &SetSystem) -> Result<FlexReport> {
    is_flexible_bruteforce_with_budget(system, DEFAULT_BRUTEFORCE_BUDGET)
}

/// Scans assignments with a mixed-radix counter (first member most
/// significant), pooling triples and running BUILD on each.
pub fn is_flexible_bruteforce_with_budget(system: &SetSystem, budget: u128) -> Result<FlexReport> {
    if system.is_empty() {
        return Err(Error::input("flexibility of an empty system"));
    }
    require_min_size(system, 3)?;
    let total = assignment_count(system).unwrap_or(u128::MAX);
    let largest = system.members().iter().map(Vec::len).max().unwrap_or(0);
    if total > budget || largest > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "brute-force assignments",
            requested: total,
            limit: budget,
            hint: "use the polynomial thin/slim test instead",
        });
    }
    let choices: Vec<Vec<RootedPhyloTree>> = system
        .members()
        .iter()
        .map(|m| enumerate_binary_trees(m))
        .collect::<Result<_>>()?;
    let triples: Vec<Vec<Vec<RootedTriple>>> = choices
        .iter()
        .map(|trees| trees.iter().map(|t| t.triples_of().as_slice().to_vec()).collect())
        .collect();

    let m = choices.len();
    let mut digits = vec![0usize; m];
    let mut checked = 0u64;
    loop {
        checked += 1;
        let pooled: TripleSet = (0..m).flat_map(|i| triples[i][digits[i]].iter().copied()).collect();
        if !is_compatible(&pooled) {
            let trees = (0..m).map(|i| choices[i][digits[i]].clone()).collect();
            return Ok(FlexReport {
                verdict: false,
                counterexample: Some(TreeAssignment { trees }),
                assignments_checked: checked,
            });
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(FlexReport {
                    verdict: true,
                    counterexample: None,
                    assignments_checked: checked,
                });
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < choices[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phylo::build_supertree;

    fn sys(sets: &[&str]) -> SetSystem {
        SetSystem::from_compact(sets).unwrap()
    }

    #[test]
    fn four_triples_is_flexible_over_81() {
        let r = is_flexible_bruteforce(&sys(&["abc", "abd", "bce", "def"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.assignments_checked, 81);
    }

    #[test]
    fn five_triples_counterexample_is_incompatible() {
        let r = is_flexible_bruteforce(&sys(&["abc", "abd", "bce", "def", "bde"])).unwrap();
        assert!(!r.verdict);
        let bad = r.counterexample.unwrap();
        assert!(!build_supertree(&bad.pooled_triples()).unwrap().is_compatible());
    }

    #[test]
    fn single_member_and_budget() {
        assert!(is_flexible_bruteforce(&sys(&["abcd"])).unwrap().verdict);
        let big = sys(&["abcde", "abcdf"]);
        assert!(matches!(
            is_flexible_bruteforce_with_budget(&big, 100),
            Err(Error::CapExceeded { .. })
        ));
        assert!(is_flexible_bruteforce(&sys(&["ab"])).is_err());
    }
}
