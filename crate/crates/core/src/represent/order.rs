//! Orientations of pair systems and their extension to total orders.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graphopt::{incidence_graph, is_forest, Weighting};
use crate::report::{Certificate, CheckReport, Method, Stats};
use crate::setsys::{require_uniform, SetSystem};
use crate::taxa::TaxonId;

/// Largest pair system scanned by the brute-force orientation check.
pub const ORIENTATION_CAP: usize = 20;

/// A direction for each pair: `(x, y)` means `x ≺ y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub pairs: Vec<(TaxonId, TaxonId)>,
}

impl Orientation {
    /// Orientation of a pair system's members: bit `i` of `mask` set means the
    /// larger id of member `i` comes first.
    pub fn from_mask(system: &SetSystem, mask: u64) -> Self {
        let pairs = system
            .members()
            .iter()
            .enumerate()
            .map(|(i, m)| {
                if mask >> i & 1 == 1 {
                    (m[1], m[0])
                } else {
                    (m[0], m[1])
                }
            })
            .collect();
        Orientation { pairs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderOutcome {
    Order(Vec<TaxonId>),
    /// `x1 ≺ x2 ≺ … ≺ xk ≺ x1`, starting at the smallest id.
    Cycle(Vec<TaxonId>),
}

/// Topological extension taking the smallest available taxon first, or a
/// directed cycle when none exists.
pub fn extend_to_total_order(taxa: &[TaxonId], orientation: &Orientation) -> Result<OrderOutcome> {
    let mut ids = taxa.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let index = |t: TaxonId| {
        ids.binary_search(&t)
            .map_err(|_| Error::input(format!("taxon id {t} is not in the ordered set")))
    };
    let n = ids.len();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for &(x, y) in &orientation.pairs {
        let (i, j) = (index(x)?, index(y)?);
        if i == j {
            return Err(Error::input("an oriented pair needs two distinct taxa"));
        }
        succ[i].push(j);
        pred[j].push(i);
        indegree[j] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while let Some(Reverse(i)) = heap.pop() {
        order.push(ids[i]);
        done[i] = true;
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                heap.push(Reverse(j));
            }
        }
    }
    if order.len() == n {
        return Ok(OrderOutcome::Order(order));
    }
    // Every remaining vertex has a remaining predecessor; walk back until a repeat.
    let start = (0..n).find(|&i| !done[i]).expect("a vertex remains");
    let mut seen_at = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while seen_at[v] == usize::MAX {
        seen_at[v] = walk.len();
        walk.push(v);
        v = *pred[v].iter().find(|&&p| !done[p]).expect("remaining vertex has a remaining predecessor");
    }
    let mut cycle: Vec<usize> = walk[seen_at[v]..].to_vec();
    cycle.reverse();
    let min_at = (0..cycle.len()).min_by_key(|&k| cycle[k]).expect("non-empty cycle");
    cycle.rotate_left(min_at);
    Ok(OrderOutcome::Cycle(cycle.into_iter().map(|i| ids[i]).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    Bruteforce,
    Forest,
}

/// Whether every orientation of the pairs extends to a total order on the universe.
pub fn is_total_order_flexible(system: &SetSystem, mode: OrderMode) -> Result<CheckReport> {
    require_uniform(system, 2)?;
    if system.is_empty() {
        return Err(Error::input("total-order flexibility of an empty system"));
    }
    match mode {
        OrderMode::Forest => {
            let check = is_forest(&incidence_graph(system, Weighting::Unit)?);
            let certificate = check.cycle.map_or(Certificate::None, Certificate::GraphCycle);
            Ok(CheckReport::new(check.is_forest, Method::Forest, certificate))
        }
        OrderMode::Bruteforce => {
            if system.len() > ORIENTATION_CAP {
                return Err(Error::CapExceeded {
                    what: "orientation scan members",
                    requested: system.len() as u128,
                    limit: ORIENTATION_CAP as u128,
                    hint: "use the forest test instead",
                });
            }
            let taxa: Vec<TaxonId> = system.universe().ids().collect();
            for mask in 0..1u64 << system.len() {
                let orientation = Orientation::from_mask(system, mask);
                if let OrderOutcome::Cycle(cycle) = extend_to_total_order(&taxa, &orientation)? {
                    let mut stats = Stats::new();
                    stats.set("orientations_checked", mask + 1);
                    return Ok(CheckReport::new(
                        false,
                        Method::Bruteforce,
                        Certificate::Orientation { orientation, cycle },
                    )
                    .with_stats(stats));
                }
            }
            let mut stats = Stats::new();
            stats.set("orientations_checked", 1 << system.len());
            Ok(CheckReport::new(true, Method::Bruteforce, Certificate::None).with_stats(stats))
        }
    }
}
