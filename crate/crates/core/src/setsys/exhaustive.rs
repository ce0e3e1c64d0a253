//! Exhaustive (subset-enumerating) versions of the thin and slim tests.
//!
//! These scan all `2^m - 1` non-empty selections and serve as ground truth for
//! the polynomial routines in [`crate::graphopt`].

use crate::error::{Error, Result};
use crate::report::{Certificate, CheckReport, Method, PatchworkViolation, Stats};

use super::{ExcessReport, SetSystem, SubsetSelection};

/// Largest member count accepted by the exhaustive scans unless overridden.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 16;

const HARD_CAP: usize = 40;

/// The two surplus-type measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    /// `|L| - |S|`
    Sigma,
    /// `|L| - Σ(|s| - 2)`
    Gamma,
}

impl Measure {
    pub(crate) fn member_weight(self, size: usize) -> i64 {
        match self {
            Measure::Sigma => 1,
            Measure::Gamma => size as i64 - 2,
        }
    }

    pub fn evaluate(self, system: &SetSystem, selection: &SubsetSelection) -> Result<i64> {
        match self {
            Measure::Sigma => system.sigma(selection),
            Measure::Gamma => system.gamma(selection),
        }
    }
}

fn check_cap(system: &SetSystem, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if system.len() > cap {
        return Err(Error::CapExceeded {
            what: "exhaustive subset scan",
            requested: system.len() as u128,
            limit: cap as u128,
            hint: "use the min-cut routines in graphopt (graphopt::is_thin / graphopt::is_slim)",
        });
    }
    Ok(())
}

/// `true` when selection `a` precedes `b` in the witness order
/// (smaller cardinality, then lexicographically smaller index list).
fn mask_precedes(a: u64, b: u64) -> bool {
    let (ca, cb) = (a.count_ones(), b.count_ones());
    if ca != cb {
        return ca < cb;
    }
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

/// Minimum of `measure` over all non-empty selections, with the witness chosen
/// by smallest cardinality and then canonical order.
pub fn minimize_exhaustive(
    system: &SetSystem,
    measure: Measure,
    cap: usize,
) -> Result<ExcessReport> {
    if system.is_empty() {
        return Err(Error::input("cannot minimize over an empty system"));
    }
    check_cap(system, cap)?;
    if measure == Measure::Gamma {
        if let Some((i, m)) = system.members().iter().enumerate().find(|(_, m)| m.len() < 2) {
            return Err(Error::MemberTooSmall {
                member: i,
                minimum: 2,
                found: m.len(),
            });
        }
    }
    let m = system.len();
    let weights: Vec<i64> = system
        .members()
        .iter()
        .map(|s| measure.member_weight(s.len()))
        .collect();
    let mut counts = vec![0u32; system.universe().len()];
    let mut leaves = 0i64;
    let mut weight = 0i64;
    let mut mask = 0u64;
    let mut best: Option<(i64, u64, i64)> = None;

    // Gray-code walk: one member enters or leaves per step.
    for step in 1u64..(1u64 << m) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        let entering = mask >> bit & 1 == 1;
        for &t in system.member(bit) {
            if entering {
                counts[t] += 1;
                if counts[t] == 1 {
                    leaves += 1;
                }
            } else {
                counts[t] -= 1;
                if counts[t] == 0 {
                    leaves -= 1;
                }
            }
        }
        weight += if entering { weights[bit] } else { -weights[bit] };
        let value = leaves - weight;
        let better = match best {
            None => true,
            Some((v, bm, _)) => value < v || (value == v && mask_precedes(mask, bm)),
        };
        if better {
            best = Some((value, mask, leaves));
        }
    }
    let (value, mask, leaves) = best.expect("non-empty system has a non-empty selection");
    Ok(ExcessReport {
        value,
        witness: SubsetSelection::from_mask(mask),
        leaf_count: leaves as usize,
    })
}

/// Exhaustive thin test with the default cap.
pub fn is_thin_exhaustive(system: &SetSystem, r: usize) -> Result<CheckReport> {
    is_thin_exhaustive_with_cap(system, r, DEFAULT_EXHAUSTIVE_CAP)
}

/// Scans every non-empty selection for negative uniform excess.
///
/// The certificate is the selection of minimum excess (a violator when the
/// verdict is false).
pub fn is_thin_exhaustive_with_cap(system: &SetSystem, r: usize, cap: usize) -> Result<CheckReport> {
    require_uniform(system, r)?;
    let min = minimize_exhaustive(system, Measure::Sigma, cap)?;
    let excess = ExcessReport {
        value: min.value - (r as i64 - 1),
        ..min
    };
    let mut stats = Stats::new();
    stats.set("subsets_scanned", (1u64 << system.len()) - 1);
    Ok(
        CheckReport::new(excess.value >= 0, Method::Exhaustive, Certificate::Subset(excess))
            .with_stats(stats),
    )
}

/// Exhaustive slim test with the default cap.
pub fn is_slim_exhaustive(system: &SetSystem) -> Result<CheckReport> {
    is_slim_exhaustive_with_cap(system, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn is_slim_exhaustive_with_cap(system: &SetSystem, cap: usize) -> Result<CheckReport> {
    require_min_size(system, 3)?;
    let min = minimize_exhaustive(system, Measure::Gamma, cap)?;
    let excess = ExcessReport {
        value: min.value - 2,
        ..min
    };
    let mut stats = Stats::new();
    stats.set("subsets_scanned", (1u64 << system.len()) - 1);
    Ok(
        CheckReport::new(excess.value >= 0, Method::Exhaustive, Certificate::Subset(excess))
            .with_stats(stats),
    )
}

pub(crate) fn require_uniform(system: &SetSystem, r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::input("thinness needs r >= 2"));
    }
    if system.is_empty() {
        return Err(Error::input("the set system is empty"));
    }
    for (i, m) in system.members().iter().enumerate() {
        if m.len() != r {
            return Err(Error::UniformSize {
                member: i,
                expected: r,
                found: m.len(),
            });
        }
    }
    Ok(())
}

pub(crate) fn require_min_size(system: &SetSystem, minimum: usize) -> Result<()> {
    if system.is_empty() {
        return Err(Error::input("the set system is empty"));
    }
    for (i, m) in system.members().iter().enumerate() {
        if m.len() < minimum {
            return Err(Error::MemberTooSmall {
                member: i,
                minimum,
                found: m.len(),
            });
        }
    }
    Ok(())
}

/// The four values of a submodularity check `f(A) + f(B) >= f(A ∪ B) + f(A ∩ B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubmodularCheck {
    pub holds: bool,
    pub first: i64,
    pub second: i64,
    pub union: i64,
    pub intersection: i64,
}

pub fn check_submodular_pair(
    measure: Measure,
    system: &SetSystem,
    first: &SubsetSelection,
    second: &SubsetSelection,
) -> Result<SubmodularCheck> {
    let f = |s: &SubsetSelection| measure.evaluate(system, s);
    let (a, b) = (f(first)?, f(second)?);
    let union = f(&first.union(second))?;
    let intersection = f(&first.intersection(second))?;
    Ok(SubmodularCheck {
        holds: a + b >= union + intersection,
        first: a,
        second: b,
        union,
        intersection,
    })
}

/// Checks that the zero-excess selections of a slim system form a patchwork:
/// for intersecting `A`, `B` in the family, `A ∪ B` and `A ∩ B` are in it too.
pub fn patchwork_check(system: &SetSystem) -> Result<CheckReport> {
    let slim = is_slim_exhaustive(system)?;
    if !slim.verdict {
        return Err(Error::Precondition(
            "patchwork check requires a slim system".into(),
        ));
    }
    let m = system.len();
    let weights: Vec<i64> = system.members().iter().map(|s| s.len() as i64 - 2).collect();
    let full = 1usize << m;
    let mut zero = vec![false; full];
    let mut family = Vec::new();
    let mut counts = vec![0u32; system.universe().len()];
    #[allow(clippy::needless_range_loop)]
    for mask in 1..full {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut leaves = 0i64;
        let mut weight = 0i64;
        for (i, w) in weights.iter().enumerate() {
            if mask >> i & 1 == 1 {
                weight += w;
                for &t in system.member(i) {
                    counts[t] += 1;
                    if counts[t] == 1 {
                        leaves += 1;
                    }
                }
            }
        }
        if leaves - 2 - weight == 0 {
            zero[mask] = true;
            family.push(mask);
        }
    }
    let mut stats = Stats::new();
    stats.set("family_size", family.len() as u64);
    let mut pairs = 0u64;
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i + 1..] {
            if a & b == 0 {
                continue;
            }
            pairs += 1;
            if !zero[a | b] || !zero[a & b] {
                stats.set("pairs_checked", pairs);
                let violation = PatchworkViolation {
                    first: SubsetSelection::from_mask(a as u64),
                    second: SubsetSelection::from_mask(b as u64),
                };
                return Ok(CheckReport::new(
                    false,
                    Method::Exhaustive,
                    Certificate::Patchwork(violation),
                )
                .with_stats(stats));
            }
        }
    }
    stats.set("pairs_checked", pairs);
    Ok(CheckReport::new(true, Method::Exhaustive, Certificate::None).with_stats(stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(sets: &[&str]) -> SetSystem {
        SetSystem::from_compact(sets).unwrap()
    }

    fn witness(report: &CheckReport) -> &ExcessReport {
        match &report.certificate {
            Certificate::Subset(e) => e,
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn four_triples_is_thin() {
        let r = is_thin_exhaustive(&sys(&["abc", "abd", "bce", "def"]), 3).unwrap();
        assert!(r.verdict);
        assert_eq!(witness(&r).value, 0);
    }

    #[test]
    fn five_triples_witness_is_smallest_negative_subset() {
        let s = sys(&["abc", "abd", "bce", "def", "bde"]);
        let r = is_thin_exhaustive(&s, 3).unwrap();
        assert!(!r.verdict);
        let w = witness(&r);
        assert_eq!(w.value, -1);
        assert_eq!(w.witness.indices(), &[0, 1, 2, 3]);
        assert_eq!(w.leaf_count, 5);
        assert_eq!(s.excess_uniform(&s.all(), 3).unwrap(), -1);
    }

    #[test]
    fn non_orderable_thin_example() {
        let r = is_thin_exhaustive(&sys(&["abc", "cde", "bef", "adf"]), 3).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn thin_rejects_mixed_sizes_and_caps() {
        assert!(matches!(
            is_thin_exhaustive(&sys(&["abc", "abcd"]), 3),
            Err(Error::UniformSize { .. })
        ));
        let many: Vec<String> = (0..5).map(|i| format!("a{i}")).collect();
        let lists: Vec<Vec<String>> = many.iter().map(|x| vec![x.clone(), "z".into()]).collect();
        let s = SetSystem::from_labels::<String>(&lists, &[]).unwrap();
        assert!(matches!(
            is_thin_exhaustive_with_cap(&s, 2, 4),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn slim_examples() {
        assert!(is_slim_exhaustive(&sys(&["abcd", "cdef"])).unwrap().verdict);
        let r = is_slim_exhaustive(&sys(&["abcd", "abce"])).unwrap();
        assert!(!r.verdict);
        assert_eq!(witness(&r).value, -1);
        assert!(is_slim_exhaustive(&sys(&["abcdefg"])).unwrap().verdict);
        assert!(is_slim_exhaustive(&sys(&["ab", "abc"])).is_err());
    }

    #[test]
    fn witness_tie_break_prefers_small_then_canonical() {
        // Two disjoint triangles and their union all reach excess -1.
        let s = sys(&["ab", "ac", "bc", "de", "df", "ef"]);
        let r = is_thin_exhaustive(&s, 2).unwrap();
        let w = witness(&r);
        assert_eq!(w.value, -1);
        assert_eq!(w.witness.indices(), &[0, 1, 2]);
    }

    #[test]
    fn mask_order() {
        assert!(mask_precedes(0b001, 0b110));
        assert!(mask_precedes(0b011, 0b101));
        assert!(mask_precedes(0b101, 0b110));
        assert!(!mask_precedes(0b110, 0b101));
        assert!(!mask_precedes(0b11, 0b11));
    }

    #[test]
    fn submodular_examples() {
        let s = sys(&["abc", "abd", "bce", "def"]);
        let a = SubsetSelection::new(vec![0, 1]).unwrap();
        let b = SubsetSelection::new(vec![1, 2]).unwrap();
        let c = check_submodular_pair(Measure::Sigma, &s, &a, &b).unwrap();
        assert_eq!((c.first, c.second, c.union, c.intersection), (2, 3, 2, 2));
        assert!(c.holds);
        let same = check_submodular_pair(Measure::Gamma, &s, &a, &a).unwrap();
        assert!(same.holds);
        assert_eq!(same.first + same.second, same.union + same.intersection);
    }

    #[test]
    fn patchwork_examples() {
        let r = patchwork_check(&sys(&["abcd", "cdef"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.stats.get("family_size"), Some(3));
        let single = patchwork_check(&sys(&["abc"])).unwrap();
        assert!(single.verdict);
        assert_eq!(single.stats.get("family_size"), Some(1));
        assert!(patchwork_check(&sys(&["abc", "abd", "bce", "def"])).unwrap().verdict);
        assert!(matches!(
            patchwork_check(&sys(&["abcd", "abce"])),
            Err(Error::Precondition(_))
        ));
    }
}
