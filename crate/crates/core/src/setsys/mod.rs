//! Set systems over a taxon universe and the excess measures defined on them.
//!
//! For a selection `S` of members with leaf union `L(S)`:
//!
//! | measure            | value                              | defined for                 |
//! |--------------------|------------------------------------|-----------------------------|
//! | `excess_uniform`   | `|L(S)| - |S| - (r - 1)`           | non-empty, all sizes `r`    |
//! | `excess_general`   | `|L(S)| - 2 - Σ(|s| - 2)`          | non-empty, all sizes `>= 3` |
//! | `sigma`            | `|L(S)| - |S|`                     | any, `0` on the empty set   |
//! | `gamma`            | `|L(S)| - Σ(|s| - 2)`              | any, `0` on the empty set   |
//!
//! A uniform system is *thin* when every non-empty selection has
//! `excess_uniform >= 0`, and any system with members of size at least three
//! is *slim* when every non-empty selection has `excess_general >= 0`.

mod exhaustive;
mod io;

pub use exhaustive::{
    check_submodular_pair, is_slim_exhaustive, is_slim_exhaustive_with_cap, is_thin_exhaustive,
    is_thin_exhaustive_with_cap, minimize_exhaustive, patchwork_check, Measure, SubmodularCheck,
    DEFAULT_EXHAUSTIVE_CAP,
};
pub use io::{parse_json, parse_text, to_json, to_text};
pub(crate) use exhaustive::{require_min_size, require_uniform};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::taxa::{TaxonId, Universe};

/// A canonical collection of distinct, non-empty taxon subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    universe: Universe,
    members: Vec<Vec<TaxonId>>,
}

impl SetSystem {
    /// Builds a system from member id lists. Members are sorted internally and
    /// the member list is put in canonical (lexicographic) order.
    pub fn new(universe: Universe, members: Vec<Vec<TaxonId>>) -> Result<Self> {
        let mut canon = Vec::with_capacity(members.len());
        for (i, mut m) in members.into_iter().enumerate() {
            m.sort_unstable();
            m.dedup();
            if m.is_empty() {
                return Err(Error::input(format!("member {i} is empty")));
            }
            if let Some(&bad) = m.iter().find(|&&t| t >= universe.len()) {
                return Err(Error::input(format!(
                    "member {i} refers to taxon id {bad}, outside the universe"
                )));
            }
            canon.push(m);
        }
        canon.sort();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!(
                "duplicate member {{{}}}",
                universe.render(&w[0], ",")
            )));
        }
        Ok(SetSystem {
            universe,
            members: canon,
        })
    }

    /// Builds a system from label lists; the universe is the set of labels used
    /// plus `extra`.
    pub fn from_labels<S: AsRef<str>>(sets: &[Vec<S>], extra: &[S]) -> Result<Self> {
        let universe = Universe::new(
            sets.iter()
                .flatten()
                .chain(extra.iter())
                .map(|s| s.as_ref()),
        )?;
        let members = sets
            .iter()
            .map(|s| s.iter().map(|l| universe.require(l.as_ref())).collect())
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(universe, members)
    }

    /// Shorthand for tests and examples: each member is a string of
    /// single-character labels, e.g. `["abc", "abd"]`.
    pub fn from_compact(sets: &[&str]) -> Result<Self> {
        let lists: Vec<Vec<String>> = sets
            .iter()
            .map(|s| s.chars().map(String::from).collect())
            .collect();
        SetSystem::from_labels::<String>(&lists, &[])
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn members(&self) -> &[Vec<TaxonId>] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &[TaxonId] {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of a member (given as any-order id list) in canonical order.
    pub fn position(&self, member: &[TaxonId]) -> Option<usize> {
        let mut m = member.to_vec();
        m.sort_unstable();
        self.members.binary_search(&m).ok()
    }

    /// The common member size, if all members have the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.members.first()?.len();
        self.members
            .iter()
            .all(|m| m.len() == first)
            .then_some(first)
    }

    /// Selection of every member.
    pub fn all(&self) -> SubsetSelection {
        SubsetSelection((0..self.members.len()).collect())
    }

    /// `L(τ)` for the whole system.
    pub fn leaf_set(&self) -> Vec<TaxonId> {
        let set: BTreeSet<TaxonId> = self.members.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// The selected members as a new system over the same universe.
    pub fn subsystem(&self, selection: &SubsetSelection) -> Result<SetSystem> {
        self.check_selection(selection)?;
        Ok(SetSystem {
            universe: self.universe.clone(),
            members: selection
                .iter()
                .map(|i| self.members[i].clone())
                .collect(),
        })
    }

    /// Same members over a different universe (labels are re-interned).
    pub fn reinterned(&self, universe: Universe) -> Result<SetSystem> {
        let members = self
            .members
            .iter()
            .map(|m| {
                m.iter()
                    .map(|&t| universe.require(self.universe.label(t)))
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(universe, members)
    }

    /// Adds labels to the universe without touching the members.
    pub fn with_extra_taxa<S: AsRef<str>>(&self, extra: &[S]) -> Result<SetSystem> {
        let universe = Universe::new(
            self.universe
                .labels()
                .iter()
                .map(|s| s.as_str())
                .chain(extra.iter().map(|s| s.as_ref())),
        )?;
        self.reinterned(universe)
    }

    pub(crate) fn check_selection(&self, selection: &SubsetSelection) -> Result<()> {
        match selection.0.last() {
            Some(&last) if last >= self.members.len() => Err(Error::input(format!(
                "selection index {last} out of range for a system of {} members",
                self.members.len()
            ))),
            _ => Ok(()),
        }
    }

    fn check_nonempty(&self, selection: &SubsetSelection) -> Result<()> {
        self.check_selection(selection)?;
        if selection.is_empty() {
            return Err(Error::input("the excess is only defined for non-empty selections"));
        }
        Ok(())
    }

    /// `L(τ′)`: the union of the selected members, sorted.
    pub fn leaf_union(&self, selection: &SubsetSelection) -> Result<Vec<TaxonId>> {
        self.check_selection(selection)?;
        let set: BTreeSet<TaxonId> = selection
            .iter()
            .flat_map(|i| self.members[i].iter().copied())
            .collect();
        Ok(set.into_iter().collect())
    }

    fn leaf_count(&self, selection: &SubsetSelection) -> Result<i64> {
        Ok(self.leaf_union(selection)?.len() as i64)
    }

    /// `|L(τ′)| - |τ′| - (r - 1)`; every selected member must have size `r >= 2`.
    pub fn excess_uniform(&self, selection: &SubsetSelection, r: usize) -> Result<i64> {
        if r < 2 {
            return Err(Error::input("uniform excess needs r >= 2"));
        }
        self.check_nonempty(selection)?;
        for i in selection.iter() {
            if self.members[i].len() != r {
                return Err(Error::UniformSize {
                    member: i,
                    expected: r,
                    found: self.members[i].len(),
                });
            }
        }
        Ok(self.leaf_count(selection)? - selection.len() as i64 - (r as i64 - 1))
    }

    /// `|L(τ′)| - 2 - Σ(|s| - 2)`; every selected member must have size at least 3.
    pub fn excess_general(&self, selection: &SubsetSelection) -> Result<i64> {
        self.check_nonempty(selection)?;
        let weight = self.size_weight(selection, 3)?;
        Ok(self.leaf_count(selection)? - 2 - weight)
    }

    /// `|L(τ′)| - |τ′|`, zero on the empty selection.
    pub fn sigma(&self, selection: &SubsetSelection) -> Result<i64> {
        Ok(self.leaf_count(selection)? - selection.len() as i64)
    }

    /// `|L(τ′)| - Σ(|s| - 2)`, zero on the empty selection.
    pub fn gamma(&self, selection: &SubsetSelection) -> Result<i64> {
        self.check_selection(selection)?;
        let weight = self.size_weight(selection, 2)?;
        Ok(self.leaf_count(selection)? - weight)
    }

    fn size_weight(&self, selection: &SubsetSelection, minimum: usize) -> Result<i64> {
        let mut total = 0i64;
        for i in selection.iter() {
            let len = self.members[i].len();
            if len < minimum {
                return Err(Error::MemberTooSmall {
                    member: i,
                    minimum,
                    found: len,
                });
            }
            total += len as i64 - 2;
        }
        Ok(total)
    }

    /// `n_τ(x)`: how many members contain `taxon`.
    pub fn occurrence_count(&self, taxon: TaxonId) -> Result<usize> {
        if taxon >= self.universe.len() {
            return Err(Error::input(format!("taxon id {taxon} is not in the universe")));
        }
        Ok(self
            .members
            .iter()
            .filter(|m| m.binary_search(&taxon).is_ok())
            .count())
    }

    /// [`SetSystem::occurrence_count`] by label.
    pub fn occurrence_count_of(&self, label: &str) -> Result<usize> {
        self.occurrence_count(self.universe.require(label)?)
    }

    /// Renders member `i` as comma-separated labels.
    pub fn render_member(&self, i: usize) -> String {
        self.universe.render(&self.members[i], ",")
    }
}

/// Sorted, duplicate-free positions into [`SetSystem::members`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetSelection(Vec<usize>);

impl SubsetSelection {
    /// Sorts the indices; repeated indices are an input error.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("selection repeats an index"));
        }
        Ok(SubsetSelection(indices))
    }

    pub fn empty() -> Self {
        SubsetSelection(Vec::new())
    }

    /// Selection whose indices are the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        SubsetSelection((0..64).filter(|b| mask >> b & 1 == 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &SubsetSelection) -> SubsetSelection {
        let set: BTreeSet<usize> = self.iter().chain(other.iter()).collect();
        SubsetSelection(set.into_iter().collect())
    }

    pub fn intersection(&self, other: &SubsetSelection) -> SubsetSelection {
        SubsetSelection(self.iter().filter(|&i| other.contains(i)).collect())
    }
}

/// A measure value together with the selection that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcessReport {
    pub value: i64,
    pub witness: SubsetSelection,
    /// `|L(witness)|`.
    pub leaf_count: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_triples() -> SetSystem {
        SetSystem::from_compact(&["abc", "abd", "bce", "def"]).unwrap()
    }

    fn five_triples() -> SetSystem {
        SetSystem::from_compact(&["abc", "abd", "bce", "def", "bde"]).unwrap()
    }

    fn sel(v: &[usize]) -> SubsetSelection {
        SubsetSelection::new(v.to_vec()).unwrap()
    }

    #[test]
    fn members_are_canonical() {
        let s = SetSystem::from_compact(&["def", "cba", "abd"]).unwrap();
        assert_eq!(s.render_member(0), "a,b,c");
        assert_eq!(s.render_member(1), "a,b,d");
        assert_eq!(s.render_member(2), "d,e,f");
    }

    #[test]
    fn duplicate_and_empty_members_rejected() {
        assert!(SetSystem::from_compact(&["abc", "cab"]).is_err());
        let u = Universe::new(["a"]).unwrap();
        assert!(SetSystem::new(u.clone(), vec![vec![]]).is_err());
        assert!(SetSystem::new(u, vec![vec![3]]).is_err());
    }

    #[test]
    fn leaf_union_examples() {
        let s = four_triples();
        assert_eq!(s.leaf_union(&s.all()).unwrap().len(), 6);
        assert_eq!(s.leaf_union(&sel(&[0])).unwrap(), vec![0, 1, 2]);
        let u = s.leaf_union(&sel(&[0, 1])).unwrap();
        assert_eq!(s.universe().render(&u, ""), "abcd");
        assert!(s.leaf_union(&SubsetSelection::empty()).unwrap().is_empty());
        assert!(matches!(s.leaf_union(&sel(&[7])), Err(Error::Input(_))));
    }

    #[test]
    fn uniform_excess_examples() {
        assert_eq!(four_triples().excess_uniform(&four_triples().all(), 3).unwrap(), 0);
        let p = five_triples();
        assert_eq!(p.excess_uniform(&p.all(), 3).unwrap(), -1);
        assert_eq!(p.excess_uniform(&sel(&[2]), 3).unwrap(), 0);
        let mixed = SetSystem::from_compact(&["abc", "abcd"]).unwrap();
        assert!(matches!(
            mixed.excess_uniform(&mixed.all(), 3),
            Err(Error::UniformSize { .. })
        ));
        assert!(four_triples().excess_uniform(&SubsetSelection::empty(), 3).is_err());
    }

    #[test]
    fn general_excess_examples() {
        let one = SetSystem::from_compact(&["abcd"]).unwrap();
        assert_eq!(one.excess_general(&one.all()).unwrap(), 0);
        let two = SetSystem::from_compact(&["abcd", "cdef"]).unwrap();
        assert_eq!(two.excess_general(&two.all()).unwrap(), 0);
        assert_eq!(four_triples().excess_general(&four_triples().all()).unwrap(), 0);
        let small = SetSystem::from_compact(&["ab", "abc"]).unwrap();
        assert!(matches!(
            small.excess_general(&small.all()),
            Err(Error::MemberTooSmall { .. })
        ));
    }

    #[test]
    fn sigma_gamma_examples() {
        let s = four_triples();
        assert_eq!(s.sigma(&s.all()).unwrap(), 2);
        assert_eq!(s.gamma(&s.all()).unwrap(), 2);
        assert_eq!(s.sigma(&SubsetSelection::empty()).unwrap(), 0);
        assert_eq!(s.gamma(&SubsetSelection::empty()).unwrap(), 0);
        let p = five_triples();
        assert_eq!(p.sigma(&p.all()).unwrap(), 1);
        let tiny = SetSystem::from_compact(&["a", "bc"]).unwrap();
        assert!(tiny.gamma(&tiny.all()).is_err());
        assert_eq!(tiny.sigma(&tiny.all()).unwrap(), 1);
    }

    #[test]
    fn occurrence_examples() {
        let s = four_triples().with_extra_taxa(&["z"]).unwrap();
        assert_eq!(s.occurrence_count_of("b").unwrap(), 3);
        assert_eq!(s.occurrence_count_of("f").unwrap(), 1);
        assert_eq!(s.occurrence_count_of("z").unwrap(), 0);
        assert!(s.occurrence_count_of("q").is_err());
    }

    #[test]
    fn selection_validation() {
        assert!(SubsetSelection::new(vec![1, 1]).is_err());
        assert_eq!(SubsetSelection::new(vec![3, 1]).unwrap().indices(), &[1, 3]);
        assert_eq!(SubsetSelection::from_mask(0b1010).indices(), &[1, 3]);
    }
}
