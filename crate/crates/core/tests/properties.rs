mod common;

use proptest::prelude::*;
use setflex::flex::{defining_triples, enumerate_binary_trees};
use setflex::graphopt::{
    gamma_star, incidence_graph, is_forest, is_thin, sigma_star, surplus_forest, verify_surplus_forest, Weighting,
};
use setflex::phylo::{build_supertree, parse_newick, write_newick, BuildOutcome, RootedPhyloTree};
use setflex::represent::{
    caterpillar_median_representation, extend_to_total_order, lca_caterpillar_representation, OrderOutcome,
    Orientation,
};
use setflex::setsys::{
    check_submodular_pair, minimize_exhaustive, parse_json, parse_text, to_json, to_text, Measure,
    DEFAULT_EXHAUSTIVE_CAP,
};
use setflex::{SetSystem, SubsetSelection};

use common::{letters, system};

/// Distinct members of sizes in `min..=max` over `n` taxa, given as bitmasks.
fn systems(n: std::ops::RangeInclusive<usize>, min: usize, max: usize, members: usize) -> impl Strategy<Value = SetSystem> {
    n.prop_flat_map(move |n| {
        let size_ok = move |m: &u32| (min..=max.min(n)).contains(&(m.count_ones() as usize));
        prop::collection::btree_set((1u32..1 << n).prop_filter("member size", size_ok), 1..=members).prop_map(
            move |masks| {
                let members = masks.iter().map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
                system(n, members)
            },
        )
    })
}

fn binary_tree(n: usize) -> impl Strategy<Value = RootedPhyloTree> {
    let taxa: Vec<usize> = (0..n).collect();
    let trees = enumerate_binary_trees(&taxa).unwrap();
    (0..trees.len()).prop_map(move |i| trees[i].clone())
}

fn trees() -> impl Strategy<Value = RootedPhyloTree> {
    prop_oneof![binary_tree(3), binary_tree(4), binary_tree(5), binary_tree(6), binary_tree(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mincut_matches_exhaustive(s in systems(3..=8, 2, 5, 10)) {
        let fast = sigma_star(&s).unwrap();
        let slow = minimize_exhaustive(&s, Measure::Sigma, DEFAULT_EXHAUSTIVE_CAP).unwrap();
        prop_assert_eq!(fast.value, slow.value);
        prop_assert_eq!(s.sigma(&fast.witness).unwrap(), fast.value);
    }

    #[test]
    fn gamma_mincut_matches_exhaustive(s in systems(3..=8, 3, 6, 10)) {
        let fast = gamma_star(&s).unwrap();
        let slow = minimize_exhaustive(&s, Measure::Gamma, DEFAULT_EXHAUSTIVE_CAP).unwrap();
        prop_assert_eq!(fast.value, slow.value);
        prop_assert_eq!(s.gamma(&fast.witness).unwrap(), fast.value);
    }

    #[test]
    fn cut_capacity_certifies_value(s in systems(3..=8, 2, 5, 10)) {
        let m = sigma_star(&s).unwrap();
        let paid: usize = m.cut.len();
        // Unit weights: every cut arc carries capacity 1.
        prop_assert_eq!(paid as i64, m.value + m.offset);
    }

    #[test]
    fn submodular(s in systems(3..=8, 3, 5, 10), a in any::<u64>(), b in any::<u64>()) {
        let full = (1u64 << s.len()) - 1;
        let (a, b) = (SubsetSelection::from_mask(a & full), SubsetSelection::from_mask(b & full));
        for measure in [Measure::Sigma, Measure::Gamma] {
            prop_assert!(check_submodular_pair(measure, &s, &a, &b).unwrap().holds);
        }
    }

    #[test]
    fn set_system_io_round_trips(s in systems(1..=8, 1, 8, 10)) {
        // The text format keeps members only; taxa outside every member are dropped.
        let text = to_text(&s);
        prop_assert_eq!(to_text(&parse_text(&text).unwrap()), text);
        prop_assert_eq!(parse_json(&to_json(&s)).unwrap(), s);
    }

    #[test]
    fn newick_round_trips(t in trees()) {
        let u = letters(t.leaf_count());
        let text = write_newick(&t, &u);
        prop_assert_eq!(parse_newick(&text, &u).unwrap(), t);
    }

    #[test]
    fn build_recovers_a_displaying_tree(t in trees()) {
        let triples = t.triples_of();
        let BuildOutcome::Tree(built) = build_supertree(&triples).unwrap() else {
            return Err(TestCaseError::fail("triples of a tree are incompatible"));
        };
        prop_assert_eq!(&built, &t);
        for x in triples.iter() {
            prop_assert!(built.displays_triple(x).unwrap());
        }
    }

    #[test]
    fn defining_triples_rebuild_the_tree(t in trees()) {
        let r = defining_triples(&t).unwrap();
        prop_assert_eq!(r.len(), t.leaf_count() - 2);
        let built = build_supertree(&r).unwrap();
        prop_assert_eq!(built.tree(), Some(&t));
    }

    #[test]
    fn contracted_trees_are_displayed_by_their_resolution(t in trees(), cut in any::<u64>()) {
        // Contract a random set of interior edges, then resolve again.
        let mut nested = t.to_nested();
        fn contract(n: setflex::phylo::Nested, bits: &mut u64) -> setflex::phylo::Nested {
            use setflex::phylo::Nested;
            match n {
                Nested::Leaf(x) => Nested::Leaf(x),
                Nested::Node(children) => {
                    let mut out = Vec::new();
                    for c in children {
                        let c = contract(c, bits);
                        let flatten = *bits & 1 == 1;
                        *bits >>= 1;
                        match c {
                            Nested::Node(grand) if flatten => out.extend(grand),
                            other => out.push(other),
                        }
                    }
                    Nested::Node(out)
                }
            }
        }
        let mut bits = cut;
        nested = contract(nested, &mut bits);
        let coarse = RootedPhyloTree::from_nested(nested).unwrap();
        let resolved = coarse.make_binary();
        prop_assert!(resolved.is_binary());
        prop_assert_eq!(resolved.leaf_count(), t.leaf_count());
        for x in coarse.triples_of().iter() {
            prop_assert!(t.displays_triple(x).unwrap());
            prop_assert!(resolved.displays_triple(x).unwrap());
        }
        if coarse.is_binary() {
            prop_assert_eq!(&coarse, &t);
        }
    }

    #[test]
    fn total_order_respects_acyclic_orientations(perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
                                                 s in systems(8..=8, 2, 2, 12)) {
        // Orient every pair along a hidden permutation: always extendable.
        let rank = |t: usize| perm.iter().position(|&p| p == t).unwrap();
        let pairs = s.members().iter().map(|m| if rank(m[0]) < rank(m[1]) { (m[0], m[1]) } else { (m[1], m[0]) }).collect();
        let o = Orientation { pairs };
        let OrderOutcome::Order(order) = extend_to_total_order(&(0..8).collect::<Vec<_>>(), &o).unwrap() else {
            return Err(TestCaseError::fail("acyclic orientation reported cyclic"));
        };
        let pos = |t: usize| order.iter().position(|&p| p == t).unwrap();
        for &(x, y) in &o.pairs {
            prop_assert!(pos(x) < pos(y));
        }
    }

    #[test]
    fn forest_iff_positive_surplus(s in systems(3..=8, 2, 2, 10)) {
        let g = incidence_graph(&s, Weighting::Unit).unwrap();
        prop_assert_eq!(is_forest(&g).is_forest, sigma_star(&s).unwrap().value >= 1);
    }

    #[test]
    fn surplus_forest_exists_iff_positive(s in systems(3..=8, 2, 4, 8)) {
        let g = incidence_graph(&s, Weighting::Unit).unwrap();
        let positive = sigma_star(&s).unwrap().value >= 1;
        match surplus_forest(&g).unwrap() {
            Some(f) => {
                prop_assert!(positive);
                prop_assert!(verify_surplus_forest(&g, &f));
            }
            None => prop_assert!(!positive),
        }
    }

    #[test]
    fn thin_systems_have_median_caterpillars(s in systems(4..=9, 3, 3, 7)) {
        prop_assume!(is_thin(&s, 3).unwrap().verdict);
        let r = caterpillar_median_representation(&s).unwrap();
        prop_assert!(r.verified);
        prop_assert_eq!(r.sequence.len(), s.universe().len());
    }

    #[test]
    fn forests_of_pairs_have_lca_caterpillars(s in systems(2..=9, 2, 2, 8)) {
        prop_assume!(is_thin(&s, 2).unwrap().verdict);
        let r = lca_caterpillar_representation(&s).unwrap();
        prop_assert!(r.verified);
    }
}
