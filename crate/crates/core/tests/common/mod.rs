//! Seeded generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use setflex::{SetSystem, TaxonId, Universe};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Taxa `a, b, c, …` (at most 26).
pub fn letters(n: usize) -> Universe {
    Universe::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

pub fn system(n: usize, members: Vec<Vec<TaxonId>>) -> SetSystem {
    SetSystem::new(letters(n), members).unwrap()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<TaxonId>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every non-empty subfamily of the `r`-subsets of `n` taxa, over all `n` taxa.
pub fn all_uniform_systems(n: usize, r: usize) -> Vec<SetSystem> {
    let pool = k_subsets(n, r);
    assert!(pool.len() < 16);
    (1u32..1 << pool.len())
        .map(|mask| {
            let members = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i].clone()).collect();
            system(n, members)
        })
        .collect()
}

fn random_set<R: Rng>(rng: &mut R, n: usize, size: usize) -> Vec<TaxonId> {
    let mut s = sample(rng, n, size).into_vec();
    s.sort_unstable();
    s
}

/// `k` distinct random members of sizes drawn from `sizes`, over `n` taxa.
/// Returns fewer members when distinct ones run out.
pub fn random_system<R: Rng>(rng: &mut R, n: usize, k: usize, sizes: std::ops::RangeInclusive<usize>) -> SetSystem {
    let (lo, hi) = (*sizes.start(), (*sizes.end()).min(n));
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while seen.len() < k && attempts < 50 * k {
        attempts += 1;
        let size = rng.gen_range(lo..=hi);
        seen.insert(random_set(rng, n, size));
    }
    system(n, seen.into_iter().collect())
}
