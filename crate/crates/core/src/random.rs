//! Seeded generators for test instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::ChainCosts;
use crate::matrix::TropMatrix;
use crate::network::{EliminationPlan, FactorNetwork};
use crate::semiring::Trop;
use crate::tensor::TropTensor;

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A square matrix with integer entries in `lo..=hi`.
pub fn matrix(rng: &mut TestRng, n: usize, lo: i64, hi: i64) -> TropMatrix {
    TropMatrix::from_fn(n, n, |_, _| Trop::Finite(rng.gen_range(lo..=hi)))
}

/// Like [`matrix`], but each entry is `∞` with probability `p_inf`.
pub fn sparse_matrix(rng: &mut TestRng, n: usize, lo: i64, hi: i64, p_inf: f64) -> TropMatrix {
    TropMatrix::from_fn(n, n, |_, _| {
        if rng.gen_bool(p_inf) {
            Trop::Infinity
        } else {
            Trop::Finite(rng.gen_range(lo..=hi))
        }
    })
}

/// A random network on `n` variables over domain `domain`, with factors of
/// arity at most `max_arity` and entries in `lo..=hi`. Every variable is
/// covered by some factor.
pub fn network(rng: &mut TestRng, n: usize, domain: usize, max_arity: usize, lo: i64, hi: i64) -> FactorNetwork {
    let max_arity = max_arity.clamp(1, n);
    let count = rng.gen_range(1..=n + 2);
    let vars: Vec<usize> = (0..n).collect();
    let mut sets: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=max_arity);
            let mut set: Vec<usize> = vars.choose_multiple(rng, k).copied().collect();
            set.sort_unstable();
            set
        })
        .collect();
    for v in 0..n {
        if !sets.iter().any(|s| s.contains(&v)) {
            let other = rng.gen_range(0..n);
            let mut set = vec![v];
            if other != v && max_arity > 1 {
                set.push(other);
            }
            set.sort_unstable();
            sets.push(set);
        }
    }
    let factors = sets
        .into_iter()
        .map(|set| {
            let dims = vec![domain; set.len()];
            TropTensor::from_fn(set, dims, |_| Trop::Finite(rng.gen_range(lo..=hi))).expect("valid factor")
        })
        .collect();
    FactorNetwork::new(n, domain, factors).expect("every variable covered")
}

/// A uniformly shuffled elimination plan.
pub fn plan(rng: &mut TestRng, net: &FactorNetwork) -> EliminationPlan {
    let mut order = net.eliminable_vars();
    order.shuffle(rng);
    EliminationPlan::new(order)
}

/// Translation-invariant chain costs with `base` strategies per party.
pub fn chain_costs(rng: &mut TestRng, base: usize, range: usize, lo: i64, hi: i64) -> ChainCosts {
    ChainCosts {
        base,
        range,
        one_body: (0..base).map(|_| Trop::Finite(rng.gen_range(lo..=hi))).collect(),
        pair: (0..range).map(|_| matrix(rng, base, lo, hi)).collect(),
        scale: 1,
    }
}

/// Integer coefficient vector of length `d`.
pub fn alpha(rng: &mut TestRng, d: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(lo..=hi)).collect()
}
