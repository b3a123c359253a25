//! Exhaustive reference minimizers.
//!
//! These evaluate the cost functions straight from their definitions with
//! plain integer and rational arithmetic. They share no code with the
//! tropical contraction paths they are used to check.

use num_rational::Ratio;

use crate::bell::ModularBellSpec;
use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::network::FactorNetwork;

/// Default cap on the number of enumerated assignments.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkOptimum {
    /// `None` when every assignment has infinite cost.
    pub beta: Option<i64>,
    /// Every assignment attaining `beta`, in lexicographic order.
    pub minimizers: Vec<Vec<usize>>,
}

/// Minimizes `H(x) = Σ_I f_I(x_I)` over all of `S^n`.
pub fn brute_force_min(net: &FactorNetwork, cap: u64) -> Result<NetworkOptimum> {
    let n = net.n();
    let s = net.domain();
    let size = (s as f64).powi(n as i32);
    if size > cap as f64 {
        return Err(TropError::OracleCap { size, cap });
    }
    let tables: Vec<(Vec<usize>, Vec<Option<i64>>)> = net
        .factors()
        .iter()
        .map(|f| (f.labels().to_vec(), f.data().iter().map(|v| v.value()).collect()))
        .collect();

    let mut best: Option<i64> = None;
    let mut minimizers: Vec<Vec<usize>> = Vec::new();
    let mut x = vec![0usize; n];
    loop {
        let mut total: Option<i64> = Some(0);
        for (vars, data) in &tables {
            let mut idx = 0;
            for &v in vars {
                idx = idx * s + x[v];
            }
            total = match (total, data[idx]) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            if total.is_none() {
                break;
            }
        }
        let better = match (total, best) {
            (Some(t), Some(b)) => t < b,
            (Some(_), None) => true,
            (None, _) => false,
        };
        if better || minimizers.is_empty() {
            best = total;
            minimizers.clear();
            minimizers.push(x.clone());
        } else if total == best {
            minimizers.push(x.clone());
        }

        let mut j = n;
        loop {
            if j == 0 {
                return Ok(NetworkOptimum { beta: best, minimizers });
            }
            j -= 1;
            x[j] += 1;
            if x[j] < s {
                break;
            }
            x[j] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularOptimum {
    pub beta: Ratio<i64>,
    /// Number of outcome assignments `(A_1..A_m, B_1..B_m)` attaining `beta`.
    pub minimizers: u64,
    /// Whether every enumerated assignment had `Σ q_i ≡ 1 (mod d)`.
    pub redundancy_holds: bool,
}

/// Enumerates all deterministic outcome assignments and evaluates
/// `Σ_k α_k P_k`, where `P_k` counts the settings with `A_i − B_i ≡ k` and
/// with `B_i − A_{i+1} ≡ k`, and `A_{m+1} = A_1 − 1` (all mod `d`).
pub fn brute_force_modular(spec: &ModularBellSpec, cap: u64) -> Result<ModularOptimum> {
    let d = spec.d();
    let m = spec.m();
    let size = (d as f64).powi(2 * m as i32);
    if size > cap as f64 {
        return Err(TropError::OracleCap { size, cap });
    }
    let alpha = spec.alpha();
    let dd = d as i64;
    let md = |v: i64| v.rem_euclid(dd) as usize;

    // outcomes[0..m] = A_1..A_m, outcomes[m..2m] = B_1..B_m
    let mut outcomes = vec![0usize; 2 * m];
    let mut best: Option<Ratio<i64>> = None;
    let mut count = 0u64;
    let mut redundancy_holds = true;
    loop {
        let mut p = vec![0i64; d];
        let mut qsum = 0i64;
        for i in 0..m {
            let a = outcomes[i] as i64;
            let b = outcomes[m + i] as i64;
            let a_next = if i + 1 < m {
                outcomes[i + 1] as i64
            } else {
                outcomes[0] as i64 - 1
            };
            let q0 = md(a - b);
            let q1 = md(b - a_next);
            p[q0] += 1;
            p[q1] += 1;
            qsum += (q0 + q1) as i64;
        }
        if qsum.rem_euclid(dd) != 1 % dd {
            redundancy_holds = false;
        }
        let value: Ratio<i64> = alpha
            .iter()
            .zip(&p)
            .map(|(&a, &c)| a * Ratio::from_integer(c))
            .sum();
        match best {
            Some(b) if value > b => {}
            Some(b) if value == b => count += 1,
            _ => {
                best = Some(value);
                count = 1;
            }
        }

        let mut j = 2 * m;
        loop {
            if j == 0 {
                return Ok(ModularOptimum {
                    beta: best.expect("at least one assignment"),
                    minimizers: count,
                    redundancy_holds,
                });
            }
            j -= 1;
            outcomes[j] += 1;
            if outcomes[j] < d {
                break;
            }
            outcomes[j] = 0;
        }
    }
}

/// Minimum cycle mean by listing every simple cycle. Exponential; meant
/// for matrices of size six or so.
pub fn min_mean_cycle_by_enumeration(f: &TropMatrix) -> Option<Ratio<i64>> {
    let n = f.rows();
    let w = |i: usize, j: usize| f.get(i, j).value();
    let mut best: Option<Ratio<i64>> = None;

    fn dfs(
        start: usize,
        node: usize,
        len: i64,
        total: i64,
        on_path: &mut Vec<bool>,
        n: usize,
        w: &dyn Fn(usize, usize) -> Option<i64>,
        best: &mut Option<Ratio<i64>>,
    ) {
        for next in start..n {
            let Some(c) = w(node, next) else { continue };
            if next == start {
                let mean = Ratio::new(total + c, len + 1);
                if best.is_none_or(|b| mean < b) {
                    *best = Some(mean);
                }
            } else if !on_path[next] {
                on_path[next] = true;
                dfs(start, next, len + 1, total + c, on_path, n, w, best);
                on_path[next] = false;
            }
        }
    }

    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        dfs(start, start, 0, 0, &mut on_path, n, &w, &mut best);
    }
    best
}
