//! Tropical spectral theory of square matrices.
//!
//! The tropical eigenvalue of `F` is the minimum mean weight over directed
//! cycles of the graph whose edge `i → j` costs `F[i][j]` (finite entries
//! only). It is computed with Karp's recurrence, which also yields a cycle
//! attaining it. Eigenvectors are critical columns of the Kleene star of
//! `F - λ`. The powers `F^k` eventually satisfy
//! `F^(k+σ) = σλ ⊙ F^k`; the smallest such onset and period are reported as
//! `(k0, σ)`.

use serde::Serialize;

use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::semiring::{Trop, Weight};

/// Default power budget for stabilization search on an `n × n` matrix.
pub fn default_k_max(n: usize) -> usize {
    (4 * n * n).max(2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeanCycle<M> {
    /// Minimum cycle mean.
    pub lambda: M,
    /// A cycle attaining it, starting at its smallest node.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub k0: usize,
    pub sigma: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult<M> {
    pub lambda: M,
    pub critical_cycle: Vec<usize>,
    pub eigenvector: Vec<Trop<M>>,
    pub stabilization: Option<Stabilization>,
    pub strongly_connected: bool,
}

/// Karp's minimum mean cycle over walks of length `0..=n` from a virtual
/// source attached to every node.
pub fn min_mean_cycle<W: Weight>(f: &TropMatrix<W>) -> Result<MeanCycle<W::Mean>> {
    require_square(f)?;
    let n = f.rows();
    if n == 0 {
        return Err(TropError::NoCycle);
    }
    // dist[k][v]: cheapest walk with exactly k edges ending at v.
    let mut dist: Vec<Vec<Trop<W>>> = vec![vec![Trop::unit(); n]];
    let mut pred: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];
    for k in 1..=n {
        let mut row = vec![Trop::Infinity; n];
        let mut back = vec![usize::MAX; n];
        for u in 0..n {
            let du = dist[k - 1][u];
            if du.is_infinite() {
                continue;
            }
            for v in 0..n {
                let cand = du.odot(f.get(u, v));
                if cand.less_than(row[v]) {
                    row[v] = cand;
                    back[v] = u;
                }
            }
        }
        dist.push(row);
        pred.push(back);
    }

    let mut best: Option<(W::Mean, usize)> = None;
    for v in 0..n {
        let Some(dn) = dist[n][v].value() else { continue };
        let mut worst: Option<W::Mean> = None;
        for (k, row) in dist.iter().enumerate().take(n) {
            if let Some(dk) = row[v].value() {
                let m = dn.minus(dk).mean(n - k);
                if worst.is_none_or(|w| m > w) {
                    worst = Some(m);
                }
            }
        }
        if let Some(w) = worst {
            if best.is_none_or(|(b, _)| w < b) {
                best = Some((w, v));
            }
        }
    }
    let (lambda, end) = best.ok_or(TropError::NoCycle)?;

    // Every cycle on the optimal n-edge walk into `end` attains lambda.
    let mut walk = vec![end];
    let mut v = end;
    for k in (1..=n).rev() {
        v = pred[k][v];
        walk.push(v);
    }
    walk.reverse();
    let mut last_seen = vec![usize::MAX; n];
    let mut cycle = Vec::new();
    for (pos, &node) in walk.iter().enumerate() {
        if last_seen[node] != usize::MAX {
            cycle = walk[last_seen[node]..pos].to_vec();
            break;
        }
        last_seen[node] = pos;
    }
    let start = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(start);

    let mean = cycle_weight(f, &cycle)
        .value()
        .map(|w| w.mean(cycle.len()))
        .ok_or(TropError::NoCycle)?;
    if !mean.same(lambda) {
        return Err(TropError::Eigen(format!(
            "recovered cycle {cycle:?} has mean {mean:?}, expected {lambda:?}"
        )));
    }
    Ok(MeanCycle { lambda, cycle })
}

/// Total weight of a closed walk given as a node sequence.
pub fn cycle_weight<W: Weight>(f: &TropMatrix<W>, cycle: &[usize]) -> Trop<W> {
    let len = cycle.len();
    (0..len).fold(Trop::unit(), |acc, i| acc.odot(f.get(cycle[i], cycle[(i + 1) % len])))
}

/// Kleene star `B* = 1 ⊕ B ⊕ B^2 ⊕ …` by Floyd–Warshall. Fails if `B`
/// has a negative cycle.
pub fn kleene_star<W: Weight>(b: &TropMatrix<W>) -> Result<TropMatrix<W>> {
    require_square(b)?;
    let n = b.rows();
    let mut d = b.oplus(&TropMatrix::identity(n))?;
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k);
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let cand = dik.odot(d.get(k, j));
                if cand.less_than(d.get(i, j)) {
                    d.set(i, j, cand);
                }
            }
        }
    }
    for i in 0..n {
        if d.get(i, i).less_than(Trop::unit()) {
            return Err(TropError::Eigen(format!("negative cycle through node {i}")));
        }
    }
    Ok(d)
}

/// An eigenvector for `lambda`: the Kleene-star column of `F - λ` at the
/// first critical node.
pub fn trop_eigenvector<W: Weight>(f: &TropMatrix<W>, lambda: W::Mean) -> Result<Vec<Trop<W::Mean>>> {
    require_square(f)?;
    let n = f.rows();
    let b = f.to_mean().map(|v| match v {
        Trop::Finite(w) => Trop::Finite(w.minus(lambda)),
        Trop::Infinity => Trop::Infinity,
    });
    let star = kleene_star(&b)?;
    let critical = (0..n)
        .find(|&c| {
            let plus = (0..n).fold(Trop::Infinity, |acc, j| acc.oplus(b.get(c, j).odot(star.get(j, c))));
            plus.same(Trop::unit())
        })
        .ok_or_else(|| TropError::Eigen(format!("no critical node for lambda = {lambda:?}")))?;
    let v: Vec<Trop<W::Mean>> = (0..n).map(|i| star.get(i, critical)).collect();
    verify_eigenpair(&f.to_mean(), lambda, &v)?;
    Ok(v)
}

fn verify_eigenpair<M: Weight>(f: &TropMatrix<M>, lambda: M, v: &[Trop<M>]) -> Result<()> {
    let lhs = f.mul_vec(v)?;
    for (i, (&l, &x)) in lhs.iter().zip(v).enumerate() {
        let r = x.odot(Trop::Finite(lambda));
        if !l.same(r) {
            return Err(TropError::Eigen(format!(
                "row {i}: (F v) = {l:?} but lambda + v = {r:?}"
            )));
        }
    }
    Ok(())
}

/// Smallest `(k0, σ)` with `k0 + σ ≤ k_max` and `F^(k0+σ) = σλ ⊙ F^k0`,
/// confirmed at `k0 + σ` and two further periods.
pub fn detect_stabilization<W: Weight>(f: &TropMatrix<W>, k_max: usize) -> Result<Option<Stabilization>> {
    let lambda = min_mean_cycle(f)?.lambda;
    let base = f.to_mean();
    let step = base.map(|v| match v {
        Trop::Finite(w) => Trop::Finite(w.minus(lambda)),
        Trop::Infinity => Trop::Infinity,
    });
    // normalized[k - 1] = F^k - kλ; it obeys N[k+1] = N[k] ⊙ (F - λ), so the
    // first repeat marks the onset and period.
    let mut normalized: Vec<TropMatrix<W::Mean>> = vec![step.clone()];
    for j in 2..=k_max {
        let next = normalized[j - 2].mul(&step)?;
        if let Some(i) = normalized.iter().position(|m| m.same(&next)) {
            let (k0, sigma) = (i + 1, j - (i + 1));
            let mut extended = next.clone();
            for _ in 0..2 {
                for _ in 0..sigma {
                    extended = extended.mul(&step)?;
                }
                if !extended.same(&normalized[i]) {
                    return Err(TropError::Eigen(format!(
                        "periodicity ({k0}, {sigma}) did not persist"
                    )));
                }
            }
            return Ok(Some(Stabilization { k0, sigma }));
        }
        normalized.push(next);
    }
    Ok(None)
}

/// `min_{k ≤ k_max} tropTr(F^k) / k`.
pub fn spectral_radius<W: Weight>(f: &TropMatrix<W>, k_max: usize) -> Result<W::Mean> {
    require_square(f)?;
    let mut power = f.clone();
    let mut best: Option<W::Mean> = None;
    for k in 1..=k_max {
        if k > 1 {
            power = power.mul(f)?;
        }
        if let Some(tr) = power.trace()?.value() {
            let m = tr.mean(k);
            if best.is_none_or(|b| m < b) {
                best = Some(m);
            }
        }
    }
    best.ok_or(TropError::NoCycle)
}

/// Whether every node reaches every other through finite entries.
pub fn is_strongly_connected<W: Weight>(f: &TropMatrix<W>) -> bool {
    let n = f.rows();
    if n == 0 || !f.is_square() {
        return false;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let e = if forward { f.get(u, v) } else { f.get(v, u) };
                if e.is_finite() && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Eigenvalue, critical cycle, eigenvector and stabilization in one pass.
pub fn analyze<W: Weight>(f: &TropMatrix<W>, k_max: usize) -> Result<SpectralResult<W::Mean>> {
    let MeanCycle { lambda, cycle } = min_mean_cycle(f)?;
    let eigenvector = trop_eigenvector(f, lambda)?;
    let stabilization = detect_stabilization(f, k_max)?;
    Ok(SpectralResult {
        lambda,
        critical_cycle: cycle,
        eigenvector,
        stabilization,
        strongly_connected: is_strongly_connected(f),
    })
}

fn require_square<W: Weight>(f: &TropMatrix<W>) -> Result<()> {
    if f.is_square() {
        Ok(())
    } else {
        Err(TropError::Dimension(format!(
            "spectral analysis needs a square matrix, got {}x{}",
            f.rows(),
            f.cols()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::min_mean_cycle_by_enumeration;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<Option<i64>>>) -> TropMatrix {
        TropMatrix::from_options(rows).unwrap()
    }

    fn r(p: i64, q: i64) -> Ratio<i64> {
        Ratio::new(p, q)
    }

    #[test]
    fn min_mean_cycle_examples() {
        let a = m(vec![vec![Some(2), None], vec![None, Some(5)]]);
        assert_eq!(min_mean_cycle(&a).unwrap(), MeanCycle { lambda: r(2, 1), cycle: vec![0] });

        let b = m(vec![vec![None, Some(1)], vec![Some(2), None]]);
        assert_eq!(min_mean_cycle(&b).unwrap(), MeanCycle { lambda: r(3, 2), cycle: vec![0, 1] });

        let c = m(vec![vec![Some(0), Some(1)], vec![Some(2), Some(3)]]);
        assert_eq!(min_mean_cycle(&c).unwrap(), MeanCycle { lambda: r(0, 1), cycle: vec![0] });

        let dag = m(vec![vec![None, Some(1)], vec![None, None]]);
        assert_eq!(min_mean_cycle(&dag), Err(TropError::NoCycle));
    }

    #[test]
    fn eigenvector_examples() {
        let id = TropMatrix::<i64>::identity(3);
        let v = trop_eigenvector(&id, r(0, 1)).unwrap();
        assert_eq!(v, vec![Trop::Finite(r(0, 1)), Trop::Infinity, Trop::Infinity]);

        let b = m(vec![vec![None, Some(1)], vec![Some(2), None]]);
        let v = trop_eigenvector(&b, r(3, 2)).unwrap();
        assert_eq!(v, vec![Trop::Finite(r(0, 1)), Trop::Finite(r(1, 2))]);
        let fv = b.to_mean().mul_vec(&v).unwrap();
        assert_eq!(fv, vec![Trop::Finite(r(3, 2)), Trop::Finite(r(2, 1))]);

        let z = TropMatrix::<i64>::zeros(4);
        assert_eq!(trop_eigenvector(&z, r(0, 1)).unwrap(), vec![Trop::Finite(r(0, 1)); 4]);

        assert!(matches!(trop_eigenvector(&b, r(1, 1)), Err(TropError::Eigen(_))));
    }

    #[test]
    fn stabilization_examples() {
        let z = TropMatrix::<i64>::zeros(3);
        assert_eq!(detect_stabilization(&z, 10).unwrap(), Some(Stabilization { k0: 1, sigma: 1 }));

        let b = m(vec![vec![None, Some(1)], vec![Some(2), None]]);
        assert_eq!(detect_stabilization(&b, 10).unwrap(), Some(Stabilization { k0: 1, sigma: 2 }));

        // Transient of length 2 before the cheap self-loop takes over.
        let c = m(vec![vec![Some(0), Some(10)], vec![Some(10), Some(-1)]]);
        let s = detect_stabilization(&c, 200).unwrap().unwrap();
        assert_eq!(s.sigma, 1);
        let lambda = Ratio::from_integer(-1);
        let p = |k| c.power(k).unwrap().to_mean();
        assert!(p(s.k0 + 1).same(&p(s.k0).shift(lambda)));
        assert!(!p(s.k0).same(&p(s.k0 - 1).shift(lambda)));
        assert_eq!(detect_stabilization(&c, 5).unwrap(), None);
    }

    #[test]
    fn spectral_radius_examples() {
        let a = m(vec![vec![Some(2), None], vec![None, Some(5)]]);
        assert_eq!(spectral_radius(&a, 2).unwrap(), r(2, 1));
        let dag = m(vec![vec![None, Some(1)], vec![None, None]]);
        assert_eq!(spectral_radius(&dag, 4), Err(TropError::NoCycle));
    }

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(&m(vec![vec![None, Some(1)], vec![Some(2), None]])));
        assert!(!is_strongly_connected(&m(vec![vec![Some(0), Some(1)], vec![None, Some(0)]])));
    }

    #[test]
    fn float_mode_cycle_mean() {
        let f = TropMatrix::from_options(vec![
            vec![None, Some(std::f64::consts::E)],
            vec![Some(std::f64::consts::PI), Some(3.0)],
        ])
        .unwrap();
        let mc = min_mean_cycle(&f).unwrap();
        assert!((mc.lambda - (std::f64::consts::E + std::f64::consts::PI) / 2.0).abs() < 1e-12);
        let v = trop_eigenvector(&f, mc.lambda).unwrap();
        let fv = f.mul_vec(&v).unwrap();
        for (a, b) in fv.iter().zip(&v) {
            assert!(a.same(b.odot(Trop::Finite(mc.lambda))));
        }
    }

    fn arb_matrix() -> impl Strategy<Value = TropMatrix> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(
                prop_oneof![5 => (-9i64..=9).prop_map(Some), 1 => Just(None)],
                n * n,
            )
            .prop_map(move |v| TropMatrix::new(n, n, v.into_iter().map(Trop::from).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn karp_matches_cycle_enumeration(f in arb_matrix()) {
            let oracle = min_mean_cycle_by_enumeration(&f);
            match min_mean_cycle(&f) {
                Ok(mc) => {
                    prop_assert_eq!(Some(mc.lambda), oracle);
                    prop_assert_eq!(
                        cycle_weight(&f, &mc.cycle).value().map(|w| w.mean(mc.cycle.len())),
                        Some(mc.lambda)
                    );
                    prop_assert_eq!(spectral_radius(&f, f.rows()).unwrap(), mc.lambda);
                    let v = trop_eigenvector(&f, mc.lambda).unwrap();
                    let lhs = f.to_mean().mul_vec(&v).unwrap();
                    let rhs: Vec<_> = v.iter().map(|x| x.odot(Trop::Finite(mc.lambda))).collect();
                    prop_assert_eq!(lhs, rhs);
                }
                Err(e) => {
                    prop_assert_eq!(e, TropError::NoCycle);
                    prop_assert_eq!(oracle, None);
                }
            }
        }

        #[test]
        fn trace_means_bound_lambda(f in arb_matrix()) {
            if let Ok(mc) = min_mean_cycle(&f) {
                let len = mc.cycle.len();
                for k in 1..=3 * f.rows() {
                    let tr = f.power(k).unwrap().trace().unwrap();
                    if let Some(t) = tr.value() {
                        prop_assert!(t.mean(k) >= mc.lambda);
                    }
                    if k % len == 0 {
                        prop_assert_eq!(tr.value().map(|t| t.mean(k)), Some(mc.lambda));
                    }
                }
            }
        }

        #[test]
        fn stabilization_relation_persists(f in arb_matrix()) {
            if let Ok(mc) = min_mean_cycle(&f) {
                if let Some(Stabilization { k0, sigma }) = detect_stabilization(&f, 64).unwrap() {
                    let shift = mc.lambda.times(sigma);
                    for k in k0..=k0 + 4 * sigma {
                        let hi = f.power(k + sigma).unwrap().to_mean();
                        let lo = f.power(k).unwrap().to_mean().shift(shift);
                        prop_assert!(hi.same(&lo));
                    }
                }
            }
        }

        #[test]
        fn constant_shift_moves_lambda(f in arb_matrix(), c in -5i64..=5) {
            if let Ok(mc) = min_mean_cycle(&f) {
                let shifted = min_mean_cycle(&f.shift(c)).unwrap();
                prop_assert_eq!(shifted.lambda, mc.lambda + Ratio::from_integer(c));
                prop_assert_eq!(
                    cycle_weight(&f, &shifted.cycle).value().map(|w| w.mean(shifted.cycle.len())),
                    Some(mc.lambda)
                );
            }
        }
    }
}
