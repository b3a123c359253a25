//! Bipartite inequalities `Σ_k α_k P_k` over modular outcome differences.
//!
//! Substituting `q_{2i-1} = A_i − B_i` and `q_{2i} = B_i − A_{i+1}` with
//! `A_{m+1} = A_1 − 1` turns the classical bound into
//! `min Σ_j α_{q_j}` over the `2m`-tuples with `Σ q_j ≡ 1 (mod d)`, which
//! splits into a chain of one-dimensional minimizations.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::semiring::Trop;

#[derive(Clone, Debug, PartialEq)]
pub struct ModularBellSpec {
    d: usize,
    m: usize,
    alpha: Vec<Ratio<i64>>,
}

impl ModularBellSpec {
    pub fn new(d: usize, m: usize, alpha: Vec<Ratio<i64>>) -> Result<Self> {
        if d < 2 {
            return Err(TropError::InvalidSpec(format!("d must be at least 2, got {d}")));
        }
        if m < 1 {
            return Err(TropError::InvalidSpec("m must be at least 1".into()));
        }
        if alpha.len() != d {
            return Err(TropError::InvalidSpec(format!(
                "alpha has {} entries, expected d = {d}",
                alpha.len()
            )));
        }
        Ok(Self { d, m, alpha })
    }

    /// The CGLMP expression with `d` outcomes and `m` settings.
    pub fn cglmp(d: usize, m: usize) -> Result<Self> {
        Self::new(d, m, cglmp_alpha(d)?)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> &[Ratio<i64>] {
        &self.alpha
    }
}

/// `α_k = 1 − 2k/(d − 1)`.
pub fn cglmp_alpha(d: usize) -> Result<Vec<Ratio<i64>>> {
    if d < 2 {
        return Err(TropError::InvalidSpec(format!("d must be at least 2, got {d}")));
    }
    let den = d as i64 - 1;
    Ok((0..d as i64).map(|k| Ratio::new(den - 2 * k, den)).collect())
}

/// Classical bound by the modular recursion.
///
/// `f⁽⁰⁾(x) = α_{(1−x) mod d}` and `f⁽ᵏ⁾ = G⁽ᵏ⁻¹⁾ ⊙ α`, where
/// `G⁽ᵏ⁻¹⁾[x][y] = f⁽ᵏ⁻¹⁾((x + y) mod d)` is the Hankel circulant built
/// from the previous vector. The bound is `f⁽²ᵐ⁻¹⁾(0)`. Each step costs
/// `O(d²)`; costs are scaled to integers by the common denominator of α.
pub fn modular_bound(spec: &ModularBellSpec) -> Result<Ratio<i64>> {
    let d = spec.d;
    let scale = spec.alpha.iter().fold(1i64, |acc, a| acc.lcm(a.denom()));
    let alpha: Vec<Trop<i64>> = spec
        .alpha
        .iter()
        .map(|a| Trop::Finite((a * Ratio::from_integer(scale)).to_integer()))
        .collect();
    let mut f: Vec<Trop<i64>> = (0..d).map(|x| alpha[(1 + d - x) % d]).collect();
    for _ in 1..2 * spec.m {
        let g = hankel_circulant(&f);
        f = g.mul_vec(&alpha)?;
    }
    let beta = f[0]
        .value()
        .ok_or_else(|| TropError::InvalidSpec("modular recursion produced no finite value".into()))?;
    Ok(Ratio::new(beta, scale))
}

/// `G[x][y] = f((x + y) mod d)`.
pub fn hankel_circulant(f: &[Trop<i64>]) -> TropMatrix {
    let d = f.len();
    TropMatrix::from_fn(d, d, |x, y| f[(x + y) % d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_modular, DEFAULT_CAP};
    use proptest::prelude::*;

    fn r(v: i64) -> Ratio<i64> {
        Ratio::from_integer(v)
    }

    #[test]
    fn cglmp_coefficients() {
        assert_eq!(cglmp_alpha(2).unwrap(), vec![r(1), r(-1)]);
        assert_eq!(cglmp_alpha(3).unwrap(), vec![r(1), r(0), r(-1)]);
        assert_eq!(
            cglmp_alpha(5).unwrap(),
            vec![r(1), Ratio::new(1, 2), r(0), Ratio::new(-1, 2), r(-1)]
        );
        assert!(cglmp_alpha(1).is_err());
    }

    #[test]
    fn validation() {
        assert!(ModularBellSpec::new(3, 2, vec![r(0); 2]).is_err());
        assert!(ModularBellSpec::new(3, 0, vec![r(0); 3]).is_err());
        assert!(ModularBellSpec::new(1, 1, vec![r(0)]).is_err());
    }

    #[test]
    fn checkpoints() {
        let b = |d, m| modular_bound(&ModularBellSpec::cglmp(d, m).unwrap()).unwrap();
        assert_eq!(b(2, 1), r(0));
        assert_eq!(b(2, 2), r(-2));
        assert_eq!(b(3, 2), r(-3));
    }

    #[test]
    fn hankel_layout() {
        let f: Vec<_> = (0..3).map(Trop::Finite).collect();
        let g = hankel_circulant(&f);
        assert_eq!(g.row(1), &[Trop::Finite(1), Trop::Finite(2), Trop::Finite(0)]);
        assert_eq!(g, g.transpose());
    }

    #[test]
    fn cglmp_matches_oracle() {
        for d in 2..=5 {
            for m in 1..=4 {
                let spec = ModularBellSpec::cglmp(d, m).unwrap();
                if (d as f64).powi(2 * m as i32) > DEFAULT_CAP as f64 {
                    continue;
                }
                let oracle = brute_force_modular(&spec, DEFAULT_CAP).unwrap();
                assert_eq!(modular_bound(&spec).unwrap(), oracle.beta, "d={d} m={m}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_alpha_matches_oracle(d in 2usize..=4, m in 1usize..=3, raw in prop::collection::vec(-9i64..=9, 4)) {
            let alpha = raw[..d].iter().map(|&a| Ratio::new(a, 2)).collect();
            let spec = ModularBellSpec::new(d, m, alpha).unwrap();
            let oracle = brute_force_modular(&spec, DEFAULT_CAP).unwrap();
            prop_assert!(oracle.redundancy_holds);
            prop_assert_eq!(modular_bound(&spec).unwrap(), oracle.beta);
        }
    }
}
