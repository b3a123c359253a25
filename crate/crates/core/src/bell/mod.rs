//! Bell inequalities as tropical optimization problems.
//!
//! Classical bounds are minima over local deterministic strategies. For a
//! party with `inputs` dichotomic measurements a strategy fixes an outcome
//! `±1` for every setting, so there are `2^inputs` of them. Strategies are
//! numbered by binary counting with setting 0 as the least significant bit;
//! a clear bit means outcome `+1`.

mod chain;
mod modular;

pub use chain::{
    build_transfer_matrix, chain_cost, classical_bound_chain, thermodynamic_bound, ChainBound,
    ChainCosts, ConvergenceRow, ThermoResult, TransferModel, DEFAULT_SCHEDULE,
};
pub use modular::{cglmp_alpha, modular_bound, ModularBellSpec};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TropError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryCondition {
    #[serde(rename = "obc")]
    Open,
    #[serde(rename = "pbc")]
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainLength {
    Finite(usize),
    Infinite,
}

/// A one-dimensional Bell expression with one-body terms `c_k E_k` on every
/// party and two-body terms `c^(d)_{kl} E_{kl}` between parties at distance
/// `d = 1..=range`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainBellSpec {
    pub n: ChainLength,
    pub inputs: usize,
    pub range: usize,
    /// `one_body[k]`: coefficient of `E_k`.
    pub one_body: Vec<Ratio<i64>>,
    /// `two_body[d - 1][k][l]`: coefficient of `E_{kl}` at distance `d`.
    pub two_body: Vec<Vec<Vec<Ratio<i64>>>>,
    pub boundary: BoundaryCondition,
    pub translation_invariant: bool,
}

impl ChainBellSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(TropError::InvalidSpec(msg));
        if self.inputs == 0 {
            return bad("inputs must be at least 1".into());
        }
        if self.inputs > 16 {
            return bad(format!("{} inputs give too many strategies", self.inputs));
        }
        if self.range == 0 {
            return bad("range must be at least 1".into());
        }
        if self.one_body.len() != self.inputs {
            return bad(format!(
                "one_body has {} coefficients, expected {}",
                self.one_body.len(),
                self.inputs
            ));
        }
        if self.two_body.len() != self.range {
            return bad(format!(
                "two_body covers {} distances, range is {}",
                self.two_body.len(),
                self.range
            ));
        }
        for (d, table) in self.two_body.iter().enumerate() {
            if table.len() != self.inputs || table.iter().any(|row| row.len() != self.inputs) {
                return bad(format!(
                    "two_body at distance {} must be {}x{}",
                    d + 1,
                    self.inputs,
                    self.inputs
                ));
            }
        }
        if let ChainLength::Finite(0) = self.n {
            return bad("n must be positive".into());
        }
        Ok(())
    }

    /// Number of local deterministic strategies per party.
    pub fn strategies(&self) -> usize {
        1 << self.inputs
    }

    /// Common denominator of every coefficient.
    pub fn scale(&self) -> i64 {
        self.one_body
            .iter()
            .chain(self.two_body.iter().flatten().flatten())
            .fold(1i64, |acc, c| acc.lcm(c.denom()))
    }

    /// Finite chain length, or an error for infinite chains.
    pub fn finite_n(&self) -> Result<usize> {
        match self.n {
            ChainLength::Finite(n) => Ok(n),
            ChainLength::Infinite => Err(TropError::InvalidSpec(
                "chain length is infinite; pass an explicit n".into(),
            )),
        }
    }

    /// The factor network of the finite chain: one factor per correlated
    /// pair, with one-body terms folded into the first factor touching each
    /// party.
    pub fn to_factor_network(&self) -> Result<crate::network::FactorNetwork> {
        self.validate()?;
        let n = self.finite_n()?;
        ChainCosts::from_spec(self)?.to_factor_network(n, self.boundary)
    }
}

/// Every local deterministic strategy as its outcome vector.
pub fn enumerate_strategies(inputs: usize) -> Vec<Vec<i64>> {
    (0..1usize << inputs)
        .map(|s| (0..inputs).map(|k| outcome(s, k)).collect())
        .collect()
}

/// Outcome (`±1`) of strategy `s` for setting `k`.
pub fn outcome(s: usize, k: usize) -> i64 {
    if (s >> k) & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Base-`base` digits of a block strategy, first party most significant.
pub fn decode_block(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for slot in digits.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    digits
}

pub fn encode_block(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}
