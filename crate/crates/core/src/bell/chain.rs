//! Translation-invariant chains through the transfer matrix.
//!
//! Parties are grouped into blocks of `r` consecutive sites, `r` being the
//! interaction range, so every correlator couples at most two neighbouring
//! blocks. `F[i][j]` is the cost of block strategy `j` on its own (one-body
//! terms and correlators inside the block) plus every correlator reaching
//! from a left block playing `i` into it. Summing `F` along a periodic chain
//! of blocks reproduces the cost function exactly.

use num_rational::Ratio;

use super::{decode_block, outcome, BoundaryCondition, ChainBellSpec};
use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::network::FactorNetwork;
use crate::semiring::{Trop, Weight};
use crate::spectral::{self, Stabilization};
use crate::tensor::TropTensor;

/// Chain lengths, in blocks, at which convergence is tabulated.
pub const DEFAULT_SCHEDULE: [usize; 6] = [8, 16, 32, 64, 128, 256];

/// Scaled integer costs of a translation-invariant chain.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainCosts {
    /// Strategies per party.
    pub base: usize,
    pub range: usize,
    /// Cost of each single-party strategy.
    pub one_body: Vec<Trop<i64>>,
    /// `pair[d - 1]` costs strategy pairs at distance `d`.
    pub pair: Vec<TropMatrix>,
    /// All costs are multiplied by this denominator.
    pub scale: i64,
}

impl ChainCosts {
    pub fn from_spec(spec: &ChainBellSpec) -> Result<Self> {
        spec.validate()?;
        let scale = spec.scale();
        let to_int = |c: Ratio<i64>| -> i64 { (c * Ratio::from_integer(scale)).to_integer() };
        let base = spec.strategies();
        let one_body = (0..base)
            .map(|s| {
                Trop::Finite(
                    spec.one_body
                        .iter()
                        .enumerate()
                        .map(|(k, &c)| to_int(c) * outcome(s, k))
                        .sum(),
                )
            })
            .collect();
        let pair = spec
            .two_body
            .iter()
            .map(|table| {
                TropMatrix::from_fn(base, base, |s, t| {
                    let mut total = 0i64;
                    for (k, row) in table.iter().enumerate() {
                        for (l, &c) in row.iter().enumerate() {
                            total += to_int(c) * outcome(s, k) * outcome(t, l);
                        }
                    }
                    Trop::Finite(total)
                })
            })
            .collect();
        Ok(Self {
            base,
            range: spec.range,
            one_body,
            pair,
            scale,
        })
    }

    /// A nearest-neighbour chain with pair costs `f` and no one-body terms.
    pub fn nearest_neighbour(f: TropMatrix) -> Result<Self> {
        if !f.is_square() {
            return Err(TropError::Dimension("pair cost matrix must be square".into()));
        }
        Ok(Self {
            base: f.rows(),
            range: 1,
            one_body: vec![Trop::unit(); f.rows()],
            pair: vec![f],
            scale: 1,
        })
    }

    fn pair_cost(&self, dist: usize, s: usize, t: usize) -> Trop<i64> {
        self.pair[dist - 1].get(s, t)
    }

    /// One-body terms of a run of parties plus correlators inside it.
    fn internal(&self, parties: &[usize]) -> Trop<i64> {
        let mut total = Trop::unit();
        for (i, &s) in parties.iter().enumerate() {
            total = total.odot(self.one_body[s]);
            for d in 1..=self.range {
                if let Some(&t) = parties.get(i + d) {
                    total = total.odot(self.pair_cost(d, s, t));
                }
            }
        }
        total
    }

    /// Correlators from a full block on the left into the run `right`.
    fn cross(&self, left: &[usize], right: &[usize]) -> Trop<i64> {
        let mut total = Trop::unit();
        for (i, &s) in left.iter().enumerate() {
            for (j, &t) in right.iter().enumerate() {
                let dist = left.len() - i + j;
                if dist <= self.range {
                    total = total.odot(self.pair_cost(dist, s, t));
                }
            }
        }
        total
    }

    /// Factor network of a finite chain.
    pub fn to_factor_network(&self, n: usize, boundary: BoundaryCondition) -> Result<FactorNetwork> {
        let base = self.base;
        let mut tables: Vec<(Vec<usize>, Vec<Trop<i64>>)> = Vec::new();
        for i in 0..n {
            for d in 1..=self.range {
                let j = match boundary {
                    BoundaryCondition::Open if i + d < n => i + d,
                    BoundaryCondition::Open => continue,
                    BoundaryCondition::Periodic => (i + d) % n,
                };
                if i == j {
                    let diag = (0..base).map(|s| self.pair_cost(d, s, s)).collect();
                    add_table(&mut tables, vec![i], diag);
                } else {
                    let mut data = Vec::with_capacity(base * base);
                    for s in 0..base {
                        for t in 0..base {
                            data.push(self.pair_cost(d, s, t));
                        }
                    }
                    add_table(&mut tables, vec![i, j], data);
                }
            }
        }
        for i in 0..n {
            let slot = tables.iter().position(|(vars, _)| vars.contains(&i));
            let Some(slot) = slot else {
                tables.push((vec![i], self.one_body.clone()));
                continue;
            };
            let (vars, data) = &mut tables[slot];
            let pos = vars.iter().position(|&v| v == i).expect("present");
            let dims = vec![base; vars.len()];
            let t = TropTensor::new(vars.clone(), dims, std::mem::take(data))?;
            let updated = TropTensor::from_fn(vars.clone(), vec![base; vars.len()], |x| {
                t.get(x).odot(self.one_body[x[pos]])
            })?;
            *data = updated.data().to_vec();
        }
        FactorNetwork::from_tables(n, base, tables)
    }
}

fn add_table(tables: &mut Vec<(Vec<usize>, Vec<Trop<i64>>)>, vars: Vec<usize>, data: Vec<Trop<i64>>) {
    tables.push((vars, data));
}

/// Cost of a full chain assignment evaluated directly from the definition.
pub fn chain_cost(costs: &ChainCosts, assignment: &[usize], boundary: BoundaryCondition) -> Trop<i64> {
    let n = assignment.len();
    let mut total = Trop::unit();
    for i in 0..n {
        total = total.odot(costs.one_body[assignment[i]]);
        for d in 1..=costs.range {
            let j = match boundary {
                BoundaryCondition::Open if i + d < n => i + d,
                BoundaryCondition::Open => continue,
                BoundaryCondition::Periodic => (i + d) % n,
            };
            total = total.odot(costs.pair_cost(d, assignment[i], assignment[j]));
        }
    }
    total
}

/// Transfer matrix of a blocked chain.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferModel {
    /// `F`, of size `base^block × base^block`.
    pub transfer: TropMatrix,
    pub costs: ChainCosts,
    /// Parties per effective block.
    pub block: usize,
    pub boundary: BoundaryCondition,
}

impl TransferModel {
    pub fn from_costs(costs: ChainCosts, boundary: BoundaryCondition) -> Result<Self> {
        let block = costs.range;
        let size = costs
            .base
            .checked_pow(block as u32)
            .filter(|&s| s <= 1 << 12)
            .ok_or_else(|| TropError::InvalidSpec("blocked strategy space is too large".into()))?;
        let blocks: Vec<Vec<usize>> = (0..size).map(|i| decode_block(i, costs.base, block)).collect();
        let transfer = TropMatrix::from_fn(size, size, |i, j| {
            costs.internal(&blocks[j]).odot(costs.cross(&blocks[i], &blocks[j]))
        });
        Ok(Self {
            transfer,
            costs,
            block,
            boundary,
        })
    }

    /// A nearest-neighbour model given directly by its transfer matrix.
    pub fn from_matrix(f: TropMatrix, boundary: BoundaryCondition) -> Result<Self> {
        Self::from_costs(ChainCosts::nearest_neighbour(f)?, boundary)
    }

    pub fn size(&self) -> usize {
        self.transfer.rows()
    }

    fn decode(&self, index: usize) -> Vec<usize> {
        decode_block(index, self.costs.base, self.block)
    }

    fn to_ratio(&self, v: i64) -> Ratio<i64> {
        Ratio::new(v, self.costs.scale)
    }
}

/// Builds the transfer matrix of a translation-invariant spec.
pub fn build_transfer_matrix(spec: &ChainBellSpec) -> Result<TransferModel> {
    if !spec.translation_invariant {
        return Err(TropError::InvalidSpec(
            "transfer matrices need a translation-invariant spec; use the network pipeline".into(),
        ));
    }
    TransferModel::from_costs(ChainCosts::from_spec(spec)?, spec.boundary)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainBound {
    /// Bound in coefficient units; `None` if every configuration is forbidden.
    pub beta: Option<Ratio<i64>>,
    /// Bound in scaled integer units.
    pub scaled: Trop<i64>,
    /// Optimal strategy per party, when the bound is finite.
    pub assignment: Option<Vec<usize>>,
}

/// Classical bound of a chain of `n` parties under `boundary`.
///
/// The value comes from `Z = F^L` (`L` blocks): `tropTr(Z)` for periodic
/// chains, and for open chains the first block's own cost, `Z`, and a
/// trailing partial block when `r` does not divide `n`. An optimal
/// assignment is recovered separately by dynamic programming with argmin
/// backtracking and checked against the value.
pub fn classical_bound_chain(model: &TransferModel, n: usize, boundary: BoundaryCondition) -> Result<ChainBound> {
    let r = model.block;
    let (scaled, assignment) = match boundary {
        BoundaryCondition::Periodic => {
            if n == 0 || !n.is_multiple_of(r) {
                return Err(TropError::InvalidSpec(format!(
                    "periodic chain length {n} must be a positive multiple of the block size {r}"
                )));
            }
            let blocks = n / r;
            let z = model.transfer.power(blocks)?;
            let beta = z.trace()?;
            (beta, periodic_assignment(model, blocks, beta)?)
        }
        BoundaryCondition::Open => {
            if n < 2 {
                return Err(TropError::InvalidSpec(format!(
                    "open chain needs at least 2 parties, got {n}"
                )));
            }
            open_bound(model, n)?
        }
    };
    if let Some(x) = &assignment {
        let direct = chain_cost(&model.costs, x, boundary);
        if direct != scaled {
            return Err(TropError::InvalidSpec(format!(
                "internal: witness costs {direct} but the bound is {scaled}"
            )));
        }
    }
    Ok(ChainBound {
        beta: scaled.value().map(|v| model.to_ratio(v)),
        scaled,
        assignment,
    })
}

fn periodic_assignment(model: &TransferModel, blocks: usize, beta: Trop<i64>) -> Result<Option<Vec<usize>>> {
    if beta.is_infinite() {
        return Ok(None);
    }
    let f = &model.transfer;
    let size = model.size();
    for start in 0..size {
        let mut cur: Vec<Trop<i64>> = (0..size).map(|j| if j == start { Trop::unit() } else { Trop::Infinity }).collect();
        let mut preds = Vec::with_capacity(blocks);
        for _ in 0..blocks {
            let (next, back) = relax(&cur, f);
            cur = next;
            preds.push(back);
        }
        if cur[start] == beta {
            let mut path = vec![start];
            let mut v = start;
            for back in preds.iter().rev().take(blocks - 1) {
                v = back[v];
                path.push(v);
            }
            path.reverse();
            // path = [B_1, .., B_{L-1}, B_0]; rotate B_0 to the front
            path.rotate_right(1);
            return Ok(Some(path.iter().flat_map(|&b| model.decode(b)).collect()));
        }
    }
    Err(TropError::InvalidSpec("internal: no periodic witness attains the trace".into()))
}

fn open_bound(model: &TransferModel, n: usize) -> Result<(Trop<i64>, Option<Vec<usize>>)> {
    let r = model.block;
    let costs = &model.costs;
    let (blocks, rem) = (n / r, n % r);
    if blocks == 0 {
        // Shorter than one block: enumerate the partial block directly.
        let count = costs.base.pow(rem as u32);
        let mut best = (Trop::Infinity, 0);
        for t in 0..count {
            let v = costs.internal(&decode_block(t, costs.base, rem));
            if v.less_than(best.0) {
                best = (v, t);
            }
        }
        let x = best.0.is_finite().then(|| decode_block(best.1, costs.base, rem));
        return Ok((best.0, x));
    }

    let size = model.size();
    let head: Vec<Trop<i64>> = (0..size).map(|b| costs.internal(&model.decode(b))).collect();
    let tail = (rem > 0).then(|| {
        let count = costs.base.pow(rem as u32);
        TropMatrix::from_fn(size, count, |i, t| {
            let run = decode_block(t, costs.base, rem);
            costs.internal(&run).odot(costs.cross(&model.decode(i), &run))
        })
    });

    // value: ⟨head| F^(L-1) [tail] |0⟩
    let z = model.transfer.power(blocks - 1)?;
    let mut row = TropMatrix::vec_mul(&head, &z)?;
    if let Some(t) = &tail {
        row = TropMatrix::vec_mul(&row, t)?;
    }
    let beta = row.iter().copied().fold(Trop::Infinity, Trop::oplus);
    if beta.is_infinite() {
        return Ok((beta, None));
    }

    // witness by forward dynamic programming
    let mut cur = head;
    let mut preds = Vec::new();
    for _ in 1..blocks {
        let (next, back) = relax(&cur, &model.transfer);
        cur = next;
        preds.push(back);
    }
    let mut tail_choice = None;
    if let Some(t) = &tail {
        let (next, back) = relax(&cur, t);
        let end = argmin(&next);
        tail_choice = Some(end);
        cur = vec![Trop::Infinity; size];
        cur[back[end]] = next[end];
    }
    let mut v = argmin(&cur);
    let mut path = vec![v];
    for back in preds.iter().rev() {
        v = back[v];
        path.push(v);
    }
    path.reverse();
    let mut x: Vec<usize> = path.iter().flat_map(|&b| model.decode(b)).collect();
    if let Some(t) = tail_choice {
        x.extend(decode_block(t, costs.base, rem));
    }
    Ok((beta, Some(x)))
}

/// One min-plus relaxation step `cur ⊙ M` with first-minimum predecessors.
fn relax(cur: &[Trop<i64>], m: &TropMatrix) -> (Vec<Trop<i64>>, Vec<usize>) {
    let mut next = vec![Trop::Infinity; m.cols()];
    let mut back = vec![0usize; m.cols()];
    for (i, &c) in cur.iter().enumerate() {
        if c.is_infinite() {
            continue;
        }
        for j in 0..m.cols() {
            let cand = c.odot(m.get(i, j));
            if cand.less_than(next[j]) {
                next[j] = cand;
                back[j] = i;
            }
        }
    }
    (next, back)
}

fn argmin(v: &[Trop<i64>]) -> usize {
    (0..v.len()).fold(0, |best, i| if v[i].less_than(v[best]) { i } else { best })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    /// Parties.
    pub n: usize,
    /// Periodic bound; `None` if infinite.
    pub beta: Option<Ratio<i64>>,
    pub per_particle: Option<Ratio<i64>>,
    /// `beta / n - lambda`.
    pub gap: Option<Ratio<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThermoResult {
    /// Bound per particle in the infinite chain.
    pub lambda: Ratio<i64>,
    /// Minimum cycle mean of `F` in scaled units per block.
    pub lambda_block: Ratio<i64>,
    pub critical_cycle: Vec<usize>,
    pub eigenvector: Vec<Trop<Ratio<i64>>>,
    pub stabilization: Option<Stabilization>,
    pub table: Vec<ConvergenceRow>,
    /// `max n · gap` over the table.
    pub fitted_c: Option<Ratio<i64>>,
    /// `max (β(n) − nλ)` over one transient plus one period, which bounds
    /// `n · gap` for every chain length once stabilized.
    pub envelope_c: Option<Ratio<i64>>,
}

/// Per-particle bound of the infinite chain together with stabilization
/// data and exact periodic bounds at `schedule` (lengths in blocks).
pub fn thermodynamic_bound(model: &TransferModel, k_max: Option<usize>, schedule: &[usize]) -> Result<ThermoResult> {
    let f = &model.transfer;
    let r = model.block;
    let scale = model.costs.scale;
    let k_max = k_max.unwrap_or_else(|| spectral::default_k_max(f.rows()));
    let mc = spectral::min_mean_cycle(f)?;
    let eigenvector = spectral::trop_eigenvector(f, mc.lambda)?;
    let stabilization = spectral::detect_stabilization(f, k_max)?;
    let per_party = |v: Ratio<i64>| v / Ratio::from_integer(scale);
    let lambda = per_party(mc.lambda.mean(r));

    let mut table = Vec::with_capacity(schedule.len());
    for &blocks in schedule {
        let n = blocks * r;
        let beta = f.power(blocks)?.trace()?.value().map(|v| Ratio::new(v, scale));
        let per_particle = beta.map(|b| b / Ratio::from_integer(n as i64));
        table.push(ConvergenceRow {
            n,
            beta,
            per_particle,
            gap: per_particle.map(|p| p - lambda),
        });
    }
    let fitted_c = table
        .iter()
        .filter_map(|row| row.gap.map(|g| g * Ratio::from_integer(row.n as i64)))
        .max();

    let envelope_c = match stabilization {
        Some(Stabilization { k0, sigma }) => {
            let mut power = f.clone();
            let mut worst: Option<Ratio<i64>> = None;
            for blocks in 1..k0 + sigma {
                if blocks > 1 {
                    power = power.mul(f)?;
                }
                if let Some(tr) = power.trace()?.value() {
                    let excess = per_party(Ratio::from_integer(tr) - mc.lambda * Ratio::from_integer(blocks as i64));
                    worst = Some(worst.map_or(excess, |w| w.max(excess)));
                }
            }
            worst
        }
        None => None,
    };

    Ok(ThermoResult {
        lambda,
        lambda_block: mc.lambda,
        critical_cycle: mc.cycle,
        eigenvector,
        stabilization,
        table,
        fitted_c,
        envelope_c,
    })
}
