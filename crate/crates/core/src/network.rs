//! Tropical tensor networks for local cost functions `H(x) = Σ_I f_I(x_I)`.
//!
//! A network is contracted by eliminating its closed indices (variables
//! shared by at least two factors) one at a time. Eliminating `x` gathers
//! the factors touching it (`J`), closes every variable those factors share
//! among themselves and with nothing else (`C`, which contains `x`), and
//! replaces `J` by one factor on the remaining legs (`O`).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Result, TropError};
use crate::semiring::{Trop, Weight};
use crate::tensor::{contract, reduce_min, Label, TropTensor, Witness};

/// Default cap on intermediate tensors, in binary-equivalent legs.
pub const DEFAULT_RANK_CAP: f64 = 22.0;

#[derive(Clone, Debug, PartialEq)]
pub struct FactorNetwork<W = i64> {
    n: usize,
    domain: usize,
    factors: Vec<TropTensor<W>>,
}

impl<W: Weight> FactorNetwork<W> {
    /// Builds a network from factor tensors whose labels are variable
    /// indices. Legs are sorted by label and factors on identical variable
    /// sets are merged by entrywise `⊙`.
    pub fn new(n: usize, domain: usize, factors: Vec<TropTensor<W>>) -> Result<Self> {
        if n == 0 || domain == 0 {
            return Err(TropError::InvalidNetwork(
                "need at least one variable and a nonempty domain".into(),
            ));
        }
        let mut merged: Vec<TropTensor<W>> = Vec::new();
        for (i, f) in factors.into_iter().enumerate() {
            if f.rank() == 0 {
                return Err(TropError::InvalidNetwork(format!("factor {i} has no variables")));
            }
            if let Some(&l) = f.labels().iter().find(|&&l| l >= n) {
                return Err(TropError::InvalidNetwork(format!(
                    "factor {i} uses x{l} but n = {n}"
                )));
            }
            if f.dims().iter().any(|&d| d != domain) {
                return Err(TropError::InvalidNetwork(format!(
                    "factor {i} has leg cardinalities {:?}, domain is {domain}",
                    f.dims()
                )));
            }
            let mut sorted = f.labels().to_vec();
            sorted.sort_unstable();
            let f = f.permuted(&sorted)?;
            match merged.iter_mut().find(|g| g.labels() == f.labels()) {
                Some(g) => *g = g.odot_entrywise(&f)?,
                None => merged.push(f),
            }
        }
        for v in 0..n {
            if !merged.iter().any(|f| f.position(v).is_some()) {
                return Err(TropError::InvalidNetwork(format!(
                    "variable x{v} does not appear in any factor"
                )));
            }
        }
        Ok(Self {
            n,
            domain,
            factors: merged,
        })
    }

    /// Builds a network from `(vars, row-major table)` pairs.
    pub fn from_tables(n: usize, domain: usize, tables: Vec<(Vec<usize>, Vec<Trop<W>>)>) -> Result<Self> {
        let factors = tables
            .into_iter()
            .map(|(vars, data)| {
                let dims = vec![domain; vars.len()];
                TropTensor::new(vars, dims, data)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, domain, factors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn factors(&self) -> &[TropTensor<W>] {
        &self.factors
    }

    /// Variable sets of the factors, in factor order.
    pub fn index_sets(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(|f| f.labels().to_vec()).collect()
    }

    /// `H(x)` for a full assignment.
    pub fn evaluate(&self, assignment: &[usize]) -> Trop<W> {
        self.factors
            .iter()
            .fold(Trop::unit(), |acc, f| acc.odot(f.eval(assignment)))
    }

    /// Returns a copy with one more factor.
    pub fn with_factor(&self, factor: TropTensor<W>) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.push(factor);
        Self::new(self.n, self.domain, factors)
    }

    /// The closed indices: variables that belong to at least two factors.
    pub fn eliminable_vars(&self) -> Vec<usize> {
        eliminable(&self.index_sets())
    }

    /// Eliminates `x` and every variable that becomes internal to the
    /// factors touching it. The step record is numbered 1.
    pub fn contract_step(&self, x: Label, options: &ContractOptions) -> Result<(Self, StepRecord)> {
        self.step(x, 1, options)
    }

    fn step(&self, x: Label, k: usize, options: &ContractOptions) -> Result<(Self, StepRecord)> {
        let sets = self.index_sets();
        let Some(split) = split_step(&sets, x) else {
            return Err(TropError::NotEliminable(x));
        };
        let legs = split.open.len() as f64 * (self.domain as f64).log2();
        if legs > options.rank_cap {
            return Err(TropError::RankCap {
                step: k,
                var: x,
                legs,
                cap: options.rank_cap,
            });
        }
        let affected: Vec<&TropTensor<W>> = split.affected.iter().map(|&i| &self.factors[i]).collect();
        let mut merged = contract(&affected, &split.closed, options.record_witness)?;
        let witness = merged.take_witness().map(|table| StepWitness {
            out_labels: merged.labels().to_vec(),
            out_dims: merged.dims().to_vec(),
            table,
        });
        let merged = merged.permuted(&split.open)?;

        let mut factors: Vec<TropTensor<W>> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(i, _)| !split.affected.contains(i))
            .map(|(_, f)| f.clone())
            .collect();
        factors.push(merged);
        let next = Self {
            n: self.n,
            domain: self.domain,
            factors,
        };
        let mut affected_sets: Vec<Vec<usize>> = split.affected.iter().map(|&i| sets[i].clone()).collect();
        affected_sets.sort();
        let record = StepRecord {
            k,
            var: x,
            affected: affected_sets,
            closed: split.closed,
            open: split.open,
            network: next.index_sets(),
            witness,
        };
        Ok((next, record))
    }

    /// Orders the closed indices greedily: at every step pick the variable
    /// whose elimination leaves the fewest open legs, ties to the smallest
    /// label. Variables closed as a side effect follow the chosen one and
    /// are skipped during contraction.
    pub fn greedy_order(&self) -> EliminationPlan {
        let mut sets = self.index_sets();
        let mut order = Vec::new();
        loop {
            let best = eliminable(&sets)
                .into_iter()
                .filter_map(|v| split_step(&sets, v).map(|s| (s.open.len(), v, s)))
                .min_by_key(|(size, v, _)| (*size, *v));
            let Some((_, v, split)) = best else { break };
            order.push(v);
            order.extend(split.closed.iter().copied().filter(|&c| c != v));
            sets = apply_split(&sets, &split);
        }
        EliminationPlan { order }
    }

    /// Largest `|O_k|` produced by following `plan`.
    pub fn max_open_legs(&self, plan: &EliminationPlan) -> Result<usize> {
        let mut sets = self.index_sets();
        let mut done = BTreeSet::new();
        let mut max = 0;
        for &v in &plan.order {
            if done.contains(&v) {
                continue;
            }
            let split = split_step(&sets, v).ok_or(TropError::NotEliminable(v))?;
            max = max.max(split.open.len());
            done.extend(split.closed.iter().copied());
            sets = apply_split(&sets, &split);
        }
        Ok(max)
    }

    /// Contracts the whole network along `plan`.
    ///
    /// Without closure the result is a tensor on the legs that belong to a
    /// single factor (the open indices), sorted by label. With
    /// [`Boundary::OpenClosure`] those legs are minimized too and the result
    /// is a scalar.
    pub fn contract_full(
        &self,
        plan: &EliminationPlan,
        boundary: Boundary,
        options: &ContractOptions,
    ) -> Result<(TropTensor<W>, ContractionTrace)> {
        self.check_plan(plan)?;
        let mut net = self.clone();
        let mut entries = Vec::new();
        let mut absorbed_at: Vec<Option<usize>> = vec![None; self.n];
        let mut k = 0;
        for &v in &plan.order {
            if let Some(step) = absorbed_at[v] {
                entries.push(TraceEntry::Skipped { var: v, absorbed_at: step });
                continue;
            }
            k += 1;
            let (next, record) = net.step(v, k, options)?;
            for &c in &record.closed {
                absorbed_at[c] = Some(k);
            }
            entries.push(TraceEntry::Contracted(record));
            net = next;
        }

        let mut closure = Vec::new();
        let result = match boundary {
            Boundary::None => {
                let legs: usize = net.factors.iter().map(TropTensor::rank).sum();
                let bits = legs as f64 * (self.domain as f64).log2();
                if bits > options.rank_cap {
                    return Err(TropError::RankCap {
                        step: k + 1,
                        var: net.factors.iter().flat_map(|f| f.labels()).copied().min().unwrap_or(0),
                        legs: bits,
                        cap: options.rank_cap,
                    });
                }
                let parts: Vec<&TropTensor<W>> = net.factors.iter().collect();
                let out = contract(&parts, &[], false)?;
                let mut sorted = out.labels().to_vec();
                sorted.sort_unstable();
                out.permuted(&sorted)?
            }
            Boundary::OpenClosure => {
                // Remaining factors share no variables, so each closes on its own.
                let mut total = Trop::unit();
                for f in &net.factors {
                    let mut s = reduce_min(f, f.labels(), options.record_witness)?;
                    total = total.odot(s.as_scalar().expect("fully reduced"));
                    if let Some(table) = s.take_witness() {
                        closure.push(StepWitness {
                            out_labels: Vec::new(),
                            out_dims: Vec::new(),
                            table,
                        });
                    }
                }
                TropTensor::scalar(total)
            }
        };
        let trace = ContractionTrace {
            n: self.n,
            entries,
            closure,
            witnesses: options.record_witness,
        };
        Ok((result, trace))
    }

    fn check_plan(&self, plan: &EliminationPlan) -> Result<()> {
        let mut expected = self.eliminable_vars();
        let mut given = plan.order.clone();
        given.sort_unstable();
        if given.windows(2).any(|w| w[0] == w[1]) {
            return Err(TropError::InvalidPlan("a variable is listed twice".into()));
        }
        expected.sort_unstable();
        if given != expected {
            return Err(TropError::InvalidPlan(format!(
                "plan must be a permutation of the closed indices {expected:?}, got {:?}",
                plan.order
            )));
        }
        Ok(())
    }
}

/// Recovers an optimal assignment by replaying stored witnesses backwards.
/// `result` is the tensor returned by [`FactorNetwork::contract_full`].
pub fn backtrack_optimum<W: Weight>(trace: &ContractionTrace, result: &TropTensor<W>) -> Result<Vec<usize>> {
    if !trace.witnesses {
        return Err(TropError::MissingWitness);
    }
    let mut assignment: Vec<Option<usize>> = vec![None; trace.n];
    for (&l, c) in result.labels().iter().zip(result.argmin()) {
        assignment[l] = Some(c);
    }
    for part in &trace.closure {
        for (&l, c) in part.table.labels().iter().zip(part.table.choice(0)) {
            assignment[l] = Some(c);
        }
    }
    for entry in trace.entries.iter().rev() {
        let TraceEntry::Contracted(step) = entry else { continue };
        let w = step.witness.as_ref().ok_or(TropError::MissingWitness)?;
        let mut idx = 0;
        for (&l, &d) in w.out_labels.iter().zip(&w.out_dims) {
            let v = assignment[l].ok_or_else(|| {
                TropError::InvalidPlan(format!("x{l} unresolved when replaying step {}", step.k))
            })?;
            idx = idx * d + v;
        }
        for (&l, c) in w.table.labels().iter().zip(w.table.choice(idx)) {
            assignment[l] = Some(c);
        }
    }
    assignment
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| TropError::InvalidPlan(format!("x{i} never resolved"))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Keep the open indices.
    None,
    /// Minimize over the open indices as a last step.
    OpenClosure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractOptions {
    pub record_witness: bool,
    /// Maximum size of an intermediate tensor, in binary-equivalent legs
    /// (`|O| · log2 |S|`).
    pub rank_cap: f64,
}

impl Default for ContractOptions {
    fn default() -> Self {
        Self {
            record_witness: false,
            rank_cap: DEFAULT_RANK_CAP,
        }
    }
}

impl ContractOptions {
    pub fn with_witness() -> Self {
        Self {
            record_witness: true,
            ..Self::default()
        }
    }
}

/// An elimination order: a permutation of the closed indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationPlan {
    pub order: Vec<usize>,
}

impl EliminationPlan {
    pub fn new(order: Vec<usize>) -> Self {
        Self { order }
    }
}

/// Witness table of one elimination, indexed by the contraction output in
/// `out_labels` order.
#[derive(Clone, Debug, PartialEq)]
pub struct StepWitness {
    pub out_labels: Vec<Label>,
    pub out_dims: Vec<usize>,
    pub table: Witness,
}

/// Bookkeeping for one elimination step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub k: usize,
    pub var: Label,
    /// `J_k`: the factors touching `var`, sorted lexicographically.
    pub affected: Vec<Vec<usize>>,
    /// `C_k`: variables closed at this step, `var` included.
    pub closed: Vec<usize>,
    /// `O_k`: legs of the new factor.
    pub open: Vec<usize>,
    /// Factor index sets after the step.
    pub network: Vec<Vec<usize>>,
    #[serde(skip)]
    pub witness: Option<StepWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceEntry {
    Contracted(StepRecord),
    /// Plan entry already closed by the numbered step.
    Skipped { var: Label, absorbed_at: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionTrace {
    pub n: usize,
    pub entries: Vec<TraceEntry>,
    #[serde(skip)]
    pub closure: Vec<StepWitness>,
    #[serde(skip)]
    pub witnesses: bool,
}

impl ContractionTrace {
    pub fn steps(&self) -> impl Iterator<Item = &StepRecord> {
        self.entries.iter().filter_map(|e| match e {
            TraceEntry::Contracted(s) => Some(s),
            TraceEntry::Skipped { .. } => None,
        })
    }

    pub fn max_open_legs(&self) -> usize {
        self.steps().map(|s| s.open.len()).max().unwrap_or(0)
    }
}

struct Split {
    affected: Vec<usize>,
    closed: Vec<usize>,
    open: Vec<usize>,
}

fn eliminable(sets: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    let mut shared = BTreeSet::new();
    for set in sets {
        for &v in set {
            if !seen.insert(v) {
                shared.insert(v);
            }
        }
    }
    shared.into_iter().collect()
}

/// Computes `J`, `C` and `O` for eliminating `x`; `None` if `x` is not a
/// closed index of `sets`.
fn split_step(sets: &[Vec<usize>], x: usize) -> Option<Split> {
    let affected: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].contains(&x)).collect();
    if affected.len() < 2 {
        return None;
    }
    let outside: BTreeSet<usize> = (0..sets.len())
        .filter(|i| !affected.contains(i))
        .flat_map(|i| sets[i].iter().copied())
        .collect();
    let inside: Vec<Vec<usize>> = affected.iter().map(|&i| sets[i].clone()).collect();
    let closed: Vec<usize> = eliminable(&inside)
        .into_iter()
        .filter(|v| !outside.contains(v))
        .collect();
    let open: Vec<usize> = inside
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|v| !closed.contains(v))
        .collect();
    Some(Split {
        affected,
        closed,
        open,
    })
}

fn apply_split(sets: &[Vec<usize>], split: &Split) -> Vec<Vec<usize>> {
    let mut next: Vec<Vec<usize>> = (0..sets.len())
        .filter(|i| !split.affected.contains(i))
        .map(|i| sets[i].clone())
        .collect();
    next.push(split.open.clone());
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::TropMatrix;

    fn t(v: i64) -> Trop<i64> {
        Trop::Finite(v)
    }

    fn zeros(vars: Vec<usize>, domain: usize) -> TropTensor {
        let r = vars.len();
        TropTensor::from_fn(vars, vec![domain; r], |_| t(0)).unwrap()
    }

    /// Network with the topology {0,1}, {2,3,4}, {0,2,4} and arbitrary entries.
    fn three_factor_net() -> FactorNetwork {
        let f01 = TropTensor::from_fn(vec![0, 1], vec![2; 2], |x| t(x[0] as i64 * 3 - x[1] as i64)).unwrap();
        let f234 = TropTensor::from_fn(vec![2, 3, 4], vec![2; 3], |x| {
            t((x[0] + 2 * x[1]) as i64 - 2 * x[2] as i64)
        })
        .unwrap();
        let f024 = TropTensor::from_fn(vec![0, 2, 4], vec![2; 3], |x| {
            t(if x[0] == x[2] { -1 } else { 2 } + x[1] as i64)
        })
        .unwrap();
        FactorNetwork::new(5, 2, vec![f01, f234, f024]).unwrap()
    }

    #[test]
    fn eliminable_examples() {
        assert_eq!(three_factor_net().eliminable_vars(), vec![0, 2, 4]);
        let single = FactorNetwork::new(2, 2, vec![zeros(vec![0, 1], 2)]).unwrap();
        assert!(single.eliminable_vars().is_empty());
        let chain = FactorNetwork::new(
            4,
            2,
            vec![zeros(vec![0, 1], 2), zeros(vec![1, 2], 2), zeros(vec![2, 3], 2)],
        )
        .unwrap();
        assert_eq!(chain.eliminable_vars(), vec![1, 2]);
    }

    #[test]
    fn step_bookkeeping_matches_three_factor_example() {
        let net = three_factor_net();
        let opts = ContractOptions::default();
        let (net1, s1) = net.contract_step(0, &opts).unwrap();
        assert_eq!(s1.affected, vec![vec![0, 1], vec![0, 2, 4]]);
        assert_eq!(s1.closed, vec![0]);
        assert_eq!(s1.open, vec![1, 2, 4]);
        let (_, s2) = net1.contract_step(2, &opts).unwrap();
        assert_eq!(s2.affected, vec![vec![1, 2, 4], vec![2, 3, 4]]);
        assert_eq!(s2.closed, vec![2, 4]);
        assert_eq!(s2.open, vec![1, 3]);
        assert!(matches!(net.contract_step(1, &opts), Err(TropError::NotEliminable(1))));
    }

    #[test]
    fn full_contraction_leaves_open_indices() {
        let net = three_factor_net();
        let plan = EliminationPlan::new(vec![0, 2, 4]);
        let (z, trace) = net
            .contract_full(&plan, Boundary::None, &ContractOptions::default())
            .unwrap();
        assert_eq!(z.labels(), &[1, 3]);
        assert_eq!(
            trace.entries.last(),
            Some(&TraceEntry::Skipped { var: 4, absorbed_at: 2 })
        );
        // z(x1, x3) against direct minimization over x0, x2, x4.
        for x1 in 0..2 {
            for x3 in 0..2 {
                let mut best = Trop::Infinity;
                for x0 in 0..2 {
                    for x2 in 0..2 {
                        for x4 in 0..2 {
                            best = best.oplus(net.evaluate(&[x0, x1, x2, x3, x4]));
                        }
                    }
                }
                assert_eq!(z.get(&[x1, x3]), best);
            }
        }
    }

    #[test]
    fn chain_step_is_matrix_product() {
        let a = TropMatrix::from_options(vec![vec![Some(1), Some(-2)], vec![Some(0), Some(4)]]).unwrap();
        let b = TropMatrix::from_options(vec![vec![Some(3), None], vec![Some(-1), Some(2)]]).unwrap();
        let net = FactorNetwork::new(
            3,
            2,
            vec![
                TropTensor::from_matrix(&a, 0, 1).unwrap(),
                TropTensor::from_matrix(&b, 1, 2).unwrap(),
            ],
        )
        .unwrap();
        let (next, _) = net.contract_step(1, &ContractOptions::default()).unwrap();
        assert_eq!(next.factors().len(), 1);
        assert_eq!(next.factors()[0].labels(), &[0, 2]);
        assert_eq!(next.factors()[0].to_matrix().unwrap(), a.mul(&b).unwrap());
    }

    #[test]
    fn single_factor_network() {
        let f = TropTensor::from_fn(vec![0, 1], vec![2, 2], |x| t(3 - (x[0] + 2 * x[1]) as i64)).unwrap();
        let net = FactorNetwork::new(2, 2, vec![f]).unwrap();
        let plan = net.greedy_order();
        assert!(plan.order.is_empty());
        let (s, trace) = net
            .contract_full(&plan, Boundary::OpenClosure, &ContractOptions::with_witness())
            .unwrap();
        assert_eq!(s.as_scalar(), Some(t(0)));
        assert_eq!(backtrack_optimum(&trace, &s).unwrap(), vec![1, 1]);
    }

    #[test]
    fn greedy_keeps_chain_narrow() {
        let n = 8;
        let factors = (0..n - 1).map(|i| zeros(vec![i, i + 1], 2)).collect();
        let net = FactorNetwork::new(n, 2, factors).unwrap();
        let plan = net.greedy_order();
        assert_eq!(net.max_open_legs(&plan).unwrap(), 2);
        assert_eq!(plan.order, vec![1, 2, 3, 4, 5, 6]);

        let net3 = three_factor_net();
        let plan = net3.greedy_order();
        assert!(net3.max_open_legs(&plan).unwrap() <= 3);
    }

    #[test]
    fn ferromagnetic_chain_optimum() {
        // f(x, y) = -s(x) s(y), s(0) = +1, s(1) = -1
        let spin = |v: usize| if v == 0 { 1 } else { -1 };
        let factors = (0..3)
            .map(|i| TropTensor::from_fn(vec![i, i + 1], vec![2, 2], |x| t(-spin(x[0]) * spin(x[1]))).unwrap())
            .collect();
        let net = FactorNetwork::new(4, 2, factors).unwrap();
        let plan = net.greedy_order();
        let (s, trace) = net
            .contract_full(&plan, Boundary::OpenClosure, &ContractOptions::with_witness())
            .unwrap();
        assert_eq!(s.as_scalar(), Some(t(-3)));
        let x = backtrack_optimum(&trace, &s).unwrap();
        assert!(x == vec![0; 4] || x == vec![1; 4]);
        assert_eq!(net.evaluate(&x), t(-3));
    }

    #[test]
    fn backtrack_requires_witnesses() {
        let net = three_factor_net();
        let (s, trace) = net
            .contract_full(&net.greedy_order(), Boundary::OpenClosure, &ContractOptions::default())
            .unwrap();
        assert_eq!(backtrack_optimum(&trace, &s), Err(TropError::MissingWitness));
    }

    #[test]
    fn construction_rules() {
        // identical sets merge
        let a = TropTensor::from_fn(vec![1, 0], vec![2, 2], |x| t(x[0] as i64)).unwrap();
        let b = TropTensor::from_fn(vec![0, 1], vec![2, 2], |x| t(10 * x[1] as i64)).unwrap();
        let net = FactorNetwork::new(2, 2, vec![a, b]).unwrap();
        assert_eq!(net.factors().len(), 1);
        assert_eq!(net.factors()[0].get(&[0, 1]), t(11));
        // isolated variable
        assert!(FactorNetwork::new(3, 2, vec![zeros(vec![0, 1], 2)]).is_err());
        // heterogeneous domain
        let c = TropTensor::from_fn(vec![0, 1], vec![2, 3], |_| t(0)).unwrap();
        assert!(FactorNetwork::new(2, 2, vec![c]).is_err());
    }

    #[test]
    fn plan_validation_and_rank_cap() {
        let net = three_factor_net();
        let opts = ContractOptions::default();
        assert!(matches!(
            net.contract_full(&EliminationPlan::new(vec![0, 2]), Boundary::None, &opts),
            Err(TropError::InvalidPlan(_))
        ));
        assert!(matches!(
            net.contract_full(&EliminationPlan::new(vec![0, 2, 2, 4]), Boundary::None, &opts),
            Err(TropError::InvalidPlan(_))
        ));
        let tight = ContractOptions {
            rank_cap: 2.0,
            ..ContractOptions::default()
        };
        let err = net
            .contract_full(&EliminationPlan::new(vec![0, 2, 4]), Boundary::OpenClosure, &tight)
            .unwrap_err();
        assert!(matches!(err, TropError::RankCap { step: 1, var: 0, .. }));
    }

    #[test]
    fn zero_factor_does_not_change_bound() {
        let net = three_factor_net();
        let opts = ContractOptions::default();
        let base = net
            .contract_full(&net.greedy_order(), Boundary::OpenClosure, &opts)
            .unwrap()
            .0;
        let more = net.with_factor(zeros(vec![1, 3], 2)).unwrap();
        let other = more
            .contract_full(&more.greedy_order(), Boundary::OpenClosure, &opts)
            .unwrap()
            .0;
        assert_eq!(base, other);
    }
}
