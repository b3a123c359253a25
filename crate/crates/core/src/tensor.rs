//! Labeled dense tensors over the min-plus semiring.
//!
//! A tensor's legs carry variable labels. Contraction sums (tropically,
//! i.e. adds) the entries of every input that agree on shared labels and
//! minimizes over the eliminated labels. Shared labels that are not
//! eliminated stay matched, like a diagonal.
//!
//! Entries are stored row-major over `labels`: the first label is the most
//! significant coordinate.

use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::semiring::{Trop, Weight};

/// Variable label; in networks this is the variable index.
pub type Label = usize;

/// Minimizing assignments of the labels eliminated by one contraction, one
/// per output entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    labels: Vec<Label>,
    dims: Vec<usize>,
    choices: Vec<u32>,
}

impl Witness {
    /// Eliminated labels, ascending.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The minimizing values of [`Self::labels`] for output entry `index`.
    pub fn choice(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let k = self.labels.len();
        self.choices[index * k..(index + 1) * k]
            .iter()
            .map(|&c| c as usize)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TropTensor<W = i64> {
    labels: Vec<Label>,
    dims: Vec<usize>,
    data: Vec<Trop<W>>,
    witness: Option<Witness>,
}

impl<W: Weight> TropTensor<W> {
    pub fn new(labels: Vec<Label>, dims: Vec<usize>, data: Vec<Trop<W>>) -> Result<Self> {
        if labels.len() != dims.len() {
            return Err(TropError::Dimension(format!(
                "{} labels but {} dimensions",
                labels.len(),
                dims.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(TropError::Dimension(format!("label x{l} appears twice")));
            }
        }
        if dims.contains(&0) {
            return Err(TropError::Dimension("zero-sized leg".into()));
        }
        let len: usize = dims.iter().product();
        if data.len() != len {
            return Err(TropError::Dimension(format!(
                "tensor of shape {dims:?} needs {len} entries, got {}",
                data.len()
            )));
        }
        Ok(Self {
            labels,
            dims,
            data,
            witness: None,
        })
    }

    pub fn scalar(value: Trop<W>) -> Self {
        Self {
            labels: Vec::new(),
            dims: Vec::new(),
            data: vec![value],
            witness: None,
        }
    }

    pub fn from_fn(
        labels: Vec<Label>,
        dims: Vec<usize>,
        mut f: impl FnMut(&[usize]) -> Trop<W>,
    ) -> Result<Self> {
        let len: usize = dims.iter().product();
        let mut data = Vec::with_capacity(len);
        let mut digits = vec![0usize; dims.len()];
        for _ in 0..len {
            data.push(f(&digits));
            increment(&mut digits, &dims);
        }
        Self::new(labels, dims, data)
    }

    /// The tropical Kronecker delta: `0` when all coordinates agree, `+∞`
    /// otherwise.
    pub fn delta(labels: Vec<Label>, dim: usize) -> Result<Self> {
        let rank = labels.len();
        Self::from_fn(labels, vec![dim; rank], |x| {
            if x.windows(2).all(|w| w[0] == w[1]) {
                Trop::unit()
            } else {
                Trop::Infinity
            }
        })
    }

    pub fn from_matrix(m: &TropMatrix<W>, row: Label, col: Label) -> Result<Self> {
        Self::new(vec![row, col], vec![m.rows(), m.cols()], m.data().to_vec())
    }

    pub fn to_matrix(&self) -> Result<TropMatrix<W>> {
        if self.rank() != 2 {
            return Err(TropError::Dimension(format!(
                "rank-{} tensor is not a matrix",
                self.rank()
            )));
        }
        TropMatrix::new(self.dims[0], self.dims[1], self.data.clone())
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[Trop<W>] {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn take_witness(&mut self) -> Option<Witness> {
        self.witness.take()
    }

    pub fn dim_of(&self, label: Label) -> Option<usize> {
        self.position(label).map(|p| self.dims[p])
    }

    pub fn position(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Flat index of a coordinate tuple given in `labels` order.
    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&c, &d)| acc * d + c)
    }

    /// Coordinate tuple, in `labels` order, of a flat index.
    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.rank()];
        for (slot, &d) in coords.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        coords
    }

    pub fn get(&self, coords: &[usize]) -> Trop<W> {
        self.data[self.index_of(coords)]
    }

    /// Entry selected by a full assignment indexed by label.
    pub fn eval(&self, assignment: &[usize]) -> Trop<W> {
        let idx = self
            .labels
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&l, &d)| acc * d + assignment[l]);
        self.data[idx]
    }

    /// The scalar value of a rank-0 tensor.
    pub fn as_scalar(&self) -> Option<Trop<W>> {
        (self.rank() == 0).then(|| self.data[0])
    }

    /// Coordinates of the first minimal entry in storage order.
    pub fn argmin(&self) -> Vec<usize> {
        let mut best = 0;
        for (i, v) in self.data.iter().enumerate() {
            if v.less_than(self.data[best]) {
                best = i;
            }
        }
        self.coords_of(best)
    }

    pub fn min_entry(&self) -> Trop<W> {
        self.data.iter().copied().fold(Trop::Infinity, Trop::oplus)
    }

    /// Reorders legs so they follow `order`, which must be a permutation of
    /// the current labels.
    pub fn permuted(&self, order: &[Label]) -> Result<Self> {
        if order.len() != self.rank() {
            return Err(TropError::Dimension("permutation has wrong length".into()));
        }
        let positions = order
            .iter()
            .map(|&l| self.position(l).ok_or(TropError::UnknownLabel(l)))
            .collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = positions.iter().map(|&p| self.dims[p]).collect();
        let strides = strides_of(&self.dims);
        let mut coords = vec![0usize; order.len()];
        let mut data = Vec::with_capacity(self.len());
        for _ in 0..self.len() {
            let src: usize = coords
                .iter()
                .zip(&positions)
                .map(|(&c, &p)| c * strides[p])
                .sum();
            data.push(self.data[src]);
            increment(&mut coords, &dims);
        }
        Self::new(order.to_vec(), dims, data)
    }

    pub fn relabeled(&self, map: impl Fn(Label) -> Label) -> Result<Self> {
        let mut out = Self::new(
            self.labels.iter().map(|&l| map(l)).collect(),
            self.dims.clone(),
            self.data.clone(),
        )?;
        out.witness = self.witness.clone();
        Ok(out)
    }

    /// Entrywise `⊙` of two tensors on the same legs (in any order).
    pub fn odot_entrywise(&self, rhs: &Self) -> Result<Self> {
        let rhs = rhs.permuted(&self.labels)?;
        if rhs.dims != self.dims {
            return Err(TropError::Dimension("entrywise product of unequal shapes".into()));
        }
        Self::new(
            self.labels.clone(),
            self.dims.clone(),
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a.odot(b))
                .collect(),
        )
    }

    pub fn map<V: Weight>(&self, f: impl Fn(Trop<W>) -> Trop<V>) -> TropTensor<V> {
        TropTensor {
            labels: self.labels.clone(),
            dims: self.dims.clone(),
            data: self.data.iter().map(|&v| f(v)).collect(),
            witness: self.witness.clone(),
        }
    }
}

/// Contracts any number of tensors at once: the output lives on every
/// label not in `eliminate`, ordered by first appearance (first tensor's
/// legs, then the new legs of the second, and so on), and each entry is the
/// minimum over the eliminated labels of the sum of matching input entries.
///
/// When `record_witness` is set, the output carries the lexicographically
/// smallest minimizing assignment of the eliminated labels (ascending label
/// order) for every entry.
pub fn contract<W: Weight>(
    tensors: &[&TropTensor<W>],
    eliminate: &[Label],
    record_witness: bool,
) -> Result<TropTensor<W>> {
    let mut all: Vec<(Label, usize)> = Vec::new();
    for t in tensors {
        for (&l, &d) in t.labels.iter().zip(&t.dims) {
            match all.iter().find(|(m, _)| *m == l) {
                Some(&(_, e)) if e != d => {
                    return Err(TropError::Dimension(format!(
                        "label x{l} has cardinality {e} and {d}"
                    )))
                }
                Some(_) => {}
                None => all.push((l, d)),
            }
        }
    }
    let mut elim: Vec<Label> = eliminate.to_vec();
    elim.sort_unstable();
    elim.dedup();
    for &l in &elim {
        if !all.iter().any(|&(m, _)| m == l) {
            return Err(TropError::UnknownLabel(l));
        }
    }
    let out: Vec<(Label, usize)> = all
        .iter()
        .copied()
        .filter(|(l, _)| !elim.contains(l))
        .collect();
    let elim_dims: Vec<usize> = elim
        .iter()
        .map(|l| all.iter().find(|(m, _)| m == l).unwrap().1)
        .collect();

    let inputs: Vec<(&[Trop<W>], Vec<usize>)> = tensors
        .iter()
        .map(|t| {
            let own = strides_of(&t.dims);
            let combined = out
                .iter()
                .map(|(l, _)| *l)
                .chain(elim.iter().copied())
                .map(|l| t.position(l).map_or(0, |p| own[p]))
                .collect();
            (t.data.as_slice(), combined)
        })
        .collect();
    let out_dims: Vec<usize> = out.iter().map(|(_, d)| *d).collect();
    let (data, choices) = minimize(&inputs, &out_dims, &elim_dims, record_witness);

    let mut result = TropTensor::new(out.iter().map(|(l, _)| *l).collect(), out_dims, data)?;
    if record_witness {
        result.witness = Some(Witness {
            labels: elim,
            dims: elim_dims,
            choices,
        });
    }
    Ok(result)
}

/// Pairwise contraction. `eliminate` must consist of labels shared by
/// both tensors.
pub fn contract_pair<W: Weight>(
    t1: &TropTensor<W>,
    t2: &TropTensor<W>,
    eliminate: &[Label],
    record_witness: bool,
) -> Result<TropTensor<W>> {
    for &l in eliminate {
        if t1.position(l).is_none() || t2.position(l).is_none() {
            return Err(TropError::UnknownLabel(l));
        }
    }
    contract(&[t1, t2], eliminate, record_witness)
}

/// Minimizes over the given legs; reducing every leg yields a scalar.
pub fn reduce_min<W: Weight>(
    t: &TropTensor<W>,
    labels: &[Label],
    record_witness: bool,
) -> Result<TropTensor<W>> {
    for &l in labels {
        if t.position(l).is_none() {
            return Err(TropError::UnknownLabel(l));
        }
    }
    contract(&[t], labels, record_witness)
}

/// Restricts two legs to equal values and minimizes over that common value.
/// On a matrix this is the tropical trace.
pub fn diagonal_trace<W: Weight>(t: &TropTensor<W>, a: Label, b: Label) -> Result<TropTensor<W>> {
    let pa = t.position(a).ok_or(TropError::UnknownLabel(a))?;
    let pb = t.position(b).ok_or(TropError::UnknownLabel(b))?;
    if pa == pb {
        return Err(TropError::Dimension(format!("cannot trace x{a} against itself")));
    }
    if t.dims[pa] != t.dims[pb] {
        return Err(TropError::Dimension(format!(
            "traced legs x{a} and x{b} have cardinalities {} and {}",
            t.dims[pa], t.dims[pb]
        )));
    }
    let own = strides_of(&t.dims);
    let keep: Vec<usize> = (0..t.rank()).filter(|&p| p != pa && p != pb).collect();
    let mut strides: Vec<usize> = keep.iter().map(|&p| own[p]).collect();
    strides.push(own[pa] + own[pb]);
    let out_dims: Vec<usize> = keep.iter().map(|&p| t.dims[p]).collect();
    let (data, _) = minimize(&[(t.data.as_slice(), strides)], &out_dims, &[t.dims[pa]], false);
    TropTensor::new(keep.iter().map(|&p| t.labels[p]).collect(), out_dims, data)
}

fn strides_of(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    strides
}

/// Row-major increment of a coordinate tuple; returns false on wrap-around.
fn increment(digits: &mut [usize], dims: &[usize]) -> bool {
    for j in (0..digits.len()).rev() {
        digits[j] += 1;
        if digits[j] < dims[j] {
            return true;
        }
        digits[j] = 0;
    }
    false
}

/// Row-major odometer that keeps one flat offset per input up to date.
struct Odometer<'a> {
    dims: &'a [usize],
    base: usize,
    digits: Vec<usize>,
}

impl<'a> Odometer<'a> {
    fn new(dims: &'a [usize], base: usize) -> Self {
        Self {
            dims,
            base,
            digits: vec![0; dims.len()],
        }
    }

    fn advance(&mut self, offsets: &mut [usize], strides: &[&[usize]]) -> bool {
        for j in (0..self.digits.len()).rev() {
            self.digits[j] += 1;
            for (off, s) in offsets.iter_mut().zip(strides) {
                *off += s[self.base + j];
            }
            if self.digits[j] < self.dims[j] {
                return true;
            }
            for (off, s) in offsets.iter_mut().zip(strides) {
                *off -= s[self.base + j] * self.dims[j];
            }
            self.digits[j] = 0;
        }
        false
    }
}

/// Shared kernel: `inputs` are flat tables with strides over the combined
/// coordinate list `out ++ elim`.
fn minimize<W: Weight>(
    inputs: &[(&[Trop<W>], Vec<usize>)],
    out_dims: &[usize],
    elim_dims: &[usize],
    record_witness: bool,
) -> (Vec<Trop<W>>, Vec<u32>) {
    let out_len: usize = out_dims.iter().product();
    let elim_len: usize = elim_dims.iter().product();
    let strides: Vec<&[usize]> = inputs.iter().map(|(_, s)| s.as_slice()).collect();
    let tables: Vec<&[Trop<W>]> = inputs.iter().map(|(d, _)| *d).collect();

    let mut data = Vec::with_capacity(out_len);
    let mut choices = Vec::with_capacity(if record_witness { out_len * elim_dims.len() } else { 0 });
    let mut out_offsets = vec![0usize; inputs.len()];
    let mut outer = Odometer::new(out_dims, 0);
    for _ in 0..out_len {
        let mut offsets = out_offsets.clone();
        let mut inner = Odometer::new(elim_dims, out_dims.len());
        let mut best = Trop::Infinity;
        let mut best_digits: Option<Vec<usize>> = None;
        for step in 0..elim_len {
            let mut acc = Trop::unit();
            for (table, &off) in tables.iter().zip(&offsets) {
                acc = acc.odot(table[off]);
                if acc.is_infinite() {
                    break;
                }
            }
            if acc.less_than(best) {
                best = acc;
                if record_witness {
                    best_digits = Some(inner.digits.clone());
                }
            }
            if step + 1 < elim_len {
                inner.advance(&mut offsets, &strides);
            }
        }
        data.push(best);
        if record_witness {
            let digits = best_digits.unwrap_or_else(|| vec![0; elim_dims.len()]);
            choices.extend(digits.into_iter().map(|d| d as u32));
        }
        outer.advance(&mut out_offsets, &strides);
    }
    (data, choices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const INF: Trop<i64> = Trop::Infinity;

    fn t(v: i64) -> Trop<i64> {
        Trop::Finite(v)
    }

    fn matrix(rows: Vec<Vec<Option<i64>>>) -> TropMatrix {
        TropMatrix::from_options(rows).unwrap()
    }

    #[test]
    fn pair_contraction_is_matrix_product() {
        let f1 = matrix(vec![vec![Some(0), Some(4)], vec![Some(-1), Some(3)]]);
        let f2 = matrix(vec![vec![Some(2), None], vec![Some(5), Some(-2)]]);
        let a = TropTensor::from_matrix(&f1, 0, 1).unwrap();
        let b = TropTensor::from_matrix(&f2, 1, 2).unwrap();
        let g = contract_pair(&a, &b, &[1], false).unwrap();
        assert_eq!(g.labels(), &[0, 2]);
        assert_eq!(g.to_matrix().unwrap(), f1.mul(&f2).unwrap());
    }

    #[test]
    fn delta_acts_as_identity_wire() {
        let a = TropTensor::from_fn(vec![3, 7], vec![3, 2], |x| t((x[0] * 5 + x[1]) as i64 - 4))
            .unwrap();
        let d = TropTensor::delta(vec![7, 9], 2).unwrap();
        let out = contract_pair(&a, &d, &[7], false).unwrap();
        assert_eq!(out.labels(), &[3, 9]);
        assert_eq!(out.data(), a.data());

        let d3 = TropTensor::<i64>::delta(vec![0, 1, 2], 3).unwrap();
        assert_eq!(d3.get(&[1, 1, 1]), t(0));
        assert_eq!(d3.get(&[1, 2, 1]), INF);
    }

    #[test]
    fn delta_with_replicated_legs_reproduces_tensor() {
        // Attaching a rank-3 delta to leg 1 and closing one copy leaves a
        // relabeled copy of the original tensor.
        let a = TropTensor::from_fn(vec![0, 1], vec![2, 3], |x| t(x[0] as i64 * 10 - x[1] as i64))
            .unwrap();
        let d = TropTensor::delta(vec![1, 5, 6], 3).unwrap();
        let out = contract(&[&a, &d], &[1, 6], false).unwrap();
        assert_eq!(out.labels(), &[0, 5]);
        assert_eq!(out.data(), a.data());
    }

    #[test]
    fn reduce_min_examples() {
        let z = TropTensor::from_matrix(
            &matrix(vec![vec![Some(0), Some(1)], vec![Some(2), Some(3)]]),
            0,
            1,
        )
        .unwrap();
        let s = reduce_min(&z, &[0, 1], false).unwrap();
        assert_eq!(s.as_scalar(), Some(t(0)));
        assert_eq!(reduce_min(&z, &[], false).unwrap(), z);
        assert!(matches!(reduce_min(&z, &[4], false), Err(TropError::UnknownLabel(4))));
    }

    #[test]
    fn diagonal_trace_examples() {
        let a = TropTensor::from_matrix(
            &matrix(vec![vec![Some(0), Some(1)], vec![Some(2), Some(3)]]),
            0,
            1,
        )
        .unwrap();
        assert_eq!(diagonal_trace(&a, 0, 1).unwrap().as_scalar(), Some(t(0)));
        let id = TropTensor::from_matrix(&TropMatrix::identity(3), 0, 1).unwrap();
        assert_eq!(diagonal_trace(&id, 0, 1).unwrap().as_scalar(), Some(t(0)));
        let b = TropTensor::from_matrix(&matrix(vec![vec![None, Some(1)], vec![Some(2), None]]), 0, 1)
            .unwrap();
        assert_eq!(diagonal_trace(&b, 0, 1).unwrap().as_scalar(), Some(INF));

        let bad = TropTensor::from_fn(vec![0, 1], vec![2, 3], |_| t(0)).unwrap();
        assert!(matches!(diagonal_trace(&bad, 0, 1), Err(TropError::Dimension(_))));
    }

    #[test]
    fn cardinality_mismatch_rejected() {
        let a = TropTensor::from_fn(vec![0, 1], vec![2, 2], |_| t(0)).unwrap();
        let b = TropTensor::from_fn(vec![1, 2], vec![3, 2], |_| t(0)).unwrap();
        assert!(matches!(contract_pair(&a, &b, &[1], false), Err(TropError::Dimension(_))));
    }

    #[test]
    fn shared_uneliminated_labels_are_matched() {
        let a = TropTensor::from_fn(vec![0, 1], vec![2, 2], |x| t((x[0] * 2 + x[1]) as i64)).unwrap();
        let b = TropTensor::from_fn(vec![0, 1], vec![2, 2], |x| t(10 * (x[0] * 2 + x[1]) as i64))
            .unwrap();
        let c = contract_pair(&a, &b, &[], false).unwrap();
        assert_eq!(c.labels(), &[0, 1]);
        assert_eq!(c.data(), &[t(0), t(11), t(22), t(33)]);
    }

    #[test]
    fn witness_ties_pick_lexicographically_smallest() {
        let a = TropTensor::from_fn(vec![4, 2], vec![2, 2], |_| t(0)).unwrap();
        let r = reduce_min(&a, &[4, 2], true).unwrap();
        let w = r.witness().unwrap();
        assert_eq!(w.labels(), &[2, 4]);
        assert_eq!(w.choice(0).collect::<Vec<_>>(), vec![0, 0]);

        let b = TropTensor::from_fn(vec![4, 2], vec![2, 2], |x| if x == [1, 0] { t(-1) } else { t(0) })
            .unwrap();
        let r = reduce_min(&b, &[2, 4], true).unwrap();
        // choice is listed as (x2, x4)
        assert_eq!(r.witness().unwrap().choice(0).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn permuted_roundtrip() {
        let a = TropTensor::from_fn(vec![0, 1, 2], vec![2, 3, 4], |x| {
            t((x[0] * 100 + x[1] * 10 + x[2]) as i64)
        })
        .unwrap();
        let p = a.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.get(&[3, 1, 2]), t(123));
        assert_eq!(p.permuted(&[0, 1, 2]).unwrap(), a);
    }

    fn arb_rank3(labels: [Label; 3]) -> impl Strategy<Value = TropTensor> {
        proptest::collection::vec(
            prop_oneof![8 => (-9i64..=9).prop_map(Trop::Finite), 1 => Just(Trop::Infinity)],
            8,
        )
        .prop_map(move |d| TropTensor::new(labels.to_vec(), vec![2; 3], d).unwrap())
    }

    proptest! {
        #[test]
        fn rank3_double_elimination_matches_enumeration(
            a in arb_rank3([0, 1, 2]),
            b in arb_rank3([1, 2, 3]),
        ) {
            let c = contract_pair(&a, &b, &[1, 2], true).unwrap();
            prop_assert_eq!(c.labels(), &[0, 3]);
            for x0 in 0..2 {
                for x3 in 0..2 {
                    let mut best: Option<i64> = None;
                    for x1 in 0..2 {
                        for x2 in 0..2 {
                            if let (Some(p), Some(q)) =
                                (a.get(&[x0, x1, x2]).value(), b.get(&[x1, x2, x3]).value())
                            {
                                best = Some(best.map_or(p + q, |v| v.min(p + q)));
                            }
                        }
                    }
                    let idx = c.index_of(&[x0, x3]);
                    prop_assert_eq!(c.data()[idx], Trop::from(best));
                    let w: Vec<usize> = c.witness().unwrap().choice(idx).collect();
                    if best.is_some() {
                        let sum = a.get(&[x0, w[0], w[1]]).odot(b.get(&[w[0], w[1], x3]));
                        prop_assert_eq!(sum, c.data()[idx]);
                    }
                }
            }
        }

        #[test]
        fn reduce_and_trace_commute(a in proptest::collection::vec(-9i64..=9, 16)) {
            let tensor = TropTensor::new(
                vec![0, 1, 2, 3],
                vec![2; 4],
                a.into_iter().map(Trop::Finite).collect(),
            )
            .unwrap();
            let one = diagonal_trace(&reduce_min(&tensor, &[3], false).unwrap(), 0, 1).unwrap();
            let two = reduce_min(&diagonal_trace(&tensor, 0, 1).unwrap(), &[3], false).unwrap();
            prop_assert_eq!(one, two);
        }
    }
}
