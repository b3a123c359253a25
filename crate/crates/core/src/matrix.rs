//! Dense tropical matrices.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Result, TropError};
use crate::semiring::{Trop, Weight};

/// Output size above which `mul` spreads rows over the rayon pool.
const PAR_THRESHOLD: usize = 1 << 14;

/// A dense row-major matrix over the min-plus semiring.
#[derive(Clone, Debug, PartialEq)]
pub struct TropMatrix<W = i64> {
    rows: usize,
    cols: usize,
    data: Vec<Trop<W>>,
}

impl<W: Weight> TropMatrix<W> {
    pub fn new(rows: usize, cols: usize, data: Vec<Trop<W>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(TropError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Trop<W>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(TropError::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from optional magnitudes, `None` meaning `+∞`.
    pub fn from_options(rows: Vec<Vec<Option<W>>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(Trop::from).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Trop<W>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: Trop<W>) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// The tropical identity: `0` on the diagonal, `+∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Trop::unit() } else { Trop::Infinity })
    }

    /// The all-zero matrix, which closes open boundaries.
    pub fn zeros(n: usize) -> Self {
        Self::filled(n, n, Trop::unit())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Trop<W>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Trop<W> {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Trop<W>) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Trop<W>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(TropError::Dimension(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// `C[i][j] = min_k A[i][k] + B[k][j]`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(TropError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (n, m) = (self.rows, rhs.cols);
        let mut data = vec![Trop::Infinity; n * m];
        let fill_row = |i: usize, out: &mut [Trop<W>]| {
            for (k, &a) in self.row(i).iter().enumerate() {
                if a.is_infinite() {
                    continue;
                }
                for (slot, &b) in out.iter_mut().zip(rhs.row(k)) {
                    *slot = slot.oplus(a.odot(b));
                }
            }
        };
        if m > 0 && n * m * self.cols >= PAR_THRESHOLD {
            data.par_chunks_mut(m)
                .enumerate()
                .for_each(|(i, out)| fill_row(i, out));
        } else if m > 0 {
            data.chunks_mut(m)
                .enumerate()
                .for_each(|(i, out)| fill_row(i, out));
        }
        Ok(Self {
            rows: n,
            cols: m,
            data,
        })
    }

    /// The `k`-fold tropical product by repeated squaring. `k = 0` gives
    /// the tropical identity.
    pub fn power(&self, k: usize) -> Result<Self> {
        self.require_square("power")?;
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Minimum of the diagonal.
    pub fn trace(&self) -> Result<Trop<W>> {
        self.require_square("trace")?;
        Ok((0..self.rows)
            .map(|i| self.get(i, i))
            .fold(Trop::Infinity, Trop::oplus))
    }

    /// Minimum over all entries, i.e. `⟨0| A |0⟩`.
    pub fn min_entry(&self) -> Trop<W> {
        self.data.iter().copied().fold(Trop::Infinity, Trop::oplus)
    }

    /// Position of the lexicographically first minimal entry.
    pub fn argmin(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, Trop<W>)> = None;
        for (idx, &v) in self.data.iter().enumerate() {
            if best.is_none_or(|(_, b)| v.less_than(b)) {
                best = Some((idx, v));
            }
        }
        best.map(|(idx, _)| (idx / self.cols, idx % self.cols))
    }

    /// `A ⊙ v` for a column vector.
    pub fn mul_vec(&self, v: &[Trop<W>]) -> Result<Vec<Trop<W>>> {
        if v.len() != self.cols {
            return Err(TropError::Dimension(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Trop::Infinity, |acc, (&a, &b)| acc.oplus(a.odot(b)))
            })
            .collect())
    }

    /// `vᵀ ⊙ A` for a row vector.
    pub fn vec_mul(v: &[Trop<W>], m: &Self) -> Result<Vec<Trop<W>>> {
        if v.len() != m.rows {
            return Err(TropError::Dimension(format!(
                "vector has {} entries, matrix has {} rows",
                v.len(),
                m.rows
            )));
        }
        let mut out = vec![Trop::Infinity; m.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_infinite() {
                continue;
            }
            for (slot, &b) in out.iter_mut().zip(m.row(i)) {
                *slot = slot.oplus(a.odot(b));
            }
        }
        Ok(out)
    }

    /// Entrywise `⊕`.
    pub fn oplus(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(TropError::Dimension("entrywise min of unequal shapes".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a.oplus(b))
                .collect(),
        })
    }

    /// `c ⊙ A`: adds `c` to every finite entry.
    pub fn shift(&self, c: W) -> Self {
        self.map(|v| v.odot(Trop::Finite(c)))
    }

    pub fn map<V: Weight>(&self, f: impl Fn(Trop<W>) -> Trop<V>) -> TropMatrix<V> {
        TropMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn to_mean(&self) -> TropMatrix<W::Mean> {
        self.map(Trop::to_mean)
    }

    /// Entrywise sameness, exact for exact carriers.
    pub fn same(&self, rhs: &Self) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self.data.iter().zip(&rhs.data).all(|(&a, &b)| a.same(b))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl<W: Weight + fmt::Display> fmt::Display for TropMatrix<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
