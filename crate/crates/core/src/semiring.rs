//! The min-plus (tropical) semiring.
//!
//! Carrier is `W ∪ {+∞}` with `a ⊕ b = min(a, b)` and `a ⊙ b = a + b`.
//! `+∞` is the additive identity and absorbs under `⊙`; the finite value `0`
//! is the multiplicative identity.
//!
//! The magnitude type `W` is abstracted by [`Weight`]. Three carriers ship:
//!
//! - `i64`: the default. Problem coefficients are scaled by a common
//!   denominator so every comparison is exact.
//! - `Ratio<i64>`: exact fractions, used for cycle means and eigenvectors.
//! - `f64`: for irrational inputs; equality uses the tolerance [`FLOAT_EPS`].

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

/// Absolute tolerance used by the floating-point carrier when testing equality.
pub const FLOAT_EPS: f64 = 1e-9;

/// Finite magnitudes of the semiring.
pub trait Weight: Copy + fmt::Debug + PartialOrd + Send + Sync + 'static {
    /// Carrier for cycle means, i.e. a weight divided by a walk length.
    type Mean: Weight<Mean = Self::Mean>;

    fn zero() -> Self;

    /// Ordinary addition. Integer carriers panic on overflow.
    fn plus(self, rhs: Self) -> Self;

    fn minus(self, rhs: Self) -> Self;

    /// `k`-fold sum of `self`.
    fn times(self, k: usize) -> Self;

    /// Equality as used by stabilization checks: exact for exact carriers.
    fn same(self, rhs: Self) -> bool;

    fn to_mean(self) -> Self::Mean;

    /// `self / len` in the mean carrier.
    fn mean(self, len: usize) -> Self::Mean;

    fn to_f64(self) -> f64;
}

impl Weight for i64 {
    type Mean = Ratio<i64>;

    fn zero() -> Self {
        0
    }

    fn plus(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("tropical weight overflow")
    }

    fn minus(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("tropical weight overflow")
    }

    fn times(self, k: usize) -> Self {
        let k = i64::try_from(k).expect("multiplier fits in i64");
        self.checked_mul(k).expect("tropical weight overflow")
    }

    fn same(self, rhs: Self) -> bool {
        self == rhs
    }

    fn to_mean(self) -> Ratio<i64> {
        Ratio::from_integer(self)
    }

    fn mean(self, len: usize) -> Ratio<i64> {
        Ratio::new(self, i64::try_from(len).expect("length fits in i64"))
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Weight for Ratio<i64> {
    type Mean = Ratio<i64>;

    fn zero() -> Self {
        Ratio::from_integer(0)
    }

    fn plus(self, rhs: Self) -> Self {
        self + rhs
    }

    fn minus(self, rhs: Self) -> Self {
        self - rhs
    }

    fn times(self, k: usize) -> Self {
        self * Ratio::from_integer(i64::try_from(k).expect("multiplier fits in i64"))
    }

    fn same(self, rhs: Self) -> bool {
        self == rhs
    }

    fn to_mean(self) -> Ratio<i64> {
        self
    }

    fn mean(self, len: usize) -> Ratio<i64> {
        self / Ratio::from_integer(i64::try_from(len).expect("length fits in i64"))
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Weight for f64 {
    type Mean = f64;

    fn zero() -> Self {
        0.0
    }

    fn plus(self, rhs: Self) -> Self {
        self + rhs
    }

    fn minus(self, rhs: Self) -> Self {
        self - rhs
    }

    fn times(self, k: usize) -> Self {
        self * k as f64
    }

    fn same(self, rhs: Self) -> bool {
        (self - rhs).abs() <= FLOAT_EPS
    }

    fn to_mean(self) -> f64 {
        self
    }

    fn mean(self, len: usize) -> f64 {
        self / len as f64
    }

    fn to_f64(self) -> f64 {
        self
    }
}

/// An element of the min-plus semiring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trop<W> {
    Finite(W),
    Infinity,
}

/// The default exact scalar: scaled integers plus `+∞`.
pub type TropValue = Trop<i64>;

impl<W: Weight> Trop<W> {
    /// The multiplicative identity, finite zero.
    pub fn unit() -> Self {
        Trop::Finite(W::zero())
    }

    pub fn finite(value: W) -> Self {
        Trop::Finite(value)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Trop::Infinity)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    pub fn value(self) -> Option<W> {
        match self {
            Trop::Finite(w) => Some(w),
            Trop::Infinity => None,
        }
    }

    /// Tropical addition: the minimum.
    pub fn oplus(self, rhs: Self) -> Self {
        if rhs.less_than(self) {
            rhs
        } else {
            self
        }
    }

    /// Tropical multiplication: ordinary addition, saturating at `+∞`.
    pub fn odot(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Trop::Finite(a), Trop::Finite(b)) => Trop::Finite(a.plus(b)),
            _ => Trop::Infinity,
        }
    }

    /// Strict order with `+∞` above every finite value.
    pub fn less_than(self, rhs: Self) -> bool {
        match (self, rhs) {
            (Trop::Finite(a), Trop::Finite(b)) => a < b,
            (Trop::Finite(_), Trop::Infinity) => true,
            (Trop::Infinity, _) => false,
        }
    }

    pub fn cmp_trop(self, rhs: Self) -> Ordering {
        if self.less_than(rhs) {
            Ordering::Less
        } else if rhs.less_than(self) {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    /// Equality under the carrier's notion of sameness.
    pub fn same(self, rhs: Self) -> bool {
        match (self, rhs) {
            (Trop::Finite(a), Trop::Finite(b)) => a.same(b),
            (Trop::Infinity, Trop::Infinity) => true,
            _ => false,
        }
    }

    pub fn to_mean(self) -> Trop<W::Mean> {
        match self {
            Trop::Finite(w) => Trop::Finite(w.to_mean()),
            Trop::Infinity => Trop::Infinity,
        }
    }

    /// `k`-th tropical power, i.e. `k · a`. The zeroth power is the unit.
    pub fn pow(self, k: usize) -> Self {
        match self {
            Trop::Finite(w) => Trop::Finite(w.times(k)),
            Trop::Infinity if k == 0 => Self::unit(),
            Trop::Infinity => Trop::Infinity,
        }
    }
}

impl<W: Weight> Default for Trop<W> {
    fn default() -> Self {
        Trop::Infinity
    }
}

impl<W: fmt::Display> fmt::Display for Trop<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::Finite(w) => w.fmt(f),
            Trop::Infinity => f.write_str("inf"),
        }
    }
}

impl<W> From<Option<W>> for Trop<W> {
    fn from(value: Option<W>) -> Self {
        match value {
            Some(w) => Trop::Finite(w),
            None => Trop::Infinity,
        }
    }
}

/// `a ⊕ b`.
pub fn oplus<W: Weight>(a: Trop<W>, b: Trop<W>) -> Trop<W> {
    a.oplus(b)
}

/// `a ⊙ b`.
pub fn odot<W: Weight>(a: Trop<W>, b: Trop<W>) -> Trop<W> {
    a.odot(b)
}

/// Tropical sum of an iterator; `+∞` when empty.
pub fn trop_sum<W: Weight>(values: impl IntoIterator<Item = Trop<W>>) -> Trop<W> {
    values.into_iter().fold(Trop::Infinity, Trop::oplus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const INF: TropValue = Trop::Infinity;

    fn t(v: i64) -> TropValue {
        Trop::Finite(v)
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(oplus(t(3), t(5)), t(3));
        assert_eq!(oplus(t(7), INF), t(7));
        assert_eq!(oplus(INF, INF), INF);
        assert_eq!(oplus(t(-2), t(-2)), t(-2));
    }

    #[test]
    fn odot_examples() {
        assert_eq!(odot(t(3), t(5)), t(8));
        assert_eq!(odot(t(-4), t(0)), t(-4));
        assert_eq!(odot(t(-2), INF), INF);
        assert_eq!(odot(INF, INF), INF);
    }

    #[test]
    fn float_carrier_uses_tolerance() {
        let a = Trop::Finite(0.1 + 0.2);
        let b = Trop::Finite(0.3);
        assert!(a.same(b));
        assert!(!a.same(Trop::Finite(0.3 + 1e-6)));
    }

    #[test]
    fn pow_of_infinity() {
        assert_eq!(INF.pow(0), t(0));
        assert_eq!(INF.pow(3), INF);
        assert_eq!(t(-3).pow(4), t(-12));
    }

    fn arb_trop() -> impl Strategy<Value = TropValue> {
        prop_oneof![
            9 => (-1000i64..1000).prop_map(Trop::Finite),
            1 => Just(Trop::Infinity),
        ]
    }

    proptest! {
        #[test]
        fn semiring_axioms(a in arb_trop(), b in arb_trop(), c in arb_trop()) {
            prop_assert_eq!(a.oplus(b), b.oplus(a));
            prop_assert_eq!(a.oplus(b).oplus(c), a.oplus(b.oplus(c)));
            prop_assert_eq!(a.odot(b).odot(c), a.odot(b.odot(c)));
            prop_assert_eq!(a.odot(b), b.odot(a));
            prop_assert_eq!(a.odot(b.oplus(c)), a.odot(b).oplus(a.odot(c)));
            prop_assert_eq!(a.oplus(a), a);
            prop_assert_eq!(a.oplus(INF), a);
            prop_assert_eq!(a.odot(t(0)), a);
            prop_assert_eq!(a.odot(INF), INF);
        }
    }
}
