//! Integral weights and rational weight vectors, both in the basis of
//! fundamental weights. In that basis the pairing with the i-th simple
//! coroot is the i-th coordinate.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = num_rational::Rational64;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// A point of the real weight space with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatVec(SmallVec<[Q; 4]>);

impl RatVec {
    pub fn zero(rank: usize) -> Self {
        RatVec(SmallVec::from_elem(Q::zero(), rank))
    }

    pub fn from_coords<I: IntoIterator<Item = Q>>(coords: I) -> Self {
        RatVec(coords.into_iter().collect())
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RatVec(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    /// `⟨v, α_i∨⟩`, with `i` 1-based.
    pub fn pairing(&self, i: usize) -> Result<Q> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(self.0[i - 1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Returns the integral weight if every coordinate is an integer.
    pub fn to_weight(&self) -> Option<Weight> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<SmallVec<_>>>()
            .map(Weight)
    }

    /// `Some(c)` with `c > 0` when `other == c * self`.
    pub(crate) fn positive_multiple(&self, other: &RatVec) -> Option<Q> {
        let pivot = self.0.iter().position(|c| !c.is_zero())?;
        let c = other.0[pivot] / self.0[pivot];
        if !c.is_positive() {
            return None;
        }
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a * c == *b).then_some(c)
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add<&RatVec> for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        debug_assert_eq!(self.rank(), rhs.rank());
        RatVec(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&RatVec> for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        debug_assert_eq!(self.rank(), rhs.rank());
        RatVec(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&RatVec> for RatVec {
    fn add_assign(&mut self, rhs: &RatVec) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&RatVec> for RatVec {
    fn sub_assign(&mut self, rhs: &RatVec) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
    }
}

impl Mul<Q> for &RatVec {
    type Output = RatVec;
    fn mul(self, rhs: Q) -> RatVec {
        RatVec(self.0.iter().map(|a| a * rhs).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }
}

/// An integral weight `Σ coords_i ω_i`. A dominant weight doubles as a
/// tableau shape.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(SmallVec<[i64; 4]>);

impl Weight {
    pub fn new(coords: &[i64]) -> Self {
        Weight(SmallVec::from_slice(coords))
    }

    pub fn zero(rank: usize) -> Self {
        Weight(SmallVec::from_elem(0, rank))
    }

    /// The fundamental weight `ω_k` (1-based).
    pub fn fundamental(rank: usize, k: usize) -> Result<Self> {
        if k == 0 || k > rank {
            return Err(Error::IndexOutOfRange { index: k, rank });
        }
        let mut w = Weight::zero(rank);
        w.0[k - 1] = 1;
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `Some(k)` if this is the fundamental weight `ω_k`.
    pub fn fundamental_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(i + 1),
                _ => return None,
            }
        }
        found
    }

    pub fn to_rat(&self) -> RatVec {
        RatVec::from_ints(&self.0)
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
    }
}
