//! Dense set-function values `h(J)` over nonempty subsets.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::ground::{GroundSet, Subset};
use crate::rational::{self, Rat};
use crate::{Error, Result};

/// Scalar field for points: exact rationals, or `f64` for entropies.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
{
    fn from_rat(r: &Rat) -> Self;
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_rat(r: &Rat) -> Self {
        rational::to_f64(r)
    }
}

/// A point of `ℝ^{2^n - 1}` indexed by nonempty subsets; `h(∅) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyPoint<T = Rat> {
    ground: GroundSet,
    values: Vec<T>,
}

impl<T: Scalar> EntropyPoint<T> {
    pub fn new(ground: GroundSet, values: Vec<T>) -> Result<Self> {
        if values.len() != ground.dim() {
            return Err(Error::Precondition(format!(
                "point on {} variables needs {} values, got {}",
                ground.len(),
                ground.dim(),
                values.len()
            )));
        }
        Ok(EntropyPoint { ground, values })
    }

    pub fn from_fn(ground: GroundSet, mut f: impl FnMut(Subset) -> T) -> Self {
        let values = ground.nonempty_subsets().map(&mut f).collect();
        EntropyPoint { ground, values }
    }

    pub fn zero(ground: GroundSet) -> Self {
        Self::from_fn(ground, |_| T::zero())
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Panics on the empty subset; use [`EntropyPoint::value`] for `h(∅) = 0`.
    pub fn get(&self, s: Subset) -> &T {
        &self.values[s.dense_index()]
    }

    pub fn value(&self, s: Subset) -> T {
        if s.is_empty() {
            T::zero()
        } else {
            self.get(s).clone()
        }
    }

    pub fn set(&mut self, s: Subset, v: T) {
        self.values[s.dense_index()] = v;
    }

    /// Dual set function `h^⊥(J) = h(N∖J) - h(N) + Σ_{j∈J} h(j)`.
    pub fn dual_point(&self) -> Self {
        let full = self.ground.full();
        let top = self.value(full);
        Self::from_fn(self.ground.clone(), |s| {
            let mut v = self.value(full.minus(s)) - top.clone();
            for j in s.indices() {
                v = v + self.value(Subset::singleton(j));
            }
            v
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> EntropyPoint<U> {
        EntropyPoint { ground: self.ground.clone(), values: self.values.iter().map(f).collect() }
    }
}

impl EntropyPoint<Rat> {
    pub fn to_f64(&self) -> EntropyPoint<f64> {
        self.map(rational::to_f64)
    }
}
