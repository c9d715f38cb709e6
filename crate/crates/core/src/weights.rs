//! Weight vectors `(a_0, ..., a_n)` of a weighted projective space and the
//! arithmetic attached to them: well-formedness, reduction to a well-formed
//! representative, the isolated-singularity test and the Picard generator
//! degree.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered list of at least two positive integer weights.
///
/// Weights stay in input order. Operations that need a canonical order sort
/// internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct WeightVector {
    weights: Vec<u64>,
}

impl WeightVector {
    /// Validates raw input. Entries must be positive and there must be at least two.
    pub fn validate(raw: &[i64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::EmptyInput { len: raw.len() });
        }
        if let Some(index) = raw.iter().position(|&a| a < 1) {
            return Err(Error::NonPositiveWeight(index));
        }
        Ok(WeightVector {
            weights: raw.iter().map(|&a| a as u64).collect(),
        })
    }

    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::EmptyInput { len: weights.len() });
        }
        if let Some(index) = weights.iter().position(|&a| a == 0) {
            return Err(Error::NonPositiveWeight(index));
        }
        Ok(WeightVector { weights })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The dimension `n` of `P(a_0, ..., a_n)`.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    /// Weights sorted non-decreasingly.
    pub fn sorted(&self) -> Vec<u64> {
        let mut sorted = self.weights.clone();
        sorted.sort_unstable();
        sorted
    }

    /// The weight vector with index `i` removed, or `None` when only one
    /// weight would remain.
    pub fn omit(&self, i: usize) -> Option<WeightVector> {
        if i >= self.len() || self.len() < 3 {
            return None;
        }
        let mut weights = self.weights.clone();
        weights.remove(i);
        Some(WeightVector { weights })
    }

    pub fn product(&self) -> BigUint {
        self.weights.iter().map(|&a| BigUint::from(a)).product()
    }

    pub fn lcm(&self) -> BigUint {
        self.weights
            .iter()
            .fold(BigUint::one(), |acc, &a| acc.lcm(&BigUint::from(a)))
    }

    /// gcd of all weights except `a_i`.
    pub fn gcd_excluding(&self, i: usize) -> Result<u64> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(0, |g, (_, &a)| g.gcd(&a)))
    }

    pub fn is_well_formed(&self) -> bool {
        (0..self.len()).all(|i| self.gcd_excluding(i) == Ok(1))
    }

    /// Reduces to an isomorphic well-formed weight vector.
    ///
    /// A common factor of all weights is divided out first. After that the
    /// smallest index `i` with `d = gcd_excluding(i) > 1` is picked and every
    /// other weight is divided by `d`, until no such index remains.
    pub fn well_formize(&self) -> (WeightVector, Vec<ReductionStep>) {
        let mut weights = self.weights.clone();
        let mut steps = Vec::new();

        let common = weights.iter().fold(0, |g, &a| g.gcd(&a));
        if common > 1 {
            weights.iter_mut().for_each(|a| *a /= common);
            steps.push(ReductionStep::Common { divisor: common });
        }

        loop {
            let current = WeightVector {
                weights: weights.clone(),
            };
            let pivot = (0..weights.len())
                .map(|i| (i, current.gcd_excluding(i).expect("index in range")))
                .find(|&(_, d)| d > 1);
            match pivot {
                None => return (current, steps),
                Some((index, divisor)) => {
                    for (j, a) in weights.iter_mut().enumerate() {
                        if j != index {
                            *a /= divisor;
                        }
                    }
                    steps.push(ReductionStep::Pivot { index, divisor });
                }
            }
        }
    }

    fn require_well_formed(&self) -> Result<()> {
        if self.is_well_formed() {
            Ok(())
        } else {
            Err(Error::NotWellFormed(self.weights.clone()))
        }
    }

    /// True iff the weights are pairwise coprime. Requires well-formed input.
    pub fn has_isolated_singularities(&self) -> Result<bool> {
        self.require_well_formed()?;
        Ok(self.pairwise_coprime())
    }

    pub(crate) fn pairwise_coprime(&self) -> bool {
        let w = &self.weights;
        (0..w.len()).all(|i| (i + 1..w.len()).all(|j| w[i].gcd(&w[j]) == 1))
    }

    /// Errors unless the vector is well-formed with pairwise coprime weights.
    pub fn require_isolated(&self) -> Result<()> {
        if !self.has_isolated_singularities()? {
            return Err(Error::NotIsolated(self.weights.clone()));
        }
        Ok(())
    }

    /// Degree `k` of the ample generator `O(k)` of the Picard group: the lcm
    /// of the weights, which is their product when they are pairwise coprime.
    pub fn picard_generator_degree(&self) -> Result<BigUint> {
        let isolated = self.has_isolated_singularities()?;
        let k = self.lcm();
        if isolated {
            assert_eq!(k, self.product(), "lcm of pairwise coprime weights");
        }
        Ok(k)
    }

    /// `a_0 + ... + a_n`; the canonical sheaf is `O(-sum)`.
    pub fn canonical_weight_sum(&self) -> BigUint {
        self.weights.iter().map(|&a| BigUint::from(a)).sum()
    }
}

impl TryFrom<Vec<u64>> for WeightVector {
    type Error = Error;
    fn try_from(weights: Vec<u64>) -> Result<Self> {
        WeightVector::new(weights)
    }
}

impl From<WeightVector> for Vec<u64> {
    fn from(w: WeightVector) -> Self {
        w.weights
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(")?;
        for (i, a) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// One step of [`WeightVector::well_formize`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionStep {
    /// All weights divided by their common gcd.
    Common { divisor: u64 },
    /// All weights except the one at `index` divided by `divisor`.
    Pivot { index: usize, divisor: u64 },
}

impl ReductionStep {
    pub fn divisor(&self) -> u64 {
        match *self {
            ReductionStep::Common { divisor } | ReductionStep::Pivot { divisor, .. } => divisor,
        }
    }
}
