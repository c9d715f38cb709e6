//! Toric strata of a well-formed weighted projective space and their cyclic
//! quotient singularity types.
//!
//! The stratum indexed by a nonempty `I ⊆ {0..n}` is the locus where exactly
//! the coordinates in `I` are nonzero. With `g = gcd(a_i : i ∈ I)`, points of
//! that stratum look locally like `C^{|I|-1} × (C^{n-|I|+1} / μ_g)`, the group
//! acting with the weights `a_j, j ∉ I`. The stratum is singular iff `g ≠ 1`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::subsets;
use crate::weights::WeightVector;

/// Local model text attached to each stratum in reports. Only the
/// combinatorial data below is computed.
pub const LOCAL_MODEL: &str = "C^{|I|-1} x (C^{n-|I|+1} / mu_g)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumInfo {
    /// Indices `i` with `x_i ≠ 0`, ascending.
    pub support: Vec<usize>,
    /// `g = gcd(a_i : i ∈ support)`.
    pub order: u64,
    /// Weights `a_j` for `j ∉ support`, in index order.
    pub raw_type: Vec<u64>,
    /// `raw_type` reduced mod `g` and sorted. Zero residues are kept; they
    /// mark directions the group fixes pointwise.
    pub reduced_type: Vec<u64>,
}

impl StratumInfo {
    fn new(w: &WeightVector, support: Vec<usize>) -> Self {
        let a = w.weights();
        let order = support.iter().fold(0u64, |g, &i| g.gcd(&a[i]));
        let raw_type: Vec<u64> = (0..a.len())
            .filter(|j| !support.contains(j))
            .map(|j| a[j])
            .collect();
        let mut reduced_type: Vec<u64> = raw_type.iter().map(|&b| b % order).collect();
        reduced_type.sort_unstable();
        StratumInfo {
            support,
            order,
            raw_type,
            reduced_type,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.order != 1
    }

    /// True when some complement weight is divisible by `g`, so the local
    /// action has a pointwise-fixed direction.
    pub fn has_fixed_directions(&self) -> bool {
        self.is_singular() && self.reduced_type.contains(&0)
    }

    /// Type label `1/g(b_1,...,b_r)` built from the reduced residues.
    pub fn label(&self) -> String {
        let body: Vec<String> = self.reduced_type.iter().map(u64::to_string).collect();
        format!("1/{}({})", self.order, body.join(","))
    }
}

impl fmt::Display for StratumInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={:?} g={} {}", self.support, self.order, self.label())
    }
}

/// Divisor `D_i = P(a_0, ..., â_i, ..., a_n)` of the toric boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDivisor {
    pub omitted_index: usize,
    pub sub_weights: Vec<u64>,
}

/// Every nonempty stratum, ordered by support size then lexicographically.
/// The full support (the open torus) is included.
pub fn enumerate_strata(w: &WeightVector) -> Result<Vec<StratumInfo>> {
    if !w.is_well_formed() {
        return Err(crate::Error::NotWellFormed(w.weights().to_vec()));
    }
    Ok(subsets::nonempty_subsets(w.len())
        .into_iter()
        .map(|support| StratumInfo::new(w, support))
        .collect())
}

/// The strata with `g ≠ 1`.
pub fn singular_locus(w: &WeightVector) -> Result<Vec<StratumInfo>> {
    let singular: Vec<StratumInfo> = enumerate_strata(w)?
        .into_iter()
        .filter(StratumInfo::is_singular)
        .collect();
    if w.pairwise_coprime() {
        debug_assert!(singular.iter().all(|s| s.support.len() == 1));
    }
    Ok(singular)
}

/// The `n + 1` toric boundary divisors, the `i`-th omitting `a_i`.
pub fn boundary_divisors(w: &WeightVector) -> Vec<BoundaryDivisor> {
    (0..w.len())
        .map(|i| {
            let mut sub_weights = w.weights().to_vec();
            sub_weights.remove(i);
            BoundaryDivisor {
                omitted_index: i,
                sub_weights,
            }
        })
        .collect()
}
