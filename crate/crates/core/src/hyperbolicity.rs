//! Hyperbolicity thresholds and verdicts for very general hypersurfaces in
//! `|O(mk)|` on a weighted projective space with isolated singularities.
//!
//! All quantities are exact rationals measured against the polarization
//! `O(k)`, `k = Π a_i`. Thresholds are strict: a bound `m > t` never
//! accepts `m = t`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subsets::{self, GrayWalk};
use crate::weights::WeightVector;

pub const CITE_OUTSIDE_BOUNDARY: &str = "outside-boundary bound: m > sum/prod + (n-2)";
pub const CITE_THETA: &str = "stratified bound: m > Theta";
pub const CITE_TABLE_111T: &str = "P(1,1,1,t) surface table";
pub const CITE_THREEFOLD: &str = "threefold bound: m >= 2 away from P(1,1,1,t), P(1,1,2,3)";
pub const CITE_THREEFOLD_1123: &str = "threefold bound: m >= 3 for P(1,1,2,3)";
pub const CITE_1123_FAILS: &str = "threefold remark: P(1,1,2,3) with m = 1 is not hyperbolic";
pub const CITE_OPEN_CASE: &str = "threefold remark: remaining open case";

/// Notice attached to reports whenever a stratified epsilon is shown.
pub const EPSILON_NOTE: &str = "epsilon_I is reported as m - Theta_I; the closed form \
     (1/q_I)(sum_I/prod_I + |I| - 3) printed for it carries no m and equals Theta_I itself";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Hyperbolic,
    NotHyperbolic,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Hyperbolic for curves not contained in the toric boundary.
    OutsideBoundary,
    /// Hyperbolic for every curve, via the stratified threshold.
    Full,
    /// Dispatch on the quoted threefold results.
    ThreefoldTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicityVerdict {
    pub status: Status,
    pub regime: Regime,
    pub multiple: u64,
    pub epsilon: Option<Rational>,
    pub citation: String,
}

impl HyperbolicityVerdict {
    fn new(status: Status, regime: Regime, multiple: u64, citation: &str) -> Self {
        HyperbolicityVerdict {
            status,
            regime,
            multiple,
            epsilon: None,
            citation: citation.to_string(),
        }
    }

    /// Hyperbolic with `epsilon` when it is positive, otherwise Unknown.
    fn from_epsilon(epsilon: Rational, regime: Regime, multiple: u64, citation: &str) -> Self {
        if epsilon.is_positive() {
            HyperbolicityVerdict {
                epsilon: Some(epsilon),
                ..Self::new(Status::Hyperbolic, regime, multiple, citation)
            }
        } else {
            Self::new(Status::Unknown, regime, multiple, citation)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetThreshold {
    pub subset: Vec<usize>,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub theta: Rational,
    /// Every `I` with `|I| ≥ 4`, in canonical subset order.
    pub per_subset: Vec<SubsetThreshold>,
    pub argmax: Vec<Vec<usize>>,
    pub m_min: u64,
    pub warnings: Vec<String>,
}

impl ThetaReport {
    pub fn threshold_of(&self, subset: &[usize]) -> Option<&Rational> {
        self.per_subset
            .iter()
            .find(|s| s.subset == subset)
            .map(|s| &s.value)
    }
}

fn require_multiple(m: u64) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidMultiple(m, 1));
    }
    Ok(())
}

fn require_dim3(w: &WeightVector) -> Result<()> {
    if w.dim() < 3 {
        return Err(Error::DimensionTooSmall {
            dim: w.dim(),
            required: 3,
        });
    }
    Ok(())
}

fn ratio(num: &BigUint, den: &BigUint) -> Rational {
    Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// `m - Σa_i / Πa_i`, the coefficient of `H|_X` in `K_X`.
pub fn canonical_coefficient(w: &WeightVector, m: u64) -> Result<Rational> {
    w.require_isolated()?;
    require_multiple(m)?;
    Ok(Rational::from(m) - ratio(&w.canonical_weight_sum(), &w.product()))
}

/// `Σa_i / Πa_i + (n - 2)`: above this, a very general member is hyperbolic
/// away from the toric boundary.
pub fn outside_boundary_threshold(w: &WeightVector) -> Result<Rational> {
    w.require_isolated()?;
    require_dim3(w)?;
    Ok(ratio(&w.canonical_weight_sum(), &w.product()) + Rational::from((w.dim() - 2) as u64))
}

/// `m` minus the outside-boundary threshold; hyperbolicity follows only when positive.
pub fn epsilon_outside_boundary(w: &WeightVector, m: u64) -> Result<Rational> {
    require_multiple(m)?;
    Ok(Rational::from(m) - outside_boundary_threshold(w)?)
}

pub fn outside_boundary_verdict(w: &WeightVector, m: u64) -> Result<HyperbolicityVerdict> {
    Ok(HyperbolicityVerdict::from_epsilon(
        epsilon_outside_boundary(w, m)?,
        Regime::OutsideBoundary,
        m,
        CITE_OUTSIDE_BOUNDARY,
    ))
}

/// `Θ_I = (1/q_I)(Σ_{i∈I} a_i / Π_{i∈I} a_i + (|I| - 3))` with
/// `q_I = Π_{i∉I} a_i`, evaluated term by term.
pub fn subset_threshold(w: &WeightVector, subset: &[usize]) -> Result<Rational> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() || sorted.last().is_some_and(|&i| i >= w.len()) {
        return Err(Error::InvalidSubset(subset.to_vec()));
    }
    if subset.len() < 4 {
        return Err(Error::SubsetTooSmall { size: subset.len() });
    }
    w.require_isolated()?;
    let a = w.weights();
    let inside_sum: BigUint = subset.iter().map(|&i| BigUint::from(a[i])).sum();
    let inside_prod: BigUint = subset.iter().map(|&i| BigUint::from(a[i])).product();
    let outside_prod: BigUint = (0..a.len())
        .filter(|i| !subset.contains(i))
        .map(|i| BigUint::from(a[i]))
        .product();
    let bracket = ratio(&inside_sum, &inside_prod) + Rational::from((subset.len() - 3) as u64);
    Ok(bracket * ratio(&BigUint::one(), &outside_prod))
}

/// True when sorted weights are `(1,1,1,t)` or `(1,1,2,3)`.
pub fn is_exceptional_threefold(sorted: &[u64]) -> bool {
    matches!(sorted, [1, 1, 1, _] | [1, 1, 2, 3])
}

/// Maximizes `Θ_I` over all `|I| ≥ 4`.
///
/// Subsets are visited in Gray-code order so that `Σ_I` and `Π_I` are each
/// updated by one weight per step. Since `q_I · Π_I = k`, every threshold is
/// `(Σ_I + (|I| - 3) Π_I) / k`.
pub fn theta(w: &WeightVector) -> Result<ThetaReport> {
    require_dim3(w)?;
    w.require_isolated()?;
    let a = w.weights();
    let k = w.product();
    let mut sum = BigUint::zero();
    let mut prod = BigUint::one();
    let mut size = 0usize;
    let mut mask = 0u64;
    let mut per_subset = Vec::new();
    for (next, bit) in GrayWalk::new(a.len()) {
        let weight = BigUint::from(a[bit]);
        if next & (1 << bit) != 0 {
            sum += &weight;
            prod *= &weight;
            size += 1;
        } else {
            sum -= &weight;
            prod /= &weight;
            size -= 1;
        }
        mask = next;
        if size >= 4 {
            let num = &sum + &prod * BigUint::from((size - 3) as u64);
            per_subset.push(SubsetThreshold {
                subset: subsets::indices(mask),
                value: ratio(&num, &k),
            });
        }
    }
    debug_assert_eq!(mask.count_ones() as usize, size);
    per_subset.sort_by(|x, y| subsets::canonical_cmp(&x.subset, &y.subset));

    let theta = per_subset
        .iter()
        .map(|s| &s.value)
        .max()
        .expect("the full subset has at least four indices")
        .clone();
    let argmax = per_subset
        .iter()
        .filter(|s| s.value == theta)
        .map(|s| s.subset.clone())
        .collect();
    let m_min = theta
        .next_integer_above()
        .to_u64()
        .expect("theta is bounded by 2n - 1");

    let warnings = per_subset
        .iter()
        .filter(|s| s.subset.len() == 4)
        .filter_map(|s| {
            let mut sub: Vec<u64> = s.subset.iter().map(|&i| a[i]).collect();
            sub.sort_unstable();
            is_exceptional_threefold(&sub).then(|| {
                format!(
                    "stratum I={:?} has sub-weights {:?}, outside the m >= 2 threefold bound; \
                     its hyperbolicity at multiple m*q_I needs the exceptional threefold results",
                    s.subset, sub
                )
            })
        })
        .collect();

    Ok(ThetaReport {
        theta,
        per_subset,
        argmax,
        m_min,
        warnings,
    })
}

/// Smallest integer strictly greater than `Θ`.
pub fn minimal_m(w: &WeightVector) -> Result<u64> {
    Ok(theta(w)?.m_min)
}

/// `m - Θ = min_I (m - Θ_I)`, with respect to `O(k)`.
pub fn global_epsilon(w: &WeightVector, m: u64) -> Result<Rational> {
    require_multiple(m)?;
    Ok(Rational::from(m) - theta(w)?.theta)
}

pub fn theta_verdict(w: &WeightVector, m: u64) -> Result<HyperbolicityVerdict> {
    Ok(HyperbolicityVerdict::from_epsilon(
        global_epsilon(w, m)?,
        Regime::Full,
        m,
        CITE_THETA,
    ))
}

/// Tri-state verdict for a surface in `|mH|` on a weighted projective
/// 3-fold, dispatched on the sorted weight pattern.
pub fn classify_threefold(w: &WeightVector, m: u64) -> Result<HyperbolicityVerdict> {
    if w.len() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: w.len(),
        });
    }
    w.require_isolated()?;
    require_multiple(m)?;
    use Status::*;
    let table = |status, citation| {
        Ok(HyperbolicityVerdict::new(
            status,
            Regime::ThreefoldTable,
            m,
            citation,
        ))
    };
    match w.sorted().as_slice() {
        &[1, 1, 1, t] => {
            if (m >= 4 && t >= 2) || (m == 3 && t >= 4) || (m == 2 && t >= 5) {
                table(Hyperbolic, CITE_TABLE_111T)
            } else if (t == 1 && m <= 4) || (m == 2 && t <= 4) {
                table(NotHyperbolic, CITE_TABLE_111T)
            } else {
                table(Unknown, CITE_OPEN_CASE)
            }
        }
        [1, 1, 2, 3] => match m {
            1 => table(NotHyperbolic, CITE_1123_FAILS),
            2 => table(Unknown, CITE_OPEN_CASE),
            _ => table(Hyperbolic, CITE_THREEFOLD_1123),
        },
        _ if m >= 2 => table(Hyperbolic, CITE_THREEFOLD),
        _ => table(Unknown, CITE_OPEN_CASE),
    }
}

/// Both sides of `Σ_{j≠i} a_j < m Π_j a_j`, the positivity of the canonical
/// degree of the curve cut on the boundary divisor `D_i`.
pub fn boundary_curve_sides(w: &WeightVector, m: u64, i: usize) -> Result<(BigUint, BigUint)> {
    if w.len() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: w.len(),
        });
    }
    if i >= w.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: w.len(),
        });
    }
    let lhs: BigUint = w
        .weights()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &a)| BigUint::from(a))
        .sum();
    Ok((lhs, BigUint::from(m) * w.product()))
}

pub fn boundary_curve_positive(w: &WeightVector, m: u64, i: usize) -> Result<bool> {
    let (lhs, rhs) = boundary_curve_sides(w, m, i)?;
    Ok(lhs < rhs)
}

/// Uniform upper bounds on `Θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryBounds {
    /// `2n - 1`, valid for every input.
    pub general: Rational,
    /// `3n/2 - 1`, when some weight is at least 2.
    pub refined: Option<Rational>,
    /// Exact `Θ = n - 1 + n/t` for sorted weights `(1,...,1,t)`.
    pub exact: Option<Rational>,
}

pub fn corollary_bound(w: &WeightVector) -> Result<CorollaryBounds> {
    require_dim3(w)?;
    w.require_isolated()?;
    let n = w.dim() as u64;
    let sorted = w.sorted();
    let general = Rational::from(2 * n - 1);
    let refined = sorted
        .iter()
        .any(|&a| a >= 2)
        .then(|| Rational::new(3 * n, 2) - Rational::from(1));
    let (top, rest) = sorted.split_last().expect("at least two weights");
    let exact = rest
        .iter()
        .all(|&a| a == 1)
        .then(|| Rational::from(n - 1) + Rational::new(n, *top));
    Ok(CorollaryBounds {
        general,
        refined,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn canonical_coefficient_examples() {
        for m in 1..10u64 {
            assert_eq!(
                canonical_coefficient(&w(&[1, 1, 1, 1]), m).unwrap(),
                Rational::from(m) - Rational::from(4)
            );
        }
        assert_eq!(canonical_coefficient(&w(&[1, 1, 2, 3, 5]), 3).unwrap(), q(13, 5));
        assert_eq!(canonical_coefficient(&w(&[1, 1, 2, 3]), 1).unwrap(), q(-1, 6));
        assert!(matches!(
            canonical_coefficient(&w(&[1, 2, 3, 4]), 2),
            Err(Error::NotIsolated(_))
        ));
    }

    #[test]
    fn outside_boundary_examples() {
        assert_eq!(outside_boundary_threshold(&w(&[1, 1, 2, 3, 5])).unwrap(), q(12, 5));
        assert_eq!(outside_boundary_threshold(&w(&[1, 1, 1, 1])).unwrap(), q(5, 1));
        assert_eq!(outside_boundary_threshold(&w(&[1, 1, 2, 3])).unwrap(), q(13, 6));
        assert_eq!(
            outside_boundary_threshold(&w(&[1, 2, 3])),
            Err(Error::DimensionTooSmall { dim: 2, required: 3 })
        );

        assert_eq!(epsilon_outside_boundary(&w(&[1, 1, 2, 3, 5]), 3).unwrap(), q(3, 5));
        assert_eq!(epsilon_outside_boundary(&w(&[1, 1, 2, 3, 5]), 2).unwrap(), q(-2, 5));
        assert_eq!(epsilon_outside_boundary(&w(&[1, 1, 1, 1]), 5).unwrap(), q(0, 1));

        let v = outside_boundary_verdict(&w(&[1, 1, 1, 1]), 5).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.epsilon, None);
        let v = outside_boundary_verdict(&w(&[1, 1, 2, 3, 5]), 3).unwrap();
        assert_eq!(v.status, Status::Hyperbolic);
        assert_eq!(v.epsilon, Some(q(3, 5)));
    }

    #[test]
    fn subset_threshold_examples() {
        let v = w(&[1, 1, 2, 3, 5]);
        assert_eq!(subset_threshold(&v, &[0, 1, 2, 3, 4]).unwrap(), q(12, 5));
        assert_eq!(subset_threshold(&v, &[0, 1, 2, 3]).unwrap(), q(13, 30));
        assert_eq!(
            subset_threshold(&w(&[1, 1, 1, 1, 2]), &[0, 1, 2, 3]).unwrap(),
            q(5, 2)
        );
        assert_eq!(
            subset_threshold(&v, &[0, 1, 2]),
            Err(Error::SubsetTooSmall { size: 3 })
        );
        assert!(matches!(
            subset_threshold(&v, &[0, 1, 2, 2]),
            Err(Error::InvalidSubset(_))
        ));
        assert!(matches!(
            subset_threshold(&v, &[0, 1, 2, 9]),
            Err(Error::InvalidSubset(_))
        ));
    }

    /// The six subsets of size ≥ 4 of (1,1,2,3,5), evaluated by hand:
    /// full 12/5; omit 5 → 13/30; omit 3 → 19/30; omit 2 → 5/6;
    /// omit either 1 → 41/30.
    #[test]
    fn theta_of_11235() {
        let report = theta(&w(&[1, 1, 2, 3, 5])).unwrap();
        assert_eq!(report.theta, q(12, 5));
        assert_eq!(report.m_min, 3);
        assert_eq!(report.argmax, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(report.per_subset.len(), 6);
        assert_eq!(report.threshold_of(&[0, 1, 2, 3]), Some(&q(13, 30)));
        assert_eq!(report.threshold_of(&[0, 1, 2, 4]), Some(&q(19, 30)));
        assert_eq!(report.threshold_of(&[0, 1, 3, 4]), Some(&q(5, 6)));
        assert_eq!(report.threshold_of(&[0, 2, 3, 4]), Some(&q(41, 30)));
        assert_eq!(report.threshold_of(&[1, 2, 3, 4]), Some(&q(41, 30)));
        // (1,1,2,3) appears as the stratum omitting 5
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn theta_small_examples() {
        let r = theta(&w(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(r.theta, q(7, 1));
        assert_eq!(r.m_min, 8);
        let r = theta(&w(&[1, 1, 1, 1, 2])).unwrap();
        assert_eq!(r.theta, q(5, 1));
        assert_eq!(r.m_min, 6);

        assert_eq!(minimal_m(&w(&[1, 1, 2, 3, 5])).unwrap(), 3);
        assert_eq!(minimal_m(&w(&[1, 1, 1, 1, 1])).unwrap(), 8);
        assert_eq!(minimal_m(&w(&[1, 1, 1, 1, 2])).unwrap(), 6);

        assert_eq!(global_epsilon(&w(&[1, 1, 2, 3, 5]), 3).unwrap(), q(3, 5));
        assert_eq!(global_epsilon(&w(&[1, 1, 1, 1, 1]), 8).unwrap(), q(1, 1));
        assert_eq!(global_epsilon(&w(&[1, 1, 1, 1, 2]), 5).unwrap(), q(0, 1));
        assert_eq!(theta_verdict(&w(&[1, 1, 1, 1, 2]), 5).unwrap().status, Status::Unknown);

        assert!(matches!(theta(&w(&[1, 2, 3])), Err(Error::DimensionTooSmall { .. })));
        assert!(matches!(theta(&w(&[1, 2, 3, 4])), Err(Error::NotIsolated(_))));
    }

    #[test]
    fn gray_walk_agrees_with_direct_evaluation() {
        for v in [w(&[1, 1, 2, 3, 5]), w(&[2, 3, 5, 7, 11, 13]), w(&[1, 1, 1, 4, 9, 5])] {
            let report = theta(&v).unwrap();
            for s in &report.per_subset {
                assert_eq!(subset_threshold(&v, &s.subset).unwrap(), s.value);
            }
        }
    }

    #[test]
    fn threefold_examples() {
        let status = |v: &[u64], m| classify_threefold(&w(v), m).unwrap().status;
        assert_eq!(status(&[1, 1, 1, 2], 4), Status::Hyperbolic);
        assert_eq!(status(&[1, 1, 1, 1], 3), Status::NotHyperbolic);
        assert_eq!(status(&[1, 1, 2, 3], 2), Status::Unknown);
        assert_eq!(status(&[1, 1, 2, 3], 1), Status::NotHyperbolic);
        assert_eq!(status(&[3, 1, 2, 1], 3), Status::Hyperbolic);
        assert_eq!(status(&[1, 1, 1, 2], 3), Status::Unknown);
        assert_eq!(status(&[1, 1, 1, 3], 3), Status::Unknown);
        assert_eq!(status(&[1, 2, 3, 5], 1), Status::Unknown);
        assert_eq!(status(&[5, 3, 2, 1], 2), Status::Hyperbolic);
        assert_eq!(
            classify_threefold(&w(&[1, 1, 2, 3, 5]), 2),
            Err(Error::WrongDimension { expected: 4, found: 5 })
        );
        let v = classify_threefold(&w(&[1, 1, 2, 3]), 2).unwrap();
        assert_eq!(v.citation, CITE_OPEN_CASE);
        assert_eq!(v.epsilon, None);
    }

    #[test]
    fn boundary_curve_examples() {
        for i in 0..4 {
            assert!(boundary_curve_positive(&w(&[1, 1, 2, 3]), 2, i).unwrap());
            // 3 < m * 1 needs m >= 4 on projective 3-space
            assert!(!boundary_curve_positive(&w(&[1, 1, 1, 1]), 1, i).unwrap());
            assert!(!boundary_curve_positive(&w(&[1, 1, 1, 1]), 3, i).unwrap());
            assert!(boundary_curve_positive(&w(&[1, 1, 1, 1]), 4, i).unwrap());
        }
        assert!(!boundary_curve_positive(&w(&[1, 1, 2, 3]), 1, 0).unwrap());
        assert!(boundary_curve_positive(&w(&[1, 1, 2, 3]), 1, 3).unwrap());
        assert_eq!(
            boundary_curve_positive(&w(&[1, 1, 2, 3]), 1, 4),
            Err(Error::IndexOutOfRange { index: 4, len: 4 })
        );
        assert!(matches!(
            boundary_curve_positive(&w(&[1, 1, 2]), 1, 0),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn corollary_examples() {
        let b = corollary_bound(&w(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(b.general, q(7, 1));
        assert_eq!(b.refined, None);
        assert_eq!(b.exact, Some(q(7, 1)));

        let b = corollary_bound(&w(&[1, 1, 1, 2, 3])).unwrap();
        assert_eq!(b.general, q(7, 1));
        assert_eq!(b.refined, Some(q(5, 1)));
        assert_eq!(b.exact, None);

        let b = corollary_bound(&w(&[1, 1, 1, 1, 7])).unwrap();
        assert_eq!(b.exact, Some(q(25, 7)));
        assert_eq!(theta(&w(&[1, 1, 1, 1, 7])).unwrap().theta, q(25, 7));
    }
}
