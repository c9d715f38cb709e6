//! Exhaustive verification of the supporting inequalities over bounded
//! ranges of pairwise-coprime weight tuples.
//!
//! Tuples are canonicalized as sorted non-decreasing sequences, one per
//! permutation orbit. Work is split across a rayon pool; results are merged
//! and sorted, so reports do not depend on the worker count.

use std::time::{Duration, Instant};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hyperbolicity::{self, is_exceptional_threefold};
use crate::rational::Rational;
use crate::sections;
use crate::weights::WeightVector;

/// Non-decreasing, pairwise-coprime tuples with entries in `1..=max_weight`,
/// in lexicographic order.
pub struct CoprimeTuples {
    current: Vec<u64>,
    max_weight: u64,
    started: bool,
    done: bool,
}

pub fn enumerate_coprime_tuples(length: usize, max_weight: u64) -> CoprimeTuples {
    CoprimeTuples {
        current: vec![0; length],
        max_weight,
        started: false,
        done: length == 0 || max_weight == 0,
    }
}

impl CoprimeTuples {
    fn smallest_from(&self, pos: usize, start: u64) -> Option<u64> {
        (start..=self.max_weight).find(|v| self.current[..pos].iter().all(|a| a.gcd(v) == 1))
    }

    /// Fills `from..` with the smallest valid values; on failure returns the
    /// position that could not be filled.
    fn fill(&mut self, from: usize) -> std::result::Result<(), usize> {
        for p in from..self.current.len() {
            let lo = if p == 0 { 1 } else { self.current[p - 1] };
            match self.smallest_from(p, lo) {
                Some(v) => self.current[p] = v,
                None => return Err(p),
            }
        }
        Ok(())
    }
}

impl Iterator for CoprimeTuples {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let mut pos = if self.started {
            self.current.len() - 1
        } else {
            self.started = true;
            match self.fill(0) {
                Ok(()) => return Some(self.current.clone()),
                Err(0) => {
                    self.done = true;
                    return None;
                }
                Err(p) => p - 1,
            }
        };
        loop {
            match self.smallest_from(pos, self.current[pos] + 1) {
                Some(v) => {
                    self.current[pos] = v;
                    match self.fill(pos + 1) {
                        Ok(()) => return Some(self.current.clone()),
                        Err(p) => pos = p - 1,
                    }
                }
                None if pos == 0 => {
                    self.done = true;
                    return None;
                }
                None => pos -= 1,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimId {
    /// `Σa_i < Πa_i` for 3-fold weights outside `(1,1,1,t)` and `(1,1,2,3)`.
    SumProduct,
    /// `Θ ≤ 2n-1`, `Θ ≤ 3n/2-1` when some weight is ≥ 2, and the closed
    /// form for `(1,...,1,t)`.
    ThetaBounds,
    /// `Σ_{j≠i} a_j < m Π a_j` on every boundary divisor of a 3-fold.
    BoundaryPositivity,
    /// `O(k)` generated in degree one up to a multiple.
    NormalGeneration,
    /// Section domination of `mO(k)` by `O(k)` at the torus-fixed points.
    SectionDomination,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRange {
    pub length: usize,
    pub max_weight: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_product: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub multiples: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub weights: Vec<u64>,
    pub detail: String,
    /// The two sides of the inequality that failed, `lhs < rhs` or `lhs ≤ rhs`.
    pub lhs: Rational,
    pub rhs: Rational,
    /// A known exception of the claim rather than a counterexample.
    pub expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightCase {
    pub weights: Vec<u64>,
    pub detail: String,
    pub value: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub claim_id: ClaimId,
    pub range: SearchRange,
    pub checked_count: u64,
    pub violations: Vec<Violation>,
    pub tight_cases: Vec<TightCase>,
    /// Wall-clock time. Not serialized and ignored by equality.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for SearchReport {
    fn eq(&self, other: &Self) -> bool {
        self.claim_id == other.claim_id
            && self.range == other.range
            && self.checked_count == other.checked_count
            && self.violations == other.violations
            && self.tight_cases == other.tight_cases
    }
}

impl SearchReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| !v.expected)
    }

    pub fn has_unexpected(&self) -> bool {
        self.unexpected().next().is_some()
    }
}

/// Per-tuple findings before merging.
#[derive(Default)]
struct Findings {
    violations: Vec<Violation>,
    tight: Vec<TightCase>,
}

/// Runs the exhaustive checks on a pool of `jobs` workers (`0` lets rayon
/// pick).
#[derive(Clone, Copy, Debug, Default)]
pub struct Searcher {
    pub jobs: usize,
}

impl Searcher {
    pub fn new(jobs: usize) -> Self {
        Searcher { jobs }
    }

    fn run<F>(&self, claim_id: ClaimId, range: SearchRange, tuples: Vec<Vec<u64>>, check: F) -> Result<SearchReport>
    where
        F: Fn(&WeightVector) -> Result<Findings> + Sync,
    {
        let start = Instant::now();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool");
        let results: Vec<Findings> = pool.install(|| {
            tuples
                .par_iter()
                .map(|t| check(&WeightVector::new(t.clone()).expect("enumerated tuples are valid")))
                .collect::<Result<Vec<_>>>()
        })?;
        let mut violations = Vec::new();
        let mut tight_cases = Vec::new();
        for f in results {
            violations.extend(f.violations);
            tight_cases.extend(f.tight);
        }
        violations.sort_by(|a, b| (&a.weights, &a.detail).cmp(&(&b.weights, &b.detail)));
        tight_cases.sort_by(|a, b| (&a.weights, &a.detail).cmp(&(&b.weights, &b.detail)));
        Ok(SearchReport {
            claim_id,
            range,
            checked_count: tuples.len() as u64,
            violations,
            tight_cases,
            elapsed: start.elapsed(),
        })
    }

    /// Every sorted pairwise-coprime 4-tuple with `Σa_i ≥ Πa_i`. The
    /// families `(1,1,1,t)` and `(1,1,2,3)` are marked as expected.
    pub fn verify_sum_product_inequality(&self, max_weight: u64) -> Result<SearchReport> {
        let tuples: Vec<_> = enumerate_coprime_tuples(4, max_weight).collect();
        let range = SearchRange {
            length: 4,
            max_weight,
            ..Default::default()
        };
        self.run(ClaimId::SumProduct, range, tuples, |w| {
            let sum = Rational::from(&w.canonical_weight_sum());
            let prod = Rational::from(&w.product());
            let mut f = Findings::default();
            if sum >= prod {
                f.violations.push(Violation {
                    weights: w.weights().to_vec(),
                    detail: "sum < product".into(),
                    lhs: sum,
                    rhs: prod,
                    expected: is_exceptional_threefold(w.weights()),
                });
            }
            Ok(f)
        })
    }

    /// Checks the uniform bounds on `Θ` over tuples of the given length.
    pub fn verify_theta_bounds(&self, length: usize, max_weight: u64) -> Result<SearchReport> {
        let tuples: Vec<_> = enumerate_coprime_tuples(length, max_weight).collect();
        let range = SearchRange {
            length,
            max_weight,
            ..Default::default()
        };
        self.run(ClaimId::ThetaBounds, range, tuples, |w| {
            let theta = hyperbolicity::theta(w)?.theta;
            let n = w.dim() as u64;
            let mut f = Findings::default();
            let bound = |detail: &str, limit: Rational, f: &mut Findings| {
                if theta > limit {
                    f.violations.push(Violation {
                        weights: w.weights().to_vec(),
                        detail: detail.into(),
                        lhs: theta.clone(),
                        rhs: limit,
                        expected: false,
                    });
                } else if theta == limit {
                    f.tight.push(TightCase {
                        weights: w.weights().to_vec(),
                        detail: detail.into(),
                        value: limit,
                    });
                }
            };
            bound("theta <= 2n-1", Rational::from(2 * n - 1), &mut f);
            let sorted = w.weights();
            if sorted.iter().any(|&a| a >= 2) {
                bound("theta <= 3n/2-1", Rational::new(3 * n, 2) - Rational::from(1), &mut f);
            }
            let (&t, ones) = sorted.split_last().expect("nonempty");
            if ones.iter().all(|&a| a == 1) {
                let closed = Rational::from(n - 1) + Rational::new(n, t);
                if theta != closed {
                    f.violations.push(Violation {
                        weights: sorted.to_vec(),
                        detail: "theta = n-1+n/t".into(),
                        lhs: theta.clone(),
                        rhs: closed,
                        expected: false,
                    });
                }
            }
            Ok(f)
        })
    }

    /// Checks `Σ_{j≠i} a_j < m Π a_j` for every omitted index `i`.
    ///
    /// The inequality is only claimed for the tuples covered by the `m ≥ 2`
    /// threefold bound with `m ≥ 2`; for such `m`, failures on `(1,1,1,t)`
    /// and `(1,1,2,3)` are marked as expected.
    pub fn verify_boundary_positivity(&self, max_weight: u64, m: u64) -> Result<SearchReport> {
        let tuples: Vec<_> = enumerate_coprime_tuples(4, max_weight).collect();
        let range = SearchRange {
            length: 4,
            max_weight,
            multiples: vec![m],
            ..Default::default()
        };
        self.run(ClaimId::BoundaryPositivity, range, tuples, |w| {
            let mut f = Findings::default();
            for i in 0..w.len() {
                let (lhs, rhs) = hyperbolicity::boundary_curve_sides(w, m, i)?;
                if lhs >= rhs {
                    f.violations.push(Violation {
                        weights: w.weights().to_vec(),
                        detail: format!("omitting index {i}: sum < m*product"),
                        lhs: Rational::from(&lhs),
                        rhs: Rational::from(&rhs),
                        expected: m >= 2 && is_exceptional_threefold(w.weights()),
                    });
                }
            }
            Ok(f)
        })
    }

    /// Certifies normal generation of `O(k)` up to `max_multiple` for every
    /// 4-tuple with `k = Πa_i ≤ max_product`.
    pub fn verify_normal_generation(&self, max_product: u64, max_multiple: u64) -> Result<SearchReport> {
        let tuples = small_threefolds(max_product);
        let range = SearchRange {
            length: 4,
            max_weight: max_product,
            max_product: Some(max_product),
            multiples: (2..=max_multiple).collect(),
        };
        self.run(ClaimId::NormalGeneration, range, tuples, |w| {
            let k = w.picard_generator_degree()?;
            let cert = sections::is_normally_generated_upto(w, &k, max_multiple)?;
            let mut f = Findings::default();
            if let Some((m, mono)) = cert.counterexample {
                f.violations.push(Violation {
                    weights: w.weights().to_vec(),
                    detail: format!("monomial {:?} of degree {m}k does not split", mono.exponents),
                    lhs: Rational::from(m),
                    rhs: Rational::from(m),
                    expected: false,
                });
            }
            Ok(f)
        })
    }

    /// Certifies section domination at every torus-fixed point for each
    /// multiple in `multiples`, over 4-tuples with `Πa_i ≤ max_product`.
    pub fn verify_section_domination(&self, max_product: u64, multiples: &[u64]) -> Result<SearchReport> {
        let tuples = small_threefolds(max_product);
        let range = SearchRange {
            length: 4,
            max_weight: max_product,
            max_product: Some(max_product),
            multiples: multiples.to_vec(),
        };
        self.run(ClaimId::SectionDomination, range, tuples, |w| {
            let mut f = Findings::default();
            for &m in multiples {
                let cert = sections::check_section_domination_at_fixed_points(w, m)?;
                if let Some((point, mono)) = cert.counterexample {
                    f.violations.push(Violation {
                        weights: w.weights().to_vec(),
                        detail: format!(
                            "m={m}: monomial {:?} vanishing at point {point} has no vanishing degree-k factor",
                            mono.exponents
                        ),
                        lhs: Rational::from(m),
                        rhs: Rational::from(m),
                        expected: false,
                    });
                }
            }
            Ok(f)
        })
    }
}

/// Sorted pairwise-coprime 4-tuples with product at most `max_product`,
/// in lexicographic order.
pub fn small_threefolds(max_product: u64) -> Vec<Vec<u64>> {
    fn extend(max_product: u64, prod: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == 4 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        let slots = (4 - cur.len()) as u32;
        // the remaining entries are all at least v, so v^slots must fit
        let mut v = lo;
        while v.checked_pow(slots).is_some_and(|p| p <= max_product / prod) {
            if cur.iter().all(|a| a.gcd(&v) == 1) {
                cur.push(v);
                extend(max_product, prod * v, cur, out);
                cur.pop();
            }
            v += 1;
        }
    }
    let mut out = Vec::new();
    if max_product >= 1 {
        extend(max_product, 1, &mut Vec::new(), &mut out);
    }
    out
}

pub fn verify_sum_product_inequality(max_weight: u64) -> Result<SearchReport> {
    Searcher::default().verify_sum_product_inequality(max_weight)
}

pub fn verify_theta_bounds(length: usize, max_weight: u64) -> Result<SearchReport> {
    Searcher::default().verify_theta_bounds(length, max_weight)
}

pub fn verify_boundary_positivity(max_weight: u64, m: u64) -> Result<SearchReport> {
    Searcher::default().verify_boundary_positivity(max_weight, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent brute force: all non-decreasing tuples, then filter.
    fn brute_force_tuples(length: usize, max: u64) -> Vec<Vec<u64>> {
        fn rec(length: usize, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if cur.len() == length {
                let coprime = (0..length)
                    .all(|i| (i + 1..length).all(|j| cur[i].gcd(&cur[j]) == 1));
                if coprime {
                    out.push(cur.clone());
                }
                return;
            }
            let lo = cur.last().copied().unwrap_or(1);
            for v in lo..=max {
                cur.push(v);
                rec(length, max, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(length, max, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn tuple_examples() {
        let got: Vec<_> = enumerate_coprime_tuples(4, 3).collect();
        assert_eq!(
            got,
            vec![vec![1, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 1, 1, 3], vec![1, 1, 2, 3]]
        );
        let got: Vec<_> = enumerate_coprime_tuples(2, 2).collect();
        assert_eq!(got, vec![vec![1, 1], vec![1, 2]]);
        let got: Vec<_> = enumerate_coprime_tuples(4, 1).collect();
        assert_eq!(got, vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn tuples_match_brute_force() {
        for length in 2..=5 {
            for max in 1..=12 {
                let got: Vec<_> = enumerate_coprime_tuples(length, max).collect();
                assert_eq!(got, brute_force_tuples(length, max), "length {length} max {max}");
                assert!(got.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn sum_product_small_range() {
        let report = verify_sum_product_inequality(3).unwrap();
        let bad: Vec<_> = report.violations.iter().map(|v| v.weights.clone()).collect();
        assert_eq!(
            bad,
            vec![vec![1, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 1, 1, 3], vec![1, 1, 2, 3]]
        );
        assert!(!report.has_unexpected());
        assert_eq!(report.checked_count, 4);
    }

    #[test]
    fn sum_product_thirty() {
        let report = verify_sum_product_inequality(30).unwrap();
        let mut expected: Vec<Vec<u64>> = (1..=30).map(|t| vec![1, 1, 1, t]).collect();
        expected.push(vec![1, 1, 2, 3]);
        expected.sort();
        let got: Vec<_> = report.violations.iter().map(|v| v.weights.clone()).collect();
        assert_eq!(got, expected);
        // (1,2,3,5): 11 < 30
        assert!(!got.contains(&vec![1, 2, 3, 5]));
    }

    #[test]
    fn theta_bounds_hold_and_record_tightness() {
        let report = verify_theta_bounds(5, 10).unwrap();
        assert!(report.holds(), "{:?}", report.violations);
        let tight = |weights: &[u64], detail: &str| {
            report
                .tight_cases
                .iter()
                .any(|c| c.weights == weights && c.detail == detail)
        };
        assert!(tight(&[1, 1, 1, 1, 1], "theta <= 2n-1"));
        assert!(tight(&[1, 1, 1, 1, 2], "theta <= 3n/2-1"));
    }

    #[test]
    fn boundary_positivity() {
        let report = verify_boundary_positivity(20, 2).unwrap();
        assert!(!report.has_unexpected());
        // P^3 fails on every divisor (3 < 2), P(1,1,1,2) on the three
        // divisors omitting a weight 1 (4 < 4).
        let failing: Vec<_> = report
            .violations
            .iter()
            .map(|v| (v.weights.clone(), v.detail.clone()))
            .collect();
        let mut expected = Vec::new();
        for i in 0..4 {
            expected.push((vec![1, 1, 1, 1], format!("omitting index {i}: sum < m*product")));
        }
        for i in 0..3 {
            expected.push((vec![1, 1, 1, 2], format!("omitting index {i}: sum < m*product")));
        }
        assert_eq!(failing, expected);
        let report = verify_boundary_positivity(3, 1).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.weights == [1, 1, 2, 3] && v.lhs == Rational::from(6) && v.rhs == Rational::from(6)));
        assert!(report.has_unexpected());
    }

    #[test]
    fn reports_do_not_depend_on_worker_count() {
        let one = Searcher::new(1).verify_theta_bounds(5, 8).unwrap();
        let four = Searcher::new(4).verify_theta_bounds(5, 8).unwrap();
        assert_eq!(one, four);
        let one = Searcher::new(1).verify_sum_product_inequality(25).unwrap();
        let three = Searcher::new(3).verify_sum_product_inequality(25).unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn small_threefolds_match_filtered_enumeration() {
        for bound in [1, 6, 30, 60] {
            let filtered: Vec<_> = enumerate_coprime_tuples(4, bound)
                .filter(|t| t.iter().product::<u64>() <= bound)
                .collect();
            assert_eq!(small_threefolds(bound), filtered);
        }
    }

    #[test]
    fn small_threefold_family() {
        let family = small_threefolds(6);
        assert_eq!(
            family,
            vec![
                vec![1, 1, 1, 1],
                vec![1, 1, 1, 2],
                vec![1, 1, 1, 3],
                vec![1, 1, 1, 4],
                vec![1, 1, 1, 5],
                vec![1, 1, 1, 6],
                vec![1, 1, 2, 3]
            ]
        );
    }
}
