//! Monomial bases of the weighted section spaces `H^0(P, O(d))`, their
//! dimensions, and two combinatorial certificates built on them: normal
//! generation of `O(k)` and section domination at the torus-fixed points.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::WeightVector;

/// Memo-entry cap for the decomposition search.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Scope note attached to every domination certificate.
pub const DOMINATION_SCOPE: &str =
    "certified at torus-fixed points only; general points are not checked";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u64>,
    pub weighted_degree: u64,
}

impl Monomial {
    /// True when the monomial is a power of `x_i` alone, i.e. it does not
    /// vanish at the `i`-th torus-fixed point.
    pub fn is_pure_power_of(&self, i: usize) -> bool {
        is_pure_power(&self.exponents, i)
    }
}

fn is_pure_power(exponents: &[u64], i: usize) -> bool {
    exponents
        .iter()
        .enumerate()
        .all(|(j, &e)| j == i || e == 0)
}

fn check_degree(d: i64) -> Result<u64> {
    u64::try_from(d).map_err(|_| Error::NegativeDegree(d))
}

/// All exponent vectors with `Σ a_i e_i = d`, in descending lexicographic order.
pub fn monomial_basis(w: &WeightVector, d: i64) -> Result<Vec<Monomial>> {
    let d = check_degree(d)?;
    let mut out = Vec::new();
    let mut current = vec![0u64; w.len()];
    fill_basis(w.weights(), 0, d, &mut current, &mut |exps| {
        out.push(Monomial {
            exponents: exps.to_vec(),
            weighted_degree: d,
        })
    });
    Ok(out)
}

fn fill_basis(
    weights: &[u64],
    pos: usize,
    remaining: u64,
    current: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    let a = weights[pos];
    if pos + 1 == weights.len() {
        if remaining.is_multiple_of(a) {
            current[pos] = remaining / a;
            emit(current);
        }
        return;
    }
    for e in (0..=remaining / a).rev() {
        current[pos] = e;
        fill_basis(weights, pos + 1, remaining - e * a, current, emit);
    }
    current[pos] = 0;
}

/// Number of monomials of weighted degree `d` (the denumerant), by the
/// coin-change recurrence.
pub fn h0_dimension(w: &WeightVector, d: i64) -> Result<BigUint> {
    let d = check_degree(d)?;
    let len = usize::try_from(d)
        .ok()
        .and_then(|d| d.checked_add(1))
        .ok_or_else(|| Error::DegreeTooLarge(d.to_string()))?;
    let mut counts = vec![BigUint::zero(); len];
    counts[0] = BigUint::from(1u32);
    for &a in w.weights() {
        let a = a as usize;
        for t in a..len {
            let (lo, hi) = counts.split_at_mut(t);
            hi[0] += &lo[t - a];
        }
    }
    Ok(counts.pop().expect("nonempty table"))
}

/// Calls `visit` on every exponent vector `f ≤ e` of weighted degree `k`,
/// trying coordinates with the largest exponent first and, within each,
/// the largest feasible exponent first. Stops as soon as `visit` returns
/// `Ok(true)`.
fn for_each_divisor(
    weights: &[u64],
    e: &[u64],
    k: u64,
    visit: &mut dyn FnMut(&[u64]) -> Result<bool>,
) -> Result<bool> {
    let mut order: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
    order.sort_by(|&i, &j| e[j].cmp(&e[i]).then(i.cmp(&j)));
    // capacity[p] = weighted degree still available from order[p..]
    let mut capacity = vec![0u64; order.len() + 1];
    for p in (0..order.len()).rev() {
        let c = order[p];
        capacity[p] = capacity[p + 1].saturating_add(e[c].saturating_mul(weights[c]));
    }
    let mut f = vec![0u64; e.len()];
    divisor_step(weights, e, &order, &capacity, 0, k, &mut f, visit)
}

#[allow(clippy::too_many_arguments)]
fn divisor_step(
    weights: &[u64],
    e: &[u64],
    order: &[usize],
    capacity: &[u64],
    pos: usize,
    remaining: u64,
    f: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]) -> Result<bool>,
) -> Result<bool> {
    if remaining == 0 {
        return visit(f);
    }
    if pos == order.len() || capacity[pos] < remaining {
        return Ok(false);
    }
    let c = order[pos];
    let a = weights[c];
    let top = e[c].min(remaining / a);
    for x in (0..=top).rev() {
        f[c] = x;
        if divisor_step(weights, e, order, capacity, pos + 1, remaining - x * a, f, visit)? {
            f[c] = 0;
            return Ok(true);
        }
    }
    f[c] = 0;
    Ok(false)
}

/// Memoized search for factorizations of a monomial of degree `j·k` into
/// `j` monomials of degree `k`. The memo is keyed by the residual exponent
/// vector and lives only as long as one certificate run.
struct Decomposer<'a> {
    weights: &'a [u64],
    k: u64,
    budget: usize,
    memo: HashMap<Vec<u64>, bool>,
}

impl Decomposer<'_> {
    fn decomposable(&mut self, e: &[u64], pieces: u64) -> Result<bool> {
        if pieces <= 1 {
            return Ok(true);
        }
        if let Some(&known) = self.memo.get(e) {
            return Ok(known);
        }
        if self.memo.len() >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        let weights = self.weights;
        let k = self.k;
        let mut residual = e.to_vec();
        let found = for_each_divisor(weights, e, k, &mut |f| {
            for (r, (&x, &y)) in residual.iter_mut().zip(e.iter().zip(f)) {
                *r = x - y;
            }
            let r = residual.clone();
            self.decomposable(&r, pieces - 1)
        })?;
        self.memo.insert(e.to_vec(), found);
        Ok(found)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub multiple: u64,
    pub degree: u64,
    pub monomials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalGenerationCertificate {
    pub weights: WeightVector,
    pub k: u64,
    pub max_multiple: u64,
    pub checked: Vec<DegreeCheck>,
    /// First monomial, in basis order, that is not a product of degree-`k`
    /// monomials, with the multiple it was found at.
    pub counterexample: Option<(u64, Monomial)>,
    pub memo_entries: usize,
}

impl NormalGenerationCertificate {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn degree_u64(k: &BigUint) -> Result<u64> {
    k.to_u64().ok_or_else(|| Error::DegreeTooLarge(k.to_string()))
}

fn multiple_degree(m: u64, k: u64) -> Result<i64> {
    m.checked_mul(k)
        .and_then(|d| i64::try_from(d).ok())
        .ok_or_else(|| Error::DegreeTooLarge(format!("{m}*{k}")))
}

/// Checks, for every `m` in `2..=max_multiple`, that each monomial of degree
/// `m·k` is a product of `m` monomials of degree `k`.
pub fn is_normally_generated_upto(
    w: &WeightVector,
    k: &BigUint,
    max_multiple: u64,
) -> Result<NormalGenerationCertificate> {
    is_normally_generated_upto_with_budget(w, k, max_multiple, DEFAULT_BUDGET)
}

pub fn is_normally_generated_upto_with_budget(
    w: &WeightVector,
    k: &BigUint,
    max_multiple: u64,
    budget: usize,
) -> Result<NormalGenerationCertificate> {
    let expected = w.picard_generator_degree()?;
    if *k != expected {
        return Err(Error::InvalidK {
            given: k.to_string(),
            expected: expected.to_string(),
        });
    }
    if max_multiple < 2 {
        return Err(Error::InvalidMultiple(max_multiple, 2));
    }
    let k = degree_u64(k)?;
    let mut search = Decomposer {
        weights: w.weights(),
        k,
        budget,
        memo: HashMap::new(),
    };
    let mut checked = Vec::new();
    let mut counterexample = None;
    'multiples: for m in 2..=max_multiple {
        let degree = multiple_degree(m, k)?;
        let basis = monomial_basis(w, degree)?;
        for mono in &basis {
            if !search.decomposable(&mono.exponents, m)? {
                counterexample = Some((m, mono.clone()));
                break 'multiples;
            }
        }
        checked.push(DegreeCheck {
            multiple: m,
            degree: degree as u64,
            monomials: basis.len(),
        });
    }
    Ok(NormalGenerationCertificate {
        weights: w.clone(),
        k,
        max_multiple,
        checked,
        counterexample,
        memo_entries: search.memo.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCheck {
    pub index: usize,
    /// Number of degree-`m·k` monomials vanishing at the point.
    pub vanishing_monomials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationCertificate {
    pub weights: WeightVector,
    pub multiple: u64,
    pub k: u64,
    pub fixed_points: Vec<FixedPointCheck>,
    /// Fixed-point index and a vanishing monomial with no factor `f·g`,
    /// `deg f = k` vanishing at the point.
    pub counterexample: Option<(usize, Monomial)>,
    pub scope: String,
}

impl DominationCertificate {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For each torus-fixed point `p_i`, checks that every monomial of degree
/// `m·k` vanishing at `p_i` factors as `f·g` with `deg f = k`, `f` vanishing
/// at `p_i`, and `deg g = (m-1)·k`.
pub fn check_section_domination_at_fixed_points(
    w: &WeightVector,
    m: u64,
) -> Result<DominationCertificate> {
    w.require_isolated()?;
    if m < 1 {
        return Err(Error::InvalidMultiple(m, 1));
    }
    let k = degree_u64(&w.picard_generator_degree()?)?;
    let basis = monomial_basis(w, multiple_degree(m, k)?)?;
    let weights = w.weights();
    let mut fixed_points = Vec::with_capacity(w.len());
    let mut counterexample = None;
    'points: for i in 0..w.len() {
        let mut vanishing = 0;
        for mono in basis.iter().filter(|mono| !mono.is_pure_power_of(i)) {
            vanishing += 1;
            let split = for_each_divisor(weights, &mono.exponents, k, &mut |f| {
                Ok(!is_pure_power(f, i))
            })?;
            if !split {
                counterexample = Some((i, mono.clone()));
                break 'points;
            }
        }
        fixed_points.push(FixedPointCheck {
            index: i,
            vanishing_monomials: vanishing,
        });
    }
    Ok(DominationCertificate {
        weights: w.clone(),
        multiple: m,
        k,
        fixed_points,
        counterexample,
        scope: DOMINATION_SCOPE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    /// Nested loops over (e0, e1, e2, e3) with e0 + e1 + 2 e2 + 3 e3 = d.
    fn brute_force_1123(d: u64) -> usize {
        let mut count = 0;
        for e3 in 0..=d / 3 {
            for e2 in 0..=d / 2 {
                for e1 in 0..=d {
                    for e0 in 0..=d {
                        if e0 + e1 + 2 * e2 + 3 * e3 == d {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn basis_examples() {
        assert!(monomial_basis(&w(&[2, 3]), 1).unwrap().is_empty());
        let exps: Vec<Vec<u64>> = monomial_basis(&w(&[1, 1]), 2)
            .unwrap()
            .into_iter()
            .map(|m| m.exponents)
            .collect();
        assert_eq!(exps, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);

        assert_eq!(brute_force_1123(6), 23);
        let basis = monomial_basis(&w(&[1, 1, 2, 3]), 6).unwrap();
        assert_eq!(basis.len(), 23);
        assert!(basis.iter().all(|m| m.weighted_degree == 6
            && m.exponents[0] + m.exponents[1] + 2 * m.exponents[2] + 3 * m.exponents[3] == 6));
        assert!(basis.windows(2).all(|p| p[0].exponents > p[1].exponents));
    }

    #[test]
    fn dimension_examples() {
        let v = w(&[1, 1, 2, 3]);
        assert_eq!(h0_dimension(&v, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(h0_dimension(&v, 6).unwrap(), BigUint::from(23u32));
        // C(3 + 3, 3) for ordinary projective 3-space
        assert_eq!(
            h0_dimension(&w(&[1, 1, 1, 1]), 3).unwrap(),
            BigUint::from(20u32)
        );
        for d in 0..=20 {
            assert_eq!(
                h0_dimension(&v, d as i64).unwrap(),
                BigUint::from(brute_force_1123(d))
            );
        }
    }

    #[test]
    fn negative_degree_is_rejected() {
        assert_eq!(
            monomial_basis(&w(&[1, 2]), -1),
            Err(Error::NegativeDegree(-1))
        );
        assert_eq!(h0_dimension(&w(&[1, 2]), -3), Err(Error::NegativeDegree(-3)));
    }

    #[test]
    fn normal_generation_examples() {
        let cert =
            is_normally_generated_upto(&w(&[1, 1, 2, 3]), &BigUint::from(6u32), 3).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.checked.len(), 2);
        assert_eq!(cert.checked[0].degree, 12);

        let cert =
            is_normally_generated_upto(&w(&[1, 1, 1, 1]), &BigUint::from(1u32), 5).unwrap();
        assert!(cert.holds());
        // degree-5 part of C[x0..x3] has C(8, 3) = 56 monomials
        assert_eq!(cert.checked.last().unwrap().monomials, 56);

        let cert =
            is_normally_generated_upto(&w(&[1, 2, 3, 5]), &BigUint::from(30u32), 2).unwrap();
        assert!(cert.holds());
    }

    #[test]
    fn normal_generation_can_fail_for_non_generator_degree_inputs() {
        // In P(1,2,3), O(k) for the wrong k is refused outright.
        let err = is_normally_generated_upto(&w(&[1, 2, 3]), &BigUint::from(3u32), 2);
        assert!(matches!(err, Err(Error::InvalidK { .. })));
        let err = is_normally_generated_upto(&w(&[1, 2, 3]), &BigUint::from(6u32), 1);
        assert_eq!(err, Err(Error::InvalidMultiple(1, 2)));
        let err = is_normally_generated_upto(&w(&[2, 2, 3]), &BigUint::from(6u32), 2);
        assert!(matches!(err, Err(Error::NotWellFormed(_))));
    }

    #[test]
    fn decomposition_reports_a_counterexample() {
        // Weights (2, 3) have no monomial of degree 1.
        let mut search = Decomposer {
            weights: &[2, 3],
            k: 1,
            budget: DEFAULT_BUDGET,
            memo: HashMap::new(),
        };
        assert!(!search.decomposable(&[1, 0], 2).unwrap());

        let mut search = Decomposer {
            weights: &[1, 3],
            k: 4,
            budget: DEFAULT_BUDGET,
            memo: HashMap::new(),
        };
        assert!(search.decomposable(&[2, 2], 2).unwrap());
        assert!(search.decomposable(&[5, 1], 2).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let v = w(&[1, 1, 2, 3]);
        let err = is_normally_generated_upto_with_budget(&v, &BigUint::from(6u32), 4, 3);
        assert_eq!(err, Err(Error::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn domination_examples() {
        let cert = check_section_domination_at_fixed_points(&w(&[1, 1, 2, 3]), 2).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.fixed_points.len(), 4);
        assert_eq!(cert.scope, DOMINATION_SCOPE);

        for v in [w(&[1, 1, 2, 3]), w(&[1, 2, 3, 5]), w(&[1, 1, 1, 7])] {
            assert!(check_section_domination_at_fixed_points(&v, 1).unwrap().holds());
        }
        assert!(check_section_domination_at_fixed_points(&w(&[1, 1, 1, 2]), 3)
            .unwrap()
            .holds());
        assert!(matches!(
            check_section_domination_at_fixed_points(&w(&[1, 2, 3, 4]), 2),
            Err(Error::NotIsolated(_))
        ));
    }

    #[test]
    fn vanishing_counts_exclude_the_pure_power() {
        // P^1 in degree 3: four monomials, one of them a pure power at each point.
        let cert = check_section_domination_at_fixed_points(&w(&[1, 1]), 3).unwrap();
        assert!(cert.fixed_points.iter().all(|p| p.vanishing_monomials == 3));
        let cert = check_section_domination_at_fixed_points(&w(&[1, 1, 1]), 3).unwrap();
        assert!(cert.fixed_points.iter().all(|p| p.vanishing_monomials == 9));
    }
}
