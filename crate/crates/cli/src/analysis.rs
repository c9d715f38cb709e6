//! The end-to-end analysis pipeline behind `wps analyze`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use wps_core::hyperbolicity::{
    self, CorollaryBounds, HyperbolicityVerdict, ThetaReport, EPSILON_NOTE,
};
use wps_core::strata::{self, BoundaryDivisor, StratumInfo, LOCAL_MODEL};
use wps_core::weights::ReductionStep;
use wps_core::{Rational, Result, WeightVector};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    #[serde(flatten)]
    pub info: StratumInfo,
    pub label: String,
}

impl From<StratumInfo> for StratumRow {
    fn from(info: StratumInfo) -> Self {
        let label = info.label();
        StratumRow { info, label }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input_weights: Vec<u64>,
    pub well_formed: bool,
    pub reduction_steps: Vec<ReductionStep>,
    /// Well-formed representative; every later field refers to it.
    pub reduced_weights: WeightVector,
    pub dim: usize,
    #[serde(with = "decimal")]
    pub k: BigUint,
    pub isolated: bool,
    pub local_model: String,
    pub singular_strata: Vec<StratumRow>,
    pub boundary_divisors: Vec<BoundaryDivisor>,
    pub outside_boundary_threshold: Option<Rational>,
    pub theta_report: Option<ThetaReport>,
    pub corollary_bounds: Option<CorollaryBounds>,
    pub multiple: Option<u64>,
    pub canonical_coefficient: Option<Rational>,
    pub global_epsilon: Option<Rational>,
    pub verdicts: Vec<HyperbolicityVerdict>,
    pub warnings: Vec<String>,
    pub citations: Vec<String>,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

pub fn analyze(input: &WeightVector, m: Option<u64>) -> Result<AnalysisReport> {
    let (w, reduction_steps) = input.well_formize();
    let well_formed = reduction_steps.is_empty();
    let isolated = w.has_isolated_singularities()?;
    let mut warnings = Vec::new();
    if !well_formed {
        warnings.push(format!("input {input} is not well-formed; analysing the isomorphic {w}"));
    }

    let mut report = AnalysisReport {
        schema: SCHEMA_VERSION,
        input_weights: input.weights().to_vec(),
        well_formed,
        reduction_steps,
        dim: w.dim(),
        k: w.picard_generator_degree()?,
        isolated,
        local_model: LOCAL_MODEL.to_string(),
        singular_strata: strata::singular_locus(&w)?
            .into_iter()
            .map(StratumRow::from)
            .collect(),
        boundary_divisors: strata::boundary_divisors(&w),
        outside_boundary_threshold: None,
        theta_report: None,
        corollary_bounds: None,
        multiple: m,
        canonical_coefficient: None,
        global_epsilon: None,
        verdicts: Vec::new(),
        warnings,
        citations: Vec::new(),
        reduced_weights: w.clone(),
    };

    if !isolated {
        report
            .warnings
            .push("weights are not pairwise coprime; hyperbolicity thresholds need isolated singularities".into());
        return Ok(report);
    }
    if let Some(m) = m {
        report.canonical_coefficient = Some(hyperbolicity::canonical_coefficient(&w, m)?);
    }
    if w.dim() < 3 {
        report
            .warnings
            .push("dimension below 3; hyperbolicity thresholds need n >= 3".into());
        return Ok(report);
    }

    let theta = hyperbolicity::theta(&w)?;
    report.outside_boundary_threshold = Some(hyperbolicity::outside_boundary_threshold(&w)?);
    report.corollary_bounds = Some(hyperbolicity::corollary_bound(&w)?);
    report.warnings.extend(theta.warnings.iter().cloned());

    if let Some(m) = m {
        report.global_epsilon = Some(hyperbolicity::global_epsilon(&w, m)?);
        report
            .verdicts
            .push(hyperbolicity::outside_boundary_verdict(&w, m)?);
        report.verdicts.push(hyperbolicity::theta_verdict(&w, m)?);
        if w.len() == 4 {
            report
                .verdicts
                .push(hyperbolicity::classify_threefold(&w, m)?);
        }
        report.warnings.push(EPSILON_NOTE.to_string());
    }
    report.theta_report = Some(theta);

    let mut citations: Vec<String> = report.verdicts.iter().map(|v| v.citation.clone()).collect();
    citations.sort();
    citations.dedup();
    report.citations = citations;
    Ok(report)
}
