//! Report rendering. JSON output has sorted keys, exact rationals as
//! `{"num","den"}` strings and a top-level `"schema"` version. Text output is
//! aligned tables; any decimal shown next to a rational is marked approximate.

use std::fmt::Write;

use serde::Serialize;
use wps_core::hyperbolicity::{HyperbolicityVerdict, Regime, Status, ThetaReport};
use wps_core::Rational;

use crate::analysis::{AnalysisReport, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Serializes through `serde_json::Value`, whose maps are key-sorted.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    result: &'a T,
}

/// JSON for non-analysis commands: `{"schema", "command", "result"}`.
pub fn envelope_json<T: Serialize>(command: &str, result: &T) -> String {
    to_json(&Envelope {
        schema: SCHEMA_VERSION,
        command,
        result,
    })
}

pub fn parse(json: &str) -> serde_json::Result<AnalysisReport> {
    serde_json::from_str(json)
}

pub fn render(report: &AnalysisReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(report).into_bytes(),
        Format::Text => render_text(report).into_bytes(),
    }
}

pub fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("{r} (approx {:.4})", r.approx())
    }
}

pub fn status(s: Status) -> &'static str {
    match s {
        Status::Hyperbolic => "hyperbolic",
        Status::NotHyperbolic => "not hyperbolic",
        Status::Unknown => "unknown",
    }
}

pub fn regime(r: Regime) -> &'static str {
    match r {
        Regime::OutsideBoundary => "outside-boundary",
        Regime::Full => "full",
        Regime::ThreefoldTable => "threefold-table",
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let separator: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    line(separator.iter().map(String::as_str).collect());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn verdict_rows(verdicts: &[HyperbolicityVerdict]) -> String {
    let rows: Vec<Vec<String>> = verdicts
        .iter()
        .map(|v| {
            vec![
                regime(v.regime).to_string(),
                v.multiple.to_string(),
                status(v.status).to_string(),
                v.epsilon.as_ref().map(rational).unwrap_or_else(|| "-".into()),
                v.citation.clone(),
            ]
        })
        .collect();
    table(&["regime", "m", "status", "epsilon", "citation"], &rows)
}

pub fn theta_text(report: &ThetaReport) -> String {
    let mut out = String::new();
    writeln!(out, "Theta = {}", rational(&report.theta)).unwrap();
    writeln!(out, "minimal m = {}", report.m_min).unwrap();
    writeln!(out, "argmax = {:?}", report.argmax).unwrap();
    let rows: Vec<Vec<String>> = report
        .per_subset
        .iter()
        .map(|s| vec![format!("{:?}", s.subset), rational(&s.value)])
        .collect();
    out.push_str("per-subset thresholds (indices into input order):\n");
    out.push_str(&table(&["I", "Theta_I"], &rows));
    for w in &report.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    out
}

fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    writeln!(out, "input weights     {:?}", r.input_weights).unwrap();
    writeln!(out, "well-formed       {}", r.well_formed).unwrap();
    writeln!(out, "reduced weights   {}", r.reduced_weights).unwrap();
    writeln!(out, "dimension         {}", r.dim).unwrap();
    writeln!(out, "k                 {}", r.k).unwrap();
    writeln!(out, "isolated          {}", r.isolated).unwrap();
    out.push('\n');

    out.push_str("singular strata:\n");
    if r.singular_strata.is_empty() {
        out.push_str("(none)\n");
    } else {
        let rows: Vec<Vec<String>> = r
            .singular_strata
            .iter()
            .map(|s| {
                vec![
                    format!("{:?}", s.info.support),
                    s.info.order.to_string(),
                    format!("{:?}", s.info.raw_type),
                    s.label.clone(),
                ]
            })
            .collect();
        out.push_str(&table(&["I", "g", "raw type", "type"], &rows));
    }
    writeln!(out, "local model: {}", r.local_model).unwrap();
    out.push('\n');

    out.push_str("boundary divisors:\n");
    let rows: Vec<Vec<String>> = r
        .boundary_divisors
        .iter()
        .map(|d| vec![d.omitted_index.to_string(), format!("{:?}", d.sub_weights)])
        .collect();
    out.push_str(&table(&["omitted", "weights"], &rows));

    if let Some(t) = &r.outside_boundary_threshold {
        writeln!(out, "\noutside-boundary threshold {}", rational(t)).unwrap();
    }
    if let Some(b) = &r.corollary_bounds {
        writeln!(out, "uniform bound 2n-1          {}", rational(&b.general)).unwrap();
        if let Some(x) = &b.refined {
            writeln!(out, "refined bound 3n/2-1        {}", rational(x)).unwrap();
        }
        if let Some(x) = &b.exact {
            writeln!(out, "closed form n-1+n/t         {}", rational(x)).unwrap();
        }
    }
    if let Some(t) = &r.theta_report {
        out.push('\n');
        let mut quiet = t.clone();
        quiet.warnings.clear();
        out.push_str(&theta_text(&quiet));
    }
    if let Some(m) = r.multiple {
        out.push('\n');
        if let Some(c) = &r.canonical_coefficient {
            writeln!(out, "K_X = ({}) H|_X at m = {m}", rational(c)).unwrap();
        }
        if let Some(e) = &r.global_epsilon {
            writeln!(out, "m - Theta = {}", rational(e)).unwrap();
        }
        if !r.verdicts.is_empty() {
            out.push_str(&verdict_rows(&r.verdicts));
        }
    }
    if !r.warnings.is_empty() {
        out.push('\n');
        for w in &r.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use wps_core::WeightVector;

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn empty_singular_locus_renders_as_empty_array() {
        let r = analyze(&w(&[1, 1, 1, 1]), None).unwrap();
        let json = String::from_utf8(render(&r, Format::Json)).unwrap();
        assert!(json.contains("\"singular_strata\": []"));
        assert!(json.contains("\"schema\": 1"));
    }

    #[test]
    fn theta_uses_exact_wire_form() {
        let r = analyze(&w(&[1, 1, 2, 3, 5]), Some(3)).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&render(&r, Format::Json)).unwrap();
        let theta = &value["theta_report"]["theta"];
        assert_eq!(theta.to_string(), r#"{"den":"5","num":"12"}"#);
    }

    #[test]
    fn json_keys_are_sorted_and_output_is_stable() {
        let r = analyze(&w(&[1, 2, 3, 5, 7]), Some(2)).unwrap();
        let a = render(&r, Format::Json);
        let b = render(&analyze(&w(&[1, 2, 3, 5, 7]), Some(2)).unwrap(), Format::Json);
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        let top: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = top.clone();
        sorted.sort();
        assert_eq!(top, sorted);
    }

    #[test]
    fn text_marks_decimals_as_approximate() {
        let r = analyze(&w(&[1, 1, 2, 3, 5]), Some(3)).unwrap();
        let text = String::from_utf8(render(&r, Format::Text)).unwrap();
        assert!(text.contains("Theta = 12/5 (approx 2.4000)"));
        assert!(text.contains("hyperbolic"));
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bbb"], &[vec!["xxxx".into(), "y".into()]]);
        assert_eq!(t, "a     bbb\n----  ---\nxxxx  y\n");
    }
}
