//! Command-line front end: argument parsing, subcommand dispatch and exit codes.
//!
//! Exit codes: `0` success, `1` invalid input, `2` a `verify` run found
//! violations outside the claim's known exceptions.

pub mod analysis;
pub mod render;

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use wps_core::search::{SearchReport, Searcher};
use wps_core::{hyperbolicity, sections, strata, Error, WeightVector};

use crate::render::{envelope_json, rational, table, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VIOLATIONS: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "wps", version, about = "Weighted projective space invariants and hyperbolicity bounds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "WPS_FORMAT", default_value = "text")]
    format: Format,
    /// Worker threads for `verify` (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct WeightsArg {
    /// Weights, comma- or space-separated, e.g. `1,1,2,3`.
    #[arg(long, num_args = 1.., required = true)]
    weights: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report: strata, boundary, thresholds, verdicts.
    Analyze {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Stratified threshold Theta and the per-subset table.
    Theta {
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// All toric strata with their quotient types.
    Strata {
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// Dimensions of H^0(O(d)) for d = 0..=max.
    Hilbert {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
        max: i64,
    },
    /// Certify that O(k) is generated in degree one up to a multiple.
    Normgen {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long = "max-m", default_value_t = 3)]
        max_m: u64,
    },
    /// Check section domination of mO(k) at the torus-fixed points.
    Domination {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long, default_value_t = 2)]
        m: u64,
    },
    /// Threefold classification table.
    Classify3 {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        m: u64,
    },
    /// Exhaustive verification of a supporting inequality.
    Verify {
        /// Add a `meta` object with the wall-clock time to the output.
        #[arg(long, global = true)]
        timings: bool,
        #[command(subcommand)]
        claim: Claim,
    },
}

#[derive(Subcommand, Debug)]
enum Claim {
    /// sum(a) < prod(a) for 3-fold weights outside (1,1,1,t), (1,1,2,3).
    SumProduct {
        #[arg(long, default_value_t = 30)]
        max: u64,
    },
    /// Uniform bounds on Theta.
    Theta {
        #[arg(long, default_value_t = 5)]
        length: usize,
        #[arg(long, default_value_t = 15)]
        max: u64,
    },
    /// Positivity of the canonical degree of boundary curves.
    Boundary {
        #[arg(long, default_value_t = 20)]
        max: u64,
        #[arg(long, default_value_t = 2)]
        m: u64,
    },
    /// Normal generation for 3-fold weights with product <= max.
    Normgen {
        #[arg(long, default_value_t = 60)]
        max: u64,
        #[arg(long = "max-m", default_value_t = 3)]
        max_m: u64,
    },
    /// Section domination for 3-fold weights with product <= max.
    Domination {
        #[arg(long, default_value_t = 60)]
        max: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
        m: Vec<u64>,
    },
}

/// Failure of a subcommand, rendered to stderr.
#[derive(Debug)]
enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn parse_weights(arg: &WeightsArg) -> Result<WeightVector, Failure> {
    let raw: Vec<i64> = arg
        .weights
        .iter()
        .flat_map(|s| s.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| Failure::Input(format!("InvalidWeights: `{s}` is not an integer")))
        })
        .collect::<Result<_, _>>()?;
    Ok(WeightVector::validate(&raw)?)
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32), Failure> {
    let json = cli.format == Format::Json;
    let text = match &cli.command {
        Command::Analyze { weights, m } => {
            let report = analysis::analyze(&parse_weights(weights)?, *m)?;
            String::from_utf8(render::render(&report, cli.format)).expect("utf-8 output")
        }
        Command::Theta { weights } => {
            let report = hyperbolicity::theta(&parse_weights(weights)?)?;
            if json {
                envelope_json("theta", &report)
            } else {
                render::theta_text(&report)
            }
        }
        Command::Strata { weights } => {
            let all = strata::enumerate_strata(&parse_weights(weights)?)?;
            if json {
                let rows: Vec<analysis::StratumRow> = all.into_iter().map(Into::into).collect();
                envelope_json("strata", &rows)
            } else {
                let rows: Vec<Vec<String>> = all
                    .iter()
                    .map(|s| {
                        vec![
                            format!("{:?}", s.support),
                            s.order.to_string(),
                            if s.is_singular() { "singular" } else { "smooth" }.to_string(),
                            s.label(),
                        ]
                    })
                    .collect();
                table(&["I", "g", "kind", "type"], &rows)
            }
        }
        Command::Hilbert { weights, max } => {
            let w = parse_weights(weights)?;
            if *max < 0 {
                return Err(Error::NegativeDegree(*max).into());
            }
            let dims = (0..=*max)
                .map(|d| sections::h0_dimension(&w, d).map(|h| (d, h)))
                .collect::<Result<Vec<(i64, BigUint)>, _>>()?;
            if json {
                let rows: Vec<(i64, String)> =
                    dims.iter().map(|(d, h)| (*d, h.to_string())).collect();
                envelope_json("hilbert", &rows)
            } else {
                let rows: Vec<Vec<String>> = dims
                    .iter()
                    .map(|(d, h)| vec![d.to_string(), h.to_string()])
                    .collect();
                table(&["d", "h0"], &rows)
            }
        }
        Command::Normgen { weights, max_m } => {
            let w = parse_weights(weights)?;
            let k = w.picard_generator_degree()?;
            let cert = sections::is_normally_generated_upto(&w, &k, *max_m)?;
            if json {
                envelope_json("normgen", &cert)
            } else {
                let mut s = String::new();
                let rows: Vec<Vec<String>> = cert
                    .checked
                    .iter()
                    .map(|c| vec![c.multiple.to_string(), c.degree.to_string(), c.monomials.to_string()])
                    .collect();
                s.push_str(&table(&["m", "degree", "monomials"], &rows));
                match &cert.counterexample {
                    None => writeln!(s, "O({k}) generated in degree 1 up to m = {max_m}").unwrap(),
                    Some((m, mono)) => writeln!(
                        s,
                        "counterexample at m = {m}: {:?} is not a product of degree-{k} monomials",
                        mono.exponents
                    )
                    .unwrap(),
                }
                s
            }
        }
        Command::Domination { weights, m } => {
            let cert = sections::check_section_domination_at_fixed_points(&parse_weights(weights)?, *m)?;
            if json {
                envelope_json("domination", &cert)
            } else {
                let mut s = String::new();
                let rows: Vec<Vec<String>> = cert
                    .fixed_points
                    .iter()
                    .map(|p| vec![p.index.to_string(), p.vanishing_monomials.to_string()])
                    .collect();
                s.push_str(&table(&["fixed point", "vanishing monomials"], &rows));
                match &cert.counterexample {
                    None => writeln!(s, "section domination holds for m = {m}").unwrap(),
                    Some((i, mono)) => {
                        writeln!(s, "counterexample at point {i}: {:?}", mono.exponents).unwrap()
                    }
                }
                writeln!(s, "scope: {}", cert.scope).unwrap();
                s
            }
        }
        Command::Classify3 { weights, m } => {
            let verdict = hyperbolicity::classify_threefold(&parse_weights(weights)?, *m)?;
            if json {
                envelope_json("classify3", &verdict)
            } else {
                render::verdict_rows(std::slice::from_ref(&verdict))
            }
        }
        Command::Verify { timings, claim } => {
            let searcher = Searcher::new(cli.jobs);
            let report = match claim {
                Claim::SumProduct { max } => searcher.verify_sum_product_inequality(*max)?,
                Claim::Theta { length, max } => {
                    if *length < 4 {
                        return Err(Error::DimensionTooSmall {
                            dim: length.saturating_sub(1),
                            required: 3,
                        }
                        .into());
                    }
                    searcher.verify_theta_bounds(*length, *max)?
                }
                Claim::Boundary { max, m } => searcher.verify_boundary_positivity(*max, *m)?,
                Claim::Normgen { max, max_m } => searcher.verify_normal_generation(*max, *max_m)?,
                Claim::Domination { max, m } => searcher.verify_section_domination(*max, m)?,
            };
            let code = if report.has_unexpected() {
                EXIT_VIOLATIONS
            } else {
                EXIT_OK
            };
            let body = if json {
                verify_json(&report, *timings)
            } else {
                verify_text(&report, *timings)
            };
            return Ok((body, code));
        }
    };
    Ok((text, EXIT_OK))
}

fn verify_json(report: &SearchReport, timings: bool) -> String {
    if !timings {
        return envelope_json("verify", report);
    }
    let mut value = serde_json::to_value(serde_json::json!({
        "schema": analysis::SCHEMA_VERSION,
        "command": "verify",
        "result": report,
    }))
    .expect("report serializes");
    value["meta"] = serde_json::json!({ "elapsed_ms": report.elapsed.as_millis() as u64 });
    render::to_json(&value)
}

fn verify_text(report: &SearchReport, timings: bool) -> String {
    let mut s = String::new();
    let claim = serde_json::to_value(report.claim_id).expect("claim id serializes");
    writeln!(s, "claim      {}", claim.as_str().unwrap_or_default()).unwrap();
    writeln!(s, "checked    {} tuples", report.checked_count).unwrap();
    let unexpected = report.unexpected().count();
    writeln!(
        s,
        "violations {} ({} expected, {} unexpected)",
        report.violations.len(),
        report.violations.len() - unexpected,
        unexpected
    )
    .unwrap();
    if !report.violations.is_empty() {
        let rows: Vec<Vec<String>> = report
            .violations
            .iter()
            .map(|v| {
                vec![
                    format!("{:?}", v.weights),
                    v.detail.clone(),
                    rational(&v.lhs),
                    rational(&v.rhs),
                    if v.expected { "expected" } else { "UNEXPECTED" }.to_string(),
                ]
            })
            .collect();
        s.push_str(&table(&["weights", "inequality", "lhs", "rhs", ""], &rows));
    }
    if !report.tight_cases.is_empty() {
        let rows: Vec<Vec<String>> = report
            .tight_cases
            .iter()
            .map(|c| vec![format!("{:?}", c.weights), c.detail.clone(), rational(&c.value)])
            .collect();
        s.push_str("tight cases:\n");
        s.push_str(&table(&["weights", "bound", "value"], &rows));
    }
    if timings {
        writeln!(s, "elapsed    {:?}", report.elapsed).unwrap();
    }
    s
}
