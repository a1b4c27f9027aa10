//! The `archimedes` command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad arguments,
//! 3 a comparison was still overlapping at the precision cap.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::circuits::{circuit_measures, random_circuit, CircuitRecord, MeasuresRecord};
use crate::error::Error;
use crate::interval::IntervalScalar;
use crate::interval::Verdict;
use crate::polygons::{
    pi_bounds, pi_digits_with, scheme_measures, DigitsConfig, MeasuresRow, RegularScheme,
};
use crate::rational::sweep_rational;
use crate::suites::{run_suite, Suite, SuiteConfig};
use crate::trig::{arc_measure, sandwich_report, SANDWICH_CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "archimedes",
    version,
    about = "Certified polygon enclosures of pi and the laws behind them"
)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "ARCHIMEDES_PRECISION")]
    precision: Option<u32>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "ARCHIMEDES_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measures of g(m, n) and G(m, n) with the resulting bracket on pi.
    Bounds {
        #[arg(long, default_value_t = 6)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certified decimal digits of pi, the leading 3 included.
    Digits {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// The doubling table from the seed polygon to depth `max-m`.
    Archimedes {
        #[arg(long, default_value_t = 6)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        max_m: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Generate a random circuit, or re-measure a fixture.
    Circuit {
        /// Minimum number of points.
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Every chord is certified below this decimal.
        #[arg(long, default_value = "1.1")]
        mesh_cap: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Fixture to re-measure; exits 1 if its stored measures differ.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// CSV of geometric sine, cosine and the sandwich bracket.
    Trig {
        /// Decimal arguments.
        #[arg(long)]
        theta: Vec<String>,
        /// Arguments as arcs `num/den` of the circle.
        #[arg(long)]
        fraction: Vec<String>,
        /// Arguments 2^−k for k = 1..=powers.
        #[arg(long)]
        powers: Option<u32>,
    },
    /// Realize every coprime (k, N) with N ≤ max-n and check their order.
    SweepRational {
        #[arg(long, default_value_t = 24)]
        max_n: u32,
        #[arg(long, default_value_t = 4096)]
        cap: u32,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Precision cap for escalation.
    #[arg(long, default_value_t = 4096)]
    cap: u32,
    #[arg(long, default_value_t = 25)]
    max_depth: u32,
    #[arg(long, default_value_t = 24)]
    max_denominator: u32,
    #[arg(long, default_value_t = 100)]
    circuits: usize,
    #[arg(long, default_value_t = 8)]
    max_mesh_exp: u32,
    #[arg(long, default_value_t = 16)]
    max_theta_exp: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

/// Outcome of a command: the exit code and the report text.
struct Outcome {
    code: i32,
    report: String,
    diagnostics: String,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome {
            code: EXIT_OK,
            report,
            diagnostics: String::new(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InconclusivePrecision(_) | Error::BisectionStall => EXIT_INCONCLUSIVE,
        Error::BadDecimal(_)
        | Error::UnsupportedSeed(_)
        | Error::InvalidChord
        | Error::InvalidEdge
        | Error::PreconditionViolation(_)
        | Error::DomainViolation(_)
        | Error::NonCoprime { .. }
        | Error::ChordTooLong { .. }
        | Error::FractionOutOfRange
        | Error::ThetaOutOfRange => EXIT_USAGE,
        _ => EXIT_VIOLATION,
    }
}

/// Parse `args` (program name first), run the command and write the report
/// to `out` or the `--output` file. Returns the exit code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {} worker threads: {e}", cli.jobs);
            return EXIT_USAGE;
        }
    };
    let outcome = pool.install(|| dispatch(&cli)).unwrap_or_else(|e| Outcome {
        code: exit_code(&e),
        report: String::new(),
        diagnostics: format!("error: {e}\n"),
    });
    let _ = err.write_all(outcome.diagnostics.as_bytes());
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.report),
        None => out.write_all(outcome.report.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct BoundsReport {
    #[serde(flatten)]
    row: MeasuresRow,
    pi_lo: String,
    pi_hi: String,
}

const MEASURES_CSV_HEADER: &str = "n,m,precision,p_lo,p_hi,P_lo,P_hi,a_lo,a_hi,A_lo,A_hi,h_hi";

fn measures_csv(r: &MeasuresRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.n,
        r.m,
        r.precision,
        r.p_lo,
        r.p_hi,
        r.cap_p_lo,
        r.cap_p_hi,
        r.a_lo,
        r.a_hi,
        r.cap_a_lo,
        r.cap_a_hi,
        r.h_hi
    )
}

fn dispatch(cli: &Cli) -> crate::error::Result<Outcome> {
    let precision = cli.precision.unwrap_or(128);
    match &cli.command {
        Command::Bounds { n, m, format } => {
            let scheme = RegularScheme::new(*n, *m)?;
            let measures = scheme_measures(scheme, precision)?;
            let bounds = pi_bounds(scheme, precision)?;
            let (pi_lo, pi_hi) = bounds.to_decimal_pair();
            let report = BoundsReport {
                row: MeasuresRow::new(scheme, precision, &measures),
                pi_lo,
                pi_hi,
            };
            Ok(Outcome::ok(match format {
                Format::Json => json_line(&report),
                Format::Csv => format!(
                    "{MEASURES_CSV_HEADER},pi_lo,pi_hi\n{},{},{}\n",
                    measures_csv(&report.row),
                    report.pi_lo,
                    report.pi_hi
                ),
                Format::Text => format!(
                    "{}-gon (n={n}, m={m}, {precision} bits)\n{} < pi < {}\n",
                    scheme.edge_count(),
                    report.pi_lo,
                    report.pi_hi
                ),
            }))
        }
        Command::Digits { count } => {
            let config = DigitsConfig::default();
            Ok(Outcome::ok(format!(
                "{}\n",
                pi_digits_with(*count, &config)?
            )))
        }
        Command::Archimedes { n, max_m, format } => {
            let mut report = String::new();
            match format {
                Format::Csv => report.push_str(&format!("{MEASURES_CSV_HEADER}\n")),
                Format::Text => report.push_str(&format!(
                    "{:>8}  {:<24} {:<24}\n",
                    "sides", "p/2 (lower)", "P/2 (upper)"
                )),
                Format::Json => {}
            }
            for m in 0..=*max_m {
                let scheme = RegularScheme::new(*n, m)?;
                let measures = scheme_measures(scheme, precision)?;
                let row = MeasuresRow::new(scheme, precision, &measures);
                match format {
                    Format::Json => report.push_str(&json_line(&row)),
                    Format::Csv => report.push_str(&format!("{}\n", measures_csv(&row))),
                    Format::Text => {
                        let half = |x: &IntervalScalar| x.mul_pow2(-1).with_precision(precision);
                        let lower = half(&measures.perimeter_in).lo_decimal();
                        let upper = half(&measures.perimeter_circ).hi_decimal();
                        report.push_str(&format!(
                            "{:>8}  {:<24} {:<24}\n",
                            scheme.edge_count(),
                            truncate(&lower, 22),
                            truncate(&upper, 22)
                        ));
                    }
                }
            }
            Ok(Outcome::ok(report))
        }
        Command::Verify(args) => verify(args, cli.precision),
        Command::Circuit {
            k,
            mesh_cap,
            seed,
            input,
        } => circuit(*k, mesh_cap, *seed, input.as_ref(), precision),
        Command::Trig {
            theta,
            fraction,
            powers,
        } => trig(theta, fraction, *powers, precision),
        Command::SweepRational { max_n, cap } => {
            let sweep = sweep_rational(*max_n, cli.precision.unwrap_or(64), *cap)?;
            let report: String = sweep.rows.iter().map(json_line).collect();
            let ordered = sweep
                .inscribed
                .iter()
                .all(|c| c.verdict == Verdict::CertainlyLess)
                && sweep
                    .circumscribed
                    .iter()
                    .all(|c| c.verdict == Verdict::CertainlyGreater)
                && sweep.rows.iter().all(|r| r.winding_checked);
            let code = if ordered { EXIT_OK } else { EXIT_VIOLATION };
            let diagnostics = format!(
                "{} lengths certified in order at {} bits\n",
                sweep.rows.len(),
                sweep.precision
            );
            Ok(Outcome {
                code,
                report,
                diagnostics: if ordered {
                    diagnostics
                } else {
                    "sweep order violated\n".into()
                },
            })
        }
    }
}

fn truncate(s: &str, len: usize) -> &str {
    &s[..s.len().min(len)]
}

fn verify(args: &VerifyArgs, precision: Option<u32>) -> crate::error::Result<Outcome> {
    let config = SuiteConfig {
        samples: args.samples,
        seed: args.seed,
        precision,
        cap: args.cap,
        max_depth: args.max_depth,
        max_denominator: args.max_denominator,
        circuits: args.circuits,
        max_mesh_exp: args.max_mesh_exp,
        max_theta_exp: args.max_theta_exp,
    };
    let report = run_suite(args.suite, &config)?;
    let summary = format!(
        "{}: {} checks, {} violated, {} inconclusive (seed {})\n",
        args.suite,
        report.rows.len(),
        report.violations(),
        report.inconclusive(),
        args.seed
    );
    let mut diagnostics: String = report
        .notes
        .iter()
        .map(|n| format!("note: {n}\n"))
        .collect();
    let body = match args.format {
        Format::Json => report.rows.iter().map(json_line).collect(),
        Format::Csv => {
            let mut s = String::from(
                "suite,check,sample_seed,m,n,verdict,expected,precision_used,status\n",
            );
            for r in &report.rows {
                s.push_str(&format!(
                    "{},\"{}\",{},{},{},{},{},{},{}\n",
                    r.suite,
                    r.check,
                    r.sample_seed.map(|v| v.to_string()).unwrap_or_default(),
                    r.m.map(|v| v.to_string()).unwrap_or_default(),
                    r.n.map(|v| v.to_string()).unwrap_or_default(),
                    r.verdict,
                    r.expected,
                    r.precision_used,
                    serde_json::to_value(r.status)
                        .expect("status")
                        .as_str()
                        .expect("string")
                ));
            }
            s
        }
        Format::Text => summary.clone(),
    };
    if args.format != Format::Text {
        diagnostics.push_str(&summary);
    }
    let code = if report.violations() > 0 {
        EXIT_VIOLATION
    } else if report.inconclusive() > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        code,
        report: body,
        diagnostics,
    })
}

fn circuit(
    k: usize,
    mesh_cap: &str,
    seed: u64,
    input: Option<&PathBuf>,
    precision: u32,
) -> crate::error::Result<Outcome> {
    if let Some(path) = input {
        let text = fs::read_to_string(path).map_err(|e| {
            Error::PreconditionViolation(format!("cannot read {}: {e}", path.display()))
        })?;
        let stored: CircuitRecord = serde_json::from_str(&text).map_err(|e| {
            Error::PreconditionViolation(format!("bad fixture {}: {e}", path.display()))
        })?;
        let c = stored.to_circuit()?;
        let fresh = CircuitRecord::new(&c, &circuit_measures(&c)?);
        let matches = MeasuresRecord::from(&circuit_measures(&c)?) == stored.measures;
        let code = if matches { EXIT_OK } else { EXIT_VIOLATION };
        let diagnostics = if matches {
            String::new()
        } else {
            "stored measures differ from recomputed ones\n".into()
        };
        return Ok(Outcome {
            code,
            report: json_line(&fresh),
            diagnostics,
        });
    }
    if k < 3 {
        return Err(Error::PreconditionViolation(format!(
            "a circuit needs k ≥ 3, got {k}"
        )));
    }
    let cap = IntervalScalar::from_decimal(mesh_cap, precision)?;
    if !cap.is_certainly_positive() {
        return Err(Error::PreconditionViolation(
            "mesh cap must be positive".into(),
        ));
    }
    let c = random_circuit(k, &cap, seed, precision)?;
    Ok(Outcome::ok(json_line(&CircuitRecord::new(
        &c,
        &circuit_measures(&c)?,
    ))))
}

fn trig(
    thetas: &[String],
    fractions: &[String],
    powers: Option<u32>,
    precision: u32,
) -> crate::error::Result<Outcome> {
    let mut args = Vec::new();
    for t in thetas {
        args.push(IntervalScalar::from_decimal(t, precision)?);
    }
    for f in fractions {
        let parsed = f.split_once('/').and_then(|(a, b)| {
            Some((a.trim().parse::<u64>().ok()?, b.trim().parse::<u64>().ok()?))
        });
        let (num, den) = parsed
            .ok_or_else(|| Error::PreconditionViolation(format!("expected num/den, got {f:?}")))?;
        args.push(arc_measure(num, den, precision)?.theta);
    }
    for k in 1..=powers.unwrap_or(0) {
        args.push(IntervalScalar::point(
            crate::interval::Dyadic::pow2(-i64::from(k)),
            precision,
        ));
    }
    if args.is_empty() {
        return Err(Error::PreconditionViolation(
            "give --theta, --fraction or --powers".into(),
        ));
    }
    let mut report = format!("{SANDWICH_CSV_HEADER}\n");
    let mut certified = true;
    for theta in &args {
        let r = sandwich_report(theta, precision)?;
        certified &= r.holds();
        report.push_str(&r.csv_row());
        report.push('\n');
    }
    let code = if certified {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    Ok(Outcome {
        code,
        report,
        diagnostics: String::new(),
    })
}

/// Run with the process arguments and standard streams.
pub fn main_with_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    execute(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("archimedes").chain(args.iter().copied());
        let code = execute(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&[]).0, EXIT_USAGE);
        assert_eq!(run(&["bounds", "--n", "x"]).0, EXIT_USAGE);
        assert_eq!(run(&["verify", "nope"]).0, EXIT_USAGE);
        assert_eq!(run(&["bounds", "--n", "5"]).0, EXIT_USAGE);
        assert_eq!(run(&["trig"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sweep-rational"));
    }

    #[test]
    fn digits() {
        let (code, out, _) = run(&["digits", "--count", "5"]);
        assert_eq!((code, out.as_str()), (EXIT_OK, "3.1415\n"));
    }

    #[test]
    fn bounds_formats() {
        let (code, out, _) = run(&["bounds", "--precision", "96", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("n,m,precision,p_lo"));
        let (_, text, _) = run(&["bounds", "--format", "text"]);
        assert!(text.starts_with("96-gon"));
    }

    #[test]
    fn inconclusive_trig_exits_three() {
        let (code, _, _) = run(&["trig", "--theta", "0.001", "--precision", "16"]);
        assert_eq!(code, EXIT_INCONCLUSIVE);
    }
}
