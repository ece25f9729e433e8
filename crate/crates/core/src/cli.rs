//! The `stringy` command line.
//!
//! Exit codes: `0` success, `1` internal error, `2` invalid input (including
//! out-of-range `n`), `3` the polynomiality methods disagreed.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{cyclo_factor, Poly};
use crate::goettsche::goettsche_series;
use crate::goettsche::SurfaceBetti;
use crate::strata::{bundle_structure_report, stratum_poly, BundleReport, StratumId};
use crate::stringy::{
    common_denominator, numerator_n, verdict_with, Verdict, VerdictOptions,
};

pub const SCHEMA: u32 = 1;

/// Environment variable bounding the number of worker threads in `sweep`.
pub const THREADS_ENV: &str = "STRINGY_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "stringy",
    version,
    about = "Exact polynomiality test for the stringy E-function of M_{2n}"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Fold the D2 stratum into S(z) for the direct method.
    #[arg(long, global = true)]
    pub include_d2: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// P(J^[n]; z) for n = 1..=K.
    Goettsche {
        #[arg(long)]
        n: usize,
    },
    /// E-polynomial of one stratum (`D123`, `D2o`, ...).
    Stratum {
        #[arg(long)]
        id: StratumId,
        #[arg(long)]
        n: usize,
    },
    /// Fiber towers and dimension bookkeeping of every stratum.
    Bundle {
        #[arg(long)]
        n: usize,
    },
    /// N(z) with its cyclotomic factorization.
    Numerator {
        #[arg(long)]
        n: usize,
    },
    /// Run all three polynomiality methods for one n.
    Verdict {
        #[arg(long)]
        n: usize,
    },
    /// Verdicts for a range of n, one line each plus a summary.
    Sweep {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoettscheEntry {
    pub n: usize,
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoettscheReport {
    pub schema: u32,
    pub entries: Vec<GoettscheEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub schema: u32,
    pub n: usize,
    pub id: StratumId,
    pub value: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloEntry {
    pub d: usize,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumeratorReport {
    pub schema: u32,
    pub n: usize,
    pub numerator: Poly,
    pub denominator: Poly,
    /// `Phi_d(z)` factors of `N(z)`.
    pub cyclotomic_factors: Vec<CycloEntry>,
    /// `N(z)` divided by its cyclotomic part.
    pub cofactor: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub schema: u32,
    pub from: usize,
    pub to: usize,
    pub count: usize,
    pub not_polynomial: usize,
    pub polynomial_at: Vec<usize>,
}

/// Failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidN { .. } | Error::InvalidArgument(_) => 2,
            Error::MethodDisagreement { .. } => 3,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: 1,
            message: format!("i/o error: {e}"),
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report serializes")
}

fn check_n(n: usize, min: usize) -> Result<(), CliError> {
    if n < min {
        return Err(Error::InvalidN { n, min }.into());
    }
    Ok(())
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let k: usize = v.parse().map_err(|_| CliError {
            code: 2,
            message: format!("{THREADS_ENV} must be a positive integer, got `{v}`"),
        })?;
        builder = builder.num_threads(k.max(1));
    }
    builder.build().map_err(|e| CliError {
        code: 1,
        message: format!("cannot start worker threads: {e}"),
    })
}

fn write_verdict_text(out: &mut dyn Write, v: &Verdict) -> io::Result<()> {
    writeln!(out, "{}", v.summary_line())?;
    for m in &v.methods {
        writeln!(out, "  {:<10} {:?}: {}", m.method.to_string(), m.outcome, m.detail)?;
    }
    if let Some(w) = &v.witness {
        writeln!(out, "  residue mod Phi_{}(t)^{}: {}", w.cyclotomic_d, w.multiplicity, w.residue_poly)?;
    }
    Ok(())
}

/// Execute a parsed command line, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = VerdictOptions {
        include_d2: cli.include_d2,
        ..VerdictOptions::default()
    };
    match cli.command {
        Command::Goettsche { n } => {
            check_n(n, 1)?;
            let series = goettsche_series(SurfaceBetti::ABELIAN, n)?;
            let entries: Vec<GoettscheEntry> = (1..=n)
                .map(|k| GoettscheEntry {
                    n: k,
                    poly: series.coeff(k).clone(),
                })
                .collect();
            match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json(&GoettscheReport {
                        schema: SCHEMA,
                        entries
                    })
                )?,
                Format::Text => {
                    for e in entries {
                        writeln!(out, "n={}: {}", e.n, e.poly)?;
                    }
                }
            }
        }
        Command::Stratum { id, n } => {
            check_n(n, 2)?;
            let value = stratum_poly(id, n)?;
            match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json(&StratumReport {
                        schema: SCHEMA,
                        n,
                        id,
                        value
                    })
                )?,
                Format::Text => writeln!(out, "E({id}) at n={n}: {value}")?,
            }
        }
        Command::Bundle { n } => {
            check_n(n, 2)?;
            let report: BundleReport = bundle_structure_report(n)?;
            match cli.format {
                Format::Json => writeln!(out, "{}", json(&report))?,
                Format::Text => write!(out, "{report}")?,
            }
        }
        Command::Numerator { n } => {
            check_n(n, 2)?;
            let numerator = numerator_n(n)?;
            let f = cyclo_factor(&numerator).map_err(Error::from)?;
            let report = NumeratorReport {
                schema: SCHEMA,
                n,
                denominator: common_denominator(n)?,
                cyclotomic_factors: f
                    .factors
                    .iter()
                    .map(|(&d, &multiplicity)| CycloEntry { d, multiplicity })
                    .collect(),
                cofactor: f.remainder.clone(),
                numerator,
            };
            match cli.format {
                Format::Json => writeln!(out, "{}", json(&report))?,
                Format::Text => {
                    writeln!(out, "N(z) at n={n}: {}", report.numerator)?;
                    writeln!(out, "denominator: {}", report.denominator)?;
                    let parts: Vec<String> = report
                        .cyclotomic_factors
                        .iter()
                        .map(|c| match c.multiplicity {
                            1 => format!("Phi_{}", c.d),
                            k => format!("Phi_{}^{k}", c.d),
                        })
                        .collect();
                    writeln!(out, "cyclotomic part: {}", parts.join(" * "))?;
                    writeln!(out, "cofactor: {}", report.cofactor)?;
                }
            }
        }
        Command::Verdict { n } => {
            check_n(n, 2)?;
            let v = verdict_with(n, opts)?;
            match cli.format {
                Format::Json => writeln!(out, "{}", v.to_json())?,
                Format::Text => write_verdict_text(out, &v)?,
            }
        }
        Command::Sweep { from, to } => {
            check_n(from, 2)?;
            if to < from {
                return Err(Error::InvalidArgument(format!("empty range {from}..={to}")).into());
            }
            let pool = thread_pool()?;
            let results: Vec<Result<Verdict, Error>> =
                pool.install(|| (from..=to).into_par_iter().map(|n| verdict_with(n, opts)).collect());
            let mut first_err: Option<CliError> = None;
            let mut summary = SweepSummary {
                schema: SCHEMA,
                from,
                to,
                count: 0,
                not_polynomial: 0,
                polynomial_at: Vec::new(),
            };
            for (n, r) in (from..=to).zip(results) {
                match r {
                    Ok(v) => {
                        summary.count += 1;
                        if v.is_polynomial {
                            summary.polynomial_at.push(n);
                        } else {
                            summary.not_polynomial += 1;
                        }
                        match cli.format {
                            Format::Json => writeln!(out, "{}", v.to_json())?,
                            Format::Text => writeln!(out, "{}", v.summary_line())?,
                        }
                    }
                    Err(e) => {
                        eprintln!("n={n}: {e}");
                        let e = CliError::from(e);
                        if first_err.as_ref().is_none_or(|f| e.code > f.code) {
                            first_err = Some(e);
                        }
                    }
                }
            }
            match cli.format {
                Format::Json => writeln!(out, "{}", json(&summary))?,
                Format::Text => writeln!(
                    out,
                    "summary: {}/{} NotPolynomial{}",
                    summary.not_polynomial,
                    to - from + 1,
                    if summary.polynomial_at.is_empty() {
                        String::new()
                    } else {
                        format!("; Polynomial at n = {:?}", summary.polynomial_at)
                    }
                )?,
            }
            if let Some(e) = first_err {
                return Err(e);
            }
        }
    }
    Ok(())
}

/// Parse the process arguments, run, and map failures to exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.output {
        Some(path) => File::create(path)
            .map_err(CliError::from)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                run(&cli, &mut w)?;
                w.flush()?;
                Ok(())
            }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run(&cli, &mut lock)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
