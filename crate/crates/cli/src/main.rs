//! `uniform-bounds`: point checks, table regeneration and certificate audits.
//!
//! Exit codes: 0 inconclusive or valid, 10 nonexistent, 11 invalid
//! certificate, 2 usage or malformed input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use uniform_bounds::asymptotic::{theta_bound, RateKind};
use uniform_bounds::exact::rational_json::display;
use uniform_bounds::lp::{
    verify_certificate_json, CertificateStatus, SolveOptions, DEFAULT_LP_MAX_N, DEFAULT_PIVOT_LIMIT,
};
use uniform_bounds::report::{evaluate, MethodChoice, Query};
use uniform_bounds::shadow::{alpha_i0, alpha_series};
use uniform_bounds::tables::{generate, Format, TableName, TableOptions, FULL_M_MAX};
use uniform_bounds::{Error, Result};

const EXIT_NONEXISTENT: u8 = 10;
const EXIT_INVALID_CERTIFICATE: u8 = 11;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "uniform-bounds",
    version,
    about = "Exact non-existence bounds for k-uniform states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a k-uniform state in (C^q)^n is ruled out.
    Check {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// singleton, scott, defect, corollary, dual, lp, shadow or all; repeatable.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        method: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Largest n the LP method accepts.
        #[arg(long, default_value_t = DEFAULT_LP_MAX_N)]
        lp_max_n: u32,
        #[arg(long, default_value_t = DEFAULT_PIVOT_LIMIT)]
        pivot_limit: usize,
        /// Write the first emitted certificate here.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Regenerate one of the published tables.
    Table {
        #[arg(long)]
        /// defect12, defect34, asymptotic, shadow3, shadow4, shadow5, improve5 or improve4.
        which: String,
        #[arg(long, default_value_t = FULL_M_MAX)]
        m_max: u32,
        /// Deepest even l row for shadow tables.
        #[arg(long)]
        l_max: Option<u32>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: TableFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate file without running any solver.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Print alpha_(i,0), or alpha_(i,j) with --j, as an exact rational.
    Alpha {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: Option<u32>,
    },
    /// Smallest grid theta with a certified positive rate function.
    Theta {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 3)]
        decimals: u32,
    },
}

fn configure_threads() {
    if let Some(n) = std::env::var("UNIFORM_BOUNDS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check {
            q,
            n,
            k,
            method,
            format,
            lp_max_n,
            pivot_limit,
            certificate_out,
        } => {
            let methods = method
                .iter()
                .map(|m| MethodChoice::parse(m.trim()))
                .collect::<Result<Vec<_>>>()?;
            let opts = SolveOptions {
                pivot_limit,
                max_n: lp_max_n,
            };
            let report = evaluate(Query::new(n, k, q)?, &methods, &opts)?;
            let text = match format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Json => report.to_json() + "\n",
                ReportFormat::Csv => report.to_csv(),
            };
            print!("{text}");
            if let Some(path) = certificate_out {
                match report.certificates.first() {
                    Some(c) => write_out(Some(&path), &(c.to_json() + "\n"))?,
                    None => eprintln!("no certificate emitted"),
                }
            }
            Ok(if report.is_nonexistent() {
                EXIT_NONEXISTENT
            } else {
                0
            })
        }
        Command::Table {
            which,
            m_max,
            l_max,
            format,
            output,
        } => {
            let name = TableName::parse(&which)?;
            let table = generate(name, &TableOptions { m_max, l_max })?;
            let format = match format {
                TableFormat::Markdown => Format::Markdown,
                TableFormat::Csv => Format::Csv,
                TableFormat::Json => Format::Json,
            };
            write_out(output.as_ref(), &table.render(format))?;
            Ok(0)
        }
        Command::Verify { certificate } => {
            let text = fs::read_to_string(&certificate)
                .map_err(|e| Error::Malformed(format!("{}: {e}", certificate.display())))?;
            match verify_certificate_json(&text)? {
                CertificateStatus::Valid => {
                    println!("valid");
                    Ok(0)
                }
                CertificateStatus::SignViolation { index } => {
                    println!("invalid: sign violation at index {index}");
                    Ok(EXIT_INVALID_CERTIFICATE)
                }
                CertificateStatus::ConditionFailed { reason } => {
                    println!("invalid: {reason}");
                    Ok(EXIT_INVALID_CERTIFICATE)
                }
            }
        }
        Command::Alpha { q, n, i, j } => {
            let v = match j {
                None | Some(0) if i >= 1 => alpha_i0(n, q, i)?,
                _ => alpha_series(n, q, i, j.unwrap_or(0))?,
            };
            println!("{v}");
            Ok(0)
        }
        Command::Theta { q, decimals } => {
            let b = theta_bound(q, decimals)?;
            match b.kind {
                RateKind::Certified => {
                    let margin = b.margin().map(display).unwrap_or_default();
                    let error = b.error().map(|e| display(&e)).unwrap_or_default();
                    println!("{}", b.theta_decimal());
                    println!("margin >= {margin}");
                    println!("enclosure width {error} at {} bits", b.precision_bits);
                }
                RateKind::Trivial => {
                    println!("{} (no grid point below 1/2 qualifies)", b.theta_decimal())
                }
            }
            if b.weaker_than_shadow {
                println!("note: weaker than the shadow bound for q = {q}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
