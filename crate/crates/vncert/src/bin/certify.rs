//! Certification CLI: builds the order-6p twisted bicirculant family or the
//! exceptional line graphs and writes a certificate report.
//!
//! Exit code 0 iff no check FAILed; with `--strict`, INCONCLUSIVE checks
//! also fail the run.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vncert::certify::{
    certify_exceptional, certify_family, emit_report, Report, ReportFormat, RunConfig,
    DEFAULT_AUT_CAP,
};
use vncert::construct::Reading;

#[derive(Parser)]
#[command(name = "certify", about = "Certify vertex-transitive non-Cayley graph families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the twisted bicirculants of order 6p for a prime p.
    Family(FamilyArgs),
    /// Certify the exceptional line graphs of order at most 42.
    Exceptional(CommonArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// The prime p; the family lives at order 6p.
    #[arg(long)]
    p: u64,
    /// Which reading of the construction to certify.
    #[arg(long, value_enum, default_value_t = ReadingArg::Corrected)]
    reading: ReadingArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Element cap for exhaustive subgroup searches.
    #[arg(long, default_value_t = DEFAULT_AUT_CAP)]
    aut_cap: u64,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Treat INCONCLUSIVE verdicts as failures for the exit code.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReadingArg {
    Literal,
    Corrected,
    Both,
}

impl ReadingArg {
    fn readings(self) -> Vec<Reading> {
        match self {
            ReadingArg::Literal => vec![Reading::Literal],
            ReadingArg::Corrected => vec![Reading::Corrected],
            ReadingArg::Both => vec![Reading::Literal, Reading::Corrected],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> ReportFormat {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Text => ReportFormat::Text,
        }
    }
}

fn finish(report: &Report, common: &CommonArgs) -> ExitCode {
    if let Err(e) = emit_report(report, common.format.into(), common.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.has_fail() || (common.strict && report.has_inconclusive()) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Family(args) => {
            let config = match RunConfig::new(
                args.p,
                args.reading.readings(),
                args.common.aut_cap,
                args.common.format.into(),
                args.common.out.clone(),
            ) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match certify_family(&config) {
                Ok(report) => finish(&report, &args.common),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Exceptional(common) => {
            let report = certify_exceptional(common.aut_cap);
            finish(&report, &common)
        }
    }
}
