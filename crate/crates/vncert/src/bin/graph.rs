//! Graph file CLI: build a constructed graph into the text format, or check
//! properties of an ad-hoc graph file.
//!
//! Constructors for `graph build`:
//!
//! ```text
//! graph build petersen --out p.g
//! graph build gp 10 3 --out desargues.g
//! graph build cycle 6 --out c6.g
//! graph build complete-bipartite 3 3 --out k33.g
//! graph build twisted-bicirculant 3 5 2 --reading corrected --out x.g
//! graph build line gp 5 2 --out lp.g     # line graph of a constructor
//! ```

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vncert::certify::{check_graph, emit_report, Property, Report, ReportConfig, ReportFormat, DEFAULT_AUT_CAP};
use vncert::construct::{generalized_petersen, line_graph, named, twisted_bicirculant, Reading};
use vncert::graph::Graph;

#[derive(Parser)]
#[command(name = "graph", about = "Build and check graph files in the text format")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a constructor and write it as a text file.
    Build(BuildArgs),
    /// Check properties of a graph file.
    Check(CheckArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Constructor name: petersen, desargues, dodecahedron, coxeter,
    /// octahedron, cycle, complete, complete-bipartite, matching, empty,
    /// gp, twisted-bicirculant, or `line <constructor> ...`.
    constructor: String,
    /// Numeric constructor parameters.
    params: Vec<String>,
    /// Reading for twisted-bicirculant.
    #[arg(long, value_enum, default_value_t = ReadingArg::Corrected)]
    reading: ReadingArg,
    /// Output path for the graph file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    /// Path of the graph file to check.
    path: PathBuf,
    /// Comma-separated properties: connected, vt, arc, cayley.
    #[arg(long, default_value = "vt,cayley,arc")]
    props: String,
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
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

fn build_graph(constructor: &str, params: &[String], reading: ReadingArg) -> Result<Graph, String> {
    let ints = |expect: usize| -> Result<Vec<usize>, String> {
        if params.len() != expect {
            return Err(format!(
                "constructor `{constructor}` expects {expect} parameter(s), got {}",
                params.len()
            ));
        }
        params
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| format!("bad parameter `{p}`")))
            .collect()
    };
    match constructor {
        "petersen" | "desargues" | "dodecahedron" | "coxeter" | "octahedron" => {
            ints(0)?;
            named(constructor).map_err(|e| e.to_string())
        }
        "cycle" | "complete" | "empty" | "matching" => {
            let args = ints(1)?;
            named(&format!("{constructor}({})", args[0])).map_err(|e| e.to_string())
        }
        "complete-bipartite" => {
            let args = ints(2)?;
            named(&format!("complete_bipartite({},{})", args[0], args[1])).map_err(|e| e.to_string())
        }
        "gp" => {
            let args = ints(2)?;
            generalized_petersen(args[0], args[1]).map_err(|e| e.to_string())
        }
        "twisted-bicirculant" => {
            let args = ints(3)?;
            let reading = match reading {
                ReadingArg::Literal => Reading::Literal,
                ReadingArg::Corrected => Reading::Corrected,
            };
            twisted_bicirculant(args[0], args[1], args[2], reading)
                .map(|(g, _)| g)
                .map_err(|e| e.to_string())
        }
        "line" => {
            let (inner, rest) = params
                .split_first()
                .ok_or_else(|| "`line` needs a nested constructor".to_string())?;
            if inner == "line" {
                return Err("`line` cannot be nested inside itself".into());
            }
            let base = build_graph(inner, rest, reading)?;
            Ok(line_graph(&base))
        }
        other => Err(format!("unknown constructor `{other}`")),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Build(args) => {
            let graph = match build_graph(&args.constructor, &args.params, args.reading) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = graph.write_text_file(&args.out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Command::Check(args) => {
            let graph = match Graph::read_text_file(&args.path) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let props = match Property::parse_list(&args.props) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let cert = check_graph(&graph, &args.path.display().to_string(), &props, args.aut_cap);
            let report = Report {
                config: ReportConfig {
                    command: "check".into(),
                    p: None,
                    readings: Vec::new(),
                    aut_cap: args.aut_cap,
                },
                notes: Vec::new(),
                certificates: vec![cert],
            };
            let format = match args.format {
                FormatArg::Json => ReportFormat::Json,
                FormatArg::Text => ReportFormat::Text,
            };
            if let Err(e) = emit_report(&report, format, args.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.has_fail() || (args.strict && report.has_inconclusive()) {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
