use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;

use error::CliError;

/// Nef partitions, sigma complexes and combinatorial discriminants.
#[derive(Debug, Parser)]
#[command(name = "nefdisc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Positive,
    Negative,
}

#[derive(Debug, Args)]
pub struct Io {
    /// Input JSON file; repeat for several.
    #[arg(short, long = "input", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    /// Write to FILE instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Degrees of a complete intersection in projective space, e.g. 4,2.
    #[arg(long, value_delimiter = ',', value_name = "D,..")]
    pub degrees: Vec<usize>,
    /// Vertex groups when the input is a bare polytope, e.g. "0,1,2,3;4,5".
    #[arg(long, value_name = "GROUPS")]
    pub parts: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Polar dual of a polytope.
    Dual {
        #[command(flatten)]
        io: Io,
        /// Use the simplex of projective N-space instead of an input file.
        #[arg(long, value_name = "N")]
        ambient: Option<usize>,
    },
    /// Check that a partition is nef and report the polytopes it determines.
    Nefcheck {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        source: Source,
    },
    /// The mirror nef partition.
    Mirror {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        source: Source,
    },
    /// Cells and Euler characteristic of the sigma complex.
    Sigma {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        source: Source,
    },
    /// Discriminant graph with vertex signs.
    Discriminant {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        source: Source,
        /// Also write the graph in DOT form to FILE.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Closed-form counts for a complete intersection.
    Census {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_delimiter = ',', value_name = "D,..", required = true)]
        degrees: Vec<usize>,
        /// Dimension N of the ambient projective space; defaults to the sum of the degrees minus one.
        #[arg(long, value_name = "N")]
        ambient: Option<usize>,
        /// Include every stratum in the output.
        #[arg(long)]
        strata: bool,
    },
    /// Check a triple of local monodromy matrices.
    Monodromy {
        #[command(flatten)]
        io: Io,
        /// Vertex type the triple belongs to; without input, use its standard triple.
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// SVG of a planar subdivision or of a tropical curve.
    Plot {
        #[command(flatten)]
        io: Io,
        /// Draw the dual tropical curve instead of the subdivision.
        #[arg(long)]
        tropical: bool,
        /// Tropical curve of the standard triangulation of the degree-K triangle.
        #[arg(long, value_name = "K")]
        tropical_degree: Option<i64>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Dual { io, ambient } => commands::dual(&io, ambient),
        Command::Nefcheck { io, source } => commands::nefcheck(&io, &source),
        Command::Mirror { io, source } => commands::mirror(&io, &source),
        Command::Sigma { io, source } => commands::sigma(&io, &source),
        Command::Discriminant { io, source, dot } => commands::discriminant(&io, &source, dot.as_deref()),
        Command::Census { io, degrees, ambient, strata } => commands::census(&io, degrees, ambient, strata),
        Command::Monodromy { io, kind } => commands::monodromy(&io, kind),
        Command::Plot { io, tropical, tropical_degree } => commands::plot(&io, tropical, tropical_degree),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(&CliError::Usage(e.render().to_string().trim_end().to_string())),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> ExitCode {
    let code = e.exit_code();
    let body = serde_json::json!({ "error": e.kind(), "message": e.to_string(), "exit_code": code });
    eprintln!("{body}");
    ExitCode::from(code)
}
