use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use harmonia::commands::{self, Algorithm, Failure, Format, GeneratorArg, Report, StabilitySource};
use harmonia_core::exactla::{parse_scalar, Scalar};

#[derive(Parser)]
#[command(name = "harmonia", version, about = "Persistence and harmonic chain barcodes of simplicial filtrations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a filtration file parses and is closed under faces.
    Validate { path: PathBuf },
    /// Compute a barcode.
    Barcode {
        path: PathBuf,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Algorithm::Canonical)]
        algo: Algorithm,
        /// Include a representative cycle for every bar.
        #[arg(long)]
        reps: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bottleneck distance between two barcodes (JSON documents or
    /// `birth death` lines).
    Bottleneck {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        /// Print a decimal expansion instead of an exact fraction.
        #[arg(long)]
        decimal: bool,
    },
    /// Draw a barcode as SVG.
    Render {
        path: PathBuf,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Algorithm::Canonical)]
        algo: Algorithm,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare barcodes of a function and its random perturbations.
    #[command(group(ArgGroup::new("source").required(true).args(["complex", "random"])))]
    Stability {
        /// Use the filtration in this file as the function.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Draw a random complex and function per trial, starting at this seed.
        #[arg(long)]
        random: Option<u64>,
        #[arg(long, default_value = "1/5", value_parser = scalar_arg)]
        eps: Scalar,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = GeneratorArg::Simplexwise)]
        generator: GeneratorArg,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
    },
}

fn scalar_arg(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).ok_or_else(|| format!("'{s}' is not a rational number"))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("HARMONIA_THREADS") else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("HARMONIA_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Internal(e.to_string()))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Validate { path } => commands::validate(&path),
        Command::Barcode { path, dim, algo, reps, format } => commands::barcode(&path, dim, algo, reps, format),
        Command::Bottleneck { a, b, dim, decimal } => commands::bottleneck(&a, &b, dim, decimal),
        Command::Render { path, dim, algo, out } => commands::render(&path, dim, algo, &out),
        Command::Stability { complex, random, eps, trials, dim, generator, max_vertices } => {
            let source = match (&complex, random) {
                (Some(path), _) => StabilitySource::Complex(path),
                (None, Some(seed)) => StabilitySource::Random { seed, max_vertices, generator: generator.into() },
                (None, None) => unreachable!("clap requires a source"),
            };
            commands::stability(source, &eps, trials, dim)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{}", report.stdout);
            ExitCode::from(report.exit)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
