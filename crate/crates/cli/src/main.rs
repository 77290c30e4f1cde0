mod commands;
mod input;
mod model;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::RunReport;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "toric-gkz", version, about = "Lattice, GKZ, toric cohomology and TEP computations with exact arithmetic")]
pub struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Box bound for enumerations (semigroup checks, generators, representations).
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print per-stage timings to stderr.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cone, saturation, interior and face data of a point configuration.
    Lattice(LatticeArgs),
    /// GKZ ideals, better-behaved presentations, intertwiners and series.
    Gkz(GkzArgs),
    /// Face-by-face nondegeneracy of the Laurent polynomial with given coefficients.
    Nondeg(NondegArgs),
    /// Cohomology of the total space of split bundles over a smooth complete toric variety.
    Cohom(CohomArgs),
    /// Pairing models with a compatible nilpotent operator and their mixed structures.
    Tep(TepArgs),
    /// End-to-end run on local P^2.
    Demo(DemoArgs),
}

/// Input file, either positional or through `--config`.
#[derive(Args, Debug, Clone)]
pub struct InputArg {
    /// Input file (JSON).
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
    /// Input file (JSON), alternative to the positional argument.
    #[arg(long = "config", value_name = "FILE", conflicts_with = "file")]
    pub config: Option<PathBuf>,
}

impl InputArg {
    pub fn path(&self) -> Option<&std::path::Path> {
        self.file.as_deref().or(self.config.as_deref())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GammaChoice {
    All,
    Interior,
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Facet normals and ray generators of the cone.
    #[arg(long)]
    pub facets: bool,
    /// Saturation of the semigroup inside the cone.
    #[arg(long)]
    pub saturation: bool,
    /// Decide whether C (comma-separated) lies in the interior semigroup.
    #[arg(long, value_name = "C", allow_hyphen_values = true)]
    pub interior: Option<String>,
    /// Face lattice of the convex hull of the points and the origin.
    #[arg(long)]
    pub faces: bool,
    /// Minimal module generators of K(A) or its interior part.
    #[arg(long, value_enum, value_name = "SET")]
    pub generators: Option<GammaChoice>,
}

#[derive(Args, Debug)]
pub struct GkzArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Parameter γ (comma-separated rationals); zero by default.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Print the λ-level ideal instead of the ordinary one.
    #[arg(long)]
    pub lambda: bool,
    /// Parameter β for presentations and intertwiners; zero by default.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Better-behaved presentation on K(A) or its interior part.
    #[arg(long, value_enum, value_name = "SET")]
    pub presentation: Option<GammaChoice>,
    /// Intertwiner between the data at C1 and C2.
    #[arg(long, num_args = 2, value_names = ["C1", "C2"], allow_hyphen_values = true)]
    pub intertwine: Option<Vec<String>>,
    /// Γ-series with integral base exponent V.
    #[arg(long, value_name = "V", allow_hyphen_values = true)]
    pub series: Option<String>,
    /// Radius of the kernel box summed by --series.
    #[arg(long, default_value_t = 4)]
    pub radius: u32,
    /// Write the series computed by --series to PATH.
    #[arg(long, value_name = "PATH", requires = "series")]
    pub write_series: Option<PathBuf>,
    /// Residual of the series in SERIES at POINT against the ordinary ideal.
    #[arg(long, num_args = 2, value_names = ["SERIES", "POINT"], allow_hyphen_values = true)]
    pub residual: Option<Vec<String>>,
    /// Residual threshold for --residual.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
}

#[derive(Args, Debug)]
pub struct NondegArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Coefficients of the polynomial, one per point (comma-separated rationals).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
}

#[derive(Args, Debug)]
pub struct CohomArgs {
    /// Fan file: {"rays": [[..]], "cones": [[..]], "beta": [[..]]} with "beta" optional.
    #[command(flatten)]
    pub input: InputArg,
    /// Bundle rows, `;`-separated, overriding the file (empty string for none).
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Quantum product table to check and build the connection from.
    #[arg(long, value_name = "TABLE")]
    pub quantum: Option<PathBuf>,
    /// Truncation order in the Novikov parameters.
    #[arg(long)]
    pub truncation: Option<u32>,
    /// Write the classical product table of H*(Y) to PATH.
    #[arg(long, value_name = "PATH")]
    pub write_table: Option<PathBuf>,
    /// Write the pairing model (weight -(n+r), Poincaré form, N) to PATH.
    #[arg(long, value_name = "PATH")]
    pub write_tep: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TepArgs {
    /// Model file: {"weight", "pairing": [{"power", "matrix"}], "nilpotent"}.
    #[command(flatten)]
    pub input: InputArg,
    /// Generate a random compatible model of this rank from --seed.
    #[arg(long, value_name = "DIM", conflicts_with_all = ["file", "config"])]
    pub random: Option<usize>,
    /// Apply the Tate twist by A before checking.
    #[arg(long, value_name = "A", allow_hyphen_values = true)]
    pub twist: Option<i64>,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    /// Bundle row over the three rays of P^2.
    #[arg(long, default_value = "1,1,1", allow_hyphen_values = true)]
    pub beta: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = RunReport::new(std::env::args().skip(1).collect());
    let result = commands::run(&cli, &mut report);
    if cli.timings {
        eprint!("{}", report.timings_text());
    }
    match result {
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Ok(()) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
