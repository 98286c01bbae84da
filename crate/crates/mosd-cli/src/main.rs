//! `mosd`: compute multiobjective steepest descent directions, run descent,
//! and probe the Hölder continuity of the direction map.
//!
//! Exit codes: 0 success, 2 invalid input, 3 solver non-convergence,
//! 4 continuity bound violated.

mod commands;
mod io;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mosd",
    version,
    about = "Multiobjective steepest descent toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List built-in problems, optionally exporting their JSON descriptors
    ListProblems {
        /// Directory to write one `<name>.json` descriptor per problem
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },

    /// Steepest descent direction at a point (JSON on stdout)
    Direction {
        /// Built-in problem name or path to a JSON descriptor
        #[arg(long)]
        problem: String,
        /// Comma-separated point, e.g. --x 1,0.4330127
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// File holding the point (overrides --x)
        #[arg(long, value_name = "FILE")]
        x_file: Option<PathBuf>,
        /// Dual solver tolerance
        #[arg(long, default_value_t = mosd_core::minnorm::DEFAULT_TOL)]
        tol: f64,
        /// Criticality threshold on |lambda|
        #[arg(long, default_value_t = 1e-8)]
        eps_crit: f64,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Armijo-backtracked multiobjective descent (CSV trace on stdout)
    Descend {
        #[arg(long)]
        problem: String,
        /// Comma-separated starting point
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        /// File holding the starting point (overrides --x0)
        #[arg(long, value_name = "FILE")]
        x0_file: Option<PathBuf>,
        /// Armijo slope fraction in (0,1)
        #[arg(long, default_value_t = 1e-4)]
        sigma: f64,
        /// Backtracking factor in (0,1)
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// Initial trial step
        #[arg(long, default_value_t = 1.0)]
        t0: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        /// Criticality threshold on |lambda|
        #[arg(long, default_value_t = 1e-6)]
        eps_crit: f64,
        #[arg(long, default_value_t = 60)]
        max_backtracks: usize,
        /// Dual solver tolerance
        #[arg(long, default_value_t = mosd_core::minnorm::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Probe a region for the sqrt(2 L M) Hölder bound (JSON summary on
    /// stdout; exits 4 when the bound check fails)
    HolderProbe {
        #[arg(long)]
        problem: String,
        /// Ball region center, comma-separated (with --radius); problem
        /// domain when no region flags are given
        #[arg(long, requires = "radius", allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, requires = "center")]
        radius: Option<f64>,
        /// Box region as lo:hi pairs, e.g. --box-region -1:1,-1:1
        #[arg(
            long = "box-region",
            conflicts_with = "center",
            allow_hyphen_values = true
        )]
        box_region: Option<String>,
        /// Comma-separated pair separations
        #[arg(long, default_value = "1e-2,1e-4,1e-6")]
        scales: String,
        /// Pairs per scale
        #[arg(long, default_value_t = 2000)]
        pairs: usize,
        /// Extra quotient exponent reported in the samples CSV
        #[arg(long, default_value_t = 0.75)]
        eta: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Assume this gradient Lipschitz constant instead of the
        /// analytic/estimated one (with --assume-m)
        #[arg(long, requires = "assume_m")]
        assume_l: Option<f64>,
        /// Assume this max gradient norm (with --assume-l)
        #[arg(long, requires = "assume_l")]
        assume_m: Option<f64>,
        /// Write the per-pair samples as CSV to this file
        #[arg(long, value_name = "FILE")]
        samples_out: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Sweep the sharpness family y_t, z_t (CSV on stdout with a fit footer)
    Counterexample {
        #[arg(long, default_value_t = 1e-4)]
        t_min: f64,
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Validate analytic gradients against central differences (JSON)
    Gradcheck {
        #[arg(long)]
        problem: String,
        /// Seeded interior sample points
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Central-difference step
        #[arg(long, default_value_t = 1e-6)]
        h: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(io::exit_code_for(&err))
        }
    }
}
