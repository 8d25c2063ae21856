use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pairwell", version, about = "Two particles with a contact interaction in an infinite square well")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    Singlet,
    Triplet,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the momentum pair of one state.
    #[command(allow_negative_numbers = true)]
    Solve {
        /// Scaled interaction strength.
        #[arg(long = "U", value_name = "U")]
        u: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Newton residual tolerance; solutions are accepted up to max(1e-10, tol).
        #[arg(long)]
        tol: Option<f64>,
        /// CI cutoff used to seed states with n ≠ m.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        basis: Option<u32>,
    },
    /// Track one state over a uniform grid in U and write CSV.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long = "U-start", value_name = "U")]
        u_start: f64,
        #[arg(long = "U-end", value_name = "U")]
        u_end: f64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..))]
        steps: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the two-particle density on a square grid and write CSV.
    #[command(allow_negative_numbers = true)]
    Density {
        #[arg(long = "U", value_name = "U")]
        u: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// Points per axis, odd and at least 3.
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = SymmetryArg::Singlet)]
        symmetry: SymmetryArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lowest levels of the configuration-interaction spectrum.
    #[command(allow_negative_numbers = true)]
    Ci {
        #[arg(long = "U", value_name = "U")]
        u: f64,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
        basis: u32,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}
