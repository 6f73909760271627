use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use polqpdf::{Complex64, Method};

use crate::csv::parse_complex;

#[derive(Debug, Parser)]
#[command(
    name = "polqpdf",
    version,
    about = "s-parametrized QPDFs of polarized two-mode light"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Wigner section vs arg α at |α| = 5, p = q = 0.0049(1+i), β = 2i
    Figure1a,
    /// Wigner section vs arg α at |α| = 5, p = q = (1+i)/√2, β = e^{i atan 2}/√20
    Figure1b,
    /// Wigner section vs |α| at arg α = π/4, figure 1a state
    Figure2c,
    /// Wigner section vs |α| at arg α = π/2, figure 1b state
    Figure2d,
    /// Section sweep with explicit parameters
    Sweep,
    /// Phase-space normalization integrals
    Normcheck,
    /// Closed form against the truncated-Fock trace on random tuples
    Oracle,
    /// Coherence factorization table and polarization residuals
    Report,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Ordering parameter, -1 <= s < 1
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// Coherent amplitude of the x mode, as re,im
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub beta: Option<Complex64>,
    /// Index of polarization of the section, as re,im
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub p: Option<Complex64>,
    /// Index of polarization of the state (γ = qβ), as re,im
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q: Option<Complex64>,
    /// Fixed |α_x| for a phase sweep
    #[arg(long, global = true)]
    pub modulus: Option<f64>,
    /// Fixed arg α_x for an amplitude sweep
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub phase: Option<f64>,
    /// Upper |α_x| of an amplitude sweep, or the amplitude bound of oracle tuples
    #[arg(long, global = true)]
    pub max_modulus: Option<f64>,
    #[arg(long, global = true, default_value_t = polqpdf::qpdf::DEFAULT_POINTS)]
    pub points: usize,
    /// Fock cutoff per mode (default: from the truncation rule)
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[arg(long, global = true, default_value = "closed_form")]
    pub method: Method,
    /// Output file
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for output files when --out is not given
    #[arg(long, global = true, env = "POLQPDF_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// Also write an SVG plot next to the CSV
    #[arg(long, global = true)]
    pub svg: bool,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    pub tuples: usize,
    /// Gauss-Legendre nodes per axis
    #[arg(long, global = true, default_value_t = 200)]
    pub nodes: usize,
    /// Half-width of the quadrature box
    #[arg(long, global = true, default_value_t = 6.0)]
    pub half_width: f64,
    /// Override the pass threshold of oracle, normcheck or report
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}
