use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "plethys", version, about = "Polynomials with prescribed negative power sums")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Arithmetic backend; defaults per command, or bigcomplex when --bits is given.
    #[arg(long, global = true, value_enum)]
    pub backend: Option<BackendArg>,

    /// Working precision of the bigcomplex backend.
    #[arg(long, global = true)]
    pub bits: Option<u32>,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Rational,
    Complex64,
    Bigcomplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Polylog,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Aberth,
    Companion,
}

/// Where the targets come from: a named family, an inline list or an α file.
#[derive(Debug, Clone, Args)]
pub struct AlphaSource {
    #[arg(long, value_enum, conflicts_with_all = ["alphas", "alphas_file"])]
    pub family: Option<Family>,

    /// Polylog parameter, alpha_k = k^(1-s).
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,

    /// Constant value, alpha_k = c.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,

    /// JSON list, e.g. '[1, "1/3", [0, 1]]'.
    #[arg(long, conflicts_with = "alphas_file")]
    pub alphas: Option<String>,

    /// File written by `plethys alphas`.
    #[arg(long)]
    pub alphas_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Aberth)]
    pub method: MethodArg,

    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,

    /// Backward-error tolerance of the root solver.
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients a_0..a_n of P_n.
    Build {
        #[command(flatten)]
        source: AlphaSource,
        #[arg(long)]
        n: usize,
    },
    /// Negative power sums of the roots of P_n against the targets.
    Verify {
        #[command(flatten)]
        source: AlphaSource,
        /// Degrees, e.g. `2,3,4,5` or `2..50`.
        #[arg(long)]
        n_list: String,
        #[arg(long)]
        k_max: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Roots of P_n, one row per root.
    Roots {
        #[command(flatten)]
        source: AlphaSource,
        #[arg(long, conflicts_with = "n_list", required_unless_present = "n_list")]
        n: Option<usize>,
        #[arg(long)]
        n_list: Option<String>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// log10 |p_-k - alpha_k| for n <= n_max, k <= k_max.
    Heatmap {
        #[command(flatten)]
        source: AlphaSource,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k_max: usize,
        /// Also write a matplotlib script that plots the CSV.
        #[arg(long)]
        plot_script: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Integer sequence b_j = j! a_j for alpha_k = k^(1-s), s <= 0.
    Oeis {
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        count: usize,
        /// Local OEIS b-file to compare against.
        #[arg(long)]
        bfile: Option<PathBuf>,
    },
    /// The polylogarithm family for s = -3..3 through x^4.
    Table1,
    /// P_n(1) against exp(-zeta(s)).
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value = "10,20,40,80")]
        n_list: String,
    },
    /// Write the targets alpha_1..alpha_n as an α file.
    Alphas {
        #[command(flatten)]
        source: AlphaSource,
        #[arg(long)]
        n: usize,
    },
    /// Seeded random check of the exactness property.
    Check {
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Verify { .. } => "verify",
            Command::Roots { .. } => "roots",
            Command::Heatmap { .. } => "heatmap",
            Command::Oeis { .. } => "oeis",
            Command::Table1 => "table1",
            Command::Zeta { .. } => "zeta",
            Command::Alphas { .. } => "alphas",
            Command::Check { .. } => "check",
        }
    }
}

/// Parses `2,3,4,5`, `2..50` (inclusive) or a mix such as `1..3,10`.
pub fn parse_n_list(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || format!("bad degree list entry {part:?}");
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| bad())?;
            let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err("empty degree list".into());
    }
    Ok(out)
}
