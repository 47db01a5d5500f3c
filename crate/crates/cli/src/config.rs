//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harmvol_core::quadrature::QuadConfig;
use serde::Serialize;

use crate::CliError;

/// Largest genus accepted by the exact engines.
pub const MAX_GENUS_EXACT: usize = 8;
/// Largest genus accepted by the numeric engine.
pub const MAX_GENUS_NUMERIC: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "harmvol", version, about = "Pointed harmonic volumes of w² = z^(2g+2) − 1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// I_ν on every canonical basis element of K⊗H, one row per element.
    Table(Common),
    /// Evaluate a tensor read from a JSON file.
    Eval {
        /// Tensor file: {"g": 2, "terms": [{"coeff": 1, "factors": [["x", 1], ["x", 2], ["y", 1]]}]}
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the verification suites and emit a report.
    Verify {
        /// Random tensors per sweep.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Genus (2 ≤ g ≤ 8; at most 3 with the numeric engine).
    #[arg(long)]
    pub g: Option<usize>,
    /// Base index ν in 0..=2g+1, or "all".
    #[arg(long, default_value = "all")]
    pub nu: NuArg,
    /// Comma-separated engines. Defaults to all for g ≤ 3 and exact otherwise.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub engines: Vec<EngineArg>,
    /// MPFR working precision in bits for the numeric engine.
    #[arg(long, default_value_t = harmvol_core::exactfield::DEFAULT_PRECISION)]
    pub precision: u32,
    #[arg(long, default_value_t = 1e-10)]
    pub tol_line: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_iterated: f64,
    /// Acceptance distance on ℝ/ℤ for numeric values.
    #[arg(long, default_value_t = 1e-5)]
    pub tol_modz: f64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock seconds per suite (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuArg {
    All,
    One(usize),
}

impl FromStr for NuArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(NuArg::All);
        }
        s.parse()
            .map(NuArg::One)
            .map_err(|_| format!("expected a non-negative integer or \"all\", got {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Combinatorial,
    Composed,
    Table,
    Numeric,
    /// combinatorial, composed and table
    Exact,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineSet {
    pub combinatorial: bool,
    pub composed: bool,
    pub table: bool,
    pub numeric: bool,
}

impl EngineSet {
    fn from_args(args: &[EngineArg], g: usize) -> Self {
        let mut s = EngineSet::default();
        let defaults = [if g <= MAX_GENUS_NUMERIC {
            EngineArg::All
        } else {
            EngineArg::Exact
        }];
        let args = if args.is_empty() { &defaults[..] } else { args };
        for a in args {
            match a {
                EngineArg::Combinatorial => s.combinatorial = true,
                EngineArg::Composed => s.composed = true,
                EngineArg::Table => s.table = true,
                EngineArg::Numeric => s.numeric = true,
                EngineArg::Exact | EngineArg::All => {
                    s.combinatorial = true;
                    s.composed = true;
                    s.table = true;
                    s.numeric |= *a == EngineArg::All;
                }
            }
        }
        s
    }

    pub fn any_exact(&self) -> bool {
        self.combinatorial || self.composed || self.table
    }

    pub fn names(&self) -> Vec<&'static str> {
        [
            (self.combinatorial, "combinatorial"),
            (self.composed, "composed"),
            (self.table, "table"),
            (self.numeric, "numeric"),
        ]
        .into_iter()
        .filter_map(|(on, n)| on.then_some(n))
        .collect()
    }
}

/// Everything a command needs, validated. Serialized into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub g: usize,
    pub nu: Vec<usize>,
    #[serde(serialize_with = "ser_engines")]
    pub engines: EngineSet,
    pub precision: u32,
    pub tol_line: f64,
    pub tol_iterated: f64,
    pub tol_modz: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub timings: bool,
}

fn ser_engines<S: serde::Serializer>(e: &EngineSet, s: S) -> Result<S::Ok, S::Error> {
    e.names().serialize(s)
}

impl RunConfig {
    pub fn new(
        command: &'static str,
        c: &Common,
        g: usize,
        samples: Option<usize>,
        default_format: Format,
    ) -> Result<Self, CliError> {
        if !(2..=MAX_GENUS_EXACT).contains(&g) {
            return Err(CliError::Usage(format!(
                "--g {g} out of range: 2 ≤ g ≤ {MAX_GENUS_EXACT}"
            )));
        }
        let engines = EngineSet::from_args(&c.engines, g);
        if engines.numeric && g > MAX_GENUS_NUMERIC {
            return Err(CliError::Usage(format!(
                "the numeric engine supports g ≤ {MAX_GENUS_NUMERIC}; use --engines exact for g = {g}"
            )));
        }
        let nu = match c.nu {
            NuArg::All => (0..2 * g + 2).collect(),
            NuArg::One(n) if n <= 2 * g + 1 => vec![n],
            NuArg::One(n) => {
                return Err(CliError::Usage(format!(
                    "--nu {n} out of range: 0 ≤ ν ≤ 2g+1 = {}",
                    2 * g + 1
                )))
            }
        };
        if !(32..=4096).contains(&c.precision) {
            return Err(CliError::Usage(format!(
                "--precision {} out of range 32..=4096",
                c.precision
            )));
        }
        for (name, t) in [
            ("--tol-line", c.tol_line),
            ("--tol-iterated", c.tol_iterated),
            ("--tol-modz", c.tol_modz),
        ] {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Usage(format!("{name} must be a positive number")));
            }
        }
        Ok(Self {
            command,
            g,
            nu,
            engines,
            precision: c.precision,
            tol_line: c.tol_line,
            tol_iterated: c.tol_iterated,
            tol_modz: c.tol_modz,
            seed: c.seed,
            samples,
            format: c.format.unwrap_or(default_format),
            out: c.out.clone(),
            timings: c.timings,
        })
    }

    pub fn quad_config(&self) -> QuadConfig {
        QuadConfig {
            precision: self.precision,
            tol_line: self.tol_line,
            tol_iterated: self.tol_iterated,
            ..QuadConfig::default()
        }
    }
}
