use clap::{Args, Parser, Subcommand, ValueEnum};
use phmf_core::maass::EvalContext;

#[derive(Debug, Parser)]
#[command(name = "phmf", version, about = "Traces of modular functions, Kloosterman sums and Poincaré series coefficients")]
pub struct Cli {
    /// Worker threads; PHMF_THREADS takes precedence when set.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an identity-verification suite and emit one JSON line per check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Compute one trace.
    Trace(TraceArgs),
    /// Compute one Fourier coefficient `b_{k,m}(n,s)` or `c_{k,m}(n,s)`.
    Coeff(CoeffArgs),
    /// Tabulate the traces carried by a generating function.
    Genfun(GenfunArgs),
    /// List class representatives of a discriminant.
    Classes(ClassesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Kloosterman,
    Limits,
    Traces,
    KeyIdentity,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    #[value(name = "const_one")]
    ConstOne,
    #[value(name = "j_minus_744")]
    JMinus744,
    Klf,
    Niebur,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Cm,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ContextArgs {
    /// Fourier truncation `|n| ≤ N` for series evaluation.
    #[arg(long, default_value_t = 24)]
    pub fourier_terms: usize,
    /// Kloosterman truncation used inside series evaluation.
    #[arg(long, default_value_t = 4000)]
    pub series_cmax: u64,
    /// Gauss–Legendre nodes per panel.
    #[arg(long, default_value_t = 64)]
    pub quad_order: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

impl ContextArgs {
    pub fn context(&self) -> EvalContext {
        EvalContext {
            fourier_terms: self.fourier_terms,
            c_max: self.series_cmax,
            quad_order: self.quad_order,
            tolerance: self.tolerance,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TraceArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub d: i64,
    #[arg(long = "D", allow_negative_numbers = true, default_value_t = 1)]
    pub big_d: i64,
    #[arg(long, value_enum)]
    pub f: FunctionArg,
    /// Index of `G_m` (niebur only).
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i64>,
    /// Spectral parameter (niebur only).
    #[arg(long)]
    pub s: Option<f64>,
    #[command(flatten)]
    pub ctx: ContextArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CoeffArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub k: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long)]
    pub s: f64,
    /// Truncation; chosen from the tail bound and `--tol` when omitted.
    #[arg(long)]
    pub cmax: Option<u64>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GenfunArgs {
    #[arg(long, value_enum)]
    pub f: FunctionArg,
    #[arg(long = "D", allow_negative_numbers = true, default_value_t = 1)]
    pub big_d: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub d_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub d_max: i64,
    #[arg(long, value_enum)]
    pub side: Side,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub ctx: ContextArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ClassesArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub delta: i64,
    /// Keep only forms with `a > 0`.
    #[arg(long)]
    pub positive_a_only: bool,
}
