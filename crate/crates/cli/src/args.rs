use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable holding the default enumeration cap.
pub const CAP_ENV: &str = "BRAIDIMAGE_CAP";

#[derive(Debug, Parser)]
#[command(name = "braidimage", version, about = "Two-row Hecke representations of braid groups over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the seminormal bundle for [n-r, r] and print it.
    Rep {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Gate, case, spectrum, relations, irreducibility and restriction.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Conjugate a unitary-case bundle into GU_N of the identity form.
    Unitarize {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate the image and certify SL/SU containment. Without --r, every
    /// two-row factor is certified and then every pair.
    Certify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = EnumerationArg::Auto)]
        enumeration: EnumerationArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Transvection census of the image, or only the closed-form bounds.
    Census {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Bounds only: matrix degree N.
        #[arg(long, requires = "q")]
        degree: Option<usize>,
        /// Bounds only: field order (the fixed field in the unitary case).
        #[arg(long)]
        q: Option<u64>,
        #[arg(long = "case", value_enum, default_value_t = CaseArg::Linear)]
        case_arg: CaseArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run one check over a grid of (p, e, n, r).
    Scan {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        /// Comma-separated multiplicative orders of alpha.
        #[arg(long, value_delimiter = ',')]
        e: Vec<u64>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Comma-separated modulus coefficients c0,...,cd (monic).
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Element code, or `order:k` for the smallest code of order k.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Build even when the parameter gate rejects.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Read a bundle file instead of building from parameters.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Enumeration cap; defaults to $BRAIDIMAGE_CAP, else 2^28.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Report runtime_ms as 0 so identical runs give identical bytes.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerationArg {
    Auto,
    Direct,
    Projective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Linear,
    Unitary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Eigenvalue multiplicities (a, b, c) and the branching recurrence.
    Spectrum,
    /// Parameter gate and linear/unitary case.
    Gate,
    /// Full certification of each cell.
    Certify,
}
