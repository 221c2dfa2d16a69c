use clap::{Args, Parser, Subcommand, ValueEnum};

use hhss::{Error, Field, Result};

#[derive(Parser, Debug)]
#[command(name = "hhss", version, about = "Hochschild cohomology, graded centers and their spectral sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of HH^N per total degree.
    Hh(Common),
    /// Spectral sequence pages, charts and the degeneration report.
    Ss(Common),
    /// Graded center dimensions and bases.
    Center(Common),
    /// Edge homomorphisms in one degree.
    Edge(Common),
    /// Runs every invariant check on the input.
    Verify(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Tsv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// A builtin name or a path to a TOML description.
    #[arg(long)]
    pub input: String,
    /// Q, F<p> or Fp:<p>; overrides the field of the input.
    #[arg(long)]
    pub field: Option<String>,
    /// Largest cochain arity kept; derived from the stability certificate when omitted.
    #[arg(long)]
    pub smax: Option<usize>,
    /// Window of internal degrees `a..b` (chart rows, center window).
    #[arg(long, allow_hyphen_values = true)]
    pub trange: Option<String>,
    /// Total degrees `a..b`, in either order.
    #[arg(long, allow_hyphen_values = true)]
    pub degrees: Option<String>,
    #[arg(long, default_value = "char")]
    pub filtration: String,
    #[arg(long, default_value_t = 2)]
    pub page: usize,
    #[arg(long, conflicts_with = "full")]
    pub normalized: bool,
    /// Use the full (unnormalized) cochain complex.
    #[arg(long)]
    pub full: bool,
    /// none, parity, a functor named in the input, or file:<path>[#name].
    #[arg(long, default_value = "none")]
    pub automorphism: String,
    #[arg(long, value_enum, default_value = "ascii")]
    pub format: Format,
    /// Draw the page as a grid.
    #[arg(long)]
    pub chart: bool,
    /// edge: characteristic | forgetful. center: auto | graded | homology | cycles | dg | truncated.
    #[arg(long)]
    pub kind: Option<String>,
    /// Total degree for `edge`.
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
}

/// Parses `a..b` (or a single integer) into an ordered pair.
pub fn parse_range(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("malformed range `{text}`, expected a..b"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok((a.min(b), a.max(b)))
}

impl Common {
    pub fn field(&self) -> Result<Option<Field>> {
        self.field.as_deref().map(Field::parse).transpose()
    }

    pub fn normalized(&self) -> bool {
        !self.full
    }

    pub fn degrees(&self) -> Result<Option<(i64, i64)>> {
        self.degrees.as_deref().map(parse_range).transpose()
    }

    pub fn trange(&self) -> Result<Option<(i64, i64)>> {
        self.trange.as_deref().map(parse_range).transpose()
    }
}
