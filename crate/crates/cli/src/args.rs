use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "symid", version, about = "Exact checks of elementary symmetric function identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an identity over a parameter grid.
    Verify(VerifyArgs),
    /// Derive sum_i prod_k e_{d_k-1}^(i) in terms of the e_r and check it.
    Derive(DeriveArgs),
    /// Print q-binomial or elementary symmetric function tables.
    Table(TableArgs),
    /// List the identity catalog.
    List,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
        }
    }
}

/// Inclusive range `a..b`, or a single value `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range(pub RangeInclusive<i64>);

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |v: &str| {
            v.trim()
                .parse::<i64>()
                .map_err(|_| format!("`{v}` is not an integer"))
        };
        let range = match s.split_once("..") {
            Some((a, b)) => parse(a)?..=parse(b.strip_prefix('=').unwrap_or(b))?,
            None => {
                let v = parse(s)?;
                v..=v
            }
        };
        if range.is_empty() {
            return Err(format!("range `{s}` is empty"));
        }
        Ok(Range(range))
    }
}

impl std::fmt::Display for Range {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.start() == self.0.end() {
            write!(f, "{}", self.0.start())
        } else {
            write!(f, "{}..{}", self.0.start(), self.0.end())
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub identity: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<Range>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Worker threads; overrides SYMID_WORKERS.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Include wall time in the report.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[arg(long)]
    pub n: i64,
    /// Two or three degrees, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub degrees: Vec<i64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Gaussian binomials [N, k].
    Qbinom,
    /// e_0..e_N in x1..xN.
    Esym,
    /// e_p(1, q, .., q^{N-1}).
    Geom,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    #[arg(long)]
    pub n: i64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("2..6".parse::<Range>().unwrap().0, 2..=6);
        assert_eq!("2..=6".parse::<Range>().unwrap().0, 2..=6);
        assert_eq!("5".parse::<Range>().unwrap().0, 5..=5);
        assert!("6..2".parse::<Range>().is_err());
        assert!("x".parse::<Range>().is_err());
        assert_eq!("3..4".parse::<Range>().unwrap().to_string(), "3..4");
    }
}
