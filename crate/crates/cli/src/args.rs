use std::path::PathBuf;

use bubble_core::diagram::{Colour, Palette};
use bubble_core::yangbaxter::Family;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "bubble",
    version,
    about = "Two-colour bubble algebra: bases, standard modules, spin chains and R-matrices"
)]
pub struct Cli {
    /// Output format; csv applies to `dims` and `ybe` only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Directory for gzip basis caches (no caching when unset).
    #[arg(long, env = "BUBBLE_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PaletteArg {
    /// Both colours.
    Bi,
    /// Red only: the Temperley-Lieb case.
    Mono,
}

impl From<PaletteArg> for Palette {
    fn from(p: PaletteArg) -> Self {
        match p {
            PaletteArg::Bi => Palette::Bi,
            PaletteArg::Mono => Palette::Mono,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColourArg {
    R,
    B,
}

impl From<ColourArg> for Colour {
    fn from(c: ColourArg) -> Self {
        match c {
            ColourArg::R => Colour::Red,
            ColourArg::B => Colour::Blue,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Tl,
    Bubble,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Tl => Family::Tl,
            FamilyArg::Bubble => Family::Bubble,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the diagram basis B_n with its strata.
    Basis(BasisArgs),
    /// Standard module dimensions and the rank identity.
    Dims(DimsArgs),
    /// Gram matrix of a standard module, its determinant, blocks and roots.
    Gram(GramArgs),
    /// The spin-chain representation on (C^4)^n.
    Rep(RepArgs),
    /// Yang-Baxter residual sweep for a Baxterised R-matrix.
    Ybe(YbeArgs),
    /// Run the whole property suite.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = PaletteArg::Bi)]
    pub palette: PaletteArg,
    /// Include every diagram's canonical encoding.
    #[arg(long)]
    pub list: bool,
    /// Refuse to enumerate beyond this n.
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = PaletteArg::Bi)]
    pub palette: PaletteArg,
    /// Largest n for which the basis is enumerated for the rank check.
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
    #[arg(long, value_enum, default_value_t = PaletteArg::Bi)]
    pub palette: PaletteArg,
    /// Include the determinant.
    #[arg(long)]
    pub det: bool,
    /// Include the block decomposition by framed colour word.
    #[arg(long)]
    pub blocks: bool,
    /// Scan determinant roots in this colour's loop parameter.
    #[arg(long, value_enum)]
    pub roots: Option<ColourArg>,
    /// Integer values tried for the other loop parameter (3, 5, 7, ..).
    #[arg(long, default_value_t = 2)]
    pub samples: usize,
    /// Refuse modules of larger dimension.
    #[arg(long, default_value_t = 400)]
    pub max_dim: u64,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    /// Chain length, 2 or 3.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// q_r as `re,im` or `re`.
    #[arg(long, value_parser = parse_complex, default_value = "0.6,0.8")]
    pub qr: Complex64,
    /// q_b as `re,im` or `re`.
    #[arg(long, value_parser = parse_complex, default_value = "1.3,-0.4")]
    pub qb: Complex64,
    /// Run the homomorphism check.
    #[arg(long)]
    pub check: bool,
    /// Emit the matrix of every basis diagram.
    #[arg(long)]
    pub matrices: bool,
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct YbeArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Fixed crossing parameter; drawn per point when unset.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Number of (u, v) points.
    #[arg(long, default_value_t = 20)]
    pub sweep: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also check transfer-matrix commutation on this many sites.
    #[arg(long)]
    pub transfer: Option<usize>,
    /// Pass threshold; 1e-12 for tl and 1e-10 for bubble when unset.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Pass threshold for transfer-matrix commutators.
    #[arg(long, default_value_t = 1e-9)]
    pub transfer_tolerance: f64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Caps the size of every exhaustive check.
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("expected `re,im` or `re`, got {s:?}");
    let mut parts = s.split(',');
    let re: f64 = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_values() {
        assert_eq!(parse_complex("0.5,-1").unwrap(), Complex64::new(0.5, -1.0));
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
