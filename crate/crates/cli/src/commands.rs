use std::fmt::Write as _;
use std::path::Path;

use bubble_core::basis::{labels, stratify, walk_count_in};
use bubble_core::diagram::{Colour, Palette};
use bubble_core::numeric::CMatrix;
use bubble_core::spinchain::{b2_matrix, diagram_matrix, homomorphism_check, NumericParams};
use bubble_core::stdmod::{gram_det_in, root_scan, GramDetReport, RootReport, StandardModule};
use bubble_core::yangbaxter::{
    family_rmatrix, sweep_points, transfer_commutator, ybe_residual, Family,
};
use num_complex::Complex64;
use serde::Serialize;

use crate::args::{BasisArgs, DimsArgs, Format, GramArgs, RepArgs, YbeArgs};
use crate::cache::load_basis;
use crate::error::CliError;

/// Rendered output plus the reason for a property failure, if any.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn new(text: String) -> Self {
        Outcome {
            text,
            failure: None,
        }
    }

    fn failing_if(mut self, failed: bool, why: impl FnOnce() -> String) -> Self {
        if failed {
            self.failure = Some(why());
        }
        self
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

fn json_only(format: Format, what: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("`{what}` output is JSON only"))),
    }
}

fn palette_name(p: Palette) -> &'static str {
    match p {
        Palette::Bi => "bi",
        Palette::Mono => "mono",
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Tl => "tl",
        Family::Bubble => "bubble",
    }
}

#[derive(Serialize)]
struct Cx {
    re: f64,
    im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

// basis --------------------------------------------------------------------

#[derive(Serialize)]
struct Stratum {
    i: usize,
    j: usize,
    count: usize,
    dim: u64,
}

#[derive(Serialize)]
struct BasisReport {
    n: usize,
    palette: &'static str,
    total: usize,
    strata: Vec<Stratum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagrams: Option<Vec<String>>,
}

pub fn basis(a: &BasisArgs, format: Format, cache: Option<&Path>) -> Result<Outcome, CliError> {
    json_only(format, "basis")?;
    let palette = a.palette.into();
    let b = load_basis(cache, a.n, palette, a.max_n)?;
    let strata = stratify(&b);
    let report = BasisReport {
        n: a.n,
        palette: palette_name(palette),
        total: b.len(),
        strata: labels(a.n, palette)
            .into_iter()
            .map(|(i, j)| Stratum {
                i,
                j,
                count: strata.get(&(i, j)).map_or(0, Vec::len),
                dim: walk_count_in(palette, a.n, i, j),
            })
            .collect(),
        diagrams: a.list.then(|| b.iter().map(|d| d.encode()).collect()),
    };
    Ok(Outcome::new(to_json(&report)))
}

// dims ---------------------------------------------------------------------

#[derive(Serialize)]
struct Dim {
    i: usize,
    j: usize,
    dim: u64,
}

#[derive(Serialize)]
struct RankCheck {
    basis_size: u64,
    sum_of_squares: u64,
    ok: bool,
}

#[derive(Serialize)]
struct DimsReport {
    n: usize,
    palette: &'static str,
    dims: Vec<Dim>,
    rank_check: RankCheck,
}

pub fn dims(a: &DimsArgs, format: Format, cache: Option<&Path>) -> Result<Outcome, CliError> {
    let palette = a.palette.into();
    let dims: Vec<Dim> = labels(a.n, palette)
        .into_iter()
        .map(|(i, j)| Dim {
            i,
            j,
            dim: walk_count_in(palette, a.n, i, j),
        })
        .collect();
    let sum_of_squares = dims
        .iter()
        .map(|d| d.dim.saturating_mul(d.dim))
        .fold(0u64, u64::saturating_add);
    let basis_size = load_basis(cache, a.n, palette, a.max_n)?.len() as u64;
    let rank_check = RankCheck {
        basis_size,
        sum_of_squares,
        ok: basis_size == sum_of_squares,
    };
    let ok = rank_check.ok;
    let text = match format {
        Format::Json => to_json(&DimsReport {
            n: a.n,
            palette: palette_name(palette),
            dims,
            rank_check,
        }),
        Format::Csv => {
            let mut s = String::from("i,j,dim\n");
            for d in &dims {
                writeln!(s, "{},{},{}", d.i, d.j, d.dim).unwrap();
            }
            eprintln!("rank check: {basis_size} = {sum_of_squares}");
            s
        }
    };
    Ok(Outcome::new(text).failing_if(!ok, || {
        format!(
            "rank check failed: |B_{}| = {basis_size}, sum of squares = {sum_of_squares}",
            a.n
        )
    }))
}

// gram ---------------------------------------------------------------------

#[derive(Serialize)]
struct Block {
    word: String,
    indices: Vec<usize>,
    det: String,
}

#[derive(Serialize)]
struct RootOut {
    root: Cx,
    multiplicity: usize,
    /// `(m, k)` with `root = 2 cos(pi m / k)`.
    root_of_unity: Option<(u32, u32)>,
}

#[derive(Serialize)]
struct ScanOut {
    other_value: i64,
    degenerate: bool,
    roots: Vec<RootOut>,
}

#[derive(Serialize)]
struct RootsOut {
    colour: char,
    all_roots_of_unity: bool,
    scans: Vec<ScanOut>,
}

impl From<RootReport> for RootsOut {
    fn from(r: RootReport) -> Self {
        RootsOut {
            colour: r.colour.letter(),
            all_roots_of_unity: r.all_roots_of_unity,
            scans: r
                .scans
                .into_iter()
                .map(|s| ScanOut {
                    other_value: s.other_value,
                    degenerate: s.degenerate,
                    roots: s
                        .roots
                        .into_iter()
                        .map(|x| RootOut {
                            root: x.root.into(),
                            multiplicity: x.multiplicity,
                            root_of_unity: x.root_of_unity,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct GramReport {
    n: usize,
    i: usize,
    j: usize,
    palette: &'static str,
    dim: usize,
    basis: Vec<String>,
    entries: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    det: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    block_diagonal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<Block>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    roots: Option<RootsOut>,
}

pub fn gram(a: &GramArgs, format: Format) -> Result<Outcome, CliError> {
    json_only(format, "gram")?;
    let palette: Palette = a.palette.into();
    let module_dim = walk_count_in(palette, a.n, a.i, a.j);
    if module_dim > a.max_dim {
        return Err(CliError::Resource(format!(
            "dim Delta_{}({},{}) = {module_dim} exceeds --max-dim {}",
            a.n, a.i, a.j, a.max_dim
        )));
    }
    let m = StandardModule::new(a.n, a.i, a.j, palette)?;
    let g = m.gram_matrix()?;
    let dim = m.dim();
    let report: Option<GramDetReport> = if a.det || a.blocks {
        Some(gram_det_in(palette, a.n, a.i, a.j)?)
    } else {
        None
    };
    let roots = match a.roots {
        None => None,
        Some(c) => {
            if palette != Palette::Bi {
                return Err(CliError::Usage(
                    "--roots needs the two-colour palette".into(),
                ));
            }
            let c: Colour = c.into();
            Some(RootsOut::from(root_scan(a.n, a.i, a.j, c, a.samples)?))
        }
    };
    let out = GramReport {
        n: a.n,
        i: a.i,
        j: a.j,
        palette: palette_name(palette),
        dim,
        basis: m.basis().iter().map(|b| b.encode()).collect(),
        entries: (0..dim)
            .map(|r| g.row(r).iter().map(|p| p.to_string()).collect())
            .collect(),
        det: report.as_ref().filter(|_| a.det).map(|r| r.det.to_string()),
        block_diagonal: report
            .as_ref()
            .filter(|_| a.blocks)
            .map(|r| r.block_diagonal),
        blocks: report.as_ref().filter(|_| a.blocks).map(|r| {
            r.blocks
                .iter()
                .map(|b| Block {
                    word: b.word.clone(),
                    indices: b.indices.clone(),
                    det: b.det.to_string(),
                })
                .collect()
        }),
        roots,
    };
    Ok(Outcome::new(to_json(&out)))
}

// rep ----------------------------------------------------------------------

#[derive(Serialize)]
struct HomCheck {
    products_checked: usize,
    max_residual: f64,
    tolerance: f64,
    ok: bool,
}

#[derive(Serialize)]
struct MatrixOut {
    diagram: String,
    rows: usize,
    cols: usize,
    entries: String,
}

#[derive(Serialize)]
struct RepReport {
    n: usize,
    q_r: Cx,
    q_b: Cx,
    delta_r: Cx,
    delta_b: Cx,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<HomCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrices: Option<Vec<MatrixOut>>,
}

/// Row-major `re,im;re,im;...`.
pub fn matrix_text(m: &CMatrix) -> String {
    let mut s = String::new();
    for (k, z) in m.as_slice().iter().enumerate() {
        if k > 0 {
            s.push(';');
        }
        write!(s, "{},{}", z.re, z.im).unwrap();
    }
    s
}

pub fn rep(a: &RepArgs, format: Format, cache: Option<&Path>) -> Result<Outcome, CliError> {
    json_only(format, "rep")?;
    if !(2..=3).contains(&a.n) {
        return Err(CliError::Usage(format!(
            "rep supports n = 2 or 3, not {}",
            a.n
        )));
    }
    let p = NumericParams::new(a.qr, a.qb)?;
    let check = if a.check {
        let r = homomorphism_check(a.n, &p, a.tolerance)?;
        Some(HomCheck {
            products_checked: r.products_checked,
            max_residual: r.max_residual,
            tolerance: r.tolerance,
            ok: r.ok,
        })
    } else {
        None
    };
    let matrices = if a.matrices {
        let mut out = Vec::new();
        for d in load_basis(cache, a.n, Palette::Bi, 3)? {
            let m = if a.n == 2 {
                b2_matrix(&d, &p)?
            } else {
                diagram_matrix(&d, &p)?
            };
            out.push(MatrixOut {
                diagram: d.encode(),
                rows: m.rows(),
                cols: m.cols(),
                entries: matrix_text(&m),
            });
        }
        Some(out)
    } else {
        None
    };
    let failed = check.as_ref().is_some_and(|c| !c.ok);
    let residual = check.as_ref().map_or(0.0, |c| c.max_residual);
    let report = RepReport {
        n: a.n,
        q_r: a.qr.into(),
        q_b: a.qb.into(),
        delta_r: p.delta(Colour::Red).into(),
        delta_b: p.delta(Colour::Blue).into(),
        check,
        matrices,
    };
    Ok(Outcome::new(to_json(&report)).failing_if(failed, || {
        format!(
            "homomorphism residual {residual:e} exceeds {:e}",
            a.tolerance
        )
    }))
}

// ybe ----------------------------------------------------------------------

#[derive(Serialize)]
struct Point {
    u: f64,
    v: f64,
    lambda: f64,
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    commutator: Option<f64>,
}

#[derive(Serialize)]
struct Stats {
    max: f64,
    median: f64,
}

#[derive(Serialize)]
struct TransferStats {
    n: usize,
    tolerance: f64,
    max: f64,
    median: f64,
}

#[derive(Serialize)]
struct YbeReport {
    family: &'static str,
    lambda: Option<f64>,
    sweep: usize,
    seed: u64,
    tolerance: f64,
    residual: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    transfer: Option<TransferStats>,
    ok: bool,
    points: Vec<Point>,
}

fn stats(values: &[f64]) -> Stats {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let median = match v.len() {
        0 => 0.0,
        k if k % 2 == 1 => v[k / 2],
        k => 0.5 * (v[k / 2 - 1] + v[k / 2]),
    };
    Stats {
        max: v.last().copied().unwrap_or(0.0),
        median,
    }
}

pub fn ybe(a: &YbeArgs, format: Format) -> Result<Outcome, CliError> {
    let family: Family = a.family.into();
    if let Some(l) = a.lambda {
        family.check_lambda(l)?;
    }
    let tolerance = a.tolerance.unwrap_or(match family {
        Family::Tl => 1e-12,
        Family::Bubble => 1e-10,
    });
    let mut points = Vec::with_capacity(a.sweep);
    for (u, v, drawn) in sweep_points(family, a.sweep, a.seed, 0.1) {
        let lambda = a.lambda.unwrap_or(drawn);
        let r = family_rmatrix(family, lambda);
        let residual = ybe_residual(&r, u, v)?;
        let commutator = match a.transfer {
            Some(n) => Some(transfer_commutator(&r, n, u, v)?),
            None => None,
        };
        points.push(Point {
            u,
            v,
            lambda,
            residual,
            commutator,
        });
    }
    let residual = stats(&points.iter().map(|p| p.residual).collect::<Vec<_>>());
    let transfer = a.transfer.map(|n| {
        let s = stats(
            &points
                .iter()
                .filter_map(|p| p.commutator)
                .collect::<Vec<_>>(),
        );
        TransferStats {
            n,
            tolerance: a.transfer_tolerance,
            max: s.max,
            median: s.median,
        }
    });
    let ybe_ok = residual.max < tolerance;
    let transfer_ok = transfer.as_ref().is_none_or(|t| t.max < t.tolerance);
    let why = format!(
        "max residual {:e} (tolerance {tolerance:e}){}",
        residual.max,
        transfer
            .as_ref()
            .map(|t| format!(", max commutator {:e} (tolerance {:e})", t.max, t.tolerance))
            .unwrap_or_default()
    );
    let text = match format {
        Format::Json => to_json(&YbeReport {
            family: family_name(family),
            lambda: a.lambda,
            sweep: a.sweep,
            seed: a.seed,
            tolerance,
            residual,
            transfer,
            ok: ybe_ok && transfer_ok,
            points,
        }),
        Format::Csv => {
            let mut s = String::from("u,v,lambda,residual");
            s.push_str(if a.transfer.is_some() {
                ",commutator\n"
            } else {
                "\n"
            });
            for p in &points {
                write!(s, "{},{},{},{}", p.u, p.v, p.lambda, p.residual).unwrap();
                if let Some(c) = p.commutator {
                    write!(s, ",{c}").unwrap();
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::new(text).failing_if(!(ybe_ok && transfer_ok), || why))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(stats(&[3.0, 1.0, 2.0]).median, 2.0);
        assert_eq!(stats(&[4.0, 1.0, 2.0, 3.0]).median, 2.5);
        assert_eq!(stats(&[]).max, 0.0);
    }

    #[test]
    fn matrix_text_is_row_major() {
        let m = CMatrix::from_fn(2, 2, |r, c| Complex64::new((2 * r + c) as f64, 0.5));
        assert_eq!(matrix_text(&m), "0,0.5;1,0.5;2,0.5;3,0.5");
    }
}
