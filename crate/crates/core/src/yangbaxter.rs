//! Baxterised R-matrices, Yang-Baxter and unitarity residuals, and row
//! transfer matrices.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::enumerate_basis;
use crate::diagram::Palette;
use crate::numeric::CMatrix;
use crate::spinchain::{b2_matrix, NumericParams};

/// Distance from a singular crossing parameter below which a builder
/// refuses to evaluate.
pub const SINGULAR_MARGIN: f64 = 1e-6;

/// Largest transfer matrix dimension built densely.
pub const MAX_TRANSFER_DIM: usize = 4096;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum YbeError {
    #[error("crossing parameter {0} is too close to a pole of the weights")]
    Singular(f64),
    #[error("R-matrices act on sites of dimension {0} and {1}")]
    Dimension(usize, usize),
    #[error("transfer matrix on {n} sites of dimension {m} exceeds the size bound")]
    TooLarge { n: usize, m: usize },
    #[error("chain length must be at least 1")]
    EmptyChain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// One colour, `q + 1/q = 2 cos(lambda)`.
    Tl,
    /// Two colours, `q_r = q_b = q`, `q + 1/q = -2 cos(2 lambda)`.
    Bubble,
}

impl Family {
    pub fn site_dim(self) -> usize {
        match self {
            Family::Tl => 2,
            Family::Bubble => 4,
        }
    }

    /// Rejects `lambda` near `k pi` (one colour) or `k pi / 3` (two colours).
    pub fn check_lambda(self, lambda: f64) -> Result<(), YbeError> {
        let period = match self {
            Family::Tl => PI,
            Family::Bubble => PI / 3.0,
        };
        let r = libm::remainder(lambda, period).abs();
        if !lambda.is_finite() || r < SINGULAR_MARGIN {
            return Err(YbeError::Singular(lambda));
        }
        Ok(())
    }
}

/// An R-matrix acting on two sites of dimension `m`.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub m: usize,
    pub matrix: CMatrix,
    pub provenance: String,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The one-colour monoid generator on `C^2 (x) C^2` for `q = e^{i lambda}`.
pub fn tl_generator(lambda: f64) -> CMatrix {
    let t = Complex64::from_polar(1.0, lambda / 2.0);
    let v = [c(0.0), t, t.inv(), c(0.0)];
    CMatrix::outer(&v, &v)
}

/// `sin(lambda - u)/sin(lambda) I + sin(u)/sin(lambda) e`.
pub fn rmatrix_tl(u: impl Into<Complex64>, lambda: f64) -> Result<RMatrix, YbeError> {
    Family::Tl.check_lambda(lambda)?;
    let u = u.into();
    let s = c(libm::sin(lambda));
    let a = (c(lambda) - u).sin() / s;
    let b = u.sin() / s;
    let mut m = CMatrix::identity(4).scale(a);
    m.add_scaled(&tl_generator(lambda), b);
    Ok(RMatrix {
        m: 2,
        matrix: m,
        provenance: alloc::format!("tl lambda={lambda} u={u}"),
    })
}

/// Coefficients of the two-colour Baxterisation, one per group of basis
/// diagrams.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BubbleWeights {
    /// `rr` and `bb` straight strands.
    pub straight_same: Complex64,
    /// `rb` and `br` straight strands.
    pub straight_mixed: Complex64,
    /// Cup-caps with cap and cup of one colour.
    pub cup_same: Complex64,
    /// Cup-caps with cap and cup of different colours.
    pub cup_mixed: Complex64,
    pub crossing: Complex64,
}

impl BubbleWeights {
    pub fn new(u: Complex64, lambda: f64) -> Result<Self, YbeError> {
        Family::Bubble.check_lambda(lambda)?;
        let l = c(lambda);
        let (s1, s3) = (c(libm::sin(lambda)), c(libm::sin(3.0 * lambda)));
        let su = u.sin();
        let s3u = (l * 3.0 - u).sin();
        Ok(BubbleWeights {
            straight_same: (l - u).sin() * s3u / (s1 * s3),
            straight_mixed: s3u / s3,
            cup_same: -su * (l * 2.0 - u).sin() / (s1 * s3),
            cup_mixed: su / s3,
            crossing: su * s3u / (s1 * s3),
        })
    }
}

/// `q = -e^{2 i lambda}` for both colours, principal square roots. This is
/// the loop value at which the two-colour weights solve the Yang-Baxter
/// equation; `q = -e^{i lambda}` does not.
pub fn bubble_params(lambda: f64) -> NumericParams {
    bubble_params_with_q(-Complex64::from_polar(1.0, 2.0 * lambda))
}

pub fn bubble_params_with_q(q: Complex64) -> NumericParams {
    NumericParams::new(q, q).expect("nonzero q")
}

/// Sums the ten two-strand basis matrices with the given weights.
pub fn rmatrix_bubble_with(w: &BubbleWeights, p: &NumericParams) -> CMatrix {
    let mut m = CMatrix::zeros(16, 16);
    for d in enumerate_basis(2, Palette::Bi).expect("n = 2 is within bounds") {
        let coeff = match (d.mate(0), d.colour(0), d.colour(1), d.colour(2)) {
            (2, a, b, _) if a == b => w.straight_same,
            (2, _, _, _) => w.straight_mixed,
            (3, _, _, _) => w.crossing,
            (_, a, _, s) if a == s => w.cup_same,
            _ => w.cup_mixed,
        };
        m.add_scaled(&b2_matrix(&d, p).expect("two-strand diagram"), coeff);
    }
    m
}

pub fn rmatrix_bubble(u: impl Into<Complex64>, lambda: f64) -> Result<RMatrix, YbeError> {
    let u = u.into();
    let w = BubbleWeights::new(u, lambda)?;
    Ok(RMatrix {
        m: 4,
        matrix: rmatrix_bubble_with(&w, &bubble_params(lambda)),
        provenance: alloc::format!("bubble lambda={lambda} u={u}"),
    })
}

/// An R-matrix builder for a family at fixed crossing parameter.
pub fn family_rmatrix(
    family: Family,
    lambda: f64,
) -> impl Fn(Complex64) -> Result<RMatrix, YbeError> {
    move |u| match family {
        Family::Tl => rmatrix_tl(u, lambda),
        Family::Bubble => rmatrix_bubble(u, lambda),
    }
}

/// Max-norm of the difference of the two sides of the braid-form
/// Yang-Baxter equation on the triple space.
pub fn ybe_residual<F>(
    r: F,
    u: impl Into<Complex64>,
    v: impl Into<Complex64>,
) -> Result<f64, YbeError>
where
    F: Fn(Complex64) -> Result<RMatrix, YbeError>,
{
    let (u, v) = (u.into(), v.into());
    let (ru, ruv, rv) = (r(u)?, r(u + v)?, r(v)?);
    if ru.m != rv.m || ru.m != ruv.m {
        return Err(YbeError::Dimension(ru.m, rv.m));
    }
    let id = CMatrix::identity(ru.m);
    let left = |x: &RMatrix| x.matrix.kron(&id);
    let right = |x: &RMatrix| id.kron(&x.matrix);
    let lhs = left(&ru).mul(&right(&ruv)).mul(&left(&rv));
    let rhs = right(&rv).mul(&left(&ruv)).mul(&right(&ru));
    Ok(lhs.max_diff(&rhs))
}

/// `R(u) R(-u) - c I` with `c = tr / dim`, the least-squares scalar.
pub fn unitarity_residual<F>(r: F, u: impl Into<Complex64>) -> Result<(f64, Complex64), YbeError>
where
    F: Fn(Complex64) -> Result<RMatrix, YbeError>,
{
    let u = u.into();
    let m = r(u)?.matrix.mul(&r(-u)?.matrix);
    let scalar = m.trace() / c(m.rows() as f64);
    let res = m.max_diff(&CMatrix::identity(m.rows()).scale(scalar));
    Ok((res, scalar))
}

/// Periodic row transfer matrix `tr_a R_{a1}(u) .. R_{an}(u)` with
/// `R = P R-check`.
pub fn transfer_matrix(r: &RMatrix, n: usize) -> Result<CMatrix, YbeError> {
    let m = r.m;
    if n == 0 {
        return Err(YbeError::EmptyChain);
    }
    let dim = m
        .checked_pow(n as u32)
        .filter(|&d| d <= MAX_TRANSFER_DIM)
        .ok_or(YbeError::TooLarge { n, m })?;
    // lax[(out, in)] is the auxiliary-space block for one site:
    // R[(a', s'), (a, s)] = Rcheck[(s', a'), (a, s)]
    let lax: Vec<CMatrix> = (0..m * m)
        .map(|k| {
            let (so, si) = (k / m, k % m);
            CMatrix::from_fn(m, m, |ao, ai| r.matrix[(so * m + ao, ai * m + si)])
        })
        .collect();
    let digits = |mut x: usize| {
        let mut d = alloc::vec![0usize; n];
        for slot in d.iter_mut().rev() {
            *slot = x % m;
            x /= m;
        }
        d
    };
    let mut t = CMatrix::zeros(dim, dim);
    for row in 0..dim {
        let outs = digits(row);
        for col in 0..dim {
            let ins = digits(col);
            let mut acc = lax[outs[0] * m + ins[0]].clone();
            for k in 1..n {
                acc = acc.mul(&lax[outs[k] * m + ins[k]]);
            }
            t[(row, col)] = acc.trace();
        }
    }
    Ok(t)
}

/// `max |T(u) T(v) - T(v) T(u)|`.
pub fn transfer_commutator<F>(
    r: F,
    n: usize,
    u: impl Into<Complex64>,
    v: impl Into<Complex64>,
) -> Result<f64, YbeError>
where
    F: Fn(Complex64) -> Result<RMatrix, YbeError>,
{
    let tu = transfer_matrix(&r(u.into())?, n)?;
    let tv = transfer_matrix(&r(v.into())?, n)?;
    Ok(tu.mul(&tv).max_diff(&tv.mul(&tu)))
}

/// Compares the all-red block of the two-colour R-matrix with a rescaled
/// one-colour R-matrix at crossing parameter `2 lambda - pi` (the same `q`)
/// and a matched spectral parameter. Returns the block residual and that parameter.
pub fn single_colour_block_check(
    u: impl Into<Complex64>,
    lambda: f64,
) -> Result<(f64, Complex64), YbeError> {
    let u = u.into();
    let full = rmatrix_bubble(u, lambda)?.matrix;
    let reds = [0usize, 1, 4, 5];
    let block = CMatrix::from_fn(4, 4, |i, j| full[(reds[i], reds[j])]);
    let w = BubbleWeights::new(u, lambda)?;
    let lp = 2.0 * lambda - PI;
    // sin(u') / sin(lp - u') = cup_same / straight_same
    let rho = w.cup_same / w.straight_same;
    let up = (rho * libm::sin(lp) / (c(1.0) + rho * libm::cos(lp))).atan();
    let tl = rmatrix_tl(up, lp)?.matrix;
    let scale = w.straight_same * c(libm::sin(lp)) / (c(lp) - up).sin();
    Ok((block.max_diff(&tl.scale(scale)), up))
}

/// Deterministic sweep points `(u, v, lambda)` with `lambda` kept at least
/// `margin` away from the family's poles.
pub fn sweep_points(family: Family, count: usize, seed: u64, margin: f64) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = move || rng.random::<f64>();
    let period = match family {
        Family::Tl => PI,
        Family::Bubble => PI / 3.0,
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u = 2.0 * next() - 1.0;
        let v = 2.0 * next() - 1.0;
        let lambda = 0.1 + (PI - 0.2) * next();
        if libm::remainder(lambda, period).abs() >= margin {
            out.push((u, v, lambda));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_families_start_at_identity() {
        let r = rmatrix_tl(0.0, PI / 5.0).unwrap();
        assert!(r.matrix.max_diff(&CMatrix::identity(4)) < 1e-15);
        let r = rmatrix_bubble(0.0, 0.7).unwrap();
        assert!(r.matrix.max_diff(&CMatrix::identity(16)) < 1e-14);
        let e = rmatrix_tl(PI / 5.0, PI / 5.0).unwrap();
        assert!(e.matrix.max_diff(&tl_generator(PI / 5.0)) < 1e-14);
    }

    #[test]
    fn singular_parameters_rejected() {
        assert!(rmatrix_tl(0.1, PI).is_err());
        assert!(rmatrix_bubble(0.1, PI / 3.0).is_err());
        assert!(rmatrix_bubble(0.1, 2.0 * PI / 3.0 + 1e-9).is_err());
        assert!(rmatrix_tl(0.1, PI / 3.0).is_ok());
    }

    #[test]
    fn yang_baxter_holds() {
        let tl = ybe_residual(family_rmatrix(Family::Tl, PI / 5.0), 0.3, 0.5).unwrap();
        assert!(tl < 1e-12, "{tl}");
        let bub = ybe_residual(family_rmatrix(Family::Bubble, 0.7), 0.3, 0.45).unwrap();
        assert!(bub < 1e-10, "{bub}");
        // the same weights with q + 1/q = -2 cos(lambda)
        let p = bubble_params_with_q(-Complex64::from_polar(1.0, 0.7));
        let literal = |u: Complex64| {
            Ok(RMatrix {
                m: 4,
                matrix: rmatrix_bubble_with(&BubbleWeights::new(u, 0.7)?, &p),
                provenance: String::new(),
            })
        };
        assert!(ybe_residual(literal, 0.3, 0.45).unwrap() > 1e-2);
    }

    #[test]
    fn unitarity() {
        let lambda = 0.9;
        let u = Complex64::new(0.35, 0.0);
        let (res, scalar) = unitarity_residual(family_rmatrix(Family::Tl, lambda), u).unwrap();
        let expect =
            (c(lambda) - u).sin() * (c(lambda) + u).sin() / (libm::sin(lambda) * libm::sin(lambda));
        assert!(res < 1e-12);
        assert!((scalar - expect).norm() < 1e-12);
        let (res, _) = unitarity_residual(family_rmatrix(Family::Bubble, lambda), u).unwrap();
        assert!(res < 1e-10);
    }

    #[test]
    fn transfer_matrices_commute() {
        let f = family_rmatrix(Family::Tl, 0.8);
        assert!(transfer_commutator(&f, 3, 0.2, 0.6).unwrap() < 1e-10);
        assert_eq!(transfer_matrix(&f(c(0.2)).unwrap(), 1).unwrap().rows(), 2);
        let g = family_rmatrix(Family::Bubble, 0.8);
        assert!(transfer_commutator(&g, 2, 0.2, 0.6).unwrap() < 1e-9);
    }

    #[test]
    fn red_block_is_rescaled_one_colour_matrix() {
        let (res, _) = single_colour_block_check(0.3, 0.7).unwrap();
        assert!(res < 1e-12, "{res}");
    }
}
