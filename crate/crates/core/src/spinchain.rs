//! The two-colour spin-chain representation on `(C^4)^n`.
//!
//! Each site carries a colour and an arrow; the site basis is
//! `r+, r-, b+, b-` and a chain state is read with the leftmost site most
//! significant. Rows of an operator are indexed by north (output) states and
//! columns by south (input) states.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::basis::enumerate_basis;
use crate::diagram::{left_inclusion, natural_inclusion, Colour, Diagram, Element, Palette};
use crate::numeric::CMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Residual tolerance for homomorphism checks at unit-scale parameters.
pub const HOM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SpinError {
    #[error("diagram {0} is not a two-strand basis diagram")]
    NotB2(String),
    #[error("site {k} is out of range for a chain of {n} sites")]
    Site { k: usize, n: usize },
    #[error("operator is {0}x{0}, expected 16x16")]
    NotTwoSite(usize),
    #[error("loop parameter q must be nonzero")]
    ZeroQ,
    #[error("homomorphism check is available for n = 2 or 3, not {0}")]
    ChainLength(usize),
    #[error("chain of {0} sites exceeds the dense size bound")]
    TooLarge(usize),
}

/// `q_r, q_b` together with fixed square roots `t_c` (`t_c^2 = q_c`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericParams {
    pub q_r: Complex64,
    pub q_b: Complex64,
    pub t_r: Complex64,
    pub t_b: Complex64,
}

impl NumericParams {
    /// Principal square roots.
    pub fn new(q_r: Complex64, q_b: Complex64) -> Result<Self, SpinError> {
        if q_r == ZERO || q_b == ZERO {
            return Err(SpinError::ZeroQ);
        }
        Ok(NumericParams {
            q_r,
            q_b,
            t_r: q_r.sqrt(),
            t_b: q_b.sqrt(),
        })
    }

    /// From chosen roots; `q_c` is set to `t_c^2`.
    pub fn from_roots(t_r: Complex64, t_b: Complex64) -> Result<Self, SpinError> {
        if t_r == ZERO || t_b == ZERO {
            return Err(SpinError::ZeroQ);
        }
        Ok(NumericParams {
            q_r: t_r * t_r,
            q_b: t_b * t_b,
            t_r,
            t_b,
        })
    }

    pub fn q(&self, c: Colour) -> Complex64 {
        match c {
            Colour::Red => self.q_r,
            Colour::Blue => self.q_b,
        }
    }

    pub fn t(&self, c: Colour) -> Complex64 {
        match c {
            Colour::Red => self.t_r,
            Colour::Blue => self.t_b,
        }
    }

    /// Loop value `q_c + 1/q_c`.
    pub fn delta(&self, c: Colour) -> Complex64 {
        let q = self.q(c);
        q + q.inv()
    }
}

pub const SITE_STATES: [(Colour, bool); 4] = [
    (Colour::Red, true),
    (Colour::Red, false),
    (Colour::Blue, true),
    (Colour::Blue, false),
];

fn site_index(c: Colour, up: bool) -> usize {
    2 * c.index() + usize::from(!up)
}

/// Labels of the 16 two-site basis vectors in order.
pub fn site_basis_order() -> Vec<String> {
    let label = |(c, up): (Colour, bool)| {
        let mut s = String::new();
        s.push(c.letter());
        s.push(if up { '+' } else { '-' });
        s
    };
    let mut out = Vec::with_capacity(16);
    for a in SITE_STATES {
        for b in SITE_STATES {
            out.push(alloc::format!("|{}{}>", label(a), label(b)));
        }
    }
    out
}

fn basis_vector(one_based: &[(usize, Complex64)]) -> Vec<Complex64> {
    let mut v = alloc::vec![ZERO; 16];
    for &(k, x) in one_based {
        v[k - 1] = x;
    }
    v
}

fn projector(one_based: [usize; 4]) -> CMatrix {
    let mut m = CMatrix::zeros(16, 16);
    for k in one_based {
        m[(k - 1, k - 1)] = ONE;
    }
    m
}

/// The ket of a cap of colour `c`; the matching bra is its transpose.
pub fn cap_vector(c: Colour, p: &NumericParams) -> Vec<Complex64> {
    let t = p.t(c);
    match c {
        Colour::Red => basis_vector(&[(2, t), (5, t.inv())]),
        Colour::Blue => basis_vector(&[(12, t), (15, t.inv())]),
    }
}

/// The crossing taking `rb` states to `br` states, as 1-based
/// `(row, column)` positions of its unit entries.
pub const CROSSING_RB_TO_BR: [(usize, usize); 4] = [(9, 3), (13, 4), (10, 7), (14, 8)];

/// The explicit 16x16 matrix of a two-strand basis diagram.
pub fn b2_matrix(d: &Diagram, p: &NumericParams) -> Result<CMatrix, SpinError> {
    if d.n_north() != 2 || d.n_south() != 2 {
        return Err(SpinError::NotB2(d.encode()));
    }
    let (n1, n2) = (d.colour(0), d.colour(1));
    let m = match d.mate(0) {
        2 => projector(match (n1, n2) {
            (Colour::Red, Colour::Red) => [1, 2, 5, 6],
            (Colour::Red, Colour::Blue) => [3, 4, 7, 8],
            (Colour::Blue, Colour::Red) => [9, 10, 13, 14],
            (Colour::Blue, Colour::Blue) => [11, 12, 15, 16],
        }),
        3 => {
            let mut x = CMatrix::zeros(16, 16);
            for (r, c) in CROSSING_RB_TO_BR {
                x[(r - 1, c - 1)] = ONE;
            }
            if n1 == Colour::Blue {
                x
            } else {
                x.transpose()
            }
        }
        _ => CMatrix::outer(&cap_vector(n1, p), &cap_vector(d.colour(2), p)),
    };
    Ok(m)
}

/// The matrix of any diagram, built line by line: a propagating line keeps
/// its site state, and an arc of colour `c` carries `c+ c-` with weight
/// `t_c` or `c- c+` with weight `1/t_c`, read left to right.
pub fn diagram_matrix(d: &Diagram, p: &NumericParams) -> Result<CMatrix, SpinError> {
    let (nn, ns) = (d.n_north(), d.n_south());
    if nn.max(ns) > 6 {
        return Err(SpinError::TooLarge(nn.max(ns)));
    }
    let pairs = d.pairs();
    let mut m = CMatrix::zeros(1 << (2 * nn), 1 << (2 * ns));
    let mut state = alloc::vec![0usize; nn + ns];
    for choice in 0u32..(1 << pairs.len()) {
        let mut w = ONE;
        for (k, &(a, b, c)) in pairs.iter().enumerate() {
            let up = choice >> k & 1 == 0;
            let propagating = d.is_north(a) != d.is_north(b);
            if propagating {
                state[a] = site_index(c, up);
                state[b] = site_index(c, up);
            } else {
                // `a < b` also means left of `b` on either edge
                state[a] = site_index(c, up);
                state[b] = site_index(c, !up);
                w *= if up { p.t(c) } else { p.t(c).inv() };
            }
        }
        let row = state[..nn].iter().fold(0, |acc, &s| 4 * acc + s);
        let col = state[nn..].iter().fold(0, |acc, &s| 4 * acc + s);
        m[(row, col)] += w;
    }
    Ok(m)
}

/// An element's matrix with `d_c = q_c + 1/q_c` substituted.
pub fn element_matrix(z: &Element, p: &NumericParams) -> Result<CMatrix, SpinError> {
    let mut m = CMatrix::zeros(1 << (2 * z.n_north()), 1 << (2 * z.n_south()));
    let (dr, db) = (p.delta(Colour::Red), p.delta(Colour::Blue));
    for (d, c) in z.terms() {
        let coeff = c
            .eval(dr, db)
            .expect("loop values of nonzero q are nonzero");
        m.add_scaled(&diagram_matrix(d, p)?, coeff);
    }
    Ok(m)
}

/// `id (x) m (x) id` with `m` on sites `k, k+1` (1-based) of `n`.
pub fn embed(m: &CMatrix, k: usize, n: usize) -> Result<CMatrix, SpinError> {
    if m.rows() != 16 || m.cols() != 16 {
        return Err(SpinError::NotTwoSite(m.rows()));
    }
    if k == 0 || k + 1 > n {
        return Err(SpinError::Site { k, n });
    }
    let left = CMatrix::identity(1 << (2 * (k - 1)));
    let right = CMatrix::identity(1 << (2 * (n - k - 1)));
    Ok(left.kron(m).kron(&right))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomomorphismReport {
    pub n: usize,
    pub products_checked: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub ok: bool,
}

/// Compares matrix products with diagram products evaluated at the loop
/// values. For `n = 2` all basis pairs are checked through the explicit
/// matrices; for `n = 3` every pair of embedded basis diagrams is checked,
/// together with the embedding itself.
pub fn homomorphism_check(
    n: usize,
    p: &NumericParams,
    tolerance: f64,
) -> Result<HomomorphismReport, SpinError> {
    let b2 = enumerate_basis(2, Palette::Bi).expect("n = 2 is within bounds");
    let mut worst = 0.0f64;
    let mut count = 0;
    match n {
        2 => {
            let mats = b2
                .iter()
                .map(|d| b2_matrix(d, p))
                .collect::<Result<Vec<_>, _>>()?;
            for (x, mx) in b2.iter().zip(&mats) {
                for (y, my) in b2.iter().zip(&mats) {
                    let prod = Element::from_diagram(x.clone())
                        .compose(&Element::from_diagram(y.clone()))
                        .expect("same shape");
                    let mut rhs = CMatrix::zeros(16, 16);
                    for (d, c) in prod.terms() {
                        let coeff = c
                            .eval(p.delta(Colour::Red), p.delta(Colour::Blue))
                            .expect("nonzero loop values");
                        rhs.add_scaled(&b2_matrix(d, p)?, coeff);
                    }
                    worst = worst.max(mx.mul(my).max_diff(&rhs));
                    count += 1;
                }
            }
        }
        3 => {
            let mut gens: Vec<(Element, CMatrix)> = Vec::new();
            for d in &b2 {
                let m = b2_matrix(d, p)?;
                let e = Element::from_diagram(d.clone());
                for (k, z) in [
                    (1, natural_inclusion(&e, Palette::Bi)),
                    (2, left_inclusion(&e, Palette::Bi)),
                ] {
                    let emb = embed(&m, k, 3)?;
                    worst = worst.max(emb.max_diff(&element_matrix(&z, p)?));
                    gens.push((z, emb));
                }
            }
            for (x, mx) in &gens {
                for (y, my) in &gens {
                    let prod = x.compose(y).expect("same shape");
                    worst = worst.max(mx.mul(my).max_diff(&element_matrix(&prod, p)?));
                    count += 1;
                }
            }
        }
        _ => return Err(SpinError::ChainLength(n)),
    }
    Ok(HomomorphismReport {
        n,
        products_checked: count,
        max_residual: worst,
        tolerance,
        ok: worst < tolerance,
    })
}
