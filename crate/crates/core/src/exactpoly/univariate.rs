//! Dense univariate integer polynomials, used to locate the roots of Gram
//! determinants after the other loop parameter has been specialised.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{LaurentPoly, PolyError, Variable};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("nonzero divisor");
        let mut r = self.coeffs.clone();
        let lc = d.lead().clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[k + shift] -= &top * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Primitive greatest common divisor, via the primitive PRS.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Exact quotient over the integers.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly, PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(IntPoly::new(Vec::new()));
        }
        let Some(top) = self.degree().and_then(|p| p.checked_sub(dd)) else {
            return Err(PolyError::InexactDivision);
        };
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); top + 1];
        for shift in (0..=top).rev() {
            let (c, rem) = r[shift + dd].div_rem(d.lead());
            if !rem.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[k + shift] -= &c * dc;
            }
            q[shift] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::InexactDivision);
        }
        Ok(IntPoly::new(q))
    }

    /// Square-free decomposition: `(factor, multiplicity)` pairs whose
    /// product, with each factor raised to its multiplicity, equals `self` up
    /// to an integer constant. Constant factors are dropped.
    ///
    /// Musser's gcd iteration; all operands are kept primitive so every
    /// quotient is exact over the integers.
    pub fn square_free_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.primitive();
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_exact(&c).expect("gcd divides").primitive();
        let mut k = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y).expect("gcd divides").primitive();
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, k));
            }
            k += 1;
            c = c.div_exact(&y).expect("gcd divides").primitive();
            w = y;
        }
        out
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * x + c.to_f64().unwrap_or(f64::NAN)
            })
    }

    /// Numeric roots (with repetition) of a polynomial assumed to have simple
    /// roots, by Aberth-Ehrlich iteration followed by Newton polishing.
    pub fn simple_roots(&self) -> Vec<Complex64> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        // Normalise to a monic float polynomial.
        let lead = self.lead().to_f64().unwrap_or(f64::NAN);
        let c: Vec<f64> = self
            .coeffs
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN) / lead)
            .collect();
        let eval = |x: Complex64| -> (Complex64, Complex64) {
            let mut p = Complex64::new(0.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            for &a in c.iter().rev() {
                dp = dp * x + p;
                p = p * x + a;
            }
            (p, dp)
        };
        let radius = 1.0 + c[..deg].iter().fold(0.0f64, |m, a| m.max(a.abs()));
        let mut z: Vec<Complex64> = (0..deg)
            .map(|k| {
                let theta = 2.0 * core::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
                Complex64::from_polar(0.5 * radius, theta)
            })
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for k in 0..deg {
                let (p, dp) = eval(z[k]);
                if p == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 = (0..deg)
                    .filter(|&j| j != k)
                    .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
            if moved < 1e-16 {
                break;
            }
        }
        for root in z.iter_mut() {
            for _ in 0..4 {
                let (p, dp) = eval(*root);
                if dp.norm() == 0.0 {
                    break;
                }
                *root -= p / dp;
            }
        }
        z
    }
}

/// Restricts a two-variable Laurent polynomial to one variable by
/// substituting an integer for the other.
///
/// Negative powers of the substituted variable are cleared by multiplying
/// through by a power of `value`; negative powers of the kept variable are
/// cleared by multiplying by a power of that variable. Neither step moves a
/// nonzero root.
pub fn specialise(p: &LaurentPoly, keep: Variable, value: i64) -> Result<IntPoly, PolyError> {
    let Some(((rmin, rmax), (bmin, bmax))) = p.exponent_box() else {
        return Ok(IntPoly::new(Vec::new()));
    };
    let ((kmin, kmax), (omin, omax)) = match keep {
        Variable::Dr => ((rmin, rmax), (bmin, bmax)),
        Variable::Db => ((bmin, bmax), (rmin, rmax)),
    };
    if value == 0 && omin < 0 {
        let other = match keep {
            Variable::Dr => Variable::Db,
            Variable::Db => Variable::Dr,
        };
        return Err(PolyError::ZeroSubstitution(other));
    }
    let kshift = (-kmin).max(0);
    let oshift = (-omin).max(0);
    let len = (kmax + kshift + 1) as usize;
    let mut coeffs = vec![BigInt::zero(); len];
    let v = BigInt::from(value);
    let _ = omax;
    for (m, c) in p.terms() {
        let (ke, oe) = match keep {
            Variable::Dr => (m.r, m.b),
            Variable::Db => (m.b, m.r),
        };
        let weight = num_traits::pow(v.clone(), (oe + oshift) as usize);
        coeffs[(ke + kshift) as usize] += c * weight;
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = ip(&[-2, 1, 1]);
        let b = ip(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), ip(&[-1, 1]));
    }

    #[test]
    fn yun_separates_multiplicities() {
        // x^2 (x-1)^3 (x+1)
        let x = ip(&[0, 1]);
        let xm1 = ip(&[-1, 1]);
        let xp1 = ip(&[1, 1]);
        let mul = |a: &IntPoly, b: &IntPoly| {
            let mut c = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
            for (i, x) in a.coeffs.iter().enumerate() {
                for (j, y) in b.coeffs.iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
            IntPoly::new(c)
        };
        let p = mul(&mul(&mul(&x, &x), &mul(&mul(&xm1, &xm1), &xm1)), &xp1);
        let sf = p.square_free_decomposition();
        assert_eq!(sf, vec![(xp1, 1), (x, 2), (xm1, 3)]);
    }

    #[test]
    fn roots_of_simple_polynomial() {
        // x^2 - 2
        let roots = ip(&[-2, 0, 1]).simple_roots();
        let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 2f64.sqrt()).abs() < 1e-13);
        assert!((re[1] - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn specialisation_clears_negative_powers() {
        // dr^2 db^-1 - db  at db = 3  ->  (dr^2 - 9)/3  ~  dr^2 - 9
        let p = &LaurentPoly::monomial(2, -1) - &LaurentPoly::db();
        let s = specialise(&p, Variable::Dr, 3).unwrap();
        assert_eq!(s, ip(&[-9, 0, 1]));
    }
}
