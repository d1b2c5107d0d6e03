//! Laurent polynomials in the two loop parameters `dr` and `db`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// Exponent pair `dr^r * db^b`.
///
/// Ordered graded-lexicographically: total degree first, then the `dr`
/// exponent. The order is compatible with multiplication, which the exact
/// division routine relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub r: i32,
    pub b: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { r: 0, b: 0 };

    pub const fn new(r: i32, b: i32) -> Self {
        Monomial { r, b }
    }

    pub fn degree(self) -> i64 {
        self.r as i64 + self.b as i64
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.r.cmp(&other.r))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.r + rhs.r, self.b + rhs.b)
    }
}

/// Which loop parameter a univariate operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    Dr,
    Db,
}

/// Element of `Z[dr, 1/dr, db, 1/db]`.
///
/// Zero coefficients are never stored, so structural equality is ring
/// equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::term(c, 0, 0)
    }

    /// `c * dr^r * db^b`.
    pub fn term<C: Into<BigInt>>(c: C, r: i32, b: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(r, b), c);
        }
        LaurentPoly { terms }
    }

    /// The unit-coefficient monomial `dr^r * db^b`.
    pub fn monomial(r: i32, b: i32) -> Self {
        Self::term(1, r, b)
    }

    pub fn dr() -> Self {
        Self::monomial(1, 0)
    }

    pub fn db() -> Self {
        Self::monomial(0, 1)
    }

    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = LaurentPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    /// Returns the exponents when `self` is a single term with coefficient one.
    pub fn as_unit_monomial(&self) -> Option<Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(*m),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<(Monomial, &BigInt)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Per-variable exponent ranges `((min_r, max_r), (min_b, max_b))`.
    pub fn exponent_box(&self) -> Option<((i32, i32), (i32, i32))> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut bx = ((first.r, first.r), (first.b, first.b));
        for m in it {
            bx.0 .0 = bx.0 .0.min(m.r);
            bx.0 .1 = bx.0 .1.max(m.r);
            bx.1 .0 = bx.1 .0.min(m.b);
            bx.1 .1 = bx.1 .1.max(m.b);
        }
        Some(bx)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale_by_monomial(&self, m: Monomial) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k * m, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes complex values for `dr` and `db`.
    ///
    /// Each variable is handled Horner-style: terms are grouped by their `db`
    /// exponent and the `dr` part of each group is folded from the top.
    pub fn eval(&self, dr: Complex64, db: Complex64) -> Result<Complex64, PolyError> {
        let Some(((rmin, _), (bmin, _))) = self.exponent_box() else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        if rmin < 0 && dr == Complex64::new(0.0, 0.0) {
            return Err(PolyError::ZeroSubstitution(Variable::Dr));
        }
        if bmin < 0 && db == Complex64::new(0.0, 0.0) {
            return Err(PolyError::ZeroSubstitution(Variable::Db));
        }
        let mut by_b: BTreeMap<i32, Vec<(i32, f64)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_b.entry(m.b)
                .or_default()
                .push((m.r, c.to_f64().unwrap_or(f64::NAN)));
        }
        let horner = |x: Complex64, mut row: Vec<(i32, f64)>| -> Complex64 {
            // exponents in `row` are ascending; fold from the highest down to
            // the lowest, then multiply by x^lowest.
            row.sort_by_key(|t| t.0);
            let low = row[0].0;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut prev = row[row.len() - 1].0;
            for &(e, c) in row.iter().rev() {
                acc *= x.powi(prev - e);
                acc += c;
                prev = e;
            }
            acc * x.powi(low)
        };
        let group: Vec<(i32, Complex64)> = by_b
            .into_iter()
            .map(|(b, row)| (b, horner(dr, row)))
            .collect();
        let low = group[0].0;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev = group[group.len() - 1].0;
        for &(e, c) in group.iter().rev() {
            acc *= db.powi(prev - e);
            acc += c;
            prev = e;
        }
        Ok(acc * db.powi(low))
    }

    pub fn eval_real(&self, dr: f64, db: f64) -> Result<f64, PolyError> {
        self.eval(Complex64::new(dr, 0.0), Complex64::new(db, 0.0))
            .map(|z| z.re)
    }

    /// Exact quotient `self / divisor`, failing when the division leaves a
    /// remainder.
    ///
    /// Any quotient must have its per-variable exponents inside the box
    /// `[low(self) - low(d), high(self) - high(d)]`; leaving that box proves
    /// the division is inexact and also bounds the loop.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (pr, pb) = self.exponent_box().expect("nonzero");
        let (dr, db) = divisor.exponent_box().expect("nonzero");
        let qr = (pr.0 - dr.0, pr.1 - dr.1);
        let qb = (pb.0 - db.0, pb.1 - db.1);
        if qr.0 > qr.1 || qb.0 > qb.1 {
            return Err(PolyError::InexactDivision);
        }
        let (dlead, dcoef) = divisor.leading().expect("nonzero");
        let dcoef = dcoef.clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let (q, r) = c.div_rem(&dcoef);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            let t = Monomial::new(m.r - dlead.r, m.b - dlead.b);
            if t.r < qr.0 || t.r > qr.1 || t.b < qb.0 || t.b > qb.1 {
                return Err(PolyError::InexactDivision);
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(*dm * t, -(dc * &q));
            }
            quot.add_term(t, q);
        }
        Ok(quot)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Canonical text form: `c*dr^a*db^b` terms from the highest graded-lex
/// monomial down, joined by ` + ` / ` - `. The zero polynomial prints as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                write!(f, "{c}*dr^{}*db^{}", m.r, m.b)?;
            } else if c.is_negative() {
                write!(f, " - {}*dr^{}*db^{}", c.abs(), m.r, m.b)?;
            } else {
                write!(f, " + {c}*dr^{}*db^{}", m.r, m.b)?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let bad = || PolyError::Parse(String::from(s));
        // Split into signed chunks on the ` + ` / ` - ` separators.
        let mut chunks: Vec<(bool, &str)> = Vec::new();
        let mut rest = s;
        let mut negative = false;
        loop {
            let plus = rest.find(" + ");
            let minus = rest.find(" - ");
            let cut = match (plus, minus) {
                (Some(p), Some(m)) => Some(p.min(m)),
                (p, m) => p.or(m),
            };
            match cut {
                Some(at) => {
                    chunks.push((negative, &rest[..at]));
                    negative = &rest[at..at + 3] == " - ";
                    rest = &rest[at + 3..];
                }
                None => {
                    chunks.push((negative, rest));
                    break;
                }
            }
        }
        let mut p = LaurentPoly::zero();
        for (neg, chunk) in chunks {
            let mut parts = chunk.split('*');
            let c: BigInt = parts
                .next()
                .ok_or_else(bad)?
                .trim()
                .parse()
                .map_err(|_| bad())?;
            let r = parts
                .next()
                .and_then(|t| t.strip_prefix("dr^"))
                .and_then(|t| t.parse::<i32>().ok())
                .ok_or_else(bad)?;
            let b = parts
                .next()
                .and_then(|t| t.strip_prefix("db^"))
                .and_then(|t| t.parse::<i32>().ok())
                .ok_or_else(bad)?;
            if parts.next().is_some() {
                return Err(bad());
            }
            p.add_term(Monomial::new(r, b), if neg { -c } else { c });
        }
        Ok(p)
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

/// `a + b`.
pub fn poly_add(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p + q
}

/// `a * b`.
pub fn poly_mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p * q
}

pub fn poly_eval(p: &LaurentPoly, dr: Complex64, db: Complex64) -> Result<Complex64, PolyError> {
    p.eval(dr, db)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn dr() -> LaurentPoly {
        LaurentPoly::dr()
    }
    fn db() -> LaurentPoly {
        LaurentPoly::db()
    }

    #[test]
    fn additive_identity_and_cancellation() {
        assert_eq!(&dr() + &LaurentPoly::zero(), dr());
        let s = &dr() + &db();
        assert_eq!(s.len(), 2);
        let m = LaurentPoly::monomial(1, 1);
        assert!((&m + &(-&m)).is_zero());
    }

    #[test]
    fn products() {
        assert!((&dr() * &LaurentPoly::monomial(-1, 0)).is_one());
        let s = &dr() + &db();
        let sq = &s * &s;
        let expected = LaurentPoly::from_terms([
            (Monomial::new(2, 0), BigInt::from(1)),
            (Monomial::new(1, 1), BigInt::from(2)),
            (Monomial::new(0, 2), BigInt::from(1)),
        ]);
        assert_eq!(sq, expected);
        assert!((&dr() * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = LaurentPoly::monomial(1, 1);
        let v = p.eval_real(2.0, 3.0).unwrap();
        assert_eq!(v, 6.0);
        let p = &dr() + &LaurentPoly::monomial(-1, 0);
        assert!((p.eval_real(2.0, 17.0).unwrap() - 2.5).abs() < 1e-15);
        assert_eq!(
            LaurentPoly::monomial(1, 1).eval_real(0.0, 1.0).unwrap(),
            0.0
        );
        assert_eq!(
            LaurentPoly::monomial(-1, 0).eval_real(0.0, 1.0),
            Err(PolyError::ZeroSubstitution(Variable::Dr))
        );
    }

    #[test]
    fn text_form() {
        assert_eq!(LaurentPoly::monomial(1, 1).to_string(), "1*dr^1*db^1");
        let p = &(&dr() * &dr()) - &LaurentPoly::one();
        assert_eq!(p.to_string(), "1*dr^2*db^0 - 1*dr^0*db^0");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert!("1*dr^x*db^0".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = &(&dr() * &dr()) - &LaurentPoly::one();
        let b = &dr() - &LaurentPoly::one();
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, &dr() + &LaurentPoly::one());
        assert_eq!(dr().div_exact(&db()).unwrap(), LaurentPoly::monomial(1, -1));
        assert_eq!(
            a.div_exact(&(&dr() + &db())),
            Err(PolyError::InexactDivision)
        );
        assert_eq!(
            a.div_exact(&LaurentPoly::constant(2)),
            Err(PolyError::InexactDivision)
        );
    }
}
