use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Colour, Composite, Diagram, DiagramError, Palette};
use crate::exactpoly::LaurentPoly;

/// A finite linear combination of diagrams with Laurent coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    n_north: usize,
    n_south: usize,
    terms: BTreeMap<Diagram, LaurentPoly>,
}

impl Element {
    pub fn zero(n_north: usize, n_south: usize) -> Self {
        Element {
            n_north,
            n_south,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: Diagram) -> Self {
        Self::from_term(d, LaurentPoly::one())
    }

    pub fn from_term(d: Diagram, coeff: LaurentPoly) -> Self {
        let mut e = Self::zero(d.n_north(), d.n_south());
        e.add_term(d, coeff);
        e
    }

    pub fn n_north(&self) -> usize {
        self.n_north
    }

    pub fn n_south(&self) -> usize {
        self.n_south
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> LaurentPoly {
        self.terms.get(d).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Adds `coeff * d`, pruning a cancelled term.
    ///
    /// # Panics
    /// If `d` has the wrong shape.
    pub fn add_term(&mut self, d: Diagram, coeff: LaurentPoly) {
        assert_eq!(
            (d.n_north(), d.n_south()),
            (self.n_north, self.n_south),
            "diagram shape differs from element shape"
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, DiagramError> {
        if (self.n_north, self.n_south) != (other.n_north, other.n_south) {
            return Err(DiagramError::Parameter("elements of different shapes"));
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &LaurentPoly) -> Element {
        let mut out = Element::zero(self.n_north, self.n_south);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * s);
        }
        out
    }

    /// The product `self * other`, with `self` stacked on top. Each closed
    /// loop of colour `c` becomes a factor `dc`.
    pub fn compose(&self, other: &Element) -> Result<Element, DiagramError> {
        if self.n_south != other.n_north {
            return Err(DiagramError::SizeMismatch {
                top_south: self.n_south,
                bottom_north: other.n_north,
            });
        }
        let mut out = Element::zero(self.n_north, other.n_south);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Composite::Diagram {
                    loops_r,
                    loops_b,
                    result,
                } = a.compose(b)?
                {
                    let weight = LaurentPoly::monomial(loops_r as i32, loops_b as i32);
                    out.add_term(result, &(ca * cb) * &weight);
                }
            }
        }
        Ok(out)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Diagram) -> bool) -> Element {
        Element {
            n_north: self.n_north,
            n_south: self.n_south,
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| keep(d))
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }
}

pub fn element_compose(x: &Element, y: &Element) -> Result<Element, DiagramError> {
    x.compose(y)
}

impl From<Diagram> for Element {
    fn from(d: Diagram) -> Self {
        Element::from_diagram(d)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0[{},{}]", self.n_north, self.n_south);
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) {d}")?;
        }
        Ok(())
    }
}

fn colourings(len: usize, palette: Palette) -> Vec<Vec<Colour>> {
    let cs = palette.colours();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                cs.iter().map(move |&c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// The unit: the sum of all straight diagrams, one per strand colouring.
pub fn identity_element(n: usize, palette: Palette) -> Element {
    let mut e = Element::zero(n, n);
    for w in colourings(n, palette) {
        e.add_term(Diagram::straight(&w), LaurentPoly::one());
    }
    e
}

/// `d -> I_r(d) + I_b(d)`: one new propagating strand at the right, in
/// every palette colour.
pub fn natural_inclusion(x: &Element, palette: Palette) -> Element {
    let mut out = Element::zero(x.n_north() + 1, x.n_south() + 1);
    for (d, c) in x.terms() {
        for &col in palette.colours() {
            out.add_term(d.extend_right(col), c.clone());
        }
    }
    out
}

/// Mirror of [`natural_inclusion`]: the new strand goes on the left.
pub fn left_inclusion(x: &Element, palette: Palette) -> Element {
    let mut out = Element::zero(x.n_north() + 1, x.n_south() + 1);
    for (d, c) in x.terms() {
        for &col in palette.colours() {
            out.add_term(d.extend_left(col), c.clone());
        }
    }
    out
}

/// Cup-caps at the 1-based adjacent position pairs `(p, p+1)` listed in
/// `cups`, caps coloured by `north` and cups by `south`, with the remaining
/// strands coloured by `strands`.
fn cup_cap_diagram(
    n: usize,
    cups: &[usize],
    north: &[Colour],
    south: &[Colour],
    strands: &[Colour],
) -> Diagram {
    let mut mate = vec![0u8; 2 * n];
    let mut colour = vec![Colour::Red; 2 * n];
    let mut used = vec![false; n];
    for (k, &p) in cups.iter().enumerate() {
        let a = p - 1;
        used[a] = true;
        used[a + 1] = true;
        mate[a] = (a + 1) as u8;
        mate[a + 1] = a as u8;
        colour[a] = north[k];
        colour[a + 1] = north[k];
        mate[n + a] = (n + a + 1) as u8;
        mate[n + a + 1] = (n + a) as u8;
        colour[n + a] = south[k];
        colour[n + a + 1] = south[k];
    }
    let mut s = strands.iter();
    for p in (0..n).filter(|&p| !used[p]) {
        let c = *s.next().expect("one colour per strand");
        mate[p] = (n + p) as u8;
        mate[n + p] = p as u8;
        colour[p] = c;
        colour[n + p] = c;
    }
    Diagram::from_raw(n, n, mate, colour)
}

/// The cup-cap at strands `(i, i+1)` (1-based) with a cap of colour
/// `north`, a cup of colour `south`, and the other strands coloured by
/// `strands` from left to right.
pub fn u_coloured(
    n: usize,
    i: usize,
    north: Colour,
    south: Colour,
    strands: &[Colour],
) -> Result<Diagram, DiagramError> {
    if i == 0 || i >= n {
        return Err(DiagramError::Parameter("U_i needs 1 <= i < n"));
    }
    if strands.len() != n - 2 {
        return Err(DiagramError::Parameter("U_i needs n - 2 strand colours"));
    }
    Ok(cup_cap_diagram(n, &[i], &[north], &[south], strands))
}

/// The all-white generator `U_i` (1-based `i`): the sum over every
/// colouring of its `n` lines.
pub fn u_generator(n: usize, i: usize, palette: Palette) -> Result<Element, DiagramError> {
    if i == 0 || i >= n {
        return Err(DiagramError::Parameter("U_i needs 1 <= i < n"));
    }
    let mut e = Element::zero(n, n);
    for w in colourings(n, palette) {
        e.add_term(
            cup_cap_diagram(n, &[i], &w[..1], &w[1..2], &w[2..]),
            LaurentPoly::one(),
        );
    }
    Ok(e)
}

/// The all-white `e_l` on `n` strands with `m = (n - l)/2` cup-caps at
/// `(1,2), (3,4), ..`, i.e. `U_1 U_3 .. U_{2m-1}`.
pub fn e_l(n: usize, l: usize, palette: Palette) -> Result<Element, DiagramError> {
    if l > n || !(n - l).is_multiple_of(2) {
        return Err(DiagramError::Parameter("e_l needs l <= n and n - l even"));
    }
    let m = (n - l) / 2;
    let cups: Vec<usize> = (0..m).map(|k| 2 * k + 1).collect();
    let mut e = Element::zero(n, n);
    for w in colourings(n, palette) {
        e.add_term(
            cup_cap_diagram(n, &cups, &w[..m], &w[m..2 * m], &w[2 * m..]),
            LaurentPoly::one(),
        );
    }
    Ok(e)
}

/// `e^r_w`: `m` red cup-caps side by side on the left, then propagating
/// strands coloured by `w`.
pub fn e_r_w(m: usize, w: &[Colour]) -> Diagram {
    let n = 2 * m + w.len();
    let cups: Vec<usize> = (0..m).map(|k| 2 * k + 1).collect();
    let reds = vec![Colour::Red; m];
    cup_cap_diagram(n, &cups, &reds, &reds, w)
}
