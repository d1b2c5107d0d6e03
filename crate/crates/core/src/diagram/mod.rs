//! Two-colour bubble diagrams.
//!
//! A diagram is stored in normal form as a coloured perfect matching of its
//! boundary points in which no two lines of the same colour interleave.
//! Lines of different colours live on different sheets and may cross freely.
//!
//! Boundary points are numbered `0..n_north` along the north edge (left to
//! right) and `n_north..n_north + n_south` along the south edge (left to
//! right). Crossing is decided in the clockwise circular order
//! `N1 .. Nn, Sn .. S1`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

mod element;

pub use element::{
    e_l, e_r_w, element_compose, identity_element, left_inclusion, natural_inclusion, u_coloured,
    u_generator, Element,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub const ALL: [Colour; 2] = [Colour::Red, Colour::Blue];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Colour::Red => 'r',
            Colour::Blue => 'b',
        }
    }

    pub fn from_letter(c: char) -> Option<Colour> {
        match c {
            'r' => Some(Colour::Red),
            'b' => Some(Colour::Blue),
            _ => None,
        }
    }

    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

/// Number of line colours in play. `Mono` uses red only and reproduces the
/// ordinary Temperley-Lieb algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Palette {
    Mono,
    #[default]
    Bi,
}

impl Palette {
    pub fn colours(self) -> &'static [Colour] {
        match self {
            Palette::Mono => &[Colour::Red],
            Palette::Bi => &Colour::ALL,
        }
    }

    pub fn contains(self, c: Colour) -> bool {
        self.colours().contains(&c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("endpoint {point} is out of range for a diagram with {total} boundary points")]
    PointOutOfRange { point: usize, total: usize },
    #[error("endpoint {0} is used more than once or paired with itself")]
    NotAMatching(usize),
    #[error("endpoint {0} is not covered by any pair")]
    Uncovered(usize),
    #[error("lines ({a0},{a1}) and ({b0},{b1}) of the same colour cross")]
    SameColourCrossing {
        a0: usize,
        a1: usize,
        b0: usize,
        b1: usize,
    },
    #[error("cannot compose: {top_south} south points over {bottom_north} north points")]
    SizeMismatch {
        top_south: usize,
        bottom_north: usize,
    },
    #[error("too many boundary points")]
    TooLarge,
    #[error("cannot parse diagram {0:?}")]
    Parse(String),
    #[error("parameter out of range: {0}")]
    Parameter(&'static str),
}

/// A basis diagram: coloured matching with per-colour planarity.
///
/// `mate[p]` is the partner of point `p` and `colour[p]` the colour of the
/// line through `p`; both endpoints of a line carry the same colour.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    n_north: u8,
    n_south: u8,
    mate: Vec<u8>,
    colour: Vec<Colour>,
}

/// Outcome of stacking one diagram on another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composite {
    /// Colours disagreed at some glued point.
    Zero,
    Diagram {
        loops_r: u32,
        loops_b: u32,
        result: Diagram,
    },
}

impl Diagram {
    /// Validating constructor from 0-based `(p, q, colour)` triples.
    pub fn new(
        n_north: usize,
        n_south: usize,
        pairs: &[(usize, usize, Colour)],
    ) -> Result<Self, DiagramError> {
        let total = n_north + n_south;
        if total > u8::MAX as usize {
            return Err(DiagramError::TooLarge);
        }
        let mut mate = vec![u8::MAX; total];
        let mut colour = vec![Colour::Red; total];
        for &(p, q, c) in pairs {
            for x in [p, q] {
                if x >= total {
                    return Err(DiagramError::PointOutOfRange { point: x, total });
                }
            }
            if p == q || mate[p] != u8::MAX {
                return Err(DiagramError::NotAMatching(p));
            }
            if mate[q] != u8::MAX {
                return Err(DiagramError::NotAMatching(q));
            }
            mate[p] = q as u8;
            mate[q] = p as u8;
            colour[p] = c;
            colour[q] = c;
        }
        if let Some(p) = mate.iter().position(|&m| m == u8::MAX) {
            return Err(DiagramError::Uncovered(p));
        }
        let d = Diagram {
            n_north: n_north as u8,
            n_south: n_south as u8,
            mate,
            colour,
        };
        d.check_planarity()?;
        Ok(d)
    }

    /// Builds from raw arrays the caller guarantees to be a valid matching.
    pub(crate) fn from_raw(
        n_north: usize,
        n_south: usize,
        mate: Vec<u8>,
        colour: Vec<Colour>,
    ) -> Self {
        let d = Diagram {
            n_north: n_north as u8,
            n_south: n_south as u8,
            mate,
            colour,
        };
        debug_assert!(d.check_planarity().is_ok(), "same-colour crossing in {d}");
        d
    }

    /// The all-propagating straight diagram with the given strand colours.
    pub fn straight(colours: &[Colour]) -> Self {
        let n = colours.len();
        let mut mate = vec![0u8; 2 * n];
        let mut colour = vec![Colour::Red; 2 * n];
        for (k, &c) in colours.iter().enumerate() {
            mate[k] = (n + k) as u8;
            mate[n + k] = k as u8;
            colour[k] = c;
            colour[n + k] = c;
        }
        Diagram::from_raw(n, n, mate, colour)
    }

    pub fn n_north(&self) -> usize {
        self.n_north as usize
    }

    pub fn n_south(&self) -> usize {
        self.n_south as usize
    }

    pub fn points(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, p: usize) -> usize {
        self.mate[p] as usize
    }

    pub fn colour(&self, p: usize) -> Colour {
        self.colour[p]
    }

    pub fn is_north(&self, p: usize) -> bool {
        p < self.n_north as usize
    }

    /// Lines as 0-based `(p, q, colour)` with `p < q`, sorted by `p`.
    pub fn pairs(&self) -> Vec<(usize, usize, Colour)> {
        (0..self.points())
            .filter(|&p| p < self.mate(p))
            .map(|p| (p, self.mate(p), self.colour[p]))
            .collect()
    }

    /// Clockwise circular position of boundary point `p`.
    pub fn circular_position(&self, p: usize) -> usize {
        let nn = self.n_north as usize;
        if p < nn {
            p
        } else {
            nn + self.n_south as usize - 1 - (p - nn)
        }
    }

    /// Inverse of [`Diagram::circular_position`].
    pub fn point_at_circular(n_north: usize, n_south: usize, pos: usize) -> usize {
        if pos < n_north {
            pos
        } else {
            n_north + n_south - 1 - (pos - n_north)
        }
    }

    /// Whether two lines, given by their endpoints, interleave in the
    /// circular boundary order.
    pub fn lines_cross(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        let sorted = |(x, y): (usize, usize)| {
            let (px, py) = (self.circular_position(x), self.circular_position(y));
            (px.min(py), px.max(py))
        };
        let (a0, a1) = sorted(a);
        let (b0, b1) = sorted(b);
        (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
    }

    fn check_planarity(&self) -> Result<(), DiagramError> {
        // One stack per colour over the circular order; a close that does
        // not match the top of its colour's stack is a same-colour crossing.
        let total = self.points();
        let order: Vec<usize> = (0..total)
            .map(|pos| Self::point_at_circular(self.n_north(), self.n_south(), pos))
            .collect();
        let mut stacks: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        let mut seen = vec![false; total];
        for &p in &order {
            let c = self.colour[p].index();
            let q = self.mate(p);
            if seen[q] {
                let top = stacks[c].pop();
                if top != Some(q) {
                    let other = top.unwrap_or(q);
                    return Err(DiagramError::SameColourCrossing {
                        a0: q.min(p),
                        a1: q.max(p),
                        b0: other.min(self.mate(other)),
                        b1: other.max(self.mate(other)),
                    });
                }
            } else {
                stacks[c].push(p);
            }
            seen[p] = true;
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check_planarity().is_ok()
            && (0..self.points()).all(|p| {
                let q = self.mate(p);
                q < self.points() && q != p && self.mate(q) == p && self.colour[q] == self.colour[p]
            })
    }

    /// Propagating lines per colour, `(red, blue)`.
    pub fn propagating_index(&self) -> (usize, usize) {
        let mut idx = (0, 0);
        for p in 0..self.n_north() {
            if !self.is_north(self.mate(p)) {
                match self.colour[p] {
                    Colour::Red => idx.0 += 1,
                    Colour::Blue => idx.1 += 1,
                }
            }
        }
        idx
    }

    pub fn propagating_count(&self) -> usize {
        let (r, b) = self.propagating_index();
        r + b
    }

    /// Colours on the north edge, left to right.
    pub fn north_colours(&self) -> &[Colour] {
        &self.colour[..self.n_north()]
    }

    /// Colours on the south edge, left to right.
    pub fn south_colours(&self) -> &[Colour] {
        &self.colour[self.n_north()..]
    }

    /// The boundary colour word read clockwise from the top-left corner.
    pub fn rb_sequence(&self) -> Vec<Colour> {
        (0..self.points())
            .map(|pos| self.colour[Self::point_at_circular(self.n_north(), self.n_south(), pos)])
            .collect()
    }

    /// Whether no two lines cross at all, even of different colours.
    pub fn is_strictly_noncrossing(&self) -> bool {
        let pairs = self.pairs();
        pairs.iter().enumerate().all(|(k, a)| {
            pairs[k + 1..]
                .iter()
                .all(|b| !self.lines_cross((a.0, a.1), (b.0, b.1)))
        })
    }

    /// Mirror image in the horizontal axis: north and south swap.
    pub fn flip(&self) -> Diagram {
        let (nn, ns) = (self.n_north(), self.n_south());
        let map = |p: usize| if p < nn { ns + p } else { p - nn };
        let total = self.points();
        let mut mate = vec![0u8; total];
        let mut colour = vec![Colour::Red; total];
        for p in 0..total {
            mate[map(p)] = map(self.mate(p)) as u8;
            colour[map(p)] = self.colour[p];
        }
        Diagram::from_raw(ns, nn, mate, colour)
    }

    /// Same diagram with one extra propagating line of colour `c` at the
    /// right-hand end.
    pub fn extend_right(&self, c: Colour) -> Diagram {
        let (nn, ns) = (self.n_north(), self.n_south());
        let map = |p: usize| if p < nn { p } else { p + 1 };
        let total = self.points() + 2;
        let mut mate = vec![0u8; total];
        let mut colour = vec![c; total];
        for p in 0..self.points() {
            mate[map(p)] = map(self.mate(p)) as u8;
            colour[map(p)] = self.colour[p];
        }
        let (new_n, new_s) = (nn, nn + 1 + ns);
        mate[new_n] = new_s as u8;
        mate[new_s] = new_n as u8;
        Diagram::from_raw(nn + 1, ns + 1, mate, colour)
    }

    /// Same diagram with one extra propagating line of colour `c` at the
    /// left-hand end.
    pub fn extend_left(&self, c: Colour) -> Diagram {
        let (nn, ns) = (self.n_north(), self.n_south());
        let map = |p: usize| if p < nn { p + 1 } else { p + 2 };
        let total = self.points() + 2;
        let mut mate = vec![0u8; total];
        let mut colour = vec![c; total];
        for p in 0..self.points() {
            mate[map(p)] = map(self.mate(p)) as u8;
            colour[map(p)] = self.colour[p];
        }
        mate[0] = (nn + 1) as u8;
        mate[nn + 1] = 0;
        Diagram::from_raw(nn + 1, ns + 1, mate, colour)
    }

    /// Stacks `self` above `below`, gluing `self`'s south edge to `below`'s
    /// north edge point by point.
    pub fn compose(&self, below: &Diagram) -> Result<Composite, DiagramError> {
        let (a, b) = (self, below);
        let top_n = a.n_north();
        let mid = a.n_south();
        if mid != b.n_north() {
            return Err(DiagramError::SizeMismatch {
                top_south: mid,
                bottom_north: b.n_north(),
            });
        }
        if (0..mid).any(|k| a.colour[top_n + k] != b.colour[k]) {
            return Ok(Composite::Zero);
        }
        let bot_s = b.n_south();
        let total = top_n + bot_s;
        let mut mate = vec![u8::MAX; total];
        let mut colour = vec![Colour::Red; total];
        let mut mid_seen = vec![false; mid];

        // Follow a strand from an outer endpoint until it exits again.
        // `on_top` says which diagram the current point lives in.
        let chase = |mut on_top: bool, mut p: usize, mid_seen: &mut [bool]| -> usize {
            loop {
                if on_top {
                    let q = a.mate(p);
                    if q < top_n {
                        return q;
                    }
                    let k = q - top_n;
                    mid_seen[k] = true;
                    on_top = false;
                    p = k;
                } else {
                    let q = b.mate(p);
                    if q >= mid {
                        return top_n + (q - mid);
                    }
                    mid_seen[q] = true;
                    on_top = true;
                    p = top_n + q;
                }
            }
        };

        for start in 0..total {
            if mate[start] != u8::MAX {
                continue;
            }
            let end = if start < top_n {
                chase(true, start, &mut mid_seen)
            } else {
                chase(false, mid + (start - top_n), &mut mid_seen)
            };
            let c = if start < top_n {
                a.colour[start]
            } else {
                b.colour[mid + (start - top_n)]
            };
            mate[start] = end as u8;
            mate[end] = start as u8;
            colour[start] = c;
            colour[end] = c;
        }

        let mut loops = [0u32; 2];
        for k in 0..mid {
            if mid_seen[k] {
                continue;
            }
            loops[a.colour[top_n + k].index()] += 1;
            // walk the closed loop, marking its glue points
            let mut cur = k;
            loop {
                mid_seen[cur] = true;
                let below_mate = b.mate(cur);
                mid_seen[below_mate] = true;
                let above = a.mate(top_n + below_mate) - top_n;
                if above == k {
                    break;
                }
                cur = above;
            }
        }

        Ok(Composite::Diagram {
            loops_r: loops[0],
            loops_b: loops[1],
            result: Diagram::from_raw(top_n, bot_s, mate, colour),
        })
    }

    /// Canonical text encoding `D[n_north,n_south]{(p,q,c);...}` with
    /// 1-based endpoints and pairs sorted by their smaller endpoint.
    pub fn encode(&self) -> String {
        alloc::format!("{self}")
    }
}

pub fn make_diagram(
    n_north: usize,
    n_south: usize,
    coloured_pairs: &[(usize, usize, Colour)],
) -> Result<Diagram, DiagramError> {
    Diagram::new(n_north, n_south, coloured_pairs)
}

pub fn compose(a: &Diagram, b: &Diagram) -> Result<Composite, DiagramError> {
    a.compose(b)
}

pub fn propagating_index(d: &Diagram) -> (usize, usize) {
    d.propagating_index()
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[{},{}]{{", self.n_north, self.n_south)?;
        for (k, (p, q, c)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "({},{},{})", p + 1, q + 1, c.letter())?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DiagramError::Parse(String::from(s));
        let body = s.trim().strip_prefix("D[").ok_or_else(bad)?;
        let (dims, rest) = body.split_once(']').ok_or_else(bad)?;
        let (nn, ns) = dims.split_once(',').ok_or_else(bad)?;
        let nn: usize = nn.trim().parse().map_err(|_| bad())?;
        let ns: usize = ns.trim().parse().map_err(|_| bad())?;
        let inner = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut pairs = Vec::new();
        if !inner.is_empty() {
            for item in inner.split(';') {
                let item = item
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let mut it = item.split(',');
                let p: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let q: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let mut cs = it.next().ok_or_else(bad)?.chars();
                let c = cs.next().and_then(Colour::from_letter).ok_or_else(bad)?;
                if cs.next().is_some() || it.next().is_some() || p == 0 || q == 0 {
                    return Err(bad());
                }
                pairs.push((p - 1, q - 1, c));
            }
        }
        Diagram::new(nn, ns, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use Colour::{Blue as B, Red as R};

    fn cup_cap(c: Colour) -> Diagram {
        Diagram::new(2, 2, &[(0, 1, c), (2, 3, c)]).unwrap()
    }

    #[test]
    fn constructor_accepts_and_rejects() {
        let red = Diagram::new(1, 1, &[(0, 1, R)]).unwrap();
        assert_eq!(red.propagating_index(), (1, 0));
        let cross = Diagram::new(2, 2, &[(0, 3, R), (1, 2, B)]).unwrap();
        assert_eq!(cross.propagating_index(), (1, 1));
        assert!(matches!(
            Diagram::new(2, 2, &[(0, 3, R), (1, 2, R)]),
            Err(DiagramError::SameColourCrossing { .. })
        ));
        assert_eq!(
            Diagram::new(2, 2, &[(0, 3, R)]),
            Err(DiagramError::Uncovered(1))
        );
        assert_eq!(
            Diagram::new(1, 1, &[(0, 0, R)]),
            Err(DiagramError::NotAMatching(0))
        );
    }

    #[test]
    fn composition_basics() {
        let red = Diagram::straight(&[R]);
        let blue = Diagram::straight(&[B]);
        assert_eq!(
            red.compose(&red).unwrap(),
            Composite::Diagram {
                loops_r: 0,
                loops_b: 0,
                result: red.clone()
            }
        );
        assert_eq!(red.compose(&blue).unwrap(), Composite::Zero);
        let u = cup_cap(R);
        assert_eq!(
            u.compose(&u).unwrap(),
            Composite::Diagram {
                loops_r: 1,
                loops_b: 0,
                result: u.clone()
            }
        );
        assert_eq!(cup_cap(R).propagating_index(), (0, 0));
        assert!(matches!(
            red.compose(&u),
            Err(DiagramError::SizeMismatch {
                top_south: 1,
                bottom_north: 2
            })
        ));
    }

    #[test]
    fn loops_counted_per_colour() {
        // two nested blue arcs over the mirror image: two blue loops
        let top = Diagram::new(4, 4, &[(0, 3, B), (1, 2, B), (4, 7, R), (5, 6, R)]).unwrap();
        let bottom = top.flip();
        match top.compose(&bottom).unwrap() {
            Composite::Diagram {
                loops_r,
                loops_b,
                result,
            } => {
                assert_eq!((loops_r, loops_b), (2, 0));
                assert_eq!(result.north_colours(), &[B, B, B, B]);
            }
            Composite::Zero => panic!("colours match"),
        }
    }

    #[test]
    fn encoding_round_trip() {
        let u = cup_cap(R);
        assert_eq!(u.to_string(), "D[2,2]{(1,2,r);(3,4,r)}");
        assert_eq!("D[2,2]{(1,2,r);(3,4,r)}".parse::<Diagram>().unwrap(), u);
        assert_eq!("D[0,0]{}".parse::<Diagram>().unwrap().points(), 0);
        assert!("D[2,2]{(1,4,r);(2,3,r)}".parse::<Diagram>().is_err());
        assert!("D[2,2]{(1,2,g);(3,4,r)}".parse::<Diagram>().is_err());
    }

    #[test]
    fn circular_order_and_rb_sequence() {
        let d = Diagram::new(2, 2, &[(0, 3, B), (1, 2, R)]).unwrap();
        // N1 N2 S2 S1
        assert_eq!(d.rb_sequence(), alloc::vec![B, R, B, R]);
        assert!(!d.is_strictly_noncrossing());
        assert!(Diagram::straight(&[R, B]).is_strictly_noncrossing());
    }

    #[test]
    fn extend_right_appends_a_strand() {
        let d = Diagram::straight(&[R]).extend_right(B);
        assert_eq!(d, Diagram::straight(&[R, B]));
        assert_eq!(
            Diagram::straight(&[R]).extend_left(B),
            Diagram::straight(&[B, R])
        );
        let u = cup_cap(R).extend_left(B);
        assert_eq!(u.to_string(), "D[3,3]{(1,4,b);(2,3,r);(5,6,r)}");
        let u = cup_cap(R).extend_right(R);
        assert_eq!(u.to_string(), "D[3,3]{(1,2,r);(3,6,r);(4,5,r)}");
    }
}
