use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{is_label, BasisError, Label};
use crate::diagram::{Colour, Diagram, DiagramError, Palette};

/// What a framed point of a half diagram is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Link {
    /// An arc to another framed point (0-based).
    Arc(u8),
    /// A strand running down to the cut.
    Cut,
}

/// A bra: `n` framed points, each either arced to another framed point or
/// cut. Cut strands of one colour reach the cut in left-to-right order, and
/// the relative order of red and blue cut strands carries no information.
///
/// Canonical order is the derived one: links first, then colours with red
/// before blue.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfDiagram {
    links: Vec<Link>,
    colour: Vec<Colour>,
}

/// The four maps from `n`-point bras to `(n+1)`-point bras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HalfMap {
    /// New rightmost point carrying a red cut strand.
    AppendRed,
    AppendBlue,
    /// The rightmost red cut strand turns back to a new rightmost point.
    TurnBackRed,
    TurnBackBlue,
}

impl HalfMap {
    pub const ALL: [HalfMap; 4] = [
        HalfMap::AppendRed,
        HalfMap::AppendBlue,
        HalfMap::TurnBackRed,
        HalfMap::TurnBackBlue,
    ];

    pub fn colour(self) -> Colour {
        match self {
            HalfMap::AppendRed | HalfMap::TurnBackRed => Colour::Red,
            HalfMap::AppendBlue | HalfMap::TurnBackBlue => Colour::Blue,
        }
    }

    /// Label of the source bras for a given target label.
    pub fn source_label(self, (i, j): Label) -> Option<Label> {
        match self {
            HalfMap::AppendRed => i.checked_sub(1).map(|i| (i, j)),
            HalfMap::AppendBlue => j.checked_sub(1).map(|j| (i, j)),
            HalfMap::TurnBackRed => Some((i + 1, j)),
            HalfMap::TurnBackBlue => Some((i, j + 1)),
        }
    }
}

impl HalfDiagram {
    pub fn new(links: Vec<Link>, colour: Vec<Colour>) -> Result<Self, BasisError> {
        if links.len() != colour.len() {
            return Err(BasisError::Invalid("one colour per framed point"));
        }
        if links.len() > u8::MAX as usize {
            return Err(BasisError::Invalid("too many framed points"));
        }
        let h = HalfDiagram { links, colour };
        h.validate()?;
        Ok(h)
    }

    /// From 0-based arcs `(p, q, c)` and cuts `(p, c)`.
    pub fn from_parts(
        n: usize,
        arcs: &[(usize, usize, Colour)],
        cuts: &[(usize, Colour)],
    ) -> Result<Self, BasisError> {
        let mut links: Vec<Option<Link>> = vec![None; n];
        let mut colour = vec![Colour::Red; n];
        let mut set = |p: usize, l: Link, c: Colour| -> Result<(), BasisError> {
            if p >= n || links[p].is_some() {
                return Err(BasisError::Invalid("framed point out of range or reused"));
            }
            links[p] = Some(l);
            colour[p] = c;
            Ok(())
        };
        for &(p, q, c) in arcs {
            if q >= n || p == q {
                return Err(BasisError::Invalid("bad arc"));
            }
            set(p, Link::Arc(q as u8), c)?;
            set(q, Link::Arc(p as u8), c)?;
        }
        for &(p, c) in cuts {
            set(p, Link::Cut, c)?;
        }
        let links = links
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(BasisError::Invalid("framed point not covered"))?;
        HalfDiagram::new(links, colour)
    }

    fn validate(&self) -> Result<(), BasisError> {
        let mut stacks: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for p in 0..self.n() {
            let c = self.colour[p];
            match self.links[p] {
                Link::Cut => {
                    if !stacks[c.index()].is_empty() {
                        return Err(BasisError::Invalid("cut strand under an arc of its colour"));
                    }
                }
                Link::Arc(q) => {
                    let q = q as usize;
                    if q >= self.n() || q == p || self.links[q] != Link::Arc(p as u8) {
                        return Err(BasisError::Invalid("arcs are not a matching"));
                    }
                    if self.colour[q] != c {
                        return Err(BasisError::Invalid("arc changes colour"));
                    }
                    if q > p {
                        stacks[c.index()].push(p);
                    } else if stacks[c.index()].pop() != Some(q) {
                        return Err(BasisError::Invalid("arcs of one colour cross"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.links.len()
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// Colours of the framed points, left to right.
    pub fn colours(&self) -> &[Colour] {
        &self.colour
    }

    /// Number of cut strands per colour, `(red, blue)`.
    pub fn label(&self) -> Label {
        let mut l = (0, 0);
        for (link, c) in self.links.iter().zip(&self.colour) {
            if *link == Link::Cut {
                match c {
                    Colour::Red => l.0 += 1,
                    Colour::Blue => l.1 += 1,
                }
            }
        }
        l
    }

    /// Framed positions of the cut strands of one colour, left to right.
    pub fn cuts(&self, c: Colour) -> Vec<usize> {
        (0..self.n())
            .filter(|&p| self.links[p] == Link::Cut && self.colour[p] == c)
            .collect()
    }

    /// The north half of a diagram: its north points, with every
    /// propagating line cut.
    pub fn from_north(d: &Diagram) -> HalfDiagram {
        let n = d.n_north();
        let links = (0..n)
            .map(|p| {
                let q = d.mate(p);
                if q < n {
                    Link::Arc(q as u8)
                } else {
                    Link::Cut
                }
            })
            .collect();
        HalfDiagram {
            links,
            colour: d.north_colours().to_vec(),
        }
    }

    /// The bra as a diagram with `n` north points and one south point per
    /// cut strand, cut strands kept in their left-to-right order.
    pub fn to_diagram(&self) -> Diagram {
        let n = self.n();
        let slots: Vec<usize> = (0..n).filter(|&p| self.links[p] == Link::Cut).collect();
        let total = n + slots.len();
        let mut mate = vec![0u8; total];
        let mut colour = vec![Colour::Red; total];
        for p in 0..n {
            colour[p] = self.colour[p];
            if let Link::Arc(q) = self.links[p] {
                mate[p] = q;
            }
        }
        for (k, &p) in slots.iter().enumerate() {
            mate[p] = (n + k) as u8;
            mate[n + k] = p as u8;
            colour[n + k] = self.colour[p];
        }
        Diagram::from_raw(n, slots.len(), mate, colour)
    }

    /// Reads a bra back from a diagram of the shape built by
    /// [`HalfDiagram::to_diagram`]; `None` if two south points are joined.
    pub fn from_slotted(d: &Diagram) -> Option<HalfDiagram> {
        let n = d.n_north();
        if (n..d.points()).any(|s| d.mate(s) >= n) {
            return None;
        }
        Some(HalfDiagram::from_north(d))
    }

    /// Mirror image of the bra read as a ket, i.e. the slotted diagram
    /// turned upside down.
    pub fn to_ket_diagram(&self) -> Diagram {
        self.to_diagram().flip()
    }

    pub fn encode(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for HalfDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.label();
        write!(f, "H[{};{},{}]{{", self.n(), i, j)?;
        let mut first = true;
        for p in 0..self.n() {
            let sep = if first { "" } else { ";" };
            match self.links[p] {
                Link::Arc(q) if (q as usize) < p => continue,
                Link::Arc(q) => {
                    write!(f, "{sep}({},{},{})", p + 1, q + 1, self.colour[p].letter())?
                }
                Link::Cut => write!(f, "{sep}({},*,{})", p + 1, self.colour[p].letter())?,
            }
            first = false;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HalfDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfDiagram {
    type Err = BasisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BasisError::Parse(String::from(s));
        let body = s.trim().strip_prefix("H[").ok_or_else(bad)?;
        let (head, rest) = body.split_once(']').ok_or_else(bad)?;
        let (n, ij) = head.split_once(';').ok_or_else(bad)?;
        let (i, j) = ij.split_once(',').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let i: usize = i.parse().map_err(|_| bad())?;
        let j: usize = j.parse().map_err(|_| bad())?;
        let inner = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut arcs = Vec::new();
        let mut cuts = Vec::new();
        if !inner.is_empty() {
            for item in inner.split(';') {
                let item = item
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let parts: Vec<&str> = item.split(',').collect();
                let [p, q, c] = parts[..] else {
                    return Err(bad());
                };
                let p: usize = p.parse().map_err(|_| bad())?;
                let mut cs = c.chars();
                let c = cs.next().and_then(Colour::from_letter).ok_or_else(bad)?;
                if cs.next().is_some() || p == 0 {
                    return Err(bad());
                }
                if q == "*" {
                    cuts.push((p - 1, c));
                } else {
                    let q: usize = q.parse().map_err(|_| bad())?;
                    if q == 0 {
                        return Err(bad());
                    }
                    arcs.push((p - 1, q - 1, c));
                }
            }
        }
        let h = HalfDiagram::from_parts(n, &arcs, &cuts)?;
        if h.label() != (i, j) {
            return Err(bad());
        }
        Ok(h)
    }
}

/// All bras with `n` framed points and `i` red, `j` blue cut strands, in
/// canonical order.
pub fn enumerate_bras(
    n: usize,
    i: usize,
    j: usize,
    palette: Palette,
) -> Result<Vec<HalfDiagram>, BasisError> {
    if !is_label(n, (i, j), palette) {
        return Err(BasisError::BadLabel { n, i, j });
    }
    struct State {
        links: Vec<Link>,
        colour: Vec<Colour>,
        stacks: [Vec<usize>; 2],
        cut: [usize; 2],
        want: [usize; 2],
        out: Vec<HalfDiagram>,
    }
    fn go(p: usize, n: usize, palette: Palette, st: &mut State) {
        let owed = st.stacks[0].len()
            + st.stacks[1].len()
            + (st.want[0] - st.cut[0])
            + (st.want[1] - st.cut[1]);
        if owed > n - p {
            return;
        }
        if p == n {
            st.out.push(HalfDiagram {
                links: st.links.clone(),
                colour: st.colour.clone(),
            });
            return;
        }
        for &c in palette.colours() {
            let s = c.index();
            st.colour[p] = c;
            if let Some(q) = st.stacks[s].pop() {
                st.links[p] = Link::Arc(q as u8);
                st.links[q] = Link::Arc(p as u8);
                go(p + 1, n, palette, st);
                st.stacks[s].push(q);
                st.colour[p] = c;
            } else if st.cut[s] < st.want[s] {
                st.links[p] = Link::Cut;
                st.cut[s] += 1;
                go(p + 1, n, palette, st);
                st.cut[s] -= 1;
                st.colour[p] = c;
            }
            st.stacks[s].push(p);
            go(p + 1, n, palette, st);
            st.stacks[s].pop();
        }
    }
    let mut st = State {
        links: vec![Link::Cut; n],
        colour: vec![Colour::Red; n],
        stacks: [Vec::new(), Vec::new()],
        cut: [0, 0],
        want: [i, j],
        out: Vec::new(),
    };
    go(0, n, palette, &mut st);
    let mut out = st.out;
    out.sort();
    Ok(out)
}

/// Splits a diagram through its propagating lines into its north bra and
/// its south half read as a bra (the ket).
pub fn cut(d: &Diagram) -> (HalfDiagram, HalfDiagram) {
    (
        HalfDiagram::from_north(d),
        HalfDiagram::from_north(&d.flip()),
    )
}

/// Glues a bra over a ket, joining cut strands colour by colour in
/// left-to-right order.
pub fn join(bra: &HalfDiagram, ket: &HalfDiagram) -> Result<Diagram, BasisError> {
    let (bl, kl) = (bra.label(), ket.label());
    if bl != kl {
        return Err(BasisError::LabelMismatch {
            have_i: kl.0,
            have_j: kl.1,
            want_i: bl.0,
            want_j: bl.1,
        });
    }
    let (nn, ns) = (bra.n(), ket.n());
    let mut pairs = Vec::new();
    for p in 0..nn {
        if let Link::Arc(q) = bra.links[p] {
            if (q as usize) > p {
                pairs.push((p, q as usize, bra.colour[p]));
            }
        }
    }
    for p in 0..ns {
        if let Link::Arc(q) = ket.links[p] {
            if (q as usize) > p {
                pairs.push((nn + p, nn + q as usize, ket.colour[p]));
            }
        }
    }
    for c in Colour::ALL {
        for (a, b) in bra.cuts(c).into_iter().zip(ket.cuts(c)) {
            pairs.push((a, nn + b, c));
        }
    }
    Diagram::new(nn, ns, &pairs).map_err(|e| match e {
        DiagramError::SameColourCrossing { .. } => BasisError::Invalid("join is not planar"),
        _ => BasisError::Invalid("join is not a matching"),
    })
}

/// Applies one of the four growth maps.
pub fn half_map(kind: HalfMap, bra: &HalfDiagram) -> Result<HalfDiagram, BasisError> {
    let c = kind.colour();
    let n = bra.n();
    let mut links = bra.links.clone();
    let mut colour = bra.colour.clone();
    match kind {
        HalfMap::AppendRed | HalfMap::AppendBlue => {
            links.push(Link::Cut);
        }
        HalfMap::TurnBackRed | HalfMap::TurnBackBlue => {
            let p = *bra.cuts(c).last().ok_or(BasisError::EmptySource(c))?;
            links[p] = Link::Arc(n as u8);
            links.push(Link::Arc(p as u8));
        }
    }
    colour.push(c);
    Ok(HalfDiagram { links, colour })
}

/// The unique growth map and source bra producing `bra`, read off its
/// rightmost framed point; `None` for the empty bra.
pub fn classify_rightmost(bra: &HalfDiagram) -> Option<(HalfMap, HalfDiagram)> {
    let last = bra.n().checked_sub(1)?;
    let c = bra.colour[last];
    let mut links = bra.links[..last].to_vec();
    let colour = bra.colour[..last].to_vec();
    let kind = match (bra.links[last], c) {
        (Link::Cut, Colour::Red) => HalfMap::AppendRed,
        (Link::Cut, Colour::Blue) => HalfMap::AppendBlue,
        (Link::Arc(q), _) => {
            links[q as usize] = Link::Cut;
            match c {
                Colour::Red => HalfMap::TurnBackRed,
                Colour::Blue => HalfMap::TurnBackBlue,
            }
        }
    };
    Some((kind, HalfDiagram { links, colour }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{enumerate_basis, stratify, walk_count};
    use alloc::string::ToString;
    use Colour::{Blue as B, Red as R};

    #[test]
    fn bra_counts_match_walks() {
        for n in 0..=5 {
            for (i, j) in crate::basis::labels(n, Palette::Bi) {
                let bras = enumerate_bras(n, i, j, Palette::Bi).unwrap();
                assert_eq!(bras.len() as u64, walk_count(n, i, j), "({n},{i},{j})");
                assert!(bras.iter().all(|b| b.label() == (i, j)));
            }
        }
        assert!(enumerate_bras(3, 1, 1, Palette::Bi).is_err());
    }

    #[test]
    fn encoding_round_trip() {
        let h = HalfDiagram::from_parts(3, &[(0, 1, R)], &[(2, B)]).unwrap();
        assert_eq!(h.to_string(), "H[3;0,1]{(1,2,r);(3,*,b)}");
        assert_eq!(
            "H[3;0,1]{(1,2,r);(3,*,b)}".parse::<HalfDiagram>().unwrap(),
            h
        );
        assert!("H[3;1,0]{(1,2,r);(3,*,b)}".parse::<HalfDiagram>().is_err());
        // a red cut under a red arc
        assert!(HalfDiagram::from_parts(3, &[(0, 2, R)], &[(1, R)]).is_err());
        assert!(HalfDiagram::from_parts(3, &[(0, 2, R)], &[(1, B)]).is_ok());
    }

    #[test]
    fn cut_and_join_are_inverse() {
        let basis = enumerate_basis(3, Palette::Bi).unwrap();
        for d in &basis {
            let (bra, ket) = cut(d);
            assert_eq!(&join(&bra, &ket).unwrap(), d);
        }
        let strata = stratify(&enumerate_basis(2, Palette::Bi).unwrap());
        let bras = enumerate_bras(2, 1, 1, Palette::Bi).unwrap();
        let mut joined: Vec<Diagram> = bras
            .iter()
            .flat_map(|x| bras.iter().map(move |y| join(x, y).unwrap()))
            .collect();
        joined.sort_by_cached_key(Diagram::encode);
        assert_eq!(joined, strata[&(1, 1)]);
    }

    #[test]
    fn growth_maps_and_their_inverse() {
        let empty = HalfDiagram::new(vec![], vec![]).unwrap();
        let one = half_map(HalfMap::AppendRed, &empty).unwrap();
        assert_eq!(
            enumerate_bras(1, 1, 0, Palette::Bi).unwrap(),
            vec![one.clone()]
        );
        assert_eq!(
            half_map(HalfMap::TurnBackBlue, &one),
            Err(BasisError::EmptySource(B))
        );
        let back = half_map(HalfMap::TurnBackRed, &one).unwrap();
        assert_eq!(back.to_string(), "H[2;0,0]{(1,2,r)}");
        assert_eq!(classify_rightmost(&back), Some((HalfMap::TurnBackRed, one)));
    }
}
