//! Standard modules: the action of diagrams on bras, representation and
//! Gram matrices, block determinants, and dimension-level structure checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::basis::{
    classify_rightmost, enumerate_basis, enumerate_bras, is_label, walk_count_in, BasisError,
    HalfDiagram, HalfMap, Label,
};
use crate::diagram::{
    e_r_w, u_generator, Colour, Composite, Diagram, DiagramError, Element, Palette,
};
use crate::exactpoly::univariate::{specialise, IntPoly};
use crate::exactpoly::{LaurentPoly, PolyError, PolyMatrix, Variable};
use crate::numeric::CMatrix;

/// Fixed generic evaluation points for numeric rank computations.
pub const GENERIC_POINTS: [(f64, f64); 2] = [
    (1.324_717_957_244_746, 0.739_085_133_215_160_7),
    (2.665_144_142_690_225, 0.577_215_664_901_532_9),
];

pub const RANK_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StdModError {
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("element acts on {got} strands, module has {want}")]
    Size { got: usize, want: usize },
    #[error("bra {0} is not in the module basis")]
    NotInBasis(String),
}

/// `Delta_n(i, j)` with its canonical bra basis.
#[derive(Clone, Debug)]
pub struct StandardModule {
    n: usize,
    label: Label,
    palette: Palette,
    basis: Vec<HalfDiagram>,
    index: BTreeMap<HalfDiagram, usize>,
}

impl StandardModule {
    pub fn new(n: usize, i: usize, j: usize, palette: Palette) -> Result<Self, StdModError> {
        let basis = enumerate_bras(n, i, j, palette)?;
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, b)| (b, k))
            .collect();
        Ok(StandardModule {
            n,
            label: (i, j),
            palette,
            basis,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn palette(&self) -> Palette {
        self.palette
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[HalfDiagram] {
        &self.basis
    }

    pub fn position(&self, bra: &HalfDiagram) -> Option<usize> {
        self.index.get(bra).copied()
    }

    /// `d` stacked on `bra`: a loop weight and the resulting bra, or `None`
    /// when the colours clash or a cut strand turns back.
    pub fn act_diagram(
        &self,
        d: &Diagram,
        bra: &HalfDiagram,
    ) -> Result<Option<(LaurentPoly, HalfDiagram)>, StdModError> {
        if d.n_south() != bra.n() || d.n_north() != self.n {
            return Err(StdModError::Size {
                got: d.n_south(),
                want: self.n,
            });
        }
        match d.compose(&bra.to_diagram())? {
            Composite::Zero => Ok(None),
            Composite::Diagram {
                loops_r,
                loops_b,
                result,
            } => Ok(HalfDiagram::from_slotted(&result)
                .map(|h| (LaurentPoly::monomial(loops_r as i32, loops_b as i32), h))),
        }
    }

    /// The image of one bra under an element, as bra coefficients.
    pub fn act(
        &self,
        z: &Element,
        bra: &HalfDiagram,
    ) -> Result<BTreeMap<HalfDiagram, LaurentPoly>, StdModError> {
        if z.n_north() != self.n || z.n_south() != self.n {
            return Err(StdModError::Size {
                got: z.n_south(),
                want: self.n,
            });
        }
        let mut out: BTreeMap<HalfDiagram, LaurentPoly> = BTreeMap::new();
        for (d, c) in z.terms() {
            if let Some((w, h)) = self.act_diagram(d, bra)? {
                let entry = out.entry(h).or_insert_with(LaurentPoly::zero);
                *entry += &(c * &w);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Matrix of `z` in the bra basis; column `k` is the image of bra `k`.
    pub fn rep_matrix(&self, z: &Element) -> Result<PolyMatrix, StdModError> {
        let mut m = PolyMatrix::zeros(self.dim(), self.dim());
        for (col, bra) in self.basis.iter().enumerate() {
            for (h, c) in self.act(z, bra)? {
                let row = self
                    .position(&h)
                    .ok_or_else(|| StdModError::NotInBasis(h.encode()))?;
                m[(row, col)] = c;
            }
        }
        Ok(m)
    }

    /// `<x|y>`: `x` turned into a ket and glued on top of `y` along the
    /// framed edge. A loop monomial if every cut strand runs through, else 0.
    pub fn pairing(&self, x: &HalfDiagram, y: &HalfDiagram) -> Result<LaurentPoly, StdModError> {
        let (i, j) = self.label;
        match x.to_ket_diagram().compose(&y.to_diagram())? {
            Composite::Diagram {
                loops_r,
                loops_b,
                result,
            } if result.propagating_count() == i + j => {
                Ok(LaurentPoly::monomial(loops_r as i32, loops_b as i32))
            }
            _ => Ok(LaurentPoly::zero()),
        }
    }

    pub fn gram_matrix(&self) -> Result<PolyMatrix, StdModError> {
        let d = self.dim();
        let mut g = PolyMatrix::zeros(d, d);
        for a in 0..d {
            for b in a..d {
                let v = self.pairing(&self.basis[a], &self.basis[b])?;
                g[(b, a)] = v.clone();
                g[(a, b)] = v;
            }
        }
        Ok(g)
    }

    /// Basis indices grouped by the colour word of the framed points.
    pub fn rb_parts(&self) -> BTreeMap<Vec<Colour>, Vec<usize>> {
        let mut parts: BTreeMap<Vec<Colour>, Vec<usize>> = BTreeMap::new();
        for (k, b) in self.basis.iter().enumerate() {
            parts.entry(b.colours().to_vec()).or_default().push(k);
        }
        parts
    }
}

/// The Gram matrix of `Delta_n(i, j)` with its row/column labels.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub n: usize,
    pub label: Label,
    pub basis: Vec<HalfDiagram>,
    pub entries: PolyMatrix,
}

pub fn gram_matrix(n: usize, i: usize, j: usize) -> Result<GramMatrix, StdModError> {
    gram_matrix_in(Palette::Bi, n, i, j)
}

pub fn gram_matrix_in(
    palette: Palette,
    n: usize,
    i: usize,
    j: usize,
) -> Result<GramMatrix, StdModError> {
    let m = StandardModule::new(n, i, j, palette)?;
    Ok(GramMatrix {
        n,
        label: (i, j),
        entries: m.gram_matrix()?,
        basis: m.basis,
    })
}

/// One diagonal block of a Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramBlock {
    /// Colour word of the framed points shared by the block's bras.
    pub word: String,
    /// Positions of the block's bras in the module basis.
    pub indices: Vec<usize>,
    pub det: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramDetReport {
    pub n: usize,
    pub label: Label,
    pub det: LaurentPoly,
    pub blocks: Vec<GramBlock>,
    /// Whether every entry outside the blocks vanishes.
    pub block_diagonal: bool,
}

fn word_string(w: &[Colour]) -> String {
    w.iter().map(|c| c.letter()).collect()
}

pub fn gram_det(n: usize, i: usize, j: usize) -> Result<GramDetReport, StdModError> {
    gram_det_in(Palette::Bi, n, i, j)
}

/// The Gram determinant as the product of its colour-word blocks.
pub fn gram_det_in(
    palette: Palette,
    n: usize,
    i: usize,
    j: usize,
) -> Result<GramDetReport, StdModError> {
    let m = StandardModule::new(n, i, j, palette)?;
    let g = m.gram_matrix()?;
    let parts = m.rb_parts();
    let mut owner = alloc::vec![0usize; m.dim()];
    for (k, idx) in parts.values().enumerate() {
        for &x in idx {
            owner[x] = k;
        }
    }
    let block_diagonal =
        (0..m.dim()).all(|a| (0..m.dim()).all(|b| owner[a] == owner[b] || g[(a, b)].is_zero()));
    let mut det = LaurentPoly::one();
    let mut blocks = Vec::new();
    for (word, idx) in parts {
        let bd = g.select(&idx, &idx).det()?;
        det = &det * &bd;
        blocks.push(GramBlock {
            word: word_string(&word),
            indices: idx,
            det: bd,
        });
    }
    Ok(GramDetReport {
        n,
        label: (i, j),
        det,
        blocks,
        block_diagonal,
    })
}

/// Neighbour labels of `(i, j)` one layer down, one per growth map that
/// can produce `(i, j)`.
pub fn neighbours(n: usize, (i, j): Label, palette: Palette) -> Vec<(HalfMap, Label)> {
    if n == 0 {
        return Vec::new();
    }
    HalfMap::ALL
        .into_iter()
        .filter(|m| palette.contains(m.colour()))
        .filter_map(|m| m.source_label((i, j)).map(|l| (m, l)))
        .filter(|&(_, l)| is_label(n - 1, l, palette))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionClass {
    pub map: HalfMap,
    pub source: Label,
    pub class_size: usize,
    pub source_dim: usize,
    /// The class is exactly the image of the source basis.
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub n: usize,
    pub label: Label,
    pub dim: u64,
    pub neighbour_sum: u64,
    pub classes: Vec<RestrictionClass>,
    pub ok: bool,
}

/// Checks `dim Delta_n(i,j) = sum of dim Delta_{n-1}` over neighbours, and
/// that sorting bras by their rightmost point splits the basis into copies
/// of the neighbour bases.
pub fn restriction_check(
    n: usize,
    i: usize,
    j: usize,
    palette: Palette,
) -> Result<RestrictionReport, StdModError> {
    if n == 0 || !is_label(n, (i, j), palette) {
        return Err(BasisError::BadLabel { n, i, j }.into());
    }
    let bras = enumerate_bras(n, i, j, palette)?;
    let mut by_map: BTreeMap<HalfMap, BTreeSet<HalfDiagram>> = BTreeMap::new();
    let mut stray = false;
    for b in &bras {
        match classify_rightmost(b) {
            Some((map, src)) => {
                by_map.entry(map).or_default().insert(src);
            }
            None => stray = true,
        }
    }
    let nbrs = neighbours(n, (i, j), palette);
    let mut classes = Vec::new();
    let mut neighbour_sum = 0;
    for &(map, source) in &nbrs {
        let src: BTreeSet<HalfDiagram> = enumerate_bras(n - 1, source.0, source.1, palette)?
            .into_iter()
            .collect();
        let class = by_map.remove(&map).unwrap_or_default();
        neighbour_sum += walk_count_in(palette, n - 1, source.0, source.1);
        classes.push(RestrictionClass {
            map,
            source,
            class_size: class.len(),
            source_dim: src.len(),
            bijective: class == src,
        });
    }
    let dim = walk_count_in(palette, n, i, j);
    let class_total: usize = classes.iter().map(|c| c.class_size).sum();
    let ok = !stray
        && by_map.is_empty()
        && dim == neighbour_sum
        && dim == bras.len() as u64
        && class_total == bras.len()
        && classes.iter().all(|c| c.bijective);
    Ok(RestrictionReport {
        n,
        label: (i, j),
        dim,
        neighbour_sum,
        classes,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub n: usize,
    pub label: Option<Label>,
    pub dimension: usize,
    /// Rank at each generic point, when computed numerically.
    pub numeric_ranks: Vec<usize>,
    pub expected: u64,
    pub ok: bool,
}

/// `dim span{x e^r_w : x in B_n}` modulo diagrams with fewer than `i + j`
/// propagating lines, with `w = r^i b^j`.
///
/// Each `x e^r_w` is a loop monomial times one diagram, and monomials are
/// units once the loop parameters are invertible, so the span dimension is
/// the number of distinct surviving diagrams.
pub fn cyclic_generator_check(
    n: usize,
    i: usize,
    j: usize,
    palette: Palette,
) -> Result<SpanReport, StdModError> {
    if !is_label(n, (i, j), palette) {
        return Err(BasisError::BadLabel { n, i, j }.into());
    }
    let mut w = alloc::vec![Colour::Red; i];
    w.extend(core::iter::repeat_n(Colour::Blue, j));
    let g = e_r_w((n - i - j) / 2, &w);
    let mut seen: BTreeSet<Diagram> = BTreeSet::new();
    for x in enumerate_basis(n, palette)? {
        if let Composite::Diagram { result, .. } = x.compose(&g)? {
            if result.propagating_count() >= i + j {
                seen.insert(result);
            }
        }
    }
    let expected = walk_count_in(palette, n, i, j);
    Ok(SpanReport {
        n,
        label: Some((i, j)),
        dimension: seen.len(),
        numeric_ranks: Vec::new(),
        expected,
        ok: seen.len() as u64 == expected,
    })
}

/// Numeric rank of a family of elements at a generic point.
pub fn span_rank(elements: &[Element], dr: f64, db: f64) -> Result<usize, StdModError> {
    let mut columns: BTreeMap<&Diagram, usize> = BTreeMap::new();
    for e in elements {
        for (d, _) in e.terms() {
            let next = columns.len();
            columns.entry(d).or_insert(next);
        }
    }
    let mut m = CMatrix::zeros(elements.len(), columns.len());
    let (dr, db) = (Complex64::new(dr, 0.0), Complex64::new(db, 0.0));
    for (r, e) in elements.iter().enumerate() {
        for (d, c) in e.terms() {
            m[(r, columns[d])] = c.eval(dr, db)?;
        }
    }
    Ok(m.rank(RANK_TOLERANCE))
}

/// `dim span{U d U : d in B_n}` for `U = U_{n-1}`, which matches the size
/// of the basis two strands down.
pub fn localisation_check(n: usize, palette: Palette) -> Result<SpanReport, StdModError> {
    if n < 2 {
        return Err(DiagramError::Parameter("localisation needs n >= 2").into());
    }
    let u = u_generator(n, n - 1, palette)?;
    let mut elements: Vec<Element> = Vec::new();
    let mut seen: BTreeSet<Vec<(Diagram, LaurentPoly)>> = BTreeSet::new();
    for d in enumerate_basis(n, palette)? {
        let e = u.compose(&Element::from_diagram(d))?.compose(&u)?;
        if e.is_zero() {
            continue;
        }
        let key: Vec<(Diagram, LaurentPoly)> =
            e.terms().map(|(d, c)| (d.clone(), c.clone())).collect();
        if seen.insert(key) {
            elements.push(e);
        }
    }
    let ranks = GENERIC_POINTS
        .iter()
        .map(|&(dr, db)| span_rank(&elements, dr, db))
        .collect::<Result<Vec<_>, _>>()?;
    let expected = enumerate_basis(n - 2, palette)?.len() as u64;
    let ok = ranks.iter().all(|&r| r as u64 == expected);
    Ok(SpanReport {
        n,
        label: None,
        dimension: ranks[0],
        numeric_ranks: ranks,
        expected,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootInfo {
    pub root: Complex64,
    pub multiplicity: usize,
    /// `(m, k)` with `root = 2 cos(pi m / k)`, smallest `k` first.
    pub root_of_unity: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootScan {
    /// Integer value given to the other loop parameter.
    pub other_value: i64,
    pub degenerate: bool,
    pub roots: Vec<RootInfo>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub n: usize,
    pub label: Label,
    pub colour: Colour,
    pub scans: Vec<RootScan>,
    pub all_roots_of_unity: bool,
}

pub const ROOT_TOLERANCE: f64 = 1e-8;

/// Matches `x` against `2 cos(pi m / k)` for `1 <= k <= max_k`.
pub fn match_root_of_unity(x: Complex64, max_k: u32, tol: f64) -> Option<(u32, u32)> {
    if x.im.abs() > tol {
        return None;
    }
    for k in 1..=max_k {
        for m in 0..=k {
            let v = 2.0 * libm::cos(core::f64::consts::PI * m as f64 / k as f64);
            if (x.re - v).abs() <= tol {
                return Some((m, k));
            }
        }
    }
    None
}

/// Roots of the Gram determinant in one loop parameter, the other fixed in
/// turn at the integers `3, 5, 7, ..` (`samples` of them).
pub fn root_scan(
    n: usize,
    i: usize,
    j: usize,
    colour: Colour,
    samples: usize,
) -> Result<RootReport, StdModError> {
    let det = gram_det(n, i, j)?.det;
    let keep = match colour {
        Colour::Red => Variable::Dr,
        Colour::Blue => Variable::Db,
    };
    let mut scans = Vec::new();
    let mut all = true;
    for s in 0..samples.max(1) {
        let value = 3 + 2 * s as i64;
        let p: IntPoly = specialise(&det, keep, value)?;
        let degenerate = p.is_zero();
        let mut roots = Vec::new();
        if !degenerate {
            for (factor, mult) in p.square_free_decomposition() {
                for r in factor.simple_roots() {
                    let hit = match_root_of_unity(r, 2 * n as u32, ROOT_TOLERANCE);
                    all &= hit.is_some();
                    roots.push(RootInfo {
                        root: r,
                        multiplicity: mult,
                        root_of_unity: hit,
                    });
                }
            }
        }
        all &= !degenerate;
        roots.sort_by(|a, b| {
            a.root
                .re
                .total_cmp(&b.root.re)
                .then(a.root.im.total_cmp(&b.root.im))
        });
        scans.push(RootScan {
            other_value: value,
            degenerate,
            roots,
        });
    }
    Ok(RootReport {
        n,
        label: (i, j),
        colour,
        scans,
        all_roots_of_unity: all,
    })
}
