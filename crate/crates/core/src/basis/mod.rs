//! Enumeration and counting of diagram bases, their propagating strata and
//! the bra halves that span standard modules.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{Colour, Diagram, Palette};

mod half;

pub use half::{
    classify_rightmost, cut, enumerate_bras, half_map, join, HalfDiagram, HalfMap, Link,
};

/// Largest `n` enumerated without an explicit override.
pub const DEFAULT_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("n = {n} exceeds the enumeration bound {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("label ({i},{j}) is not valid for n = {n}")]
    BadLabel { n: usize, i: usize, j: usize },
    #[error("bra has shape ({have_i},{have_j}), expected ({want_i},{want_j})")]
    LabelMismatch {
        have_i: usize,
        have_j: usize,
        want_i: usize,
        want_j: usize,
    },
    #[error("no {0:?} cut strand to turn back")]
    EmptySource(Colour),
    #[error("colour {0:?} is not in the palette")]
    Palette(Colour),
    #[error("cannot parse half diagram {0:?}")]
    Parse(String),
    #[error("invalid half diagram: {0}")]
    Invalid(&'static str),
}

/// Propagating label `(i, j)`: `i` red and `j` blue propagating lines.
pub type Label = (usize, usize);

/// Whether `(i, j)` labels a stratum of the `n`-strand basis.
pub fn is_label(n: usize, (i, j): Label, palette: Palette) -> bool {
    i + j <= n && (n - i - j).is_multiple_of(2) && (palette == Palette::Bi || j == 0)
}

/// All labels for `n` strands, ordered by `(i, j)`.
pub fn labels(n: usize, palette: Palette) -> Vec<Label> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            if is_label(n, (i, j), palette) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Number of labels `(i, j)` with `i + j = n`.
pub fn lambda_count(n: usize) -> usize {
    n + 1
}

/// Coloured matchings of `n_north + n_south` points with per-colour
/// planarity, in recursion order.
pub fn enumerate_matchings(n_north: usize, n_south: usize, palette: Palette) -> Vec<Diagram> {
    let total = n_north + n_south;
    let mut out = Vec::new();
    if !total.is_multiple_of(2) {
        return out;
    }
    let order: Vec<usize> = (0..total)
        .map(|pos| Diagram::point_at_circular(n_north, n_south, pos))
        .collect();
    let mut mate = vec![0u8; total];
    let mut colour = vec![Colour::Red; total];
    let mut stacks: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    fill(
        0,
        &order,
        palette,
        &mut stacks,
        &mut mate,
        &mut colour,
        &mut |mate, colour| {
            out.push(Diagram::from_raw(
                n_north,
                n_south,
                mate.to_vec(),
                colour.to_vec(),
            ));
        },
    );
    out
}

fn fill(
    pos: usize,
    order: &[usize],
    palette: Palette,
    stacks: &mut [Vec<usize>; 2],
    mate: &mut [u8],
    colour: &mut [Colour],
    emit: &mut dyn FnMut(&[u8], &[Colour]),
) {
    let open = stacks[0].len() + stacks[1].len();
    let remaining = order.len() - pos;
    if remaining == 0 {
        emit(mate, colour);
        return;
    }
    let p = order[pos];
    for &c in palette.colours() {
        let s = c.index();
        if let Some(q) = stacks[s].pop() {
            mate[p] = q as u8;
            mate[q] = p as u8;
            colour[p] = c;
            fill(pos + 1, order, palette, stacks, mate, colour, emit);
            stacks[s].push(q);
        }
        if open < remaining - 1 {
            stacks[s].push(p);
            colour[p] = c;
            fill(pos + 1, order, palette, stacks, mate, colour, emit);
            stacks[s].pop();
        }
    }
}

fn sort_by_encoding(mut v: Vec<Diagram>) -> Vec<Diagram> {
    v.sort_by_cached_key(Diagram::encode);
    v
}

/// The basis of the `n`-strand algebra, sorted by text encoding.
pub fn enumerate_basis(n: usize, palette: Palette) -> Result<Vec<Diagram>, BasisError> {
    enumerate_basis_bounded(n, palette, DEFAULT_MAX_N)
}

pub fn enumerate_basis_bounded(
    n: usize,
    palette: Palette,
    limit: usize,
) -> Result<Vec<Diagram>, BasisError> {
    if n > limit {
        return Err(BasisError::TooLarge { n, limit });
    }
    Ok(sort_by_encoding(enumerate_matchings(n, n, palette)))
}

/// All perfect matchings of `0..2n`, as partner arrays.
fn brauer_matchings(points: usize) -> Vec<Vec<usize>> {
    fn go(mate: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(p) = mate.iter().position(|&m| m == usize::MAX) else {
            out.push(mate.clone());
            return;
        };
        for q in p + 1..mate.len() {
            if mate[q] == usize::MAX {
                mate[p] = q;
                mate[q] = p;
                go(mate, out);
                mate[p] = usize::MAX;
                mate[q] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; points], &mut out);
    out
}

/// The coloured diagrams grown from one uncoloured matching (`seed`, as a
/// partner array on `n_north + n_south` points).
///
/// Lines are taken in the clockwise order of their first endpoints. A line
/// crossing no coloured line may take any colour; otherwise it must differ
/// from every coloured line it crosses.
pub fn colour_seed(
    n_north: usize,
    n_south: usize,
    seed: &[usize],
    palette: Palette,
) -> Vec<Diagram> {
    let pos = |p: usize| {
        if p < n_north {
            p
        } else {
            n_north + n_south - 1 - (p - n_north)
        }
    };
    let mut lines: Vec<(usize, usize)> = (0..seed.len())
        .filter(|&p| p < seed[p])
        .map(|p| {
            let (a, b) = (pos(p), pos(seed[p]));
            (a.min(b), a.max(b))
        })
        .collect();
    lines.sort();
    let crosses = |a: (usize, usize), b: (usize, usize)| {
        (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
    };
    let mut out = Vec::new();
    let mut chosen: Vec<Colour> = Vec::with_capacity(lines.len());
    fn go(
        k: usize,
        lines: &[(usize, usize)],
        chosen: &mut Vec<Colour>,
        palette: Palette,
        crosses: &dyn Fn((usize, usize), (usize, usize)) -> bool,
        out: &mut Vec<Vec<Colour>>,
    ) {
        if k == lines.len() {
            out.push(chosen.clone());
            return;
        }
        for &c in palette.colours() {
            let clash = (0..k).any(|m| chosen[m] == c && crosses(lines[m], lines[k]));
            if !clash {
                chosen.push(c);
                go(k + 1, lines, chosen, palette, crosses, out);
                chosen.pop();
            }
        }
    }
    let mut colourings = Vec::new();
    go(0, &lines, &mut chosen, palette, &crosses, &mut colourings);
    for cols in colourings {
        let total = n_north + n_south;
        let mut mate = vec![0u8; total];
        let mut colour = vec![Colour::Red; total];
        for (&(a, b), &c) in lines.iter().zip(&cols) {
            let p = Diagram::point_at_circular(n_north, n_south, a);
            let q = Diagram::point_at_circular(n_north, n_south, b);
            mate[p] = q as u8;
            mate[q] = p as u8;
            colour[p] = c;
            colour[q] = c;
        }
        out.push(Diagram::from_raw(n_north, n_south, mate, colour));
    }
    out
}

/// The basis rebuilt by colouring every Brauer matching, sorted by
/// encoding. Agrees with [`enumerate_basis`] as a set.
pub fn enumerate_via_seeds(n: usize, palette: Palette) -> Result<Vec<Diagram>, BasisError> {
    if n > DEFAULT_MAX_N.min(7) {
        return Err(BasisError::TooLarge {
            n,
            limit: DEFAULT_MAX_N.min(7),
        });
    }
    let mut out = Vec::new();
    for seed in brauer_matchings(2 * n) {
        out.extend(colour_seed(n, n, &seed, palette));
    }
    Ok(sort_by_encoding(out))
}

/// Diagrams grouped by propagating index.
pub fn stratify(basis: &[Diagram]) -> BTreeMap<Label, Vec<Diagram>> {
    let mut out: BTreeMap<Label, Vec<Diagram>> = BTreeMap::new();
    for d in basis {
        out.entry(d.propagating_index())
            .or_default()
            .push(d.clone());
    }
    out
}

/// `B_n(k)`: diagrams with exactly `k` propagating lines.
pub fn with_propagating(basis: &[Diagram], k: usize) -> Vec<Diagram> {
    basis
        .iter()
        .filter(|d| d.propagating_count() == k)
        .cloned()
        .collect()
}

/// `B_n[k]`: diagrams with at most `k` propagating lines.
pub fn with_propagating_at_most(basis: &[Diagram], k: usize) -> Vec<Diagram> {
    basis
        .iter()
        .filter(|d| d.propagating_count() <= k)
        .cloned()
        .collect()
}

/// Walks of length `n` from the origin to `(i, j)` on the quadrant graph
/// with steps `±e1`, `±e2`. Saturates at `u64::MAX`.
pub fn walk_count(n: usize, i: usize, j: usize) -> u64 {
    walk_count_in(Palette::Bi, n, i, j)
}

/// [`walk_count`] restricted to the palette's axes; the one-colour case
/// walks on the half line.
pub fn walk_count_in(palette: Palette, n: usize, i: usize, j: usize) -> u64 {
    if i + j > n {
        return 0;
    }
    walk_table(palette, n)[i][j]
}

/// `table[i][j]` = walks of length `n` ending at `(i, j)`.
pub fn walk_table(palette: Palette, n: usize) -> Vec<Vec<u64>> {
    let w = n + 2;
    let mut cur = vec![vec![0u64; w]; w];
    cur[0][0] = 1;
    let blue = palette == Palette::Bi;
    for _ in 0..n {
        let mut next = vec![vec![0u64; w]; w];
        for (i, row) in cur.iter().enumerate().take(w - 1) {
            for (j, &c) in row.iter().enumerate().take(w - 1) {
                if c == 0 {
                    continue;
                }
                let mut add = |a: usize, b: usize| next[a][b] = next[a][b].saturating_add(c);
                add(i + 1, j);
                if i > 0 {
                    add(i - 1, j);
                }
                if blue {
                    add(i, j + 1);
                    if j > 0 {
                        add(i, j - 1);
                    }
                }
            }
        }
        cur = next;
    }
    cur.truncate(n + 1);
    for row in &mut cur {
        row.truncate(n + 1);
    }
    cur
}

/// `(|B_n|, sum of squared walk counts)`; the two agree.
pub fn rank_check(n: usize, palette: Palette) -> Result<(u64, u64), BasisError> {
    let lhs = enumerate_basis(n, palette)?.len() as u64;
    Ok((lhs, sum_of_squares(n, palette)))
}

pub fn sum_of_squares(n: usize, palette: Palette) -> u64 {
    let t = walk_table(palette, n);
    labels(n, palette)
        .into_iter()
        .map(|(i, j)| t[i][j].saturating_mul(t[i][j]))
        .fold(0u64, u64::saturating_add)
}
