//! The property suite behind `bubble check`.

use std::collections::BTreeSet;

use bubble_core::basis::{
    cut, enumerate_basis, enumerate_bras, enumerate_via_seeds, join, labels, stratify, walk_count,
    with_propagating,
};
use bubble_core::diagram::{
    identity_element, u_generator, Colour, Composite, Diagram, Element, Palette,
};
use bubble_core::exactpoly::{poly_det, LaurentPoly, PolyMatrix};
use bubble_core::numeric::CMatrix;
use bubble_core::spinchain::{b2_matrix, homomorphism_check, NumericParams};
use bubble_core::stdmod::{
    cyclic_generator_check, gram_det, gram_matrix, localisation_check, restriction_check,
    root_scan, StandardModule,
};
use bubble_core::yangbaxter::{
    bubble_params, family_rmatrix, rmatrix_bubble_with, single_colour_block_check, sweep_points,
    transfer_commutator, unitarity_residual, ybe_residual, BubbleWeights, Family, RMatrix,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::CheckArgs;
use crate::cache;
use crate::commands::to_json;

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub max_n: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

type Check = Result<String, String>;
type Property = (&'static str, fn(&Ctx) -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Ctx {
    seed: u64,
    max_n: usize,
}

impl Ctx {
    fn upto(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        1..=n.min(self.max_n)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x100).wrapping_add(salt))
    }
}

fn product(x: &Diagram, y: &Diagram) -> Option<(u32, u32, Diagram)> {
    match x.compose(y).expect("equal sizes") {
        Composite::Zero => None,
        Composite::Diagram {
            loops_r,
            loops_b,
            result,
        } => Some((loops_r, loops_b, result)),
    }
}

fn basis(n: usize) -> Result<Vec<Diagram>, String> {
    enumerate_basis(n, Palette::Bi).map_err(err)
}

fn closed_form(n: u128) -> u128 {
    let binom = |n: u128, k: u128| (0..k).fold(1u128, |a, t| a * (n - t) / (t + 1));
    let cat = |k: u128| binom(2 * k, k) / (k + 1);
    (0..=n)
        .map(|k| binom(2 * n, 2 * k) * cat(k) * cat(n - k))
        .sum()
}

// diagram ------------------------------------------------------------------

fn associativity(c: &Ctx) -> Check {
    let b = basis(3.min(c.max_n))?;
    let mut rng = c.rng(1);
    for _ in 0..2000 {
        let (x, y, z) = (
            &b[rng.random_range(0..b.len())],
            &b[rng.random_range(0..b.len())],
            &b[rng.random_range(0..b.len())],
        );
        let left = product(x, y)
            .and_then(|(r, s, d)| product(&d, z).map(|(r2, s2, e)| (r + r2, s + s2, e)));
        let right = product(y, z)
            .and_then(|(r, s, d)| product(x, &d).map(|(r2, s2, e)| (r + r2, s + s2, e)));
        ensure(left == right, || format!("({x} {y}) {z}"))?;
    }
    Ok("2000 sampled triples".into())
}

fn filtration(c: &Ctx) -> Check {
    let mut count = 0;
    for n in c.upto(4) {
        let b = basis(n)?;
        for x in &b {
            for y in &b {
                if let Some((_, _, z)) = product(x, y) {
                    let (zr, zb) = z.propagating_index();
                    for (r, s) in [x.propagating_index(), y.propagating_index()] {
                        ensure(zr <= r && zb <= s, || format!("{x} * {y} = {z}"))?;
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} nonzero products"))
}

fn idempotents(c: &Ctx) -> Check {
    let sum = LaurentPoly::dr() + LaurentPoly::db();
    for n in c.upto(5).filter(|&n| n >= 2) {
        for i in 1..n {
            let u = u_generator(n, i, Palette::Bi).map_err(err)?;
            ensure(u.compose(&u).map_err(err)? == u.scale(&sum), || {
                format!("U_{i}^2 at n={n}")
            })?;
        }
    }
    for n in c.upto(4) {
        let one = identity_element(n, Palette::Bi);
        let terms: Vec<Diagram> = one.terms().map(|(d, _)| d.clone()).collect();
        ensure(terms.len() == 1 << n, || {
            format!("n={n}: {} idempotents", terms.len())
        })?;
        for x in &terms {
            for y in &terms {
                let want = if x == y {
                    Some((0, 0, x.clone()))
                } else {
                    None
                };
                ensure(product(x, y) == want, || format!("{x} * {y}"))?;
            }
        }
        for d in basis(n)? {
            let e = Element::from_diagram(d);
            ensure(
                one.compose(&e).map_err(err)? == e && e.compose(&one).map_err(err)? == e,
                || "unit fails".into(),
            )?;
        }
    }
    Ok("U_i^2 = (dr+db) U_i; 2^n orthogonal idempotents sum to 1".into())
}

// basis --------------------------------------------------------------------

fn basis_counts(c: &Ctx) -> Check {
    let mut sizes = Vec::new();
    for n in c.upto(6) {
        let size = basis(n)?.len();
        ensure(size as u128 == closed_form(n as u128), || {
            format!("|B_{n}| = {size}")
        })?;
        let squares: u64 = labels(n, Palette::Bi)
            .into_iter()
            .map(|(i, j)| walk_count(n, i, j).pow(2))
            .sum();
        ensure(size as u64 == squares, || {
            format!("n={n}: sum of squares {squares}")
        })?;
        sizes.push(size);
    }
    Ok(format!("{sizes:?}"))
}

fn seeds_and_strata(c: &Ctx) -> Check {
    for n in c.upto(5) {
        let b = basis(n)?;
        ensure(
            enumerate_via_seeds(n, Palette::Bi).map_err(err)? == b,
            || format!("seeds differ at n={n}"),
        )?;
        let strata = stratify(&b);
        for (i, j) in labels(n, Palette::Bi) {
            let bras = enumerate_bras(n, i, j, Palette::Bi).map_err(err)?.len();
            let size = strata.get(&(i, j)).map_or(0, Vec::len);
            ensure(size == bras * bras, || {
                format!("n={n} ({i},{j}): {size} vs {bras}^2")
            })?;
        }
        for d in &b {
            let (bra, ket) = cut(d);
            ensure(join(&bra, &ket).map_err(err)? == *d, || {
                format!("cut/join {d}")
            })?;
        }
    }
    Ok("seed colourings, strata = bras^2, cut/join".into())
}

fn top_closure(c: &Ctx) -> Check {
    for n in c.upto(4) {
        let top: BTreeSet<Diagram> = with_propagating(&basis(n)?, n).into_iter().collect();
        for x in &top {
            for y in &top {
                if let Some((r, s, z)) = product(x, y) {
                    ensure(r == 0 && s == 0 && top.contains(&z), || {
                        format!("{x} * {y}")
                    })?;
                }
            }
        }
    }
    Ok("fully propagating diagrams form a closed set".into())
}

// stdmod -------------------------------------------------------------------

fn rep_homomorphism(c: &Ctx) -> Check {
    let mut rng = c.rng(2);
    for n in c.upto(3).filter(|&n| n >= 2) {
        let b: Vec<Element> = basis(n)?.into_iter().map(Element::from).collect();
        for (i, j) in labels(n, Palette::Bi) {
            let m = StandardModule::new(n, i, j, Palette::Bi).map_err(err)?;
            let pairs: Vec<(usize, usize)> = if n == 2 {
                (0..b.len())
                    .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
                    .collect()
            } else {
                (0..200)
                    .map(|_| (rng.random_range(0..b.len()), rng.random_range(0..b.len())))
                    .collect()
            };
            for (x, y) in pairs {
                let lhs = m
                    .rep_matrix(&b[x].compose(&b[y]).map_err(err)?)
                    .map_err(err)?;
                let rhs = m
                    .rep_matrix(&b[x])
                    .map_err(err)?
                    .mul(&m.rep_matrix(&b[y]).map_err(err)?)
                    .map_err(err)?;
                ensure(lhs == rhs, || format!("n={n} ({i},{j}) pair ({x},{y})"))?;
            }
        }
    }
    Ok("exhaustive on B_2, 200 samples per label on B_3".into())
}

fn gram_structure(c: &Ctx) -> Check {
    for n in c.upto(5) {
        for (i, j) in labels(n, Palette::Bi) {
            let r = gram_det(n, i, j).map_err(err)?;
            ensure(r.block_diagonal, || {
                format!("n={n} ({i},{j}) not block diagonal")
            })?;
            if n <= 4 {
                let full = poly_det(&gram_matrix(n, i, j).map_err(err)?.entries).map_err(err)?;
                ensure(full == r.det, || {
                    format!("n={n} ({i},{j}) block det differs")
                })?;
            }
        }
    }
    for n in c.upto(6) {
        for i in 0..=n {
            let g = gram_matrix(n, i, n - i).map_err(err)?;
            ensure(g.entries == PolyMatrix::identity(g.basis.len()), || {
                format!("G_{n}({i},{})", n - i)
            })?;
        }
        let dims: usize = labels(n, Palette::Bi)
            .into_iter()
            .map(|(i, j)| walk_count(n, i, j) as usize)
            .map(|d| d * d)
            .sum();
        ensure(dims == basis(n)?.len(), || format!("n={n} sum of dim^2"))?;
    }
    Ok("orthogonal rb-parts, block det = det, top Gram = I, sum dim^2".into())
}

fn gram_roots(c: &Ctx) -> Check {
    let mut roots = 0;
    for n in c.upto(4) {
        for (i, j) in labels(n, Palette::Bi) {
            for colour in Colour::ALL {
                let r = root_scan(n, i, j, colour, 2).map_err(err)?;
                ensure(r.all_roots_of_unity, || {
                    format!("n={n} ({i},{j}) {colour:?}")
                })?;
                roots += r.scans.iter().map(|s| s.roots.len()).sum::<usize>();
            }
        }
    }
    Ok(format!("{roots} roots at 2cos(pi m/k)"))
}

fn structure(c: &Ctx) -> Check {
    for n in c.upto(4).filter(|&n| n >= 2) {
        let r = localisation_check(n, Palette::Bi).map_err(err)?;
        ensure(r.ok, || {
            format!("localisation at n={n}: {:?}", r.numeric_ranks)
        })?;
    }
    for n in c.upto(6) {
        for (i, j) in labels(n, Palette::Bi) {
            ensure(
                restriction_check(n, i, j, Palette::Bi).map_err(err)?.ok,
                || format!("restriction n={n} ({i},{j})"),
            )?;
        }
    }
    for n in c.upto(4) {
        for (i, j) in labels(n, Palette::Bi) {
            ensure(
                cyclic_generator_check(n, i, j, Palette::Bi)
                    .map_err(err)?
                    .ok,
                || format!("cyclic generator n={n} ({i},{j})"),
            )?;
        }
    }
    Ok("localisation, restriction, cyclic generators".into())
}

// spinchain ----------------------------------------------------------------

fn spin_matrices(_: &Ctx) -> Check {
    let p = NumericParams::new(Complex64::from_polar(1.0, 0.9), Complex64::new(0.7, 0.4))
        .map_err(err)?;
    let (r, b) = (Colour::Red, Colour::Blue);
    let m = |d: Diagram| b2_matrix(&d, &p).map_err(err);
    let mut sum = CMatrix::zeros(16, 16);
    for w in [[r, r], [r, b], [b, r], [b, b]] {
        sum = sum.add(&m(Diagram::straight(&w))?);
    }
    ensure(sum.max_diff(&CMatrix::identity(16)) == 0.0, || {
        "projectors do not sum to 1".into()
    })?;
    let x_br = m(Diagram::new(2, 2, &[(0, 3, b), (1, 2, r)]).map_err(err)?)?;
    let x_rb = m(Diagram::new(2, 2, &[(0, 3, r), (1, 2, b)]).map_err(err)?)?;
    ensure(x_rb.max_diff(&x_br.transpose()) == 0.0, || {
        "crossings are not transposes".into()
    })?;
    ensure(
        x_br.mul(&x_rb).max_diff(&m(Diagram::straight(&[b, r]))?) == 0.0,
        || "X X is not the br projector".into(),
    )?;
    let cup = m(Diagram::new(2, 2, &[(0, 1, r), (2, 3, r)]).map_err(err)?)?;
    let q = p.q(r);
    let one = Complex64::new(1.0, 0.0);
    let block = [
        cup[(1, 1)] - q,
        cup[(1, 4)] - one,
        cup[(4, 1)] - one,
        cup[(4, 4)] - q.inv(),
    ];
    ensure(block.iter().all(|z| z.norm() < 1e-14), || {
        "red block".into()
    })?;
    Ok("projectors, crossings, one-colour block".into())
}

fn spin_homomorphism(c: &Ctx) -> Check {
    let mut rng = c.rng(3);
    let mut worst = 0.0f64;
    for k in 0..5 {
        let mut draw = || {
            let r = if k % 2 == 0 {
                1.0
            } else {
                rng.random_range(0.5..2.0)
            };
            Complex64::from_polar(r, rng.random_range(0.1..3.0))
        };
        let p = NumericParams::new(draw(), draw()).map_err(err)?;
        for n in [2, 3] {
            let r = homomorphism_check(n, &p, 1e-12).map_err(err)?;
            ensure(r.ok, || format!("n={n} residual {:e}", r.max_residual))?;
            worst = worst.max(r.max_residual);
        }
    }
    Ok(format!(
        "5 parameter points, n = 2, 3, max residual {worst:.2e}"
    ))
}

// yangbaxter ---------------------------------------------------------------

fn ybe_sweeps(c: &Ctx) -> Check {
    let mut worst = 0.0f64;
    for (family, tol) in [(Family::Tl, 1e-12), (Family::Bubble, 1e-10)] {
        for (u, v, l) in sweep_points(family, 20, c.seed, 0.1) {
            let r = family_rmatrix(family, l);
            let res = ybe_residual(&r, u, v).map_err(err)?;
            let (unit, _) = unitarity_residual(&r, u).map_err(err)?;
            ensure(res < tol && unit < tol, || {
                format!("{family:?} at ({u}, {v}, {l}): {res:e}, {unit:e}")
            })?;
            worst = worst.max(res);
        }
    }
    Ok(format!("40 points, max residual {worst:.2e}"))
}

fn ybe_detector(c: &Ctx) -> Check {
    let mut weakest = f64::INFINITY;
    for (u, v, lambda) in sweep_points(Family::Bubble, 3, c.seed.wrapping_add(1), 0.1) {
        let bad = |u| {
            let mut w = BubbleWeights::new(u, lambda)?;
            w.cup_same += 1e-3;
            Ok(RMatrix {
                m: 4,
                matrix: rmatrix_bubble_with(&w, &bubble_params(lambda)),
                provenance: "perturbed".into(),
            })
        };
        let res = ybe_residual(bad, u, v).map_err(err)?;
        let com = transfer_commutator(bad, 3, u, v).map_err(err)?;
        ensure(res > 1e-5 && com > 1e-5, || {
            format!("perturbation missed: {res:e}, {com:e}")
        })?;
        weakest = weakest.min(res.min(com));
    }
    Ok(format!("perturbed residuals >= {weakest:.2e}"))
}

fn transfer(c: &Ctx) -> Check {
    let mut worst = 0.0f64;
    for (family, n) in [
        (Family::Tl, 2),
        (Family::Tl, 3),
        (Family::Bubble, 2),
        (Family::Bubble, 3),
    ] {
        for (u, v, l) in sweep_points(family, 3, c.seed.wrapping_add(2), 0.1) {
            let r = transfer_commutator(family_rmatrix(family, l), n, u, v).map_err(err)?;
            ensure(r < 1e-9, || format!("{family:?} n={n}: {r:e}"))?;
            worst = worst.max(r);
        }
    }
    for (u, _, l) in sweep_points(Family::Bubble, 5, c.seed.wrapping_add(3), 0.1) {
        let u = 0.05 + 0.5 * u.abs();
        let (res, _) = single_colour_block_check(u, l).map_err(err)?;
        ensure(res < 1e-9, || format!("red block at ({u}, {l}): {res:e}"))?;
    }
    Ok(format!(
        "max commutator {worst:.2e}; red block is one-colour"
    ))
}

// cli ----------------------------------------------------------------------

fn cache_round_trip(c: &Ctx) -> Check {
    let n = 4.min(c.max_n);
    let dir = std::env::temp_dir().join(format!("bubble-check-{}-{}", std::process::id(), c.seed));
    let path = cache::cache_path(&dir, n, Palette::Bi);
    let fresh = basis(n)?;
    let result = cache::write(&path, n, &fresh).and_then(|_| cache::read(&path, n));
    let _ = std::fs::remove_dir_all(&dir);
    ensure(result.map_err(err)? == fresh, || {
        "reloaded basis differs".into()
    })?;
    let render = || {
        to_json(
            &basis(n)
                .map(|b| b.iter().map(Diagram::encode).collect::<Vec<_>>())
                .ok(),
        )
    };
    ensure(render() == render(), || {
        "output is not deterministic".into()
    })?;
    Ok(format!("B_{n} cache round trip, deterministic rendering"))
}

pub fn run(a: &CheckArgs) -> CheckReport {
    let ctx = Ctx {
        seed: a.seed,
        max_n: a.max_n,
    };
    let suite: [Property; 16] = [
        ("diagram.associativity", associativity),
        ("diagram.filtration", filtration),
        ("diagram.idempotents", idempotents),
        ("basis.counts", basis_counts),
        ("basis.seeds_and_strata", seeds_and_strata),
        ("basis.top_closure", top_closure),
        ("stdmod.rep_homomorphism", rep_homomorphism),
        ("stdmod.gram_structure", gram_structure),
        ("stdmod.gram_roots", gram_roots),
        ("stdmod.structure", structure),
        ("spinchain.matrices", spin_matrices),
        ("spinchain.homomorphism", spin_homomorphism),
        ("yangbaxter.sweeps", ybe_sweeps),
        ("yangbaxter.detector", ybe_detector),
        ("yangbaxter.transfer", transfer),
        ("cli.cache", cache_round_trip),
    ];
    let checks: Vec<CheckResult> = suite
        .iter()
        .map(|(name, f)| {
            let r = f(&ctx);
            CheckResult {
                name,
                ok: r.is_ok(),
                detail: r.unwrap_or_else(|e| e),
            }
        })
        .collect();
    let failed = checks.iter().filter(|c| !c.ok).count();
    CheckReport {
        seed: a.seed,
        max_n: a.max_n,
        passed: checks.len() - failed,
        failed,
        checks,
    }
}
