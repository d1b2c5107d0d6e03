use std::collections::BTreeSet;
use std::sync::OnceLock;

use bubble_core::basis::enumerate_basis;
use bubble_core::diagram::{
    identity_element, left_inclusion, natural_inclusion, u_generator, Colour, Composite, Diagram,
    Element, Palette,
};
use bubble_core::exactpoly::LaurentPoly;
use proptest::prelude::*;

fn compose(x: &Diagram, y: &Diagram) -> Option<(u32, u32, Diagram)> {
    match x.compose(y).unwrap() {
        Composite::Zero => None,
        Composite::Diagram {
            loops_r,
            loops_b,
            result,
        } => Some((loops_r, loops_b, result)),
    }
}

fn basis(n: usize) -> Vec<Diagram> {
    enumerate_basis(n, Palette::Bi).unwrap()
}

fn cached(n: usize) -> &'static [Diagram] {
    static B4: OnceLock<Vec<Diagram>> = OnceLock::new();
    static B5: OnceLock<Vec<Diagram>> = OnceLock::new();
    match n {
        4 => B4.get_or_init(|| basis(4)),
        _ => B5.get_or_init(|| basis(5)),
    }
}

#[test]
fn composition_is_associative_on_three_strands() {
    let b = basis(3);
    for x in &b {
        for y in &b {
            let xy = compose(x, y);
            for z in &b {
                let left = xy
                    .as_ref()
                    .and_then(|(r, s, d)| compose(d, z).map(|(r2, s2, e)| (r + r2, s + s2, e)));
                let right = compose(y, z)
                    .and_then(|(r, s, d)| compose(x, &d).map(|(r2, s2, e)| (r + r2, s + s2, e)));
                assert_eq!(left, right, "{x} {y} {z}");
            }
        }
    }
}

#[test]
fn products_stay_in_the_basis() {
    for n in 1..=4 {
        let b: BTreeSet<Diagram> = basis(n).into_iter().collect();
        for x in &b {
            for y in &b {
                if let Some((_, _, z)) = compose(x, y) {
                    assert!(b.contains(&z), "{x} * {y} = {z}");
                }
            }
        }
    }
}

#[test]
fn straight_diagrams_are_orthogonal_idempotents() {
    for n in 1..=4 {
        let one = identity_element(n, Palette::Bi);
        assert_eq!(one.len(), 1 << n);
        let terms: Vec<Diagram> = one.terms().map(|(d, _)| d.clone()).collect();
        for x in &terms {
            for y in &terms {
                let p = compose(x, y);
                if x == y {
                    assert_eq!(p, Some((0, 0, x.clone())));
                } else {
                    assert_eq!(p, None);
                }
            }
        }
    }
}

#[test]
fn one_colour_words_reach_every_planar_diagram() {
    let catalan = [1usize, 1, 2, 5, 14, 42];
    for (n, &size) in catalan.iter().enumerate().skip(1) {
        let mono = enumerate_basis(n, Palette::Mono).unwrap();
        assert_eq!(mono.len(), size);
        let gens: Vec<Diagram> = (1..n)
            .map(|i| {
                u_generator(n, i, Palette::Mono)
                    .unwrap()
                    .terms()
                    .next()
                    .unwrap()
                    .0
                    .clone()
            })
            .collect();
        let mut seen: BTreeSet<Diagram> = BTreeSet::new();
        let mut frontier = vec![Diagram::straight(&vec![Colour::Red; n])];
        while let Some(d) = frontier.pop() {
            if !seen.insert(d.clone()) {
                continue;
            }
            for g in &gens {
                frontier.push(compose(&d, g).unwrap().2);
            }
        }
        assert_eq!(seen, mono.into_iter().collect());
    }
}

#[test]
fn one_colour_generators_satisfy_the_monoid_relations() {
    let n = 5;
    let u: Vec<Element> = (1..n)
        .map(|i| u_generator(n, i, Palette::Mono).unwrap())
        .collect();
    let dr = LaurentPoly::dr();
    for i in 0..n - 1 {
        assert_eq!(u[i].compose(&u[i]).unwrap(), u[i].scale(&dr));
        if i + 1 < n - 1 {
            let a = u[i].compose(&u[i + 1]).unwrap().compose(&u[i]).unwrap();
            let b = u[i + 1].compose(&u[i]).unwrap().compose(&u[i + 1]).unwrap();
            assert_eq!(a, u[i]);
            assert_eq!(b, u[i + 1]);
        }
        for j in i + 2..n - 1 {
            assert_eq!(u[i].compose(&u[j]).unwrap(), u[j].compose(&u[i]).unwrap());
        }
    }
}

#[test]
fn inclusions_are_homomorphisms() {
    let b = basis(3);
    for x in &b {
        for y in &b {
            let (ex, ey) = (
                Element::from_diagram(x.clone()),
                Element::from_diagram(y.clone()),
            );
            let xy = ex.compose(&ey).unwrap();
            for inc in [natural_inclusion, left_inclusion] {
                let lhs = inc(&xy, Palette::Bi);
                let rhs = inc(&ex, Palette::Bi)
                    .compose(&inc(&ey, Palette::Bi))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn two_colour_generators_relations() {
    let n = 4;
    let sum = LaurentPoly::dr() + LaurentPoly::db();
    let u: Vec<Element> = (1..n)
        .map(|i| u_generator(n, i, Palette::Bi).unwrap())
        .collect();
    for g in &u {
        assert_eq!(g.compose(g).unwrap(), g.scale(&sum));
    }
    assert_eq!(u[0].compose(&u[2]).unwrap(), u[2].compose(&u[0]).unwrap());
}

proptest! {
    #[test]
    fn text_form_round_trips(k in 0usize..588) {
        let d = cached(4)[k].clone();
        let back: Diagram = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn flip_reverses_products(a in 0usize..588, b in 0usize..588) {
        let ds = cached(4);
        let (x, y) = (&ds[a], &ds[b]);
        let lhs = compose(x, y).map(|(r, s, d)| (r, s, d.flip()));
        let rhs = compose(&y.flip(), &x.flip());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn propagating_lines_never_increase(a in 0usize..5544, b in 0usize..5544) {
        let ds = cached(5);
        let (x, y) = (&ds[a], &ds[b]);
        if let Some((_, _, z)) = compose(x, y) {
            let (zr, zb) = z.propagating_index();
            for (r, b) in [x.propagating_index(), y.propagating_index()] {
                prop_assert!(zr <= r && zb <= b);
            }
        }
    }
}
