use bubble_core::basis::{enumerate_basis, labels, walk_count};
use bubble_core::diagram::{Colour, Element, Palette};
use bubble_core::exactpoly::{poly_det, univariate::specialise, Variable};
use bubble_core::stdmod::{gram_det, gram_matrix, match_root_of_unity, root_scan, StandardModule};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_homomorphism(m: &StandardModule, x: &Element, y: &Element) {
    let lhs = m.rep_matrix(&x.compose(y).unwrap()).unwrap();
    let rhs = m
        .rep_matrix(x)
        .unwrap()
        .mul(&m.rep_matrix(y).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn representation_respects_products_on_two_strands() {
    let b: Vec<Element> = enumerate_basis(2, Palette::Bi)
        .unwrap()
        .into_iter()
        .map(Element::from)
        .collect();
    for (i, j) in labels(2, Palette::Bi) {
        let m = StandardModule::new(2, i, j, Palette::Bi).unwrap();
        for x in &b {
            for y in &b {
                check_homomorphism(&m, x, y);
            }
        }
    }
}

#[test]
fn representation_respects_sampled_products_on_three_strands() {
    let b: Vec<Element> = enumerate_basis(3, Palette::Bi)
        .unwrap()
        .into_iter()
        .map(Element::from)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (i, j) in labels(3, Palette::Bi) {
        let m = StandardModule::new(3, i, j, Palette::Bi).unwrap();
        for _ in 0..200 {
            let (x, y) = (
                &b[rng.random_range(0..b.len())],
                &b[rng.random_range(0..b.len())],
            );
            check_homomorphism(&m, x, y);
        }
    }
}

#[test]
fn gram_blocks_follow_framed_colour_words() {
    for n in 1..=5 {
        for (i, j) in labels(n, Palette::Bi) {
            let m = StandardModule::new(n, i, j, Palette::Bi).unwrap();
            let g = m.gram_matrix().unwrap();
            for a in 0..m.dim() {
                for b in 0..m.dim() {
                    if m.basis()[a].colours() != m.basis()[b].colours() {
                        assert!(g[(a, b)].is_zero(), "n={n} ({i},{j}) entry ({a},{b})");
                    }
                }
            }
            assert!(g.is_symmetric());
            assert!(gram_det(n, i, j).unwrap().block_diagonal);
        }
    }
}

#[test]
fn block_determinant_equals_full_determinant() {
    for n in 1..=5 {
        for (i, j) in labels(n, Palette::Bi) {
            let full = poly_det(&gram_matrix(n, i, j).unwrap().entries).unwrap();
            assert_eq!(gram_det(n, i, j).unwrap().det, full, "n={n} ({i},{j})");
        }
    }
}

#[test]
fn module_dimensions_square_to_the_algebra() {
    for n in 1..=6 {
        let total: usize = labels(n, Palette::Bi)
            .into_iter()
            .map(|(i, j)| {
                StandardModule::new(n, i, j, Palette::Bi)
                    .unwrap()
                    .dim()
                    .pow(2)
            })
            .sum();
        assert_eq!(total, enumerate_basis(n, Palette::Bi).unwrap().len());
    }
}

#[test]
fn top_modules_have_unit_determinant() {
    for n in 1..=6 {
        for i in 0..=n {
            assert!(gram_det(n, i, n - i).unwrap().det.is_one());
            assert_eq!(
                StandardModule::new(n, i, n - i, Palette::Bi).unwrap().dim() as u64,
                walk_count(n, i, n - i)
            );
        }
    }
}

#[test]
fn small_determinants_by_hand() {
    // G_2(0,0) = diag(dr, db)
    assert_eq!(gram_det(2, 0, 0).unwrap().det.to_string(), "1*dr^1*db^1");
    // one red cut: a red arc beside it, or a blue arc anywhere
    let r = gram_det(3, 1, 0).unwrap();
    let words: Vec<&str> = r.blocks.iter().map(|b| b.word.as_str()).collect();
    assert_eq!(words, ["rrr", "rbb", "brb", "bbr"]);
    assert_eq!(r.blocks[0].det.to_string(), "1*dr^2*db^0 - 1*dr^0*db^0");
    assert!(r.blocks[1..]
        .iter()
        .all(|b| b.det == "1*dr^0*db^1".parse().unwrap()));
}

#[test]
fn scanned_roots_account_for_the_whole_polynomial() {
    for n in 2..=4 {
        for (i, j) in labels(n, Palette::Bi) {
            let det = gram_det(n, i, j).unwrap().det;
            for colour in Colour::ALL {
                let keep = if colour == Colour::Red {
                    Variable::Dr
                } else {
                    Variable::Db
                };
                let report = root_scan(n, i, j, colour, 2).unwrap();
                for scan in &report.scans {
                    let p = specialise(&det, keep, scan.other_value).unwrap();
                    let counted: usize = scan.roots.iter().map(|r| r.multiplicity).sum();
                    assert_eq!(
                        counted,
                        p.degree().unwrap_or(0),
                        "n={n} ({i},{j}) {colour:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn roots_of_unity_matcher() {
    let x = Complex64::new(2.0 * (std::f64::consts::PI / 3.0).cos(), 0.0);
    assert_eq!(match_root_of_unity(x, 6, 1e-8), Some((1, 3)));
    assert_eq!(match_root_of_unity(Complex64::new(0.3, 0.0), 6, 1e-8), None);
    assert_eq!(match_root_of_unity(Complex64::new(0.0, 1.0), 6, 1e-8), None);
}
