use bubble_core::basis::enumerate_basis;
use bubble_core::diagram::{Colour, Composite, Diagram, Palette};
use bubble_core::numeric::CMatrix;
use bubble_core::spinchain::{
    b2_matrix, diagram_matrix, embed, homomorphism_check, site_basis_order, NumericParams,
    CROSSING_RB_TO_BR,
};
use num_complex::Complex64;
use proptest::prelude::*;

const R: Colour = Colour::Red;
const B: Colour = Colour::Blue;

fn params() -> NumericParams {
    NumericParams::new(Complex64::from_polar(1.0, 0.7), Complex64::new(1.4, -0.3)).unwrap()
}

fn straight(a: Colour, b: Colour) -> Diagram {
    Diagram::straight(&[a, b])
}

fn crossing(north: [Colour; 2]) -> Diagram {
    Diagram::new(2, 2, &[(0, 3, north[0]), (1, 2, north[1])]).unwrap()
}

fn b2() -> Vec<Diagram> {
    enumerate_basis(2, Palette::Bi).unwrap()
}

/// Worst deviation of `M(x) M(y)` from the matrix of the composite.
fn worst_product(mats: &dyn Fn(&Diagram) -> CMatrix, p: &NumericParams) -> f64 {
    let (dr, db) = (p.delta(R), p.delta(B));
    let mut worst = 0.0f64;
    for x in &b2() {
        for y in &b2() {
            let lhs = mats(x).mul(&mats(y));
            let rhs = match x.compose(y).unwrap() {
                Composite::Zero => CMatrix::zeros(16, 16),
                Composite::Diagram {
                    loops_r,
                    loops_b,
                    result,
                } => mats(&result).scale(dr.powu(loops_r) * db.powu(loops_b)),
            };
            worst = worst.max(lhs.max_diff(&rhs));
        }
    }
    worst
}

#[test]
fn basis_labels_follow_site_order() {
    let labels = site_basis_order();
    assert_eq!(labels.len(), 16);
    assert_eq!(labels[0], "|r+r+>");
    assert_eq!(labels[10], "|b+b+>");
    assert_eq!(labels[15], "|b-b->");
}

#[test]
fn colour_projectors_resolve_the_identity() {
    let p = params();
    let mut sum = CMatrix::zeros(16, 16);
    for (a, b) in [(R, R), (R, B), (B, R), (B, B)] {
        sum = sum.add(&b2_matrix(&straight(a, b), &p).unwrap());
    }
    assert_eq!(sum.max_diff(&CMatrix::identity(16)), 0.0);
}

#[test]
fn crossings_are_transposes_and_compose_to_a_projector() {
    let p = params();
    let x_br = b2_matrix(&crossing([B, R]), &p).unwrap();
    let x_rb = b2_matrix(&crossing([R, B]), &p).unwrap();
    assert_eq!(x_rb.max_diff(&x_br.transpose()), 0.0);
    let proj_br = b2_matrix(&straight(B, R), &p).unwrap();
    assert_eq!(x_br.mul(&x_rb).max_diff(&proj_br), 0.0);
    let proj_rb = b2_matrix(&straight(R, B), &p).unwrap();
    assert_eq!(x_rb.mul(&x_br).max_diff(&proj_rb), 0.0);
}

#[test]
fn one_colour_block_is_the_monoid_generator() {
    let p = params();
    let cup = Diagram::new(2, 2, &[(0, 1, R), (2, 3, R)]).unwrap();
    let m = b2_matrix(&cup, &p).unwrap();
    let q = p.q(R);
    // rows and columns |r+r->, |r-r+>
    let block = [[m[(1, 1)], m[(1, 4)]], [m[(4, 1)], m[(4, 4)]]];
    let want = [
        [q, Complex64::new(1.0, 0.0)],
        [Complex64::new(1.0, 0.0), q.inv()],
    ];
    for a in 0..2 {
        for b in 0..2 {
            assert!((block[a][b] - want[a][b]).norm() < 1e-14);
        }
    }
    assert_eq!(m.nonzero_positions(0.0).len(), 4);
}

#[test]
fn explicit_matrices_match_the_line_rule() {
    let p = params();
    for d in b2() {
        assert!(
            b2_matrix(&d, &p)
                .unwrap()
                .max_diff(&diagram_matrix(&d, &p).unwrap())
                < 1e-15,
            "{d}"
        );
    }
}

#[test]
fn printed_crossing_entry_breaks_the_representation() {
    let p = params();
    let literal = |d: &Diagram| {
        let m = b2_matrix(d, &p).unwrap();
        if d.mate(0) != 3 {
            return m;
        }
        let mut x = CMatrix::zeros(16, 16);
        for (r, c) in CROSSING_RB_TO_BR
            .iter()
            .map(|&(r, c)| if (r, c) == (14, 8) { (11, 8) } else { (r, c) })
        {
            x[(r - 1, c - 1)] = Complex64::new(1.0, 0.0);
        }
        if d.colour(0) == B {
            x
        } else {
            x.transpose()
        }
    };
    assert!(worst_product(&literal, &p) > 0.5);
    assert!(worst_product(&|d: &Diagram| b2_matrix(d, &p).unwrap(), &p) < 1e-12);
}

#[test]
fn three_site_chain_is_a_representation() {
    let r = homomorphism_check(3, &params(), 1e-12).unwrap();
    assert!(r.ok, "{r:?}");
}

#[test]
fn embedding_traces() {
    let p = params();
    for d in b2() {
        let m = b2_matrix(&d, &p).unwrap();
        let e = embed(&m, 2, 3).unwrap();
        assert!((e.trace() - m.trace() * 4.0).norm() < 1e-12);
    }
    assert!(embed(&CMatrix::identity(16), 3, 3).is_err());
}

fn point() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.4f64..2.5, 0.1f64..3.0, 0.4f64..2.5, 0.1f64..3.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generic_parameters_give_a_representation((r1, a1, r2, a2) in point(), on_circle in any::<bool>()) {
        let (m1, m2) = if on_circle { (1.0, 1.0) } else { (r1, r2) };
        let p = NumericParams::new(Complex64::from_polar(m1, a1), Complex64::from_polar(m2, a2)).unwrap();
        let r = homomorphism_check(2, &p, 1e-12).unwrap();
        prop_assert!(r.ok, "{:?}", r);
        prop_assert_eq!(r.products_checked, 100);
    }
}
