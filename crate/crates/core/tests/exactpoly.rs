use bubble_core::exactpoly::univariate::{specialise, IntPoly};
use bubble_core::exactpoly::{poly_det, LaurentPoly, PolyMatrix, Variable};
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -2i32..=2, -2i32..=2), 0..4).prop_map(|ts| {
        ts.into_iter().fold(LaurentPoly::zero(), |acc, (c, r, b)| {
            acc + LaurentPoly::term(c, r, b)
        })
    })
}

fn matrix(max: usize) -> impl Strategy<Value = PolyMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(poly(), n * n)
            .prop_map(move |v| PolyMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
    })
}

fn cofactor_det(m: &PolyMatrix) -> LaurentPoly {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = LaurentPoly::zero();
    for c in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&k| k != c).collect();
        let term = &m[(0, c)] * &cofactor_det(&m.select(&rows, &cols));
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let back: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn eval_is_a_ring_map(a in poly(), b in poly()) {
        let (x, y) = (Complex64::new(1.3, 0.2), Complex64::new(-0.7, 0.9));
        let lhs = (&a * &b).eval(x, y).unwrap();
        let rhs = a.eval(x, y).unwrap() * b.eval(x, y).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn bareiss_matches_cofactor(m in matrix(4)) {
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn square_free_parts_multiply_back(roots in prop::collection::vec(-3i64..=3, 1..6)) {
        let p = roots.iter().fold(IntPoly::new(vec![BigInt::from(1)]), |acc, &r| {
            mul(&acc, &IntPoly::new(vec![BigInt::from(-r), BigInt::from(1)]))
        });
        let parts = p.square_free_decomposition();
        let rebuilt = parts.iter().fold(IntPoly::new(vec![BigInt::from(1)]), |acc, (f, k)| {
            (0..*k).fold(acc, |a, _| mul(&a, f))
        });
        prop_assert_eq!(rebuilt.primitive(), p.primitive());
        for (f, _) in &parts {
            for z in f.simple_roots() {
                prop_assert!(roots.iter().any(|&r| (z - Complex64::new(r as f64, 0.0)).norm() < 1e-8));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn det_commutes_with_evaluation(m in matrix(8)) {
        let (x, y) = (Complex64::new(1.1, 0.3), Complex64::new(0.8, -0.4));
        let exact = poly_det(&m).unwrap().eval(x, y).unwrap();
        let numeric = m.eval(x, y).unwrap().det();
        prop_assert!((exact - numeric).norm() <= 1e-7 * (1.0 + exact.norm()));
    }
}

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (x, y) = (a.coeffs(), b.coeffs());
    let mut out = vec![BigInt::from(0); x.len() + y.len() - 1];
    for (i, p) in x.iter().enumerate() {
        for (j, q) in y.iter().enumerate() {
            out[i + j] += p * q;
        }
    }
    IntPoly::new(out)
}

#[test]
fn specialising_the_other_variable() {
    let p: LaurentPoly = "1*dr^2*db^1 - 3*dr^0*db^0".parse().unwrap();
    let q = specialise(&p, Variable::Dr, 2).unwrap();
    assert_eq!(
        q.coeffs(),
        &[BigInt::from(-3), BigInt::from(0), BigInt::from(2)]
    );
}

#[test]
fn unit_matrix_has_unit_det() {
    assert!(PolyMatrix::identity(6).det().unwrap().is_one());
}
