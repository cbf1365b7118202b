mod common;

use common::*;
use nalgebra::DMatrix;
use pellkit::momkit::{extension_distance, MomentSequence};
use pellkit::mvpoly::{monomial_basis, MultiIndex, Poly, Rational};
use pellkit::Error;
use proptest::prelude::*;

#[test]
fn riesz_examples() {
    let (x, y) = xy();
    let one = Poly::one(2);
    let ball = exact("ball2d", 4);
    let g = &(&one - &(&x * &x)) - &(&y * &y);
    assert_eq!(ball.riesz_apply(&g).unwrap(), q(1, 3));
    assert_eq!(ball.riesz_apply(&one).unwrap(), q(1, 1));
    let simplex = exact("simplex2d", 4);
    let p = &x * &(&(&one - &x) - &y);
    assert_eq!(simplex.riesz_apply(&p).unwrap(), q(1, 15));
}

#[test]
fn riesz_degree_overflow() {
    let ball = exact("ball2d", 2);
    let (x, _) = xy();
    assert!(matches!(ball.riesz_apply(&x.pow(3)), Err(Error::DegreeOverflow { .. })));
}

#[test]
fn shifted_examples() {
    let interval = exact("interval", 6);
    assert_eq!(interval.shifted(&Poly::one(1)).unwrap().values(), interval.values());
    let x = Poly::var(1, 0);
    let g = &Poly::one(1) - &(&x * &x);
    let s = interval.shifted(&g).unwrap();
    assert_eq!(s.order(), 4);
    assert_eq!(*s.get(&mi(&[0])).unwrap(), q(1, 2));

    let ball = exact("ball2d", 4);
    let (x, y) = xy();
    let g = &(&Poly::one(2) - &(&x * &x)) - &(&y * &y);
    let s = ball.shifted(&g).unwrap();
    assert_eq!(*s.get(&mi(&[2, 0])).unwrap(), q(1, 15));
    assert!(matches!(exact("ball2d", 1).shifted(&g), Err(Error::DegreeOverflow { .. })));
}

#[test]
fn matrix_examples() {
    let ball = exact("ball2d", 4);
    let m = ball.moment_matrix(1).unwrap();
    let expected = [[q(1, 1), q(0, 1), q(0, 1)], [q(0, 1), q(1, 3), q(0, 1)], [q(0, 1), q(0, 1), q(1, 3)]];
    for (i, row) in expected.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            assert_eq!(m.get(i, j), v);
        }
    }
    let (x, y) = xy();
    let g = &(&Poly::one(2) - &(&x * &x)) - &(&y * &y);
    let l = ball.localizing_matrix(&g, 1).unwrap();
    let diag = [q(1, 3), q(1, 15), q(1, 15)];
    for (i, d) in diag.iter().enumerate() {
        for j in 0..3 {
            let want = if i == j { d.clone() } else { q(0, 1) };
            assert_eq!(*l.get(i, j), want);
        }
    }
    assert!(matches!(exact("ball2d", 3).localizing_matrix(&g, 1), Err(Error::DegreeOverflow { .. })));
}

#[test]
fn dirac_at_origin() {
    let dirac = MomentSequence::<f64>::from_fn(2, 2, |a| if a.is_zero() { 1.0 } else { 0.0 });
    let m = dirac.moment_matrix(1).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(*m.get(i, j), if i == 0 && j == 0 { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn extension_examples() {
    let low = exact("ball2d", 2).to_f64();
    assert_eq!(extension_distance(&low, &low).unwrap(), 0.0);
    assert_eq!(extension_distance(&low, &exact("ball2d", 4).to_f64()).unwrap(), 0.0);
    let other = exact("interval", 4).to_f64();
    assert!(matches!(extension_distance(&low, &other), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn measure_matrices_are_symmetric_and_psd() {
    for name in ["interval", "box2d", "ball2d", "simplex2d"] {
        let phi = exact(name, 6);
        for t in 1..=3 {
            let m = phi.moment_matrix(t).unwrap();
            assert!(m.is_symmetric());
            let eig = m.to_dmatrix().symmetric_eigenvalues();
            assert!(eig.min() >= -1e-12, "{name} t={t}");
        }
    }
}

fn small_poly() -> impl Strategy<Value = Poly<Rational>> {
    let basis = monomial_basis(2, 2);
    prop::collection::vec(-5i64..=5, basis.len()).prop_map(move |cs| {
        Poly::from_terms(2, basis.iter().cloned().zip(cs.into_iter().map(|c| q(c, 1)))).unwrap()
    })
}

fn random_sequence() -> impl Strategy<Value = MomentSequence<Rational>> {
    let len = monomial_basis(2, 6).len();
    prop::collection::vec(-9i64..=9, len)
        .prop_map(|vs| MomentSequence::from_values(2, 6, vs.into_iter().map(|v| q(v, 7)).collect()).unwrap())
}

proptest! {
    #[test]
    fn unit_generator_localizing_is_moment_matrix(phi in random_sequence()) {
        let a = phi.localizing_matrix(&Poly::one(2), 2).unwrap();
        let b = phi.moment_matrix(2).unwrap();
        prop_assert_eq!(a.entries(), b.entries());
    }

    #[test]
    fn localizing_is_bilinear(phi in random_sequence(), g in small_poly(), h in small_poly(), a in -4i64..4, b in -4i64..4) {
        let (a, b) = (q(a, 1), q(b, 1));
        let combo = &g.scale(&a) + &h.scale(&b);
        let lhs = phi.localizing_matrix(&combo, 1).unwrap();
        let lg = phi.localizing_matrix(&g, 1).unwrap();
        let lh = phi.localizing_matrix(&h, 1).unwrap();
        for (k, v) in lhs.entries().iter().enumerate() {
            prop_assert_eq!(v.clone(), &a * &lg.entries()[k] + &b * &lh.entries()[k]);
        }
    }

    #[test]
    fn riesz_of_shift_is_riesz_of_product(phi in random_sequence(), g in small_poly(), p in small_poly()) {
        let shifted = phi.shifted(&g).unwrap();
        prop_assert_eq!(shifted.riesz_apply(&p).unwrap(), phi.riesz_apply(&(&g * &p)).unwrap());
    }

    #[test]
    fn moment_matrix_is_hankel(phi in random_sequence()) {
        let m = phi.moment_matrix(3).unwrap();
        let basis = m.basis().to_vec();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let sum: MultiIndex = basis[i].plus(&basis[j]);
                prop_assert_eq!(m.get(i, j), phi.get(&sum).unwrap());
            }
        }
        prop_assert!(m.is_symmetric());
    }
}

#[test]
fn matrix_json_layout() {
    let m = exact("ball2d", 2).to_f64().moment_matrix(1).unwrap();
    let json = serde_json::to_value(m.to_json()).unwrap();
    assert_eq!(json["basis"], serde_json::json!([[0, 0], [1, 0], [0, 1]]));
    assert_eq!(json["entries"].as_array().unwrap().len(), 9);
    let back = DMatrix::from_row_slice(3, 3, &json["entries"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect::<Vec<_>>());
    assert_eq!(back, m.to_dmatrix());
}
