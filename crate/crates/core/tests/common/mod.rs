#![allow(dead_code)]

use nalgebra::DMatrix;
use pellkit::measures::MeasureModel;
use pellkit::momkit::{GeneratorSet, MomentSequence};
use pellkit::mvpoly::{ratio, MultiIndex, Poly, Rational};
use pellkit::sets::builtin;
use rand::Rng;

pub fn q(p: i64, d: i64) -> Rational {
    ratio(p, d)
}

pub fn mi(e: &[u32]) -> MultiIndex {
    MultiIndex::new(e.to_vec())
}

pub fn set(name: &str) -> GeneratorSet {
    builtin(name).unwrap().0
}

pub fn exact(name: &str, order: u32) -> MomentSequence<Rational> {
    builtin(name).unwrap().1.unwrap().exact_sequence(order).unwrap()
}

pub fn model(name: &str) -> MeasureModel {
    builtin(name).unwrap().1.unwrap()
}

/// x, y as rational polynomials in two variables.
pub fn xy() -> (Poly<Rational>, Poly<Rational>) {
    (Poly::var(2, 0), Poly::var(2, 1))
}

pub fn random_spd(rng: &mut impl Rng, k: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(k, k, |_, _| rng.gen_range(-1.0..1.0));
    &a * a.transpose() + DMatrix::identity(k, k) * 0.5
}

/// Max-norm distance between a float sequence and exact moments of a model.
pub fn distance_to_model(phi: &MomentSequence<f64>, model: &MeasureModel) -> f64 {
    phi.iter().map(|(a, v)| (v - model.moment(a).unwrap()).abs()).fold(0.0, f64::max)
}
