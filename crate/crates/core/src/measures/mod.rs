//! Moments of the known equilibrium measures, a quadrature oracle for
//! singular weights, and a sampled interior start for the solver.

mod closed_form;
mod quadrature;
mod sampling;

use crate::error::{Error, Result};
use crate::momkit::MomentSequence;
use crate::mvpoly::{MultiIndex, Rational, Scalar};

pub use closed_form::{ball2d_moment, box_moment, gaussian_moment, interval_moment, simplex2d_moment};
pub use quadrature::{gauss_legendre, quadrature_moment, Region, Weight};
pub use sampling::{uniform_start_moments, SampleBudget};

/// A probability measure whose moments are known.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureModel {
    /// dx / (π√(1−x²)) on [−1, 1].
    IntervalArcsine,
    /// Product arcsine law on [−1, 1]ⁿ.
    BoxArcsine(usize),
    /// dx dy / (2π√(1−x²−y²)) on the unit disc.
    Ball2d,
    /// dx dy / (2π√(xy(1−x−y))) on the canonical simplex.
    Simplex2d,
    /// Centered Gaussian with the given row-major covariance.
    Gaussian { n: usize, cov: Vec<f64> },
    /// Evaluated by [`quadrature_moment`].
    Quadrature { weight: Weight, region: Region, level: usize },
}

pub const MODEL_KEYS: [&str; 5] = ["interval", "box2d", "ball2d", "simplex2d", "gaussian2d"];

impl MeasureModel {
    /// Named models selectable from the command line.
    pub fn from_key(key: &str) -> Result<Self> {
        Ok(match key {
            "interval" => MeasureModel::IntervalArcsine,
            "box2d" => MeasureModel::BoxArcsine(2),
            "ball2d" => MeasureModel::Ball2d,
            "simplex2d" => MeasureModel::Simplex2d,
            "gaussian2d" => MeasureModel::Gaussian { n: 2, cov: vec![1.0, 0.0, 0.0, 1.0] },
            other => return Err(Error::UnknownModel(other.to_string())),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            MeasureModel::IntervalArcsine => 1,
            MeasureModel::BoxArcsine(n) => *n,
            MeasureModel::Ball2d | MeasureModel::Simplex2d => 2,
            MeasureModel::Gaussian { n, .. } => *n,
            MeasureModel::Quadrature { region, .. } => region.dim(),
        }
    }

    fn check(&self, alpha: &MultiIndex) -> Result<()> {
        if alpha.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: alpha.dim() });
        }
        Ok(())
    }

    /// Exact moment, for the models with rational closed forms.
    pub fn exact_moment(&self, alpha: &MultiIndex) -> Result<Rational> {
        self.check(alpha)?;
        Ok(match self {
            MeasureModel::IntervalArcsine => interval_moment(alpha.exponents()[0]),
            MeasureModel::BoxArcsine(_) => box_moment(alpha),
            MeasureModel::Ball2d => ball2d_moment(alpha),
            MeasureModel::Simplex2d => simplex2d_moment(alpha),
            _ => return Err(Error::Invalid("model has no exact rational moments".into())),
        })
    }

    pub fn has_exact_moments(&self) -> bool {
        !matches!(self, MeasureModel::Gaussian { .. } | MeasureModel::Quadrature { .. })
    }

    /// ∫ xᵅ dμ as a float.
    pub fn moment(&self, alpha: &MultiIndex) -> Result<f64> {
        self.check(alpha)?;
        match self {
            MeasureModel::Gaussian { n, cov } => Ok(gaussian_moment(cov, *n, alpha)),
            MeasureModel::Quadrature { weight, region, level } => quadrature_moment(weight, region, alpha, *level),
            _ => self.exact_moment(alpha).map(|r| r.to_float()),
        }
    }

    /// All moments up to degree `order`, exactly.
    pub fn exact_sequence(&self, order: u32) -> Result<MomentSequence<Rational>> {
        if !self.has_exact_moments() {
            return Err(Error::Invalid("model has no exact rational moments".into()));
        }
        let mut err = None;
        let seq = MomentSequence::from_fn(self.dim(), order, |a| {
            self.exact_moment(a).unwrap_or_else(|e| {
                err = Some(e);
                Rational::from_integer(0.into())
            })
        });
        err.map_or(Ok(seq), Err)
    }

    /// All moments up to degree `order` as floats.
    pub fn sequence(&self, order: u32) -> Result<MomentSequence<f64>> {
        let mut err = None;
        let seq = MomentSequence::from_fn(self.dim(), order, |a| {
            self.moment(a).unwrap_or_else(|e| {
                err = Some(e);
                0.0
            })
        });
        err.map_or(Ok(seq), Err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvpoly::{monomial_basis, ratio};

    #[test]
    fn named_moments() {
        let m = MeasureModel::Ball2d;
        assert_eq!(m.exact_moment(&MultiIndex::new(vec![2, 0])).unwrap(), ratio(1, 3));
        let m = MeasureModel::Simplex2d;
        assert_eq!(m.exact_moment(&MultiIndex::new(vec![1, 1])).unwrap(), ratio(1, 15));
        assert_eq!(m.exact_moment(&MultiIndex::new(vec![2, 2])).unwrap(), ratio(1, 105));
        let m = MeasureModel::IntervalArcsine;
        assert_eq!(m.exact_moment(&MultiIndex::new(vec![4])).unwrap(), ratio(3, 8));
        assert!(m.exact_moment(&MultiIndex::new(vec![4, 0])).is_err());
        assert!(MeasureModel::from_key("torus").is_err());
    }

    /// Closed forms against the independent quadrature oracle for |α| ≤ 8.
    #[test]
    fn closed_forms_match_quadrature() {
        let cases = [
            (MeasureModel::IntervalArcsine, Region::Interval),
            (MeasureModel::BoxArcsine(2), Region::Box(2)),
            (MeasureModel::Ball2d, Region::Ball2d),
            (MeasureModel::Simplex2d, Region::Simplex2d),
        ];
        for (model, region) in cases {
            for a in monomial_basis(model.dim(), 8) {
                let exact = model.moment(&a).unwrap();
                let quad = quadrature_moment(&Weight::Equilibrium, &region, &a, 24).unwrap();
                assert!((exact - quad).abs() <= 1e-10, "{model:?} {a}: {exact} vs {quad}");
            }
        }
    }

    #[test]
    fn symmetry_and_factorization() {
        for a in monomial_basis(2, 8) {
            if a.has_odd() {
                assert_eq!(MeasureModel::Ball2d.moment(&a).unwrap(), 0.0);
                assert_eq!(MeasureModel::BoxArcsine(2).moment(&a).unwrap(), 0.0);
            }
            let e = a.exponents();
            assert_eq!(box_moment(&a), interval_moment(e[0]) * interval_moment(e[1]));
        }
    }
}
