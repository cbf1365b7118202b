use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ldl;
use crate::momkit::{GeneratorSet, MomentSequence};
use crate::mvpoly::{monomial_basis, Poly};

/// Sampling budget for the uniform-measure start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleBudget {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleBudget {
    fn default() -> Self {
        SampleBudget { samples: 20_000, seed: 0x5eed }
    }
}

/// Minimum accepted points per moment-matrix row.
const MIN_ACCEPTED_PER_BASIS: usize = 20;

/// Moments up to degree 2t of the empirical uniform measure on S, drawn by
/// rejection sampling in [−√R, √R]ⁿ with a fixed seed.
///
/// The result is the moment vector of a genuine atomic measure with atoms in
/// the interior of S, so every localizing matrix is positive semidefinite;
/// positive definiteness is checked and reported.
pub fn uniform_start_moments(set: &GeneratorSet, t: u32, budget: SampleBudget) -> Result<MomentSequence<f64>> {
    let n = set.dim();
    let half_width = set.radius().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let basis = monomial_basis(n, 2 * t);
    let mut sums = vec![0.0; basis.len()];
    let gens: Vec<Poly<f64>> = set.generators().iter().map(|g| g.convert()).collect();
    let mut accepted = 0usize;
    let mut x = vec![0.0; n];
    for _ in 0..budget.samples {
        for xi in x.iter_mut() {
            *xi = rng.gen_range(-half_width..=half_width);
        }
        if !gens[1..].iter().all(|g| g.eval(&x).map(|v| v > 0.0).unwrap_or(false)) {
            continue;
        }
        accepted += 1;
        for (s, a) in sums.iter_mut().zip(&basis) {
            *s += a.eval(&x);
        }
    }
    let needed = MIN_ACCEPTED_PER_BASIS * crate::mvpoly::basis_size(n, t);
    if accepted == 0 || accepted < needed {
        return Err(Error::LowAcceptance { accepted, drawn: budget.samples });
    }
    let values = sums.into_iter().map(|s| s / accepted as f64).collect();
    let phi = MomentSequence::from_values(n, 2 * t, values)?;
    for i in set.active(t) {
        let g = &gens[i];
        let m = phi.localizing_matrix(g, t - set.half_degree(i))?;
        if let Err(e) = ldl(&m) {
            return Err(Error::SingularLocalizing {
                generator: i,
                poly: set.generator(i).to_string(),
                reason: e.to_string(),
            });
        }
    }
    Ok(phi)
}
