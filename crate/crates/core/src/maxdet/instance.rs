use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::momkit::{GeneratorSet, MomentSequence};
use crate::mvpoly::{index_map, monomial_basis, MultiIndex};

/// One localizing block M_{t−t_g}(g·φ) = Σ_α φ_α A_{g,α}.
#[derive(Debug, Clone)]
pub struct Block {
    pub generator: usize,
    pub basis: Vec<MultiIndex>,
    /// Nonzero basis matrices as (position of α in the moment vector, A_{g,α}).
    pub coefficients: Vec<(usize, DMatrix<f64>)>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn assemble(&self, phi: &[f64]) -> DMatrix<f64> {
        let k = self.size();
        let mut m = DMatrix::zeros(k, k);
        for (pos, a) in &self.coefficients {
            if phi[*pos] != 0.0 {
                m += a * phi[*pos];
            }
        }
        m
    }
}

/// The log-det program at order t: variables φ_α for 0 < |α| ≤ 2t, with φ_0 = 1.
#[derive(Debug, Clone)]
pub struct Instance {
    pub set: GeneratorSet,
    pub t: u32,
    /// monomial_basis(n, 2t); entry 0 is the fixed mass.
    pub moments: Vec<MultiIndex>,
    pub blocks: Vec<Block>,
}

impl Instance {
    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    /// Number of free variables, s(2t) − 1.
    pub fn num_vars(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn pell_constant(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    /// Full moment vector (φ_0 = 1 prepended).
    pub fn full(&self, vars: &[f64]) -> Vec<f64> {
        let mut v = Vec::with_capacity(vars.len() + 1);
        v.push(1.0);
        v.extend_from_slice(vars);
        v
    }

    /// Free variables of a degree-2t sequence normalized by its mass.
    pub fn vars_from(&self, phi: &MomentSequence<f64>) -> Result<Vec<f64>> {
        if phi.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: phi.dim() });
        }
        let phi = if phi.order() > 2 * self.t { phi.truncate(2 * self.t)? } else { phi.clone() };
        if phi.order() < 2 * self.t {
            return Err(Error::DegreeOverflow { needed: 2 * self.t, available: phi.order() });
        }
        let mass = *phi.mass();
        if mass <= 0.0 {
            return Err(Error::Invalid("start sequence has non-positive mass".into()));
        }
        Ok(phi.values()[1..].iter().map(|v| v / mass).collect())
    }

    pub fn sequence(&self, vars: &[f64]) -> MomentSequence<f64> {
        MomentSequence::from_values(self.dim(), 2 * self.t, self.full(vars)).expect("length matches basis")
    }
}

/// Builds the sparse basis matrices A_{g,α} for every g ∈ G_t.
pub fn assemble_instance(set: &GeneratorSet, t: u32) -> Result<Instance> {
    let active = set.active(t);
    // With g_0 alone the program is unbounded.
    if !active.iter().any(|&gi| gi > 0) {
        return Err(Error::OrderTooSmall { t });
    }
    let n = set.dim();
    let moments = monomial_basis(n, 2 * t);
    let pos = index_map(&moments);
    let blocks = active
        .into_iter()
        .map(|gi| {
            let g = set.generator(gi).to_f64();
            let basis = monomial_basis(n, t - set.half_degree(gi));
            let k = basis.len();
            let mut mats: Vec<Option<DMatrix<f64>>> = vec![None; moments.len()];
            for i in 0..k {
                for j in 0..k {
                    let ab = basis[i].plus(&basis[j]);
                    for (gamma, c) in g.terms() {
                        let p = pos[&ab.plus(gamma)];
                        mats[p].get_or_insert_with(|| DMatrix::zeros(k, k))[(i, j)] += c;
                    }
                }
            }
            let coefficients = mats.into_iter().enumerate().filter_map(|(p, m)| m.map(|m| (p, m))).collect();
            Block { generator: gi, basis, coefficients }
        })
        .collect();
    Ok(Instance { set: set.clone(), t, moments, blocks })
}
