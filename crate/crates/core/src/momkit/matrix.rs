use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::Sig17;
use crate::mvpoly::{MultiIndex, Scalar};

/// Symmetric matrix indexed by a monomial basis (row-major storage).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentMatrix<S: Scalar> {
    basis: Vec<MultiIndex>,
    entries: Vec<S>,
}

impl<S: Scalar> MomentMatrix<S> {
    pub fn new(basis: Vec<MultiIndex>, entries: Vec<S>) -> Result<Self> {
        let k = basis.len();
        if entries.len() != k * k {
            return Err(Error::DimensionMismatch { expected: k * k, found: entries.len() });
        }
        Ok(MomentMatrix { basis, entries })
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.size() + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.size();
        (0..k).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        let k = self.size();
        DMatrix::from_fn(k, k, |i, j| self.get(i, j).to_float())
    }

    pub fn to_f64(&self) -> MomentMatrix<f64> {
        MomentMatrix { basis: self.basis.clone(), entries: self.entries.iter().map(S::to_float).collect() }
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            basis: self.basis.iter().map(|a| a.exponents().to_vec()).collect(),
            entries: self.entries.iter().map(|v| Sig17(v.to_float())).collect(),
        }
    }
}

impl MomentMatrix<f64> {
    pub fn from_dmatrix(basis: Vec<MultiIndex>, m: &DMatrix<f64>) -> Result<Self> {
        let k = basis.len();
        if m.nrows() != k || m.ncols() != k {
            return Err(Error::DimensionMismatch { expected: k, found: m.nrows() });
        }
        let entries = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| m[(i, j)]).collect();
        Ok(MomentMatrix { basis, entries })
    }
}

/// Wire form: basis list plus row-major entries.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixJson {
    pub basis: Vec<Vec<u32>>,
    pub entries: Vec<Sig17>,
}
