//! Pivot-checked symmetric factorizations over either scalar backend.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::momkit::MomentMatrix;
use crate::mvpoly::{Scalar, PIVOT_RTOL};

/// M = L D Lᵀ with unit lower-triangular L (row-major) and positive D.
#[derive(Debug, Clone)]
pub struct Ldl<S: Scalar> {
    pub size: usize,
    pub lower: Vec<S>,
    pub diag: Vec<S>,
}

impl<S: Scalar> Ldl<S> {
    pub fn l(&self, i: usize, j: usize) -> &S {
        &self.lower[i * self.size + j]
    }

    /// Solve L y = b.
    pub fn forward(&self, b: &[S]) -> Vec<S> {
        let k = self.size;
        let mut y = b.to_vec();
        for i in 0..k {
            for j in 0..i {
                let t = self.l(i, j).clone() * y[j].clone();
                y[i] = y[i].clone() - t;
            }
        }
        y
    }

    /// Rows of L⁻¹ (unit lower-triangular), row-major.
    pub fn inverse_lower(&self) -> Vec<S> {
        let k = self.size;
        let mut inv = vec![S::zero(); k * k];
        for col in 0..k {
            let mut e = vec![S::zero(); k];
            e[col] = S::one();
            let y = self.forward(&e);
            for row in 0..k {
                inv[row * k + col] = y[row].clone();
            }
        }
        inv
    }

    /// Dense M⁻¹ = L⁻ᵀ D⁻¹ L⁻¹ (row-major).
    pub fn inverse(&self) -> Vec<S> {
        let k = self.size;
        let li = self.inverse_lower();
        let mut out = vec![S::zero(); k * k];
        for i in 0..k {
            for j in i..k {
                let mut acc = S::zero();
                for r in j..k {
                    acc = acc + li[r * k + i].clone() * li[r * k + j].clone() / self.diag[r].clone();
                }
                out[i * k + j] = acc.clone();
                out[j * k + i] = acc;
            }
        }
        out
    }
}

/// LDLᵀ without pivoting. Rejects pivots that fail [`Scalar::pivot_ok`]:
/// non-positive for exact rationals, below 1e-12 × the largest diagonal for floats.
pub fn ldl<S: Scalar>(m: &MomentMatrix<S>) -> Result<Ldl<S>> {
    let k = m.size();
    let max_diag = (0..k)
        .map(|i| m.get(i, i).clone())
        .fold(S::zero(), |a, b| if b > a { b } else { a });
    let mut lower = vec![S::zero(); k * k];
    let mut diag: Vec<S> = Vec::with_capacity(k);
    for j in 0..k {
        let mut d = m.get(j, j).clone();
        for r in 0..j {
            let l = lower[j * k + r].clone();
            d = d - l.clone() * l * diag[r].clone();
        }
        if !S::pivot_ok(&d, &max_diag) {
            return Err(Error::NotPositiveDefinite {
                index: j,
                monomial: m.basis()[j].to_string(),
                value: d.to_float(),
            });
        }
        lower[j * k + j] = S::one();
        for i in j + 1..k {
            let mut v = m.get(i, j).clone();
            for r in 0..j {
                v = v - lower[i * k + r].clone() * lower[j * k + r].clone() * diag[r].clone();
            }
            lower[i * k + j] = v / d.clone();
        }
        diag.push(d);
    }
    Ok(Ldl { size: k, lower, diag })
}

/// Floating Cholesky M = L Lᵀ with the same pivot rule as [`ldl`].
pub fn cholesky(m: &MomentMatrix<f64>) -> Result<DMatrix<f64>> {
    let f = ldl(m)?;
    let k = f.size;
    Ok(DMatrix::from_fn(k, k, |i, j| if j <= i { f.l(i, j) * f.diag[j].sqrt() } else { 0.0 }))
}

/// Whether a dense float matrix is numerically positive definite.
pub fn is_positive_definite(m: &DMatrix<f64>) -> bool {
    let max_diag = m.diagonal().iter().copied().fold(0.0, f64::max);
    match nalgebra::Cholesky::new(m.clone()) {
        Some(c) => c.l().diagonal().iter().all(|&d| d * d > PIVOT_RTOL * max_diag),
        None => false,
    }
}
