//! Christoffel functions: the polynomial vᵀM⁻¹v, orthonormal bases from a
//! moment matrix, and the density p*_t built from localizing matrices.

use std::fmt::Write;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, ldl, Ldl};
use crate::momkit::{GeneratorSet, MomentMatrix, MomentSequence};
use crate::mvpoly::{MultiIndex, Poly, Scalar};

/// Reciprocal Christoffel function Λ⁻¹ as a polynomial of degree 2t.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelPolynomial<S: Scalar> {
    pub poly: Poly<S>,
    /// Divisor applied to the sum, when normalized.
    pub normalization: Option<S>,
}

/// Graded orthonormal family P = L⁻¹ v from the Cholesky factor M = L Lᵀ.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    pub basis: Vec<MultiIndex>,
    pub polys: Vec<Poly<f64>>,
    source: MomentMatrix<f64>,
    /// Row i holds the coefficients of P_i in the monomial basis.
    coeffs: DMatrix<f64>,
}

impl OrthonormalBasis {
    pub fn source(&self) -> &MomentMatrix<f64> {
        &self.source
    }

    /// max |C M Cᵀ − I| over entries.
    pub fn gram_error(&self) -> f64 {
        let m = self.source.to_dmatrix();
        let gram = &self.coeffs * m * self.coeffs.transpose();
        (gram - DMatrix::identity(self.polys.len(), self.polys.len())).abs().max()
    }

    /// Σ_α P_α².
    pub fn sum_of_squares(&self) -> Poly<f64> {
        let n = self.basis[0].dim();
        self.polys.iter().fold(Poly::zero(n), |acc, p| &acc + &(p * p))
    }

    /// P_α with |α| = d.
    pub fn slice(&self, d: u32) -> impl Iterator<Item = &Poly<f64>> {
        self.basis.iter().zip(&self.polys).filter(move |(a, _)| a.degree() == d).map(|(_, p)| p)
    }
}

fn combine_rows<S: Scalar>(basis: &[MultiIndex], rows: &[S], k: usize, i: usize) -> Poly<S> {
    let mut p = Poly::zero(basis[0].dim());
    for j in 0..=i {
        p.add_term(basis[j].clone(), rows[i * k + j].clone());
    }
    p
}

/// Σ_{i∈rows} (L⁻¹v)_i² / D_i from an LDLᵀ factorization.
fn weighted_squares<S: Scalar>(basis: &[MultiIndex], f: &Ldl<S>, rows: impl Iterator<Item = usize>) -> Poly<S> {
    let k = f.size;
    let inv = f.inverse_lower();
    let mut out = Poly::zero(basis[0].dim());
    for i in rows {
        let q = combine_rows(basis, &inv, k, i);
        out = &out + &(&q * &q).scale(&(S::one() / f.diag[i].clone()));
    }
    out
}

/// vᵀ M⁻¹ v as an explicit polynomial.
pub fn christoffel_inverse_poly<S: Scalar>(m: &MomentMatrix<S>) -> Result<ChristoffelPolynomial<S>> {
    let f = ldl(m)?;
    Ok(ChristoffelPolynomial { poly: weighted_squares(m.basis(), &f, 0..m.size()), normalization: None })
}

/// Σ_{|α|=d} P_α² where d is the top degree of the basis.
pub fn top_slice_squares<S: Scalar>(m: &MomentMatrix<S>) -> Result<Poly<S>> {
    let f = ldl(m)?;
    let top = m.basis().last().map(MultiIndex::degree).unwrap_or(0);
    let rows = (0..m.size()).filter(|&i| m.basis()[i].degree() == top);
    Ok(weighted_squares(m.basis(), &f, rows))
}

pub fn orthonormal_basis(m: &MomentMatrix<f64>) -> Result<OrthonormalBasis> {
    let l = cholesky(m)?;
    let k = m.size();
    let linv = l
        .solve_lower_triangular(&DMatrix::identity(k, k))
        .ok_or_else(|| Error::Invalid("triangular solve failed".into()))?;
    let basis = m.basis().to_vec();
    let polys = (0..k)
        .map(|i| {
            let mut p = Poly::zero(basis[0].dim());
            for j in 0..=i {
                p.add_term(basis[j].clone(), linv[(i, j)]);
            }
            p
        })
        .collect();
    Ok(OrthonormalBasis { basis, polys, source: m.clone(), coeffs: linv })
}

/// vᵀM⁻¹v at a point by a triangular solve.
pub fn christoffel_eval(m: &MomentMatrix<f64>, x: &[f64]) -> Result<f64> {
    let f = ldl(m)?;
    let v: Vec<f64> = m.basis().iter().map(|a| a.eval(x)).collect();
    let y = f.forward(&v);
    Ok(y.iter().zip(&f.diag).map(|(y, d)| y * y / d).sum())
}

fn localizing_inverse<S: Scalar>(set: &GeneratorSet, phi: &MomentSequence<S>, i: usize, t: u32) -> Result<Poly<S>> {
    let g: Poly<S> = set.generator(i).map_coeffs(S::from_rational);
    let m = phi.localizing_matrix(&g, t - set.half_degree(i))?;
    let inv = christoffel_inverse_poly(&m).map_err(|e| match e {
        Error::NotPositiveDefinite { .. } => Error::SingularLocalizing {
            generator: i,
            poly: set.generator(i).to_string(),
            reason: e.to_string(),
        },
        other => other,
    })?;
    Ok(&g * &inv.poly)
}

/// g·(Λ^{g·φ}_{t−t_g})⁻¹ for each g ∈ G_t, paired with the generator index.
pub fn generator_terms<S: Scalar>(set: &GeneratorSet, phi: &MomentSequence<S>, t: u32) -> Result<Vec<(usize, Poly<S>)>> {
    if phi.dim() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), found: phi.dim() });
    }
    let active = set.active(t);
    if active.is_empty() {
        return Err(Error::OrderTooSmall { t });
    }
    active.into_iter().map(|i| localizing_inverse(set, phi, i, t).map(|p| (i, p))).collect()
}

/// p*_t = (Σ_{g∈G_t} s(t−t_g))⁻¹ Σ_{g∈G_t} g·(Λ^{g·φ}_{t−t_g})⁻¹.
pub fn pstar_density<S: Scalar>(set: &GeneratorSet, phi: &MomentSequence<S>, t: u32) -> Result<Poly<S>> {
    let terms = generator_terms(set, phi, t)?;
    let sum = terms.iter().fold(Poly::zero(set.dim()), |acc, (_, p)| &acc + p);
    let c = S::from_i64(set.pell_constant(t) as i64);
    Ok(sum.scale(&(S::one() / c)))
}

/// ∫ f p*_t dφ for each t, evaluated exactly through the Riesz functional.
pub fn weak_convergence_probe<S: Scalar>(
    set: &GeneratorSet,
    phi: &MomentSequence<S>,
    f: &Poly<S>,
    t_list: &[u32],
) -> Result<Vec<f64>> {
    t_list
        .iter()
        .map(|&t| {
            let needed = 2 * t + f.degree();
            if needed > phi.order() {
                return Err(Error::DegreeOverflow { needed, available: phi.order() });
            }
            let p = pstar_density(set, phi, t)?;
            phi.riesz_apply(&(f * &p)).map(|v| v.to_float())
        })
        .collect()
}

/// Samples a bivariate (or univariate) polynomial on a regular grid as CSV,
/// for contour plots of Christoffel level sets.
pub fn grid_csv(p: &Poly<f64>, lo: f64, hi: f64, resolution: usize) -> Result<String> {
    let steps = resolution.max(2);
    let h = (hi - lo) / (steps - 1) as f64;
    let mut out = String::new();
    match p.dim() {
        1 => {
            out.push_str("x,value\n");
            for i in 0..steps {
                let x = lo + h * i as f64;
                let _ = writeln!(out, "{},{}", crate::json::fmt17(x), crate::json::fmt17(p.eval(&[x])?));
            }
        }
        2 => {
            out.push_str("x,y,value\n");
            for i in 0..steps {
                for j in 0..steps {
                    let (x, y) = (lo + h * i as f64, lo + h * j as f64);
                    let _ = writeln!(
                        out,
                        "{},{},{}",
                        crate::json::fmt17(x),
                        crate::json::fmt17(y),
                        crate::json::fmt17(p.eval(&[x, y])?)
                    );
                }
            }
        }
        n => return Err(Error::Invalid(format!("grid export supports 1 or 2 variables, got {n}"))),
    }
    Ok(out)
}
