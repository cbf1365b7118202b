//! Verification of the Chebyshev Pell identity, the generalized Pell
//! identity on a generator set, its top-degree slice, and conversion of an
//! SOS certificate p + g q = 1 back to moment matrices.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::christoffel::{generator_terms, top_slice_squares};
use crate::error::{Error, Result};
use crate::json::Sig17;
use crate::linalg::is_positive_definite;
use crate::momkit::{GeneratorSet, MomentMatrix, MomentSequence};
use crate::mvpoly::literal::{to_literal_f64, PolyLiteral};
use crate::mvpoly::{binomial, chebyshev_coefficients, monomial_basis, ChebyshevKind, MultiIndex, Poly, Rational, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn square(c: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); 2 * c.len() - 1];
    for (i, a) in c.iter().enumerate() {
        for (j, b) in c.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// T_n² + (1−x²) U_{n−1}² − 1, computed with exact integers.
pub fn chebyshev_pell_identity(n: u32) -> Poly<Rational> {
    assert!(n >= 1, "Pell identity starts at n = 1");
    let t = square(&chebyshev_coefficients(ChebyshevKind::First, n)[n as usize]);
    let u = square(&chebyshev_coefficients(ChebyshevKind::Second, n - 1)[n as usize - 1]);
    let mut r = t;
    for (k, c) in u.iter().enumerate() {
        r[k] += c;
        r[k + 2] -= c;
    }
    r[0] -= 1;
    let mut p = Poly::zero(1);
    for (k, c) in r.into_iter().enumerate() {
        p.add_term(MultiIndex::new(vec![k as u32]), Rational::from_integer(c));
    }
    p
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorContribution {
    pub index: usize,
    pub generator: String,
    pub half_degree: u32,
    pub block_size: usize,
    /// g·(Λ^{g·φ}_{t−t_g})⁻¹ in the literal format.
    pub term: PolyLiteral,
}

#[derive(Debug, Clone, Serialize)]
pub struct PellReport {
    pub t: u32,
    pub c_t: usize,
    pub residual_max: Sig17,
    pub per_generator: Vec<GeneratorContribution>,
    pub pass: bool,
    pub tolerance: Sig17,
    /// Max |residual| over 100 pseudo-random points of the bounding box.
    pub sampled_residual: Sig17,
}

fn contributions<S: Scalar>(set: &GeneratorSet, terms: &[(usize, Poly<S>)], t: u32) -> Vec<GeneratorContribution> {
    terms
        .iter()
        .map(|(i, p)| {
            let d = set.half_degree(*i);
            GeneratorContribution {
                index: *i,
                generator: set.generator(*i).to_string(),
                half_degree: d,
                block_size: crate::mvpoly::basis_size(set.dim(), t - d),
                term: to_literal_f64(p),
            }
        })
        .collect()
}

/// Halton-style deterministic points in [−√R, √R]ⁿ.
fn probe_points(n: usize, radius: f64, count: usize) -> Vec<Vec<f64>> {
    const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];
    let h = radius.sqrt();
    (1..=count)
        .map(|k| {
            (0..n)
                .map(|d| {
                    let base = PRIMES[d % PRIMES.len()];
                    let (mut f, mut r, mut i) = (1.0, 0.0, k as u32);
                    while i > 0 {
                        f /= base as f64;
                        r += f * (i % base) as f64;
                        i /= base;
                    }
                    h * (2.0 * r - 1.0)
                })
                .collect()
        })
        .collect()
}

/// Σ_{g∈G_t} g·(Λ^{g·φ}_{t−t_g})⁻¹ − c_t, reported by its largest coefficient.
pub fn generalized_pell_residual<S: Scalar>(
    set: &GeneratorSet,
    phi: &MomentSequence<S>,
    t: u32,
    tolerance: f64,
) -> Result<(PellReport, Poly<S>)> {
    let terms = generator_terms(set, phi, t)?;
    let c_t = set.pell_constant(t);
    let sum = terms.iter().fold(Poly::zero(set.dim()), |acc, (_, p)| &acc + p);
    let residual = &sum - &Poly::constant(set.dim(), S::from_i64(c_t as i64));
    let residual_max = residual.max_abs_coeff();
    let rf = residual.to_f64();
    let sampled = probe_points(set.dim(), set.radius(), 100)
        .iter()
        .map(|x| rf.eval(x).map(f64::abs))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let report = PellReport {
        t,
        c_t,
        residual_max: Sig17(residual_max),
        per_generator: contributions(set, &terms, t),
        pass: residual_max <= tolerance,
        tolerance: Sig17(tolerance),
        sampled_residual: Sig17(sampled),
    };
    Ok((report, residual))
}

#[derive(Debug, Clone)]
pub struct TopSlice<S: Scalar> {
    pub residual: Poly<S>,
    /// Σ_{g∈G_t} C(n−1+t−t_g, n−1).
    pub constant: u64,
}

/// Σ_{g∈G_t} Σ_{|α|=t−t_g} g·(P^{g·φ}_α)² − Σ_{g∈G_t} C(n−1+t−t_g, n−1).
pub fn top_slice_check<S: Scalar>(set: &GeneratorSet, phi: &MomentSequence<S>, t: u32) -> Result<TopSlice<S>> {
    if t == 0 {
        return Err(Error::Invalid("top slice needs t >= 1".into()));
    }
    let n = set.dim();
    let mut sum = Poly::zero(n);
    let mut constant = 0u64;
    for i in set.active(t) {
        let d = t - set.half_degree(i);
        let g: Poly<S> = set.generator(i).map_coeffs(S::from_rational);
        let m = phi.localizing_matrix(&g, d)?;
        let slice = top_slice_squares(&m).map_err(|e| Error::SingularLocalizing {
            generator: i,
            poly: set.generator(i).to_string(),
            reason: e.to_string(),
        })?;
        sum = &sum + &(&g * &slice);
        constant += binomial((n - 1) as u64 + d as u64, (n - 1) as u64);
    }
    let residual = &sum - &Poly::constant(n, S::from_i64(constant as i64));
    Ok(TopSlice { residual, constant })
}

/// Moment-matrix candidates recovered from a certificate p + g q = 1.
#[derive(Debug, Clone)]
pub struct CertificateMoments {
    /// A⁻¹, the candidate M_t(φ).
    pub moment_matrix: MomentMatrix<f64>,
    /// B⁻¹, the candidate M_{t−t_g}(g·φ).
    pub localizing_matrix: MomentMatrix<f64>,
    /// Least-squares moment sequence reproducing both matrices.
    pub fitted: MomentSequence<f64>,
    pub fit_residual: f64,
    pub consistent: bool,
}

const IDENTITY_TOL: f64 = 1e-10;
const CONSISTENCY_TOL: f64 = 1e-8;

fn gram_poly(basis: &[MultiIndex], gram: &DMatrix<f64>) -> Poly<f64> {
    let mut p = Poly::zero(basis[0].dim());
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            p.add_term(basis[i].plus(&basis[j]), gram[(i, j)]);
        }
    }
    p
}

/// From Gram matrices A (of p, over v_t) and B (of q, over v_{t−t_g}) with
/// vᵀAv + g·vᵀBv ≡ 1, return A⁻¹ and B⁻¹ and test whether one moment
/// sequence realizes both.
pub fn certificate_to_moments(
    p_gram: &DMatrix<f64>,
    q_gram: &DMatrix<f64>,
    g: &Poly<f64>,
    t: u32,
) -> Result<CertificateMoments> {
    let n = g.dim();
    let tg = g.half_degree();
    if tg > t {
        return Err(Error::OrderTooSmall { t });
    }
    let bp = monomial_basis(n, t);
    let bq = monomial_basis(n, t - tg);
    if p_gram.nrows() != bp.len() || p_gram.ncols() != bp.len() {
        return Err(Error::DimensionMismatch { expected: bp.len(), found: p_gram.nrows() });
    }
    if q_gram.nrows() != bq.len() || q_gram.ncols() != bq.len() {
        return Err(Error::DimensionMismatch { expected: bq.len(), found: q_gram.nrows() });
    }
    for (gram, basis) in [(q_gram, &bq), (p_gram, &bp)] {
        if !is_positive_definite(gram) {
            return Err(Error::NotPositiveDefinite {
                index: 0,
                monomial: format!("Gram matrix over {} monomials", basis.len()),
                value: gram.symmetric_eigenvalues().min(),
            });
        }
    }
    let p = gram_poly(&bp, p_gram);
    let q = gram_poly(&bq, q_gram);
    let residual = &(&p + &(g * &q)) - &Poly::one(n);
    if residual.max_abs_coeff() > IDENTITY_TOL {
        return Err(Error::IdentityViolated { residual: residual.max_abs_coeff(), poly: residual.to_string() });
    }
    let a_inv = p_gram.clone().try_inverse().ok_or(Error::SingularHessian)?;
    let b_inv = q_gram.clone().try_inverse().ok_or(Error::SingularHessian)?;

    // Linear least squares for φ over |α| ≤ 2t.
    let full = monomial_basis(n, 2 * t);
    let pos = crate::mvpoly::index_map(&full);
    let rows = bp.len() * bp.len() + bq.len() * bq.len();
    let mut design = DMatrix::zeros(rows, full.len());
    let mut rhs = DVector::zeros(rows);
    let mut r = 0;
    for i in 0..bp.len() {
        for j in 0..bp.len() {
            design[(r, pos[&bp[i].plus(&bp[j])])] = 1.0;
            rhs[r] = a_inv[(i, j)];
            r += 1;
        }
    }
    for i in 0..bq.len() {
        for j in 0..bq.len() {
            let ab = bq[i].plus(&bq[j]);
            for (gamma, c) in g.terms() {
                design[(r, pos[&ab.plus(gamma)])] += c;
            }
            rhs[r] = b_inv[(i, j)];
            r += 1;
        }
    }
    let svd = design.clone().svd(true, true);
    let sol = svd.solve(&rhs, 1e-12).map_err(|e| Error::Invalid(e.to_string()))?;
    let fit_residual = (&design * &sol - &rhs).abs().max();
    let fitted = MomentSequence::from_values(n, 2 * t, sol.iter().copied().collect())?;
    Ok(CertificateMoments {
        moment_matrix: MomentMatrix::from_dmatrix(bp, &a_inv)?,
        localizing_matrix: MomentMatrix::from_dmatrix(bq, &b_inv)?,
        fitted,
        fit_residual,
        consistent: fit_residual <= CONSISTENCY_TOL,
    })
}
