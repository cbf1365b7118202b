use serde::Serialize;

use super::solver::SolveReport;
use crate::error::{Error, Result};
use crate::json::Sig17;
use crate::mvpoly::literal::{to_literal_f64, PolyLiteral};
use crate::mvpoly::{MultiIndex, Poly};

/// Σ_g g·vᵀQ_g v − Σ_g s(t−t_g) for the report's dual matrices.
pub fn dual_identity(report: &SolveReport) -> Poly<f64> {
    let set = &report.set;
    let n = set.dim();
    let mut sum = Poly::zero(n);
    let mut constant = 0usize;
    for d in &report.duals {
        let q = &d.matrix;
        let basis = q.basis();
        let mut quad: Poly<f64> = Poly::zero(n);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                quad.add_term(basis[i].plus(&basis[j]), *q.get(i, j));
            }
        }
        let g: Poly<f64> = set.generator(d.generator).convert();
        sum = &sum + &(&g * &quad);
        constant += basis.len();
    }
    &sum - &Poly::constant(n, constant as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct DualCertificate {
    pub t: u32,
    /// Σ_{g∈G_t} s(t−t_g).
    pub constant: usize,
    pub residual_max: Sig17,
    /// Constant coefficient of Σ g·vᵀQ_g v.
    pub constant_term: Sig17,
    /// ρ_t = −Σ log det M_g.
    pub primal_value: Sig17,
    /// ρ*_t = Σ log det Q_g.
    pub dual_value: Sig17,
    pub duality_gap_relative: Sig17,
    pub residual: PolyLiteral,
}

/// Dual matrices of a converged solve, the polynomial identity they satisfy,
/// and the primal/dual objective values.
pub fn dual_certificate(report: &SolveReport) -> Result<DualCertificate> {
    if !report.converged {
        return Err(Error::NotConverged);
    }
    let residual = dual_identity(report);
    let constant: usize = report.duals.iter().map(|d| d.matrix.size()).sum();
    let mut dual_value = 0.0;
    for d in &report.duals {
        let q = d.matrix.to_dmatrix();
        let c = nalgebra::Cholesky::new(q).ok_or(Error::NotPositiveDefinite {
            index: 0,
            monomial: format!("dual block of generator {}", d.generator),
            value: f64::NAN,
        })?;
        dual_value += 2.0 * c.l_dirty().diagonal().iter().map(|v| v.ln()).sum::<f64>();
    }
    let gap = (report.rho - dual_value).abs() / report.rho.abs().max(1.0);
    let zero = MultiIndex::zero(report.set.dim());
    Ok(DualCertificate {
        t: report.t,
        constant,
        residual_max: Sig17(residual.max_abs_coeff()),
        constant_term: Sig17(residual.coeff(&zero) + constant as f64),
        primal_value: Sig17(report.rho),
        dual_value: Sig17(dual_value),
        duality_gap_relative: Sig17(gap),
        residual: to_literal_f64(&residual),
    })
}
