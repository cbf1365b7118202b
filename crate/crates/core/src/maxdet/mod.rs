//! Damped-Newton solver for the log-det moment program, dual certificate
//! recovery, and the extension sweep across orders.

mod dual;
mod fdcheck;
mod instance;
mod solver;
mod sweep;

pub use dual::{dual_certificate, dual_identity, DualCertificate};
pub use fdcheck::gradient_fd_check;
pub use instance::{assemble_instance, Block, Instance};
pub use solver::{
    derivatives, feasible_start, moment_bound_excess, objective, solve_primal, solve_set, DualBlock, IterRecord,
    SolveReport, SolveReportJson, SolverConfig,
};
pub use sweep::{extension_sweep, SweepAbort, SweepRow, SweepTable, EXTENSION_TOL};

/// k + log det M + log det Q ≤ ⟨M, Q⟩ for positive definite M, Q; returns
/// the slack ⟨M, Q⟩ − k − log det M − log det Q (zero iff Q = M⁻¹).
pub fn fenchel_slack(m: &nalgebra::DMatrix<f64>, q: &nalgebra::DMatrix<f64>) -> Option<f64> {
    let k = m.nrows() as f64;
    let lm = nalgebra::Cholesky::new(m.clone())?;
    let lq = nalgebra::Cholesky::new(q.clone())?;
    let ld = |c: &nalgebra::Cholesky<f64, nalgebra::Dyn>| 2.0 * c.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>();
    Some(m.component_mul(q).sum() - k - ld(&lm) - ld(&lq))
}
