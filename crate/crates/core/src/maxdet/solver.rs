use std::time::Instant;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use serde::Serialize;

use super::instance::Instance;
use crate::error::{Error, Result};
use crate::json::Sig17;
use crate::measures::{uniform_start_moments, SampleBudget};
use crate::momkit::{GeneratorSet, MomentMatrix, MomentSequence};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop when λ²/2 falls below this.
    pub tol: f64,
    pub max_iter: usize,
    pub budget: SampleBudget,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: 1e-10, max_iter: 200, budget: SampleBudget::default() }
    }
}

const ARMIJO: f64 = 0.01;
const MIN_STEP: f64 = 1e-16;
const TIKHONOV: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct IterRecord {
    pub iteration: usize,
    pub objective: Sig17,
    pub decrement: Sig17,
    pub step: Sig17,
    pub backtracks: usize,
}

/// Dual matrix Q_g = M_{t−t_g}(g·φ*)⁻¹ for one generator.
#[derive(Debug, Clone)]
pub struct DualBlock {
    pub generator: usize,
    pub matrix: MomentMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub set: GeneratorSet,
    pub t: u32,
    /// ρ_t = −Σ log det M_{t−t_g}(g·φ*).
    pub rho: f64,
    pub phi: MomentSequence<f64>,
    pub duals: Vec<DualBlock>,
    /// Largest coefficient of Σ g·vᵀQ_g v − Σ s(t−t_g).
    pub stationarity_residual: f64,
    pub decrement: f64,
    pub iterations: usize,
    pub backtracks: usize,
    pub wall_time: f64,
    pub converged: bool,
    pub trace: Vec<IterRecord>,
}

/// Per-block Cholesky factors at a point, or `None` outside the PD cone.
fn factor_blocks(inst: &Instance, phi: &[f64]) -> Option<Vec<Cholesky<f64, Dyn>>> {
    inst.blocks.iter().map(|b| Cholesky::new(b.assemble(phi))).collect()
}

fn log_det(c: &Cholesky<f64, Dyn>) -> f64 {
    2.0 * c.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>()
}

/// −Σ log det M_g, +∞ when some block is not positive definite.
pub fn objective(inst: &Instance, vars: &[f64]) -> f64 {
    let phi = inst.full(vars);
    match factor_blocks(inst, &phi) {
        Some(fs) => {
            let v = -fs.iter().map(log_det).sum::<f64>();
            if v.is_finite() {
                v
            } else {
                f64::INFINITY
            }
        }
        None => f64::INFINITY,
    }
}

/// Gradient g_α = −Σ_g tr(M_g⁻¹ A_{g,α}) and Hessian
/// H_{αβ} = Σ_g tr(M_g⁻¹ A_{g,α} M_g⁻¹ A_{g,β}) over the free variables.
pub fn derivatives(inst: &Instance, vars: &[f64]) -> Result<(f64, DVector<f64>, DMatrix<f64>)> {
    let phi = inst.full(vars);
    let nv = inst.num_vars();
    let mut grad = DVector::zeros(nv);
    let mut hess = DMatrix::zeros(nv, nv);
    let mut f = 0.0;
    for (bi, block) in inst.blocks.iter().enumerate() {
        let c = Cholesky::new(block.assemble(&phi)).ok_or(Error::InfeasibleStart { generator: inst.blocks[bi].generator })?;
        f -= log_det(&c);
        let w = c.inverse();
        let free: Vec<(usize, &DMatrix<f64>)> =
            block.coefficients.iter().filter(|(p, _)| *p > 0).map(|(p, a)| (*p - 1, a)).collect();
        let ys: Vec<DMatrix<f64>> = free.iter().map(|(_, a)| &w * *a * &w).collect();
        for (idx, (p, a)) in free.iter().enumerate() {
            grad[*p] -= w.component_mul(a).sum();
            for (jdx, (q, b)) in free.iter().enumerate().skip(idx) {
                let h = ys[idx].component_mul(b).sum();
                hess[(*p, *q)] += h;
                if jdx != idx {
                    hess[(*q, *p)] += h;
                }
            }
        }
    }
    Ok((f, grad, hess))
}

fn newton_direction(hess: &DMatrix<f64>, grad: &DVector<f64>) -> Result<DVector<f64>> {
    if let Some(c) = Cholesky::new(hess.clone()) {
        return Ok(c.solve(&(-grad)));
    }
    let scale = hess.diagonal().iter().copied().fold(0.0, f64::max).max(1.0);
    let shifted = hess + DMatrix::identity(hess.nrows(), hess.ncols()) * (TIKHONOV * scale);
    Cholesky::new(shifted).map(|c| c.solve(&(-grad))).ok_or(Error::SingularHessian)
}

/// Damped Newton with backtracking on −Σ log det over the slice φ_0 = 1.
pub fn solve_primal(inst: &Instance, start: &MomentSequence<f64>, config: &SolverConfig) -> Result<SolveReport> {
    let clock = Instant::now();
    let mut x = inst.vars_from(start)?;
    if let Some(bi) = inst.blocks.iter().position(|b| Cholesky::new(b.assemble(&inst.full(&x))).is_none()) {
        return Err(Error::InfeasibleStart { generator: inst.blocks[bi].generator });
    }
    let mut trace = Vec::new();
    let mut total_backtracks = 0;
    let mut converged = false;
    let mut decrement = f64::INFINITY;
    let mut iterations = 0;
    while iterations < config.max_iter {
        let (f, grad, hess) = derivatives(inst, &x)?;
        let dir = newton_direction(&hess, &grad)?;
        let slope = grad.dot(&dir);
        decrement = (-slope).max(0.0);
        iterations += 1;
        let finishing = decrement / 2.0 <= config.tol;
        // Backtracking: full step first, halve until feasible with Armijo decrease.
        let mut step = 1.0;
        let mut backtracks = 0;
        let accepted = loop {
            let trial: Vec<f64> = x.iter().zip(dir.iter()).map(|(xi, di)| xi + step * di).collect();
            let ft = objective(inst, &trial);
            if ft.is_finite() && ft <= f + ARMIJO * step * slope {
                break Some(trial);
            }
            if finishing && ft.is_finite() && ft <= f + 1e-14 * f.abs().max(1.0) {
                break Some(trial);
            }
            step *= 0.5;
            backtracks += 1;
            if step < MIN_STEP {
                break None;
            }
        };
        total_backtracks += backtracks;
        trace.push(IterRecord {
            iteration: iterations,
            objective: Sig17(f),
            decrement: Sig17(decrement),
            step: Sig17(if accepted.is_some() { step } else { 0.0 }),
            backtracks,
        });
        if let Some(trial) = accepted {
            x = trial;
        }
        if finishing {
            converged = true;
            break;
        }
        if trace.last().map(|r| r.step.0 == 0.0).unwrap_or(false) {
            return Err(Error::LineSearchFailed { iteration: iterations, decrement });
        }
    }
    if !converged {
        return Err(Error::MaxIterations { iterations, decrement });
    }
    let phi = inst.sequence(&x);
    let full = inst.full(&x);
    let mut duals = Vec::with_capacity(inst.blocks.len());
    let mut rho = 0.0;
    for block in &inst.blocks {
        let c = Cholesky::new(block.assemble(&full)).ok_or(Error::InfeasibleStart { generator: block.generator })?;
        rho -= log_det(&c);
        duals.push(DualBlock { generator: block.generator, matrix: MomentMatrix::from_dmatrix(block.basis.clone(), &c.inverse())? });
    }
    let mut report = SolveReport {
        set: inst.set.clone(),
        t: inst.t,
        rho,
        phi,
        duals,
        stationarity_residual: f64::NAN,
        decrement,
        iterations,
        backtracks: total_backtracks,
        wall_time: clock.elapsed().as_secs_f64(),
        converged,
        trace,
    };
    report.stationarity_residual = super::dual::dual_identity(&report).max_abs_coeff();
    Ok(report)
}

/// Uniform-measure start; retries with a larger sample budget when the
/// first draw is too thin to give positive definite blocks.
pub fn feasible_start(set: &GeneratorSet, t: u32, budget: SampleBudget) -> Result<MomentSequence<f64>> {
    let mut b = budget;
    let mut last = None;
    for _ in 0..3 {
        match uniform_start_moments(set, t, b) {
            Ok(phi) => return Ok(phi),
            Err(e @ (Error::LowAcceptance { .. } | Error::SingularLocalizing { .. })) => {
                last = Some(e);
                b.samples *= 4;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("loop ran at least once"))
}

/// Assemble, start from the uniform measure, and solve.
pub fn solve_set(set: &GeneratorSet, t: u32, config: &SolverConfig) -> Result<SolveReport> {
    let inst = super::assemble_instance(set, t)?;
    let start = feasible_start(set, t, config.budget)?;
    solve_primal(&inst, &start, config)
}

/// max_α (|φ_α| − R^{|α|/2}), clipped at zero.
pub fn moment_bound_excess(phi: &MomentSequence<f64>, radius: f64) -> f64 {
    phi.iter()
        .map(|(a, v)| v.abs() - radius.powf(a.degree() as f64 / 2.0))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Serialize)]
pub struct DualJson {
    pub generator: usize,
    pub matrix: crate::momkit::MatrixJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReportJson {
    pub set: String,
    pub t: u32,
    pub rho: Sig17,
    pub phi: crate::momkit::MomentTable,
    pub duals: Vec<DualJson>,
    pub stationarity_residual: Sig17,
    pub decrement: Sig17,
    pub iterations: usize,
    pub backtracks: usize,
    pub wall_time: Sig17,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<IterRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<crate::sets::ReferenceComparison>,
}

impl SolveReport {
    pub fn to_json(&self, with_trace: bool) -> SolveReportJson {
        SolveReportJson {
            set: self.set.name().to_string(),
            t: self.t,
            rho: Sig17(self.rho),
            phi: self.phi.to_table(),
            duals: self.duals.iter().map(|d| DualJson { generator: d.generator, matrix: d.matrix.to_json() }).collect(),
            stationarity_residual: Sig17(self.stationarity_residual),
            decrement: Sig17(self.decrement),
            iterations: self.iterations,
            backtracks: self.backtracks,
            wall_time: Sig17(self.wall_time),
            converged: self.converged,
            trace: with_trace.then(|| self.trace.clone()),
            reference: crate::sets::compare_reference(self),
        }
    }
}
