use nalgebra::DVector;

use super::instance::Instance;
use super::solver::{derivatives, objective};
use crate::error::{Error, Result};

fn infeasible() -> Error {
    Error::InfeasibleStart { generator: 0 }
}

/// Central difference of the objective along coordinate i.
fn central_objective(inst: &Instance, x: &mut [f64], i: usize, step: f64) -> Result<f64> {
    let x0 = x[i];
    x[i] = x0 + step;
    let fp = objective(inst, x);
    x[i] = x0 - step;
    let fm = objective(inst, x);
    x[i] = x0;
    if !(fp.is_finite() && fm.is_finite()) {
        return Err(infeasible());
    }
    Ok((fp - fm) / (2.0 * step))
}

/// Central difference of the analytic gradient along `dir`.
fn central_gradient(inst: &Instance, vars: &[f64], dir: &DVector<f64>, step: f64) -> Result<DVector<f64>> {
    let shift = |s: f64| -> Vec<f64> { vars.iter().zip(dir.iter()).map(|(v, d)| v + s * d).collect() };
    let (_, gp, _) = derivatives(inst, &shift(step)).map_err(|_| infeasible())?;
    let (_, gm, _) = derivatives(inst, &shift(-step)).map_err(|_| infeasible())?;
    Ok((gp - gm) / (2.0 * step))
}

/// Central finite differences (one Richardson step, error O(h⁴)) against the
/// analytic gradient and Hessian-vector products; returns the larger of the
/// two relative errors.
pub fn gradient_fd_check(inst: &Instance, vars: &[f64], h: f64) -> Result<f64> {
    if !(1e-7..=1e-4).contains(&h) {
        return Err(Error::InvalidStep(h));
    }
    let (_, grad, hess) = derivatives(inst, vars).map_err(|_| infeasible())?;
    let nv = vars.len();
    let mut fd_grad = DVector::zeros(nv);
    let mut x = vars.to_vec();
    for i in 0..nv {
        let step = h * x[i].abs().max(1.0);
        let coarse = central_objective(inst, &mut x, i, step)?;
        let fine = central_objective(inst, &mut x, i, step / 2.0)?;
        fd_grad[i] = (4.0 * fine - coarse) / 3.0;
    }
    let grad_err = (&fd_grad - &grad).amax() / grad.amax().max(1.0);

    let dir = DVector::from_fn(nv, |i, _| ((i as f64 + 1.0) * 0.7).sin());
    let dir = &dir / dir.norm();
    let coarse = central_gradient(inst, vars, &dir, h)?;
    let fine = central_gradient(inst, vars, &dir, h / 2.0)?;
    let fd_hv = (fine * 4.0 - coarse) / 3.0;
    let hv = &hess * &dir;
    let hess_err = (&fd_hv - &hv).amax() / hv.amax().max(1.0);
    Ok(grad_err.max(hess_err))
}
