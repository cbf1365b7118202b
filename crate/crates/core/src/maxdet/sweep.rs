use rayon::prelude::*;
use serde::Serialize;

use super::solver::{solve_set, SolveReport, SolverConfig};
use crate::error::{Error, Result};
use crate::json::Sig17;
use crate::momkit::{extension_distance, GeneratorSet};

/// Distances below this count as an extension.
pub const EXTENSION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub t: u32,
    pub t_next: u32,
    /// Max-norm distance between φ*_{2t} and the restriction of φ*_{2(t+1)}.
    pub distance: Sig17,
    pub extension: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepAbort {
    pub t: u32,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepTable {
    pub set: String,
    pub rows: Vec<SweepRow>,
    pub aborted: Option<SweepAbort>,
    #[serde(skip)]
    pub reports: Vec<SolveReport>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,t_next,distance,extension\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{}\n", r.t, r.t_next, crate::json::fmt17(r.distance.0), r.extension));
        }
        s
    }
}

/// Solve every order in `t_from..=t_to` (independently, in parallel) and
/// compare consecutive optima. A failing order truncates the table there.
pub fn extension_sweep(set: &GeneratorSet, t_from: u32, t_to: u32, config: &SolverConfig, extension_tol: f64) -> Result<SweepTable> {
    if t_from > t_to {
        return Err(Error::Invalid(format!("t_from ({t_from}) exceeds t_to ({t_to})")));
    }
    let max_tg = (0..set.generators().len()).map(|i| set.half_degree(i)).max().unwrap_or(0);
    if t_from < max_tg {
        return Err(Error::Invalid(format!("t_from must be at least max t_g = {max_tg}")));
    }
    let results: Vec<(u32, Result<SolveReport>)> =
        (t_from..=t_to).into_par_iter().map(|t| (t, solve_set(set, t, config))).collect();
    let mut reports = Vec::new();
    let mut aborted = None;
    for (t, r) in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => {
                aborted = Some(SweepAbort { t, error: e.to_string() });
                break;
            }
        }
    }
    let mut rows = Vec::new();
    for w in reports.windows(2) {
        let d = extension_distance(&w[0].phi, &w[1].phi)?;
        rows.push(SweepRow { t: w[0].t, t_next: w[1].t, distance: Sig17(d), extension: d <= extension_tol });
    }
    Ok(SweepTable { set: set.name().to_string(), rows, aborted, reports })
}
