use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mvpoly::{MultiIndex, Poly};

/// Regions with a built-in singular weight (their equilibrium density).
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Interval,
    Box(usize),
    Ball2d,
    Simplex2d,
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Interval => 1,
            Region::Box(n) => *n,
            Region::Ball2d | Region::Simplex2d => 2,
        }
    }

    /// Nodes per axis needed to integrate a polynomial of total degree `d` exactly.
    pub fn required_level(&self, d: u32) -> usize {
        match self {
            Region::Simplex2d => 2 * d as usize + 2,
            _ => d as usize + 2,
        }
    }
}

/// Density against the region's equilibrium measure.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Equilibrium,
    /// Polynomial density times the equilibrium measure.
    Polynomial(Poly<f64>),
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_m, p0 = P_{m-1}
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        nodes[m - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// Points and probability weights of a rule exact for the region's weight.
fn rule(region: &Region, level: usize) -> Vec<(Vec<f64>, f64)> {
    let cheb: Vec<f64> =
        (1..=level).map(|k| ((2 * k - 1) as f64 * PI / (2 * level) as f64).cos()).collect();
    let angles: Vec<f64> = (0..level).map(|k| 2.0 * PI * k as f64 / level as f64).collect();
    match region {
        // x = cos θ turns dx/(π√(1−x²)) into uniform θ.
        Region::Interval => cheb.iter().map(|&x| (vec![x], 1.0 / level as f64)).collect(),
        Region::Box(n) => {
            let mut pts = vec![(Vec::new(), 1.0)];
            for _ in 0..*n {
                pts = pts
                    .into_iter()
                    .flat_map(|(p, w)| {
                        cheb.iter().map(move |&x| {
                            let mut q = p.clone();
                            q.push(x);
                            (q, w / level as f64)
                        })
                    })
                    .collect();
            }
            pts
        }
        // r = √(1−s²) turns r dr/√(1−r²) into ds on [0, 1].
        Region::Ball2d => {
            let (s, ws) = gauss_legendre(level);
            let mut pts = Vec::with_capacity(level * level);
            for (si, wi) in s.iter().zip(&ws) {
                let sv = 0.5 * (si + 1.0);
                let r = (1.0 - sv * sv).max(0.0).sqrt();
                for &th in &angles {
                    pts.push((vec![r * th.cos(), r * th.sin()], 0.5 * wi / level as f64));
                }
            }
            pts
        }
        // (x, y) = (u², v²) for (u, v, w) uniform on the unit sphere.
        Region::Simplex2d => {
            let (z, wz) = gauss_legendre(level);
            let mut pts = Vec::with_capacity(level * level);
            for (zi, wi) in z.iter().zip(&wz) {
                let rho2 = 1.0 - zi * zi;
                for &th in &angles {
                    let (c, s) = (th.cos(), th.sin());
                    pts.push((vec![rho2 * c * c, rho2 * s * s], 0.5 * wi / level as f64));
                }
            }
            pts
        }
    }
}

/// ∫ xᵅ w dλ_region by a tensor rule; errors when `level` is too low to be exact.
pub fn quadrature_moment(weight: &Weight, region: &Region, alpha: &MultiIndex, level: usize) -> Result<f64> {
    let n = region.dim();
    if alpha.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: alpha.dim() });
    }
    let wdeg = match weight {
        Weight::Equilibrium => 0,
        Weight::Polynomial(p) => {
            if p.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
            }
            p.degree()
        }
    };
    let degree = alpha.degree() + wdeg;
    let required = region.required_level(degree);
    if level < required {
        return Err(Error::InsufficientOrder { level, degree, required });
    }
    let mut acc = 0.0;
    for (x, w) in rule(region, level) {
        let dens = match weight {
            Weight::Equilibrium => 1.0,
            Weight::Polynomial(p) => p.eval(&x)?,
        };
        acc += w * dens * alpha.eval(&x);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(7);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        let m12: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((m12 - 2.0 / 13.0).abs() < 1e-14);
    }

    #[test]
    fn mass_is_one_everywhere() {
        for region in [Region::Interval, Region::Box(2), Region::Ball2d, Region::Simplex2d] {
            let a = MultiIndex::zero(region.dim());
            let m = quadrature_moment(&Weight::Equilibrium, &region, &a, 10).unwrap();
            assert!((m - 1.0).abs() < 1e-14, "{region:?}: {m}");
        }
    }

    #[test]
    fn insufficient_level_is_an_error() {
        let a = MultiIndex::new(vec![10]);
        let err = quadrature_moment(&Weight::Equilibrium, &Region::Interval, &a, 5).unwrap_err();
        assert!(matches!(err, Error::InsufficientOrder { required: 12, .. }));
    }

    #[test]
    fn named_values() {
        let v = quadrature_moment(&Weight::Equilibrium, &Region::Ball2d, &MultiIndex::new(vec![4, 0]), 40).unwrap();
        assert!((v - 0.2).abs() < 1e-12 * 0.2);
        let v = quadrature_moment(&Weight::Equilibrium, &Region::Interval, &MultiIndex::new(vec![6]), 40).unwrap();
        assert!((v - 5.0 / 16.0).abs() < 1e-12);
        let v = quadrature_moment(&Weight::Equilibrium, &Region::Interval, &MultiIndex::new(vec![4]), 200).unwrap();
        assert!((v - 3.0 / 8.0).abs() < 1e-14);
    }
}
