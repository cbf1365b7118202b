use crate::error::{Error, Result};
use crate::mvpoly::{basis_size, Poly, Rational};

/// Description of S = {x : g_j(x) ≥ 0} by G = {g_0 = 1, g_1, …, g_m}.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    name: String,
    n: usize,
    radius: f64,
    generators: Vec<Poly<Rational>>,
}

impl GeneratorSet {
    /// `constraints` lists g_1..g_m; the constant g_0 = 1 is prepended.
    pub fn new(name: impl Into<String>, n: usize, radius: f64, constraints: Vec<Poly<Rational>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Invalid(format!("radius must be positive, got {radius}")));
        }
        let mut generators = Vec::with_capacity(constraints.len() + 1);
        generators.push(Poly::one(n));
        for g in constraints {
            if g.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
            }
            if g.is_zero() {
                return Err(Error::Invalid("zero generator".into()));
            }
            generators.push(g);
        }
        Ok(GeneratorSet { name: name.into(), n, radius, generators })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// R with R − ‖x‖² ∈ Q_1(G).
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// All generators, g_0 = 1 first.
    pub fn generators(&self) -> &[Poly<Rational>] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Poly<Rational> {
        &self.generators[i]
    }

    /// t_g = ⌈deg g / 2⌉.
    pub fn half_degree(&self, i: usize) -> u32 {
        self.generators[i].half_degree()
    }

    /// Indices of G_t = {g : t_g ≤ t}.
    pub fn active(&self, t: u32) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.half_degree(i) <= t).collect()
    }

    /// Σ_{g∈G_t} s(t − t_g).
    pub fn pell_constant(&self, t: u32) -> usize {
        self.active(t).into_iter().map(|i| basis_size(self.n, t - self.half_degree(i))).sum()
    }

    /// Whether x lies strictly inside every constraint.
    pub fn contains_strictly(&self, x: &[f64]) -> bool {
        self.generators[1..].iter().all(|g| g.to_f64().eval(x).map(|v| v > 0.0).unwrap_or(false))
    }
}
