use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mvpoly::{index_map, monomial_basis, MultiIndex, Poly, Rational, Scalar};

use super::matrix::MomentMatrix;

/// Truncated moment vector (φ_α) for |α| ≤ `order`, stored in graded-lex order.
#[derive(Clone, Debug)]
pub struct MomentSequence<S: Scalar> {
    n: usize,
    order: u32,
    basis: Arc<Vec<MultiIndex>>,
    index: Arc<HashMap<MultiIndex, usize>>,
    values: Vec<S>,
}

impl<S: Scalar> PartialEq for MomentSequence<S> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.order == other.order && self.values == other.values
    }
}

impl<S: Scalar> MomentSequence<S> {
    pub fn from_fn(n: usize, order: u32, mut f: impl FnMut(&MultiIndex) -> S) -> Self {
        let basis = monomial_basis(n, order);
        let values = basis.iter().map(&mut f).collect();
        let index = index_map(&basis);
        MomentSequence { n, order, basis: Arc::new(basis), index: Arc::new(index), values }
    }

    /// Values listed in graded-lex order of `monomial_basis(n, order)`.
    pub fn from_values(n: usize, order: u32, values: Vec<S>) -> Result<Self> {
        let basis = monomial_basis(n, order);
        if values.len() != basis.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), found: values.len() });
        }
        let index = index_map(&basis);
        Ok(MomentSequence { n, order, basis: Arc::new(basis), index: Arc::new(index), values })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Highest moment degree available (2t for a degree-2t truncation).
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.basis.iter().zip(&self.values)
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    pub fn get(&self, alpha: &MultiIndex) -> Result<&S> {
        if alpha.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: alpha.dim() });
        }
        self.position(alpha)
            .map(|i| &self.values[i])
            .ok_or(Error::DegreeOverflow { needed: alpha.degree(), available: self.order })
    }

    /// Mass φ_0.
    pub fn mass(&self) -> &S {
        &self.values[0]
    }

    pub fn truncate(&self, order: u32) -> Result<Self> {
        if order > self.order {
            return Err(Error::DegreeOverflow { needed: order, available: self.order });
        }
        let len = crate::mvpoly::basis_size(self.n, order);
        Self::from_values(self.n, order, self.values[..len].to_vec())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = v.clone() * c.clone());
        out
    }

    pub fn to_f64(&self) -> MomentSequence<f64> {
        MomentSequence {
            n: self.n,
            order: self.order,
            basis: self.basis.clone(),
            index: self.index.clone(),
            values: self.values.iter().map(Scalar::to_float).collect(),
        }
    }

    fn check_poly(&self, p: &Poly<S>, extra: u32) -> Result<()> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: p.dim() });
        }
        let needed = p.degree() + extra;
        if needed > self.order {
            return Err(Error::DegreeOverflow { needed, available: self.order });
        }
        Ok(())
    }

    /// Riesz functional: Σ_α p_α φ_α.
    pub fn riesz_apply(&self, p: &Poly<S>) -> Result<S> {
        self.check_poly(p, 0)?;
        let mut acc = S::zero();
        for (a, c) in p.terms() {
            acc = acc + c.clone() * self.get(a)?.clone();
        }
        Ok(acc)
    }

    /// The shifted sequence g·φ with entries Σ_γ g_γ φ_{α+γ}; its order
    /// drops by 2⌈deg g / 2⌉.
    pub fn shifted(&self, g: &Poly<S>) -> Result<Self> {
        let drop = 2 * g.half_degree();
        self.check_poly(g, 0)?;
        if drop > self.order {
            return Err(Error::DegreeOverflow { needed: drop, available: self.order });
        }
        let order = self.order - drop;
        let mut err = None;
        let out = MomentSequence::from_fn(self.n, order, |alpha| {
            let mut acc = S::zero();
            for (gamma, c) in g.terms() {
                match self.get(&alpha.plus(gamma)) {
                    Ok(v) => acc = acc + c.clone() * v.clone(),
                    Err(e) => err = Some(e),
                }
            }
            acc
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// M_t(φ)(α,β) = φ_{α+β}.
    pub fn moment_matrix(&self, t: u32) -> Result<MomentMatrix<S>> {
        self.localizing_matrix(&Poly::one(self.n), t)
    }

    /// M_t(g·φ)(α,β) = Σ_γ g_γ φ_{α+β+γ}. Needs order ≥ 2t + 2⌈deg g/2⌉.
    pub fn localizing_matrix(&self, g: &Poly<S>, t: u32) -> Result<MomentMatrix<S>> {
        self.check_poly(g, 0)?;
        let needed = 2 * t + 2 * g.half_degree();
        if needed > self.order {
            return Err(Error::DegreeOverflow { needed, available: self.order });
        }
        let basis = monomial_basis(self.n, t);
        let k = basis.len();
        let mut entries = vec![S::zero(); k * k];
        for i in 0..k {
            for j in i..k {
                let ab = basis[i].plus(&basis[j]);
                let mut acc = S::zero();
                for (gamma, c) in g.terms() {
                    acc = acc + c.clone() * self.get(&ab.plus(gamma))?.clone();
                }
                entries[i * k + j] = acc.clone();
                entries[j * k + i] = acc;
            }
        }
        MomentMatrix::new(basis, entries)
    }
}

impl MomentSequence<Rational> {
    pub fn convert<T: Scalar>(&self) -> MomentSequence<T> {
        MomentSequence {
            n: self.n,
            order: self.order,
            basis: self.basis.clone(),
            index: self.index.clone(),
            values: self.values.iter().map(T::from_rational).collect(),
        }
    }
}

/// Max-norm distance between `high` restricted to the order of `low` and `low`.
pub fn extension_distance<S: Scalar>(low: &MomentSequence<S>, high: &MomentSequence<S>) -> Result<f64> {
    if low.dim() != high.dim() {
        return Err(Error::DimensionMismatch { expected: low.dim(), found: high.dim() });
    }
    if high.order() < low.order() {
        return Err(Error::DegreeOverflow { needed: low.order(), available: high.order() });
    }
    Ok(low
        .values()
        .iter()
        .zip(high.values())
        .map(|(a, b)| (a.clone() - b.clone()).to_float().abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct MomentEntry {
    pub alpha: Vec<u32>,
    pub value: crate::json::Sig17,
    /// Exact fraction, when the sequence is rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct MomentTable {
    pub n: usize,
    pub order: u32,
    pub moments: Vec<MomentEntry>,
}

impl MomentTable {
    /// `alpha,value[,exact]` rows; exponents space-separated.
    pub fn to_csv(&self) -> String {
        let exact = self.moments.iter().any(|m| m.exact.is_some());
        let mut s = String::from(if exact { "alpha,value,exact\n" } else { "alpha,value\n" });
        for m in &self.moments {
            let exps: Vec<String> = m.alpha.iter().map(u32::to_string).collect();
            s.push_str(&format!("{},{}", exps.join(" "), crate::json::fmt17(m.value.0)));
            if exact {
                s.push_str(&format!(",{}", m.exact.as_deref().unwrap_or("")));
            }
            s.push('\n');
        }
        s
    }
}

impl<S: Scalar> MomentSequence<S> {
    pub fn to_table(&self) -> MomentTable {
        MomentTable {
            n: self.n,
            order: self.order,
            moments: self
                .iter()
                .map(|(a, v)| MomentEntry {
                    alpha: a.exponents().to_vec(),
                    value: crate::json::Sig17(v.to_float()),
                    exact: None,
                })
                .collect(),
        }
    }
}

impl MomentSequence<Rational> {
    pub fn to_exact_table(&self) -> MomentTable {
        let mut table = self.to_table();
        for (entry, v) in table.moments.iter_mut().zip(&self.values) {
            entry.exact = Some(v.to_string());
        }
        table
    }
}
