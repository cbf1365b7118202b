use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::index::MultiIndex;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Sparse polynomial in `n` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Poly<S: Scalar> {
    n: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "polynomials need at least one variable");
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: S) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, S::one())
    }

    /// The coordinate polynomial xᵢ.
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(n, i), S::one())
    }

    pub fn monomial(alpha: MultiIndex, c: S) -> Self {
        let mut p = Poly::zero(alpha.dim());
        p.add_term(alpha, c);
        p
    }

    /// Build from `(exponents, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, S)>) -> Result<Self> {
        let mut p = Poly::zero(n);
        for (alpha, c) in terms {
            if alpha.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: alpha.dim() });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// ⌈deg/2⌉.
    pub fn half_degree(&self) -> u32 {
        self.degree().div_ceil(2)
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> S {
        self.terms.get(alpha).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: S) {
        assert_eq!(alpha.dim(), self.n, "exponent dimension mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.plus(b), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// Value at a point with coordinates in the same scalar field.
    pub fn eval_exact(&self, x: &[S]) -> Result<S> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let mut acc = S::zero();
        for (a, c) in &self.terms {
            let mut m = c.clone();
            for (&e, xi) in a.exponents().iter().zip(x) {
                for _ in 0..e {
                    m = m * xi.clone();
                }
            }
            acc = acc + m;
        }
        Ok(acc)
    }

    /// Floating evaluation.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        Ok(self.terms.iter().map(|(a, c)| c.to_float() * a.eval(x)).sum())
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.to_float().abs()).fold(0.0, f64::max)
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        let mut out = Poly::zero(self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), f(c));
        }
        out
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map_coeffs(|c| c.to_float())
    }

    /// Terms whose exponent has total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() == d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Poly::one(self.n), |acc, _| &acc * self)
    }
}

impl Poly<Rational> {
    pub fn convert<T: Scalar>(&self) -> Poly<T> {
        self.map_coeffs(T::from_rational)
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn var_name(n: usize, i: usize) -> String {
    if n <= VARS.len() {
        VARS[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = a
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        var_name(self.n, i)
                    } else {
                        format!("{}^{}", var_name(self.n, i), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
