use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector α ∈ ℕⁿ.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared lexicographically with larger leading exponents first, so the
/// degree-one block of two variables reads `x, y`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "multi-index needs at least one variable");
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex::new(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self - other` when `other ≤ self`.
    pub fn checked_minus(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Whether some exponent is odd.
    pub fn has_odd(&self) -> bool {
        self.0.iter().any(|e| e % 2 == 1)
    }

    /// Value of xᵅ at a point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// s(t) = C(n+t, n), the number of monomials of degree at most `t`.
pub fn basis_size(n: usize, t: u32) -> usize {
    let t = t as usize;
    let mut acc: u128 = 1;
    for k in 1..=n {
        acc = acc * (t + k) as u128 / k as u128;
    }
    acc as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All exponents of total degree exactly `d`, in graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    assert!(n >= 1);
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// The monomial vector v_t: every exponent with |α| ≤ t, graded-lex ordered.
/// Index 0 is the zero multi-index.
pub fn monomial_basis(n: usize, t: u32) -> Vec<MultiIndex> {
    (0..=t).flat_map(|d| monomials_of_degree(n, d)).collect()
}

/// Position lookup for a basis list.
pub fn index_map(basis: &[MultiIndex]) -> HashMap<MultiIndex, usize> {
    basis.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_bases() {
        let b = monomial_basis(2, 1);
        assert_eq!(
            b,
            vec![
                MultiIndex::new(vec![0, 0]),
                MultiIndex::new(vec![1, 0]),
                MultiIndex::new(vec![0, 1])
            ]
        );
        assert_eq!(monomial_basis(2, 2).len(), 6);
        assert_eq!(monomial_basis(3, 2).len(), 10);
        let b2: Vec<String> = monomial_basis(2, 2).iter().map(|a| a.to_string()).collect();
        assert_eq!(b2, ["(0,0)", "(1,0)", "(0,1)", "(2,0)", "(1,1)", "(0,2)"]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(basis_size(2, 3), 10);
        assert_eq!(basis_size(1, 8), 9);
    }

    proptest! {
        #[test]
        fn basis_size_and_prefix(n in 1usize..4, t in 0u32..7) {
            let b = monomial_basis(n, t);
            prop_assert_eq!(b.len(), basis_size(n, t));
            prop_assert_eq!(b.len() as u64, binomial((n as u64) + t as u64, n as u64));
            prop_assert!(b[0].is_zero());
            if t > 0 {
                let lower = monomial_basis(n, t - 1);
                prop_assert_eq!(&b[..lower.len()], &lower[..]);
            }
            // sorted and strictly increasing in the global order
            prop_assert!(b.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
