use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::index::MultiIndex;
use super::poly::Poly;
use super::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

/// Dense integer coefficients (index = power) of P_0, …, P_n, from the
/// three-term recurrence P_{k+1} = 2x P_k − P_{k−1}.
pub fn chebyshev_coefficients(kind: ChebyshevKind, n: u32) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::one()]];
    if n == 0 {
        return out;
    }
    out.push(match kind {
        ChebyshevKind::First => vec![BigInt::zero(), BigInt::one()],
        ChebyshevKind::Second => vec![BigInt::zero(), BigInt::from(2)],
    });
    for k in 2..=n as usize {
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, c) in out[k - 1].iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in out[k - 2].iter().enumerate() {
            next[i] -= c;
        }
        out.push(next);
    }
    out
}

fn to_poly(coeffs: &[BigInt]) -> Poly<Rational> {
    let mut p = Poly::zero(1);
    for (k, c) in coeffs.iter().enumerate() {
        p.add_term(MultiIndex::new(vec![k as u32]), Rational::from_integer(c.clone()));
    }
    p
}

/// Univariate Chebyshev polynomial T_n or U_n with exact integer coefficients.
pub fn chebyshev(kind: ChebyshevKind, n: u32) -> Poly<Rational> {
    to_poly(chebyshev_coefficients(kind, n).last().expect("family is never empty"))
}

/// P_0, …, P_n of one kind.
pub fn chebyshev_family(kind: ChebyshevKind, n: u32) -> Vec<Poly<Rational>> {
    chebyshev_coefficients(kind, n).iter().map(|c| to_poly(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(chebyshev(ChebyshevKind::First, 0).to_string(), "1");
        assert_eq!(chebyshev(ChebyshevKind::First, 2).to_string(), "-1 + 2*x^2");
        assert_eq!(chebyshev(ChebyshevKind::Second, 2).to_string(), "-1 + 4*x^2");
        assert_eq!(chebyshev(ChebyshevKind::Second, 1).to_string(), "2*x");
    }

    #[test]
    fn degree_leading_coefficient_and_value_at_one() {
        for n in 1..=30u32 {
            let t = chebyshev(ChebyshevKind::First, n);
            assert_eq!(t.degree(), n);
            let lead = t.coeff(&MultiIndex::new(vec![n]));
            assert_eq!(lead, Rational::from_integer(BigInt::from(2).pow(n - 1)));
            assert!(t.eval_exact(&[Rational::one()]).unwrap().is_one());
        }
    }
}
