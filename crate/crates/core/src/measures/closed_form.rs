use num_traits::{One, Zero};

use crate::mvpoly::{binomial, ratio, MultiIndex, Rational};

/// Rising factorial (a)_k.
fn rising(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= x.clone();
        x += Rational::one();
    }
    acc
}

fn half() -> Rational {
    ratio(1, 2)
}

/// ∫ x^k dx / (π√(1−x²)) on [−1, 1]: zero for odd k, C(2m, m)/4^m for k = 2m.
pub fn interval_moment(k: u32) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    let m = k / 2;
    let num = Rational::from_integer(binomial(2 * m as u64, m as u64).into());
    let den = Rational::from_integer(num_bigint::BigInt::from(4).pow(m));
    num / den
}

/// Product arcsine law on [−1, 1]ⁿ.
pub fn box_moment(alpha: &MultiIndex) -> Rational {
    alpha.exponents().iter().map(|&k| interval_moment(k)).product()
}

/// Equilibrium measure of the unit disc, dx dy / (2π√(1−x²−y²)).
///
/// In polar coordinates the angular part gives 2π (1/2)_a (1/2)_b / (a+b)!
/// for exponents (2a, 2b) and the radial part ½ B(a+b+1, ½) =
/// (a+b)! / (2 (1/2)_{a+b+1}); the product is (1/2)_a (1/2)_b / (2 (1/2)_{a+b+1}).
pub fn ball2d_moment(alpha: &MultiIndex) -> Rational {
    if alpha.has_odd() {
        return Rational::zero();
    }
    let e = alpha.exponents();
    let (a, b) = (e[0] / 2, e[1] / 2);
    rising(&half(), a) * rising(&half(), b) / (ratio(2, 1) * rising(&half(), a + b + 1))
}

/// Dirichlet(½, ½, ½) on the canonical simplex, density 1/(2π√(xy(1−x−y))):
/// E[xᵃ yᵇ] = (1/2)_a (1/2)_b / (3/2)_{a+b}.
pub fn simplex2d_moment(alpha: &MultiIndex) -> Rational {
    let e = alpha.exponents();
    rising(&half(), e[0]) * rising(&half(), e[1]) / rising(&ratio(3, 2), e[0] + e[1])
}

/// Centered Gaussian moments by Isserlis' theorem (row-major covariance).
pub fn gaussian_moment(cov: &[f64], n: usize, alpha: &MultiIndex) -> f64 {
    let mut idx: Vec<usize> = Vec::new();
    for (i, &e) in alpha.exponents().iter().enumerate() {
        idx.extend(std::iter::repeat_n(i, e as usize));
    }
    fn pairings(idx: &[usize], cov: &[f64], n: usize) -> f64 {
        if idx.is_empty() {
            return 1.0;
        }
        if idx.len() % 2 == 1 {
            return 0.0;
        }
        let first = idx[0];
        let rest = &idx[1..];
        let mut acc = 0.0;
        for j in 0..rest.len() {
            let c = cov[first * n + rest[j]];
            if c == 0.0 {
                continue;
            }
            let mut others = rest.to_vec();
            others.remove(j);
            acc += c * pairings(&others, cov, n);
        }
        acc
    }
    pairings(&idx, cov, n)
}
