//! Sparse multivariate polynomials over a fixed graded-lex monomial order.

mod chebyshev;
mod index;
pub mod literal;
mod poly;
mod scalar;

pub use chebyshev::{chebyshev, chebyshev_coefficients, chebyshev_family, ChebyshevKind};
pub use index::{basis_size, binomial, index_map, monomial_basis, monomials_of_degree, MultiIndex};
pub use poly::Poly;
pub use scalar::{
    f64_to_rational, parse_rational, rat_one, rat_zero, ratio, rational_to_f64, Rational, Scalar,
    PIVOT_RTOL,
};
