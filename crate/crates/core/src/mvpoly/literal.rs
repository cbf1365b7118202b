//! Polynomial literal format used by set-definition files:
//! a JSON list of `{"exponents": [..], "coeff": "p/q" | "decimal"}` terms.

use serde::{Deserialize, Serialize};

use super::index::MultiIndex;
use super::poly::Poly;
use super::scalar::{parse_rational, Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermLiteral {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

pub type PolyLiteral = Vec<TermLiteral>;

/// Parse a literal exactly; the dimension comes from the first term or `n`.
pub fn parse_literal(terms: &[TermLiteral], n: usize) -> Result<Poly<Rational>> {
    let mut p = Poly::zero(n);
    for term in terms {
        if term.exponents.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: term.exponents.len() });
        }
        let c = parse_rational(&term.coeff)
            .ok_or_else(|| Error::Parse(format!("bad coefficient `{}`", term.coeff)))?;
        p.add_term(MultiIndex::new(term.exponents.clone()), c);
    }
    Ok(p)
}

pub fn to_literal(p: &Poly<Rational>) -> PolyLiteral {
    p.terms()
        .map(|(a, c)| TermLiteral { exponents: a.exponents().to_vec(), coeff: c.to_string() })
        .collect()
}

/// Float polynomials are written with 17 significant digits.
pub fn to_literal_f64<S: Scalar>(p: &Poly<S>) -> PolyLiteral {
    p.terms()
        .map(|(a, c)| TermLiteral {
            exponents: a.exponents().to_vec(),
            coeff: crate::json::fmt17(c.to_float()),
        })
        .collect()
}
