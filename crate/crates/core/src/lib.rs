//! Truncated moment and localizing matrices on compact basic semi-algebraic
//! sets, Christoffel functions, a log-det Newton solver, and verification of
//! the generalized Pell identities satisfied by equilibrium measures.

pub mod christoffel;
pub mod error;
pub mod json;
pub mod linalg;
pub mod maxdet;
pub mod measures;
pub mod momkit;
pub mod mvpoly;
pub mod pellcheck;
pub mod sets;

pub use error::{Error, Result};
