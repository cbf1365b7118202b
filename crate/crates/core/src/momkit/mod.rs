//! Riesz functionals, shifted sequences, moment and localizing matrices.

mod generators;
mod matrix;
mod sequence;

pub use generators::GeneratorSet;
pub use matrix::{MatrixJson, MomentMatrix};
pub use sequence::{extension_distance, MomentEntry, MomentSequence, MomentTable};
