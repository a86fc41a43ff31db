//! Character varieties of the two families: exact Riley polynomials, the
//! representations they parameterize, the exceptional loci and the case
//! analysis for the `C` family.

mod cases;
mod loci;
mod rep;
mod riley;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraError;

pub use cases::{parity_cases, riley_c_eval, trace_data, CaseReport, TraceData};
pub use loci::{
    loci_for, locus_membership, point_on_locus, yprime_locus_z, zprime_locus_z, LocusLabel,
    LOCUS_TOL,
};
pub use rep::{
    char_variety_eval, char_variety_poly_z, commutation_residual, parabolic_rep,
    rep_from_character, trace_v, word_matrix, ParabolicRep,
};
pub use riley::{
    parabolic_slice_j, riley_c_oracle, riley_j_oracle, riley_poly_c, slice_poly_j, w21_prime_c,
    word_matrix_int, RileyData, REDUCIBLE_TOL,
};

/// `(tr A, tr B, tr AB^-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Character {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl Character {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        Character { x, y, z }
    }

    pub fn parabolic(z: Complex64) -> Self {
        let two = Complex64::new(2.0, 0.0);
        Character { x: two, y: two, z }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepError {
    #[error("reducible character (|r| = {r:.3e})")]
    Reducible { r: f64 },
    #[error("locus {0} is empty for these parameters")]
    EmptyLocus(String),
    #[error("constructed point misses the variety (|R| = {residual:.3e})")]
    OffVariety { residual: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
