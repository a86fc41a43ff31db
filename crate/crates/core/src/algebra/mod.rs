//! Exact integer polynomials, complex Laurent polynomials, 2x2 matrices over
//! both, block determinants by interpolation and polynomial root finding.

mod cpoly;
mod det;
mod intpoly;
mod laurent;
mod matrix;
mod roots;

pub use cpoly::ComplexPoly;
pub use det::{det_block, det_numeric};
pub use intpoly::IntPoly;
pub use laurent::LaurentPoly;
pub use matrix::{IntMat2, LaurentMat2, Mat2};
pub use roots::{find_roots, find_roots_complex, Root, REALITY_THRESHOLD};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("quotient is not a Laurent polynomial: residual {residual:e} above {tol:e}")]
    InexactDivision { residual: f64, tol: f64 },
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation needs a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("root finder did not converge after {iterations} iterations ({unconverged} roots unsettled)")]
    NonConvergence {
        iterations: usize,
        unconverged: usize,
    },
    #[error("root {root} has residual ratio {ratio:e} above precision {precision:e}")]
    ResidualTooLarge {
        root: Complex64,
        ratio: f64,
        precision: f64,
    },
    #[error("nonreal roots do not pair into conjugates ({upper} above the axis, {lower} below)")]
    ConjugateMismatch { upper: usize, lower: usize },
    #[error("interpolation residual {residual:e}: degree bound {bound} too small")]
    DegreeBoundTooSmall { residual: f64, bound: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not special linear (det = {det})")]
    NotSpecialLinear { det: Complex64 },
}
