//! Wada's twisted Alexander polynomial for 2-dimensional representations,
//! the closed-form predictions of its extreme terms for the two families and
//! detection verdicts against known genus data.

mod engine;
mod predict;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, LaurentPoly, Mat2};
use crate::freegroup::Presentation;

pub use engine::{
    phi_apply, phi_scalar, reduced_alexander, twisted_alexander, twisted_alexander_fastpath,
    twisted_alexander_fastpath_conjugated,
};
pub use predict::{closed_form_top, detection_verdict, ClosedForm, Verdict};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TwistedError {
    #[error("generator {gen} has no assigned matrix ({assigned} assigned)")]
    UnassignedGenerator { gen: usize, assigned: usize },
    #[error("image of generator {gen} is not special linear (det = {det})")]
    NotSpecialLinear { gen: usize, det: Complex64 },
    #[error("{mats} matrices but {degrees} degrees")]
    DegreeCount { mats: usize, degrees: usize },
    #[error("det Phi(1 - x_{remove}) vanishes identically")]
    SingularDenominator { remove: usize },
    #[error("need one relator fewer than generators ({gens} generators, {relators} relators)")]
    WrongRelatorCount { gens: usize, relators: usize },
    #[error("presentation is not <a, b | a w a^-1 w^-1> for the given w")]
    ShapeMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Tolerances shared by the engine and the verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Coefficients below this fraction of the largest count as zero.
    pub span_threshold: f64,
    /// Second threshold used to flag tolerance-sensitive verdicts.
    pub stability_threshold: f64,
    pub division_tol: f64,
    pub monic_tol: f64,
    /// Non-fibered cases need `|top - 1|` above this.
    pub non_monic_margin: f64,
    pub sl2_tol: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            span_threshold: 1e-8,
            stability_threshold: 1e-6,
            division_tol: 1e-7,
            monic_tol: 1e-6,
            non_monic_margin: 1e-3,
            sl2_tol: 1e-8,
        }
    }
}

/// Generator images and abelianization degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct RepAssignment {
    mats: Vec<Mat2>,
    degrees: Vec<i64>,
}

impl RepAssignment {
    pub fn new(mats: Vec<Mat2>, degrees: Vec<i64>, tol: f64) -> Result<Self, TwistedError> {
        if mats.len() != degrees.len() {
            return Err(TwistedError::DegreeCount {
                mats: mats.len(),
                degrees: degrees.len(),
            });
        }
        for (gen, m) in mats.iter().enumerate() {
            if !m.is_special_linear(tol) {
                return Err(TwistedError::NotSpecialLinear { gen, det: m.det() });
            }
        }
        Ok(RepAssignment { mats, degrees })
    }

    /// Images for the generators of `pres`, degrees taken from `pres`.
    pub fn for_presentation(
        pres: &Presentation,
        mats: Vec<Mat2>,
        tol: f64,
    ) -> Result<Self, TwistedError> {
        if mats.len() < pres.generator_count() {
            return Err(TwistedError::UnassignedGenerator {
                gen: mats.len(),
                assigned: mats.len(),
            });
        }
        RepAssignment::new(mats, pres.degrees().to_vec(), tol)
    }

    pub fn mats(&self) -> &[Mat2] {
        &self.mats
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Every image replaced by `g X g^-1`.
    pub fn conjugate(&self, g: &Mat2) -> Self {
        RepAssignment {
            mats: self.mats.iter().map(|m| m.conjugate_by(g)).collect(),
            degrees: self.degrees.clone(),
        }
    }
}

/// A normalized twisted Alexander polynomial with its derived quantities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedPoly {
    /// Lowest exponent shifted to 0.
    pub delta: LaurentPoly,
    /// Lowest exponent before the shift.
    pub raw_lo: i64,
    /// `None` when the polynomial vanishes.
    pub span: Option<i64>,
    /// Span recomputed at the stability threshold.
    pub span_coarse: Option<i64>,
    pub top_coeff: Complex64,
    pub bottom_coeff: Complex64,
    pub monic: bool,
    pub symmetric_defect: f64,
}

impl TwistedPoly {
    pub fn from_raw(raw: &LaurentPoly, cfg: &EngineConfig) -> Self {
        let fine = raw.normalize(cfg.span_threshold);
        let coarse = raw.normalize(cfg.stability_threshold);
        let raw_lo = fine.lo();
        let delta = fine.shift(-raw_lo);
        let zero = Complex64::new(0.0, 0.0);
        let top_coeff = delta.coeffs().last().copied().unwrap_or(zero);
        let bottom_coeff = delta.coeffs().first().copied().unwrap_or(zero);
        let c = delta.coeffs();
        let symmetric_defect = c
            .iter()
            .zip(c.iter().rev())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        TwistedPoly {
            span: delta.span(),
            span_coarse: coarse.span(),
            monic: (top_coeff - 1.0).norm() < cfg.monic_tol,
            delta,
            raw_lo,
            top_coeff,
            bottom_coeff,
            symmetric_defect,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.delta.max_abs()
    }

    /// `symmetric_defect` relative to the largest coefficient.
    pub fn relative_symmetric_defect(&self) -> f64 {
        match self.max_abs() {
            0.0 => 0.0,
            m => self.symmetric_defect / m,
        }
    }

    /// Largest coefficient difference relative to the larger maximum, or
    /// to 1 when both are smaller (a vanishing polynomial is all noise).
    pub fn distance(&self, other: &TwistedPoly) -> f64 {
        let scale = self.max_abs().max(other.max_abs()).max(1.0);
        (&self.delta - &other.delta).max_abs() / scale
    }
}
