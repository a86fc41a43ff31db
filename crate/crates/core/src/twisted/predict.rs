use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{EngineConfig, TwistedPoly};
use crate::chebyshev::ratio_t_minus_2;
use crate::linkfamilies::{FamilyKind, FamilySpec, GroundTruth, Orientation};
use crate::repvariety::{trace_data, trace_v, Character};

/// Predicted extreme terms `coeff t^hi` and `coeff t^lo` of `det Phi(dw/db)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub coeff: Complex64,
    pub hi: i64,
    pub lo: i64,
}

impl ClosedForm {
    pub fn span(&self) -> i64 {
        self.hi - self.lo
    }
}

/// For `C` only `ch.z` is used: the prediction lives on the parabolic slice.
pub fn closed_form_top(f: &FamilySpec, o: Orientation, ch: &Character) -> ClosedForm {
    let (m, n, p) = (f.m, f.n, f.p);
    let (m_i, n_i, p_i) = (m as i64, n as i64, p as i64);
    let z = ch.z;
    match (f.kind, o.flip) {
        (FamilyKind::J, false) => ClosedForm {
            coeff: ratio_t_minus_2(m, z),
            hi: 4 * n_i - 2,
            lo: -2,
        },
        (FamilyKind::J, true) => ClosedForm {
            coeff: ratio_t_minus_2(n, trace_v(m, ch.x, ch.y, z)),
            hi: 4 * m_i,
            lo: 0,
        },
        (FamilyKind::C, false) => {
            let t = trace_data(m, n, z);
            ClosedForm {
                coeff: ratio_t_minus_2(p, t.u_bar)
                    * ratio_t_minus_2(n, t.v_bar)
                    * ratio_t_minus_2(m, z),
                hi: 0,
                lo: -4,
            }
        }
        (FamilyKind::C, true) => ClosedForm {
            coeff: ratio_t_minus_2(n, trace_data(m, n, z).v_bar),
            hi: 4 * p_i - 2,
            lo: 2 - 4 * m_i,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// Span equals `4 g` at the span threshold.
    pub genus_detected: bool,
    /// The same test at the stability threshold.
    pub genus_detected_coarse: bool,
    pub unstable: bool,
    pub monic: bool,
    /// `None` without a fiberedness statement.
    pub fiber_detected: Option<bool>,
}

pub fn detection_verdict(tp: &TwistedPoly, gt: &GroundTruth, cfg: &EngineConfig) -> Verdict {
    let want = Some(gt.degree_prediction as i64);
    let genus_detected = tp.span == want;
    let genus_detected_coarse = tp.span_coarse == want;
    let gap = (tp.top_coeff - 1.0).norm();
    let fiber_detected = gt.fibered.map(|fibered| {
        if fibered {
            gap < cfg.monic_tol
        } else {
            gap > cfg.non_monic_margin
        }
    });
    Verdict {
        genus_detected,
        genus_detected_coarse,
        unstable: genus_detected != genus_detected_coarse,
        monic: tp.monic,
        fiber_detected,
    }
}
