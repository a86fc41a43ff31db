use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RunConfig;
use crate::algebra::{IntPoly, LaurentPoly, Mat2, Root};
use crate::freegroup::{Presentation, Word};
use crate::linkfamilies::{ground_truth, FamilyKind, FamilySpec, GroundTruth, Orientation};
use crate::repvariety::{
    char_variety_eval, commutation_residual, locus_membership, parity_cases, riley_c_eval,
    CaseReport, Character, LocusLabel, RileyData,
};
use crate::twisted::{
    closed_form_top, detection_verdict, twisted_alexander, twisted_alexander_fastpath,
    twisted_alexander_fastpath_conjugated, ClosedForm, RepAssignment, TwistedPoly, Verdict,
};

pub(crate) const COMMUTATION_TOL: f64 = 1e-8;
pub(crate) const FASTPATH_TOL: f64 = 1e-9;
pub(crate) const CONJUGATION_TOL: f64 = 1e-8;
pub(crate) const SYMMETRY_TOL: f64 = 1e-7;
/// Commutation bound for sampled characters, whose word images grow like
/// the eigenvalues to the word length.
pub(crate) const SAMPLE_COMMUTATION_TOL: f64 = 1e-6;

/// Laurent polynomials as `exponent -> [re, im]` maps.
pub(crate) mod poly_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::algebra::LaurentPoly;

    pub fn serialize<S: Serializer>(p: &LaurentPoly, s: S) -> Result<S::Ok, S::Error> {
        p.to_map().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LaurentPoly, D::Error> {
        BTreeMap::<i64, [f64; 2]>::deserialize(d).map(|m| LaurentPoly::from_map(&m))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(p: &Option<LaurentPoly>, s: S) -> Result<S::Ok, S::Error> {
            p.as_ref().map(LaurentPoly::to_map).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<LaurentPoly>, D::Error> {
            Option::<BTreeMap<i64, [f64; 2]>>::deserialize(d)
                .map(|m| m.map(|m| LaurentPoly::from_map(&m)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// Computed fine, nothing asserted.
    Info,
    /// A stated property fails.
    Counterexample(String),
    /// The numerics broke (convergence, residuals, consistency checks).
    Failure(String),
}

impl Outcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::Failure(_))
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(self, Outcome::Counterexample(_))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseSource {
    RileyRoot {
        index: usize,
        real: bool,
        multiplicity: u32,
    },
    Explicit,
    Sample {
        index: usize,
    },
    Locus {
        label: LocusLabel,
        index: usize,
    },
    Presentation,
}

impl CaseSource {
    /// A parabolic representation of a family member, as opposed to a
    /// sampled or constructed character.
    pub fn is_family_instance(&self) -> bool {
        matches!(self, CaseSource::RileyRoot { .. } | CaseSource::Explicit)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedRecord {
    #[serde(with = "poly_map")]
    pub delta: LaurentPoly,
    pub raw_lo: i64,
    pub span: Option<i64>,
    pub span_coarse: Option<i64>,
    pub top_coeff: Complex64,
    pub bottom_coeff: Complex64,
    pub monic: bool,
    /// Largest `|psi_k - psi_{l-k}|` relative to the largest coefficient.
    pub symmetric_defect: f64,
}

impl TwistedRecord {
    pub(crate) fn from_poly(tp: &TwistedPoly) -> Self {
        TwistedRecord {
            delta: tp.delta.clone(),
            raw_lo: tp.raw_lo,
            span: tp.span,
            span_coarse: tp.span_coarse,
            top_coeff: tp.top_coeff,
            bottom_coeff: tp.bottom_coeff,
            monic: tp.monic,
            symmetric_defect: tp.relative_symmetric_defect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub family: Option<FamilySpec>,
    pub name: String,
    pub orientation: Orientation,
    pub source: CaseSource,
    pub character: Option<Character>,
    /// `|R|` at the character (`J`) or `|W'_21(z)|` (`C`).
    pub variety_residual: Option<f64>,
    pub commutation_residual: Option<f64>,
    pub twisted: Option<TwistedRecord>,
    /// Relative distance between the general and the commutator fast path.
    pub fastpath_distance: Option<f64>,
    /// Why the general path gave no polynomial off the family instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub general_path_error: Option<String>,
    pub conjugation_distance: Option<f64>,
    pub prediction: Option<ClosedForm>,
    /// Coefficient of `t^hi` in the fast-path determinant minus the prediction,
    /// relative to the largest coefficient (at least 1).
    pub closed_form_error: Option<f64>,
    pub expected_span: Option<i64>,
    pub verdict: Option<Verdict>,
    pub loci: Vec<LocusLabel>,
    pub case_analysis: Option<CaseReport>,
    pub outcome: Outcome,
}

impl CaseRecord {
    pub(crate) fn empty(
        family: Option<FamilySpec>,
        name: String,
        o: Orientation,
        source: CaseSource,
    ) -> Self {
        CaseRecord {
            family,
            name,
            orientation: o,
            source,
            character: None,
            variety_residual: None,
            commutation_residual: None,
            twisted: None,
            fastpath_distance: None,
            general_path_error: None,
            conjugation_distance: None,
            prediction: None,
            closed_form_error: None,
            expected_span: None,
            verdict: None,
            loci: Vec::new(),
            case_analysis: None,
            outcome: Outcome::Info,
        }
    }

    pub fn span(&self) -> Option<i64> {
        self.twisted.as_ref().and_then(|t| t.span)
    }

    pub fn is_nonreal_root(&self) -> bool {
        matches!(self.source, CaseSource::RileyRoot { real: false, .. })
    }

    pub fn is_real_root(&self) -> bool {
        matches!(self.source, CaseSource::RileyRoot { real: true, .. })
    }

    pub fn genus_detected(&self) -> bool {
        self.verdict.is_some_and(|v| v.genus_detected)
    }

    /// Replaces an `Info` outcome: `Pass` when `failure` is `None`.
    pub(crate) fn judge(&mut self, failure: Option<String>) {
        if self.outcome == Outcome::Info {
            self.outcome = match failure {
                None => Outcome::Pass,
                Some(why) => Outcome::Counterexample(why),
            };
        }
    }
}

/// Integer polynomial with decimal coefficients and its roots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RileyRecord {
    pub family: FamilySpec,
    pub name: String,
    /// Coefficients in increasing degree, as decimal strings.
    pub poly: Vec<String>,
    pub degree: Option<usize>,
    pub roots: Vec<Root>,
    /// Roots at `z = 2` (abelian representations), not evaluated.
    pub reducible: Vec<Root>,
}

impl RileyRecord {
    pub fn new(family: FamilySpec, data: &RileyData) -> Self {
        RileyRecord {
            family,
            name: family.to_string(),
            poly: data.poly.coeffs().iter().map(|c| c.to_string()).collect(),
            degree: data.poly.degree(),
            roots: data.roots.clone(),
            reducible: data.reducible.clone(),
        }
    }

    pub fn int_poly(&self) -> Option<IntPoly> {
        let coeffs = self
            .poly
            .iter()
            .map(|c| c.parse().ok())
            .collect::<Option<Vec<_>>>()?;
        Some(IntPoly::from_coeffs(coeffs))
    }
}

/// Per (family, orientation) data: genus, reduced Alexander polynomial and
/// statements about the set of roots as a whole.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub family: FamilySpec,
    pub name: String,
    pub orientation: Orientation,
    pub ground_truth: GroundTruth,
    #[serde(with = "poly_map::option")]
    pub alexander: Option<LaurentPoly>,
    /// `deg - 1` of the reduced Alexander polynomial.
    pub alexander_norm: Option<i64>,
    pub notes: Vec<String>,
    pub outcome: Outcome,
}

impl FamilyRecord {
    pub fn new(ctx: &FamilyContext, cfg: &RunConfig) -> Self {
        let mut rec = FamilyRecord {
            family: ctx.family,
            name: ctx.family.to_string(),
            orientation: ctx.orientation,
            ground_truth: ctx.truth,
            alexander: None,
            alexander_norm: None,
            notes: Vec::new(),
            outcome: Outcome::Info,
        };
        match crate::twisted::reduced_alexander(&ctx.pres, 0, &cfg.engine) {
            Ok(a) => {
                rec.alexander_norm = a.span().map(|s| s - 1);
                rec.alexander = Some(a);
                if rec.alexander_norm != Some(ctx.truth.thurston_norm as i64) {
                    rec.outcome = Outcome::Counterexample(format!(
                        "Alexander norm {:?} differs from Thurston norm {}",
                        rec.alexander_norm, ctx.truth.thurston_norm
                    ));
                }
            }
            Err(e) => rec.outcome = Outcome::Failure(format!("reduced Alexander polynomial: {e}")),
        }
        rec
    }

    /// Adds `claim` as a note; a false claim becomes a counterexample unless
    /// something worse is already recorded.
    pub(crate) fn claim(&mut self, holds: bool, claim: String) {
        if !holds && !self.outcome.is_failure() && !self.outcome.is_counterexample() {
            self.outcome = Outcome::Counterexample(claim.clone());
        }
        self.notes.push(format!(
            "{}: {claim}",
            if holds { "holds" } else { "fails" }
        ));
    }

    pub(crate) fn finish(&mut self) {
        if self.outcome == Outcome::Info {
            self.outcome = Outcome::Pass;
        }
    }
}

/// Everything about one (family, orientation) that does not depend on the
/// representation.
pub struct FamilyContext {
    pub family: FamilySpec,
    pub orientation: Orientation,
    pub pres: Presentation,
    pub w: Word,
    pub truth: GroundTruth,
}

impl FamilyContext {
    pub fn new(family: FamilySpec, orientation: Orientation) -> Self {
        FamilyContext {
            family,
            orientation,
            pres: family.presentation(orientation),
            w: family.word_w(),
            truth: ground_truth(&family, orientation),
        }
    }
}

/// Fixed element of `SU(2)`: unitary, so conjugating by it does not inflate
/// the rounding of the conjugated images.
fn probe() -> Mat2 {
    let (alpha, beta) = (Complex64::new(0.62, 0.31), Complex64::new(-0.45, 0.57));
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    let (alpha, beta) = (alpha / norm, beta / norm);
    Mat2::new(alpha, beta, -beta.conj(), alpha.conj())
}

fn variety_residual(f: &FamilySpec, ch: &Character) -> f64 {
    match f.kind {
        FamilyKind::J => char_variety_eval(f.m, f.n, ch).norm(),
        FamilyKind::C => riley_c_eval(f.m, f.n, f.p, ch.z).norm(),
    }
}

/// Runs the engine on one representation of a family and records every
/// derived quantity. Numerical consistency problems become `Failure`;
/// otherwise the outcome stays `Info` for the caller to judge.
pub fn evaluate_case(
    ctx: &FamilyContext,
    ch: Character,
    mats: [Mat2; 2],
    source: CaseSource,
    cfg: &RunConfig,
) -> CaseRecord {
    let f = &ctx.family;
    let mut rec = CaseRecord::empty(Some(*f), f.to_string(), ctx.orientation, source);
    rec.character = Some(ch);
    rec.variety_residual = Some(variety_residual(f, &ch));
    rec.expected_span = Some(ctx.truth.degree_prediction as i64);
    if f.kind == FamilyKind::J {
        rec.loci = locus_membership(f, ctx.orientation, &ch, cfg.locus_tol);
    } else if f.m % 2 == 1 && f.n % 2 == 1 && f.p % 2 == 1 {
        rec.case_analysis = Some(parity_cases(f.m, f.n, f.p, ch.z, cfg.locus_tol));
    }
    let prediction = closed_form_top(f, ctx.orientation, &ch);
    rec.prediction = Some(prediction);
    let commutation = commutation_residual(&ctx.w, &mats);
    rec.commutation_residual = Some(commutation);
    // Family instances are judged on the general path and must match the fast
    // path closely. Elsewhere the general numerator cancels by about |W|^4,
    // so the fast path is primary and the general one only compared.
    let family_instance = rec.source.is_family_instance();
    let commutation_tol = if family_instance {
        COMMUTATION_TOL
    } else {
        SAMPLE_COMMUTATION_TOL
    };
    let mut problems = Vec::new();
    if commutation.is_nan() || commutation >= commutation_tol {
        problems.push(format!("commutation residual {commutation:.2e}"));
    }
    let eng = &cfg.engine;
    let run = || -> Result<_, crate::twisted::TwistedError> {
        let rep = RepAssignment::for_presentation(&ctx.pres, mats.to_vec(), eng.sl2_tol)?;
        let fast = twisted_alexander_fastpath(&ctx.pres, &ctx.w, &rep, eng)?;
        let conj = twisted_alexander_fastpath_conjugated(&ctx.pres, &ctx.w, &rep, &probe(), eng)?;
        let general = twisted_alexander(&ctx.pres, &rep, 0, eng);
        Ok((general, fast, conj))
    };
    match run() {
        Err(e) => problems.push(format!("engine: {e}")),
        Ok((general, fast, conj)) => {
            let conj_d = fast.distance(&conj);
            let max = fast.max_abs().max(1.0);
            let at_hi = fast.delta.coeff(prediction.hi - fast.raw_lo);
            rec.closed_form_error = Some((at_hi - prediction.coeff).norm() / max);
            rec.conjugation_distance = Some(conj_d);
            let primary = match general {
                Ok(general) => {
                    let fast_d = general.distance(&fast);
                    rec.fastpath_distance = Some(fast_d);
                    if family_instance {
                        if fast_d.is_nan() || fast_d >= FASTPATH_TOL {
                            problems.push(format!("fast path differs by {fast_d:.2e}"));
                        }
                        general
                    } else {
                        fast
                    }
                }
                Err(e) if family_instance => {
                    problems.push(format!("engine: {e}"));
                    fast
                }
                Err(e) => {
                    rec.general_path_error = Some(e.to_string());
                    fast
                }
            };
            rec.verdict = Some(detection_verdict(&primary, &ctx.truth, eng));
            let tw = TwistedRecord::from_poly(&primary);
            if conj_d.is_nan() || conj_d >= CONJUGATION_TOL {
                problems.push(format!(
                    "conjugation changes the polynomial by {conj_d:.2e}"
                ));
            }
            if tw.symmetric_defect.is_nan() || tw.symmetric_defect >= SYMMETRY_TOL {
                problems.push(format!("symmetry defect {:.2e}", tw.symmetric_defect));
            }
            rec.twisted = Some(tw);
        }
    }
    if !problems.is_empty() {
        rec.outcome = Outcome::Failure(problems.join("; "));
    }
    rec
}
