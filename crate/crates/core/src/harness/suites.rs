use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::record::{
    evaluate_case, CaseRecord, CaseSource, FamilyContext, FamilyRecord, Outcome, RileyRecord,
    TwistedRecord, COMMUTATION_TOL,
};
use super::{HarnessError, Report, RunConfig};
use crate::algebra::{find_roots_complex, AlgebraError, Mat2, Root};
use crate::freegroup::Presentation;
use crate::linkfamilies::{FamilyKind, FamilySpec, Orientation};
use crate::repvariety::{
    char_variety_eval, char_variety_poly_z, loci_for, locus_membership, parabolic_rep,
    parabolic_slice_j, point_on_locus, rep_from_character, riley_poly_c, word_matrix, Character,
    LocusLabel, RepError, RileyData,
};
use crate::twisted::{twisted_alexander, RepAssignment, TwistedError};

/// Box for random traces: real and imaginary parts in `[-3, 3]`.
const SAMPLE_BOX: f64 = 3.0;
const ATTEMPTS_PER_SAMPLE: usize = 20;
/// Tolerance for the predicted factor on a constructed locus point.
const DEGENERATION_TOL: f64 = 1e-7;
/// Starting values for the Newton refinement of sampled `z`.
const SEED_ROOT_PRECISION: f64 = 1e-5;
const NEWTON_STEPS: usize = 60;

type FamilyOutput = (
    Option<RileyRecord>,
    Vec<FamilyRecord>,
    Vec<CaseRecord>,
    usize,
);

fn root_case(ctx: &FamilyContext, index: usize, root: &Root, cfg: &RunConfig) -> CaseRecord {
    let source = CaseSource::RileyRoot {
        index,
        real: root.is_real,
        multiplicity: root.multiplicity,
    };
    evaluate_case(
        ctx,
        Character::parabolic(root.value),
        parabolic_rep(root.value).mats(),
        source,
        cfg,
    )
}

fn root_cases(ctx: &FamilyContext, data: &RileyData, cfg: &RunConfig) -> Vec<CaseRecord> {
    data.roots
        .par_iter()
        .enumerate()
        .map(|(i, r)| root_case(ctx, i, r, cfg))
        .collect()
}

fn span_complaint(c: &CaseRecord) -> String {
    format!("span {:?}, expected {:?}", c.span(), c.expected_span)
}

fn riley_for(f: &FamilySpec, cfg: &RunConfig) -> Result<RileyData, AlgebraError> {
    match f.kind {
        FamilyKind::J => parabolic_slice_j(f.m, f.n, cfg.root_precision),
        FamilyKind::C => riley_poly_c(f.m, f.n, f.p, cfg.root_precision),
    }
}

/// Family records marked as failed when the Riley roots are unavailable.
fn without_roots(f: FamilySpec, cfg: &RunConfig, err: &AlgebraError) -> FamilyOutput {
    let families = cfg
        .orientation
        .orientations()
        .into_iter()
        .map(|o| {
            let mut rec = FamilyRecord::new(&FamilyContext::new(f, o), cfg);
            rec.outcome = Outcome::Failure(format!("Riley roots: {err}"));
            rec
        })
        .collect();
    (None, families, Vec::new(), 0)
}

fn merge(suite: &str, cfg: &RunConfig, parts: Vec<FamilyOutput>) -> Report {
    let (mut riley, mut families, mut cases, mut skipped) = (Vec::new(), Vec::new(), Vec::new(), 0);
    for (r, f, c, s) in parts {
        riley.extend(r);
        families.extend(f);
        cases.extend(c);
        skipped += s;
    }
    Report::assemble(suite, cfg, riley, families, cases, skipped)
}

fn dfj_family(f: FamilySpec, cfg: &RunConfig) -> FamilyOutput {
    let data = match riley_for(&f, cfg) {
        Ok(d) => d,
        Err(e) => return without_roots(f, cfg, &e),
    };
    let (mut families, mut cases) = (Vec::new(), Vec::new());
    for o in cfg.orientation.orientations() {
        let ctx = FamilyContext::new(f, o);
        let mut fam = FamilyRecord::new(&ctx, cfg);
        let mut batch = root_cases(&ctx, &data, cfg);
        for c in batch.iter_mut().filter(|c| c.is_nonreal_root()) {
            let v = c.verdict;
            let ok = v.is_some_and(|v| v.genus_detected && v.fiber_detected == Some(true));
            let why = format!(
                "{}, fiber verdict {:?}",
                span_complaint(c),
                v.and_then(|v| v.fiber_detected)
            );
            c.judge((!ok).then_some(why));
        }
        let nonreal = batch.iter().filter(|c| c.is_nonreal_root()).count();
        fam.claim(nonreal > 0, format!("{nonreal} nonreal parabolic roots"));
        fam.finish();
        families.push(fam);
        cases.extend(batch);
    }
    (Some(RileyRecord::new(f, &data)), families, cases, 0)
}

/// Genus and fiberedness detection at every nonreal parabolic root of
/// `J(2m+1, 2n+1)` over the configured grid.
pub fn suite_dfj(cfg: &RunConfig) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let grid: Vec<FamilySpec> = cfg
        .m
        .iter()
        .flat_map(|m| cfg.n.iter().map(move |n| (m, n)))
        .map(|(m, n)| FamilySpec::j(m as i64, n as i64))
        .collect::<Result<_, _>>()?;
    let parts = grid.into_par_iter().map(|f| dfj_family(f, cfg)).collect();
    Ok(merge("dfj", cfg, parts))
}

fn parabolic_family(f: FamilySpec, cfg: &RunConfig) -> FamilyOutput {
    let data = match riley_for(&f, cfg) {
        Ok(d) => d,
        Err(e) => return without_roots(f, cfg, &e),
    };
    let coprime = f.m.gcd(&f.p) == 1;
    let (mut families, mut cases) = (Vec::new(), Vec::new());
    for o in cfg.orientation.orientations() {
        let ctx = FamilyContext::new(f, o);
        let mut fam = FamilyRecord::new(&ctx, cfg);
        let mut batch = root_cases(&ctx, &data, cfg);
        let all_roots = coprime && !o.flip;
        for c in batch.iter_mut() {
            if all_roots || c.is_nonreal_root() {
                let why = span_complaint(c);
                c.judge((!c.genus_detected()).then_some(why));
            }
        }
        if !coprime && !o.flip {
            let missed: Vec<&CaseRecord> = batch
                .iter()
                .filter(|c| c.is_real_root() && !c.outcome.is_failure() && !c.genus_detected())
                .collect();
            fam.claim(
                !missed.is_empty(),
                format!("{} real roots fail to detect the genus", missed.len()),
            );
            let explained = missed.iter().all(|c| {
                c.case_analysis
                    .as_ref()
                    .is_some_and(|r| r.any_vanishing() && r.consistent)
            });
            fam.claim(
                explained,
                "every non-detecting root has a vanishing factor".into(),
            );
        }
        fam.finish();
        families.push(fam);
        cases.extend(batch);
    }
    (Some(RileyRecord::new(f, &data)), families, cases, 0)
}

/// `C(2m, 2n, -2p)` for odd `m`, `n`, `p` with `m != p`: every root detects the
/// genus when `gcd(m, p) = 1`, only the nonreal ones otherwise.
pub fn suite_parabolic(cfg: &RunConfig) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let mut grid = Vec::new();
    for m in cfg.m.odd() {
        for n in cfg.n.odd() {
            for p in cfg.p.odd().filter(|&p| p != m) {
                let f = FamilySpec::c(m as i64, n as i64, p as i64)?;
                f.check_theorem_mode()?;
                grid.push(f);
            }
        }
    }
    let parts = grid
        .into_par_iter()
        .map(|f| parabolic_family(f, cfg))
        .collect();
    Ok(merge("parabolic", cfg, parts))
}

fn random_trace(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(
        rng.random_range(-SAMPLE_BOX..SAMPLE_BOX),
        rng.random_range(-SAMPLE_BOX..SAMPLE_BOX),
    )
}

fn stream_id(f: &FamilySpec, o: Orientation) -> u64 {
    ((f.m as u64) << 33) | ((f.n as u64) << 1) | o.flip as u64
}

/// A record for a point that could not be evaluated.
fn failed_case(ctx: &FamilyContext, source: CaseSource, why: String) -> CaseRecord {
    let mut rec = CaseRecord::empty(
        Some(ctx.family),
        ctx.family.to_string(),
        ctx.orientation,
        source,
    );
    rec.expected_span = Some(ctx.truth.degree_prediction as i64);
    rec.outcome = Outcome::Failure(why);
    rec
}

/// Newton on `R(x, y, .)` evaluated through the Chebyshev recursions, which
/// is far better conditioned than the expanded polynomial in `z`.
fn polish_z(f: &FamilySpec, x: Complex64, y: Complex64, mut z: Complex64) -> Option<Complex64> {
    let (m, n) = (f.m, f.n);
    let r = |z: Complex64| char_variety_eval(m, n, &Character::new(x, y, z));
    for _ in 0..NEWTON_STEPS {
        let h = 1e-6 * (1.0 + z.norm());
        let slope = (r(z + h) - r(z - h)) / (2.0 * h);
        let step = r(z) / slope;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    let last = r(z) / ((r(z + 1e-6) - r(z - 1e-6)) / 2e-6);
    (last.norm() < 1e-12 * (1.0 + z.norm())).then_some(z)
}

/// Off-loci characters drawn on `{R = 0}`: `x, y` uniform in the box, `z` a
/// random root of `R(x, y, .)`. Returns the points and the number dropped.
fn off_loci_samples(
    ctx: &FamilyContext,
    cfg: &RunConfig,
    rng: &mut ChaCha8Rng,
) -> (Vec<(Character, [Mat2; 2])>, usize) {
    let f = &ctx.family;
    let (mut out, mut dropped) = (Vec::new(), 0);
    for _ in 0..cfg.samples * ATTEMPTS_PER_SAMPLE {
        if out.len() == cfg.samples {
            break;
        }
        let (x, y) = (random_trace(rng), random_trace(rng));
        let roots =
            match find_roots_complex(&char_variety_poly_z(f.m, f.n, x, y), SEED_ROOT_PRECISION) {
                Ok(r) => r,
                Err(_) => {
                    dropped += 1;
                    continue;
                }
            };
        let z = roots[rng.random_range(0..roots.len())].value;
        let Some(z) = polish_z(f, x, y, z) else {
            dropped += 1;
            continue;
        };
        let ch = Character::new(x, y, z);
        if !locus_membership(f, ctx.orientation, &ch, cfg.locus_tol).is_empty() {
            dropped += 1;
            continue;
        }
        match rep_from_character(&ch, cfg.engine.sl2_tol) {
            Ok(mats) => out.push((ch, mats)),
            Err(_) => dropped += 1,
        }
    }
    (out, dropped)
}

type LocusPoint = (Character, [Mat2; 2], LocusLabel, usize);

/// Constructed points, `per_family` for each locus family of `(f, o)`.
fn locus_points(
    ctx: &FamilyContext,
    cfg: &RunConfig,
    rng: &mut ChaCha8Rng,
) -> (Vec<LocusPoint>, Vec<CaseRecord>, usize) {
    let mut by_family: BTreeMap<&'static str, Vec<LocusLabel>> = BTreeMap::new();
    for label in loci_for(&ctx.family, ctx.orientation) {
        by_family.entry(label.family()).or_default().push(label);
    }
    let (mut points, mut failed, mut dropped) = (Vec::new(), Vec::new(), 0);
    for labels in by_family.values() {
        for index in 0..cfg.locus_points {
            let label = labels[index % labels.len()];
            let mut placed = false;
            for _ in 0..ATTEMPTS_PER_SAMPLE {
                let x = random_trace(rng);
                let source = || CaseSource::Locus { label, index };
                match point_on_locus(&ctx.family, label, x, index) {
                    Ok(ch) => match rep_from_character(&ch, cfg.engine.sl2_tol) {
                        Ok(mats) => {
                            points.push((ch, mats, label, index));
                            placed = true;
                            break;
                        }
                        Err(RepError::Reducible { .. }) => continue,
                        Err(e) => {
                            failed.push(failed_case(ctx, source(), e.to_string()));
                            placed = true;
                            break;
                        }
                    },
                    Err(RepError::OffVariety { .. }) => continue,
                    Err(e) => {
                        failed.push(failed_case(ctx, source(), e.to_string()));
                        placed = true;
                        break;
                    }
                }
            }
            if !placed {
                dropped += 1;
            }
        }
    }
    (points, failed, dropped)
}

fn loci_family(f: FamilySpec, o: Orientation, cfg: &RunConfig) -> FamilyOutput {
    let ctx = FamilyContext::new(f, o);
    let mut fam = FamilyRecord::new(&ctx, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream_id(&f, o));
    let (samples, mut skipped) = off_loci_samples(&ctx, cfg, &mut rng);
    let (points, mut cases, dropped) = locus_points(&ctx, cfg, &mut rng);
    skipped += dropped;
    let mut sampled: Vec<CaseRecord> = samples
        .into_par_iter()
        .enumerate()
        .map(|(index, (ch, mats))| evaluate_case(&ctx, ch, mats, CaseSource::Sample { index }, cfg))
        .collect();
    for c in sampled.iter_mut() {
        let v = c.verdict;
        let ok = v.is_some_and(|v| v.genus_detected && v.fiber_detected == Some(true));
        let why = format!(
            "{}, top {:?}",
            span_complaint(c),
            c.twisted.as_ref().map(|t| t.top_coeff)
        );
        c.judge((!ok).then_some(why));
    }
    fam.claim(
        sampled.len() == cfg.samples,
        format!(
            "{} of {} off-loci samples drawn",
            sampled.len(),
            cfg.samples
        ),
    );
    let mut constructed: Vec<CaseRecord> = points
        .into_par_iter()
        .map(|(ch, mats, label, index)| {
            let mut c = evaluate_case(&ctx, ch, mats, CaseSource::Locus { label, index }, cfg);
            let target = label.target_factor(&f);
            let factor = c
                .prediction
                .map_or(Complex64::new(f64::NAN, 0.0), |p| p.coeff);
            let engine_ok = c.closed_form_error.is_some_and(|e| e < DEGENERATION_TOL);
            let ok = (factor - target).norm() < DEGENERATION_TOL && engine_ok;
            let why = format!(
                "factor {factor:.3e} (want {target}), engine deviation {:?}",
                c.closed_form_error
            );
            c.judge((!ok).then_some(why));
            c
        })
        .collect();
    cases.append(&mut sampled);
    cases.append(&mut constructed);
    fam.finish();
    (None, vec![fam], cases, skipped)
}

/// Random characters off the exceptional loci of `J(2m+1, 2n+1)` and
/// constructed points on them.
pub fn suite_loci(cfg: &RunConfig) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for m in cfg.m.iter() {
        for n in cfg.n.iter() {
            let f = FamilySpec::j(m as i64, n as i64)?;
            jobs.extend(cfg.orientation.orientations().into_iter().map(|o| (f, o)));
        }
    }
    let parts = jobs
        .into_par_iter()
        .map(|(f, o)| loci_family(f, o, cfg))
        .collect();
    Ok(merge("loci", cfg, parts))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleInput {
    pub family: FamilySpec,
    pub orientation: Orientation,
    /// Parabolic character `(2, 2, z)`; all Riley roots when absent.
    pub z: Option<Complex64>,
}

/// Full diagnostics for one family instance.
pub fn compute_single(input: &SingleInput, cfg: &RunConfig) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let f = input.family;
    let ctx = FamilyContext::new(f, input.orientation);
    let mut fam = FamilyRecord::new(&ctx, cfg);
    let (riley, cases) = match input.z {
        Some(z) => {
            let c = evaluate_case(
                &ctx,
                Character::parabolic(z),
                parabolic_rep(z).mats(),
                CaseSource::Explicit,
                cfg,
            );
            (None, vec![c])
        }
        None => {
            let data = riley_for(&f, cfg)?;
            (
                Some(RileyRecord::new(f, &data)),
                root_cases(&ctx, &data, cfg),
            )
        }
    };
    fam.finish();
    Ok(Report::assemble(
        "single",
        cfg,
        riley.into_iter().collect(),
        vec![fam],
        cases,
        0,
    ))
}

fn parse_complex(text: &str) -> Option<Complex64> {
    let (re, im) = text.split_once(',')?;
    Some(Complex64::new(
        re.trim().parse().ok()?,
        im.trim().parse().ok()?,
    ))
}

/// Reads generator images, one per line: `a: re,im re,im re,im re,im` with the
/// entries in row order. `#` starts a comment.
pub fn parse_rep(text: &str, gens: &[String]) -> Result<Vec<Mat2>, HarnessError> {
    let mut found: Vec<Option<Mat2>> = vec![None; gens.len()];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| HarnessError::RepSyntax { line, msg };
        let (name, rest) = content
            .split_once(':')
            .ok_or_else(|| err("expected `name: re,im re,im re,im re,im`".into()))?;
        let g = gens
            .iter()
            .position(|s| s == name.trim())
            .ok_or_else(|| err(format!("unknown generator `{}`", name.trim())))?;
        let entries = rest
            .split_whitespace()
            .map(parse_complex)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| err("entries must look like `re,im`".into()))?;
        if entries.len() != 4 {
            return Err(err(format!("{} entries, expected 4", entries.len())));
        }
        if found[g].is_some() {
            return Err(err(format!("generator `{}` assigned twice", gens[g])));
        }
        found[g] = Some(Mat2::new(entries[0], entries[1], entries[2], entries[3]));
    }
    found
        .iter()
        .enumerate()
        .map(|(gen, m)| {
            m.ok_or(HarnessError::Twisted(TwistedError::UnassignedGenerator {
                gen,
                assigned: found.iter().flatten().count(),
            }))
        })
        .collect()
}

/// Twisted Alexander polynomial of an arbitrary presentation. The first
/// generator whose `det Phi(1 - x_j)` is nonzero is deleted.
pub fn compute_presentation(
    pres_text: &str,
    rep_text: &str,
    cfg: &RunConfig,
) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let pres = Presentation::parse(pres_text)?;
    let mats = parse_rep(rep_text, pres.gens())?;
    let rep = RepAssignment::for_presentation(&pres, mats.clone(), cfg.engine.sl2_tol)?;
    let relator_residual = pres
        .relators()
        .iter()
        .map(|r| {
            let img = word_matrix(r, &mats);
            (img - Mat2::identity()).norm() / img.norm()
        })
        .fold(0.0, f64::max);
    let mut rec = CaseRecord::empty(
        None,
        "presentation".into(),
        Orientation::DEFAULT,
        CaseSource::Presentation,
    );
    rec.variety_residual = Some(relator_residual);
    let mut last = None;
    for remove in 0..pres.generator_count() {
        match twisted_alexander(&pres, &rep, remove, &cfg.engine) {
            Ok(tp) => {
                rec.twisted = Some(TwistedRecord::from_poly(&tp));
                last = None;
                break;
            }
            Err(e @ TwistedError::SingularDenominator { .. }) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(e) = last {
        return Err(e.into());
    }
    if relator_residual.is_nan() || relator_residual >= COMMUTATION_TOL {
        rec.outcome = Outcome::Failure(format!(
            "relators map to {relator_residual:.2e} away from the identity"
        ));
    }
    Ok(Report::assemble(
        "presentation",
        cfg,
        Vec::new(),
        Vec::new(),
        vec![rec],
        0,
    ))
}
