//! Experiment suites over the two families, single-instance diagnostics and
//! report emission.

mod record;
mod report;
mod suites;

use serde::{Deserialize, Serialize};

use crate::linkfamilies::{FamilyKind, Orientation};
use crate::twisted::EngineConfig;

pub use record::{
    evaluate_case, CaseRecord, CaseSource, FamilyContext, FamilyRecord, Outcome, RileyRecord,
    TwistedRecord,
};
pub use report::{Report, ReportFormat, Summary};
pub use suites::{
    compute_presentation, compute_single, parse_rep, suite_dfj, suite_loci, suite_parabolic,
    SingleInput,
};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("rep file line {line}: {msg}")]
    RepSyntax { line: usize, msg: String },
    #[error(transparent)]
    Presentation(#[from] crate::freegroup::PresentationError),
    #[error(transparent)]
    Family(#[from] crate::linkfamilies::FamilyError),
    #[error(transparent)]
    Twisted(#[from] crate::twisted::TwistedError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Inclusive parameter range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: u32,
    pub max: u32,
}

impl Bounds {
    pub fn new(min: u32, max: u32) -> Self {
        Bounds { min, max }
    }

    pub fn upto(max: u32) -> Self {
        Bounds { min: 1, max }
    }

    pub fn single(v: u32) -> Self {
        Bounds { min: v, max: v }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.min..=self.max
    }

    pub fn odd(&self) -> impl Iterator<Item = u32> {
        self.iter().filter(|v| v % 2 == 1)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationChoice {
    #[default]
    None,
    Flip,
    Both,
}

impl OrientationChoice {
    pub fn orientations(&self) -> Vec<Orientation> {
        match self {
            OrientationChoice::None => vec![Orientation::DEFAULT],
            OrientationChoice::Flip => vec![Orientation::FLIPPED],
            OrientationChoice::Both => vec![Orientation::DEFAULT, Orientation::FLIPPED],
        }
    }
}

impl std::str::FromStr for OrientationChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(OrientationChoice::None),
            "flip" => Ok(OrientationChoice::Flip),
            "both" => Ok(OrientationChoice::Both),
            other => Err(format!(
                "unknown orientation choice `{other}` (none|flip|both)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub family: FamilyKind,
    pub m: Bounds,
    pub n: Bounds,
    pub p: Bounds,
    pub orientation: OrientationChoice,
    pub engine: EngineConfig,
    /// Largest accepted root residual `|p(z)| / sum |c_k| |z|^k`.
    pub root_precision: f64,
    pub locus_tol: f64,
    pub seed: u64,
    /// Off-loci samples per parameter pair and orientation.
    pub samples: usize,
    /// Constructed points per locus family.
    pub locus_points: usize,
    pub format: ReportFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: FamilyKind::J,
            m: Bounds::upto(3),
            n: Bounds::upto(3),
            p: Bounds::upto(1),
            orientation: OrientationChoice::None,
            engine: EngineConfig::default(),
            root_precision: 1e-9,
            locus_tol: crate::repvariety::LOCUS_TOL,
            seed: 42,
            samples: 50,
            locus_points: 5,
            format: ReportFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        for (name, b) in [("m", self.m), ("n", self.n), ("p", self.p)] {
            if b.min < 1 || b.max < b.min {
                return Err(HarnessError::Config(format!(
                    "{name} range {}..={} is empty or below 1",
                    b.min, b.max
                )));
            }
        }
        let tols = [
            self.engine.span_threshold,
            self.engine.stability_threshold,
            self.engine.division_tol,
            self.engine.monic_tol,
            self.engine.non_monic_margin,
            self.engine.sl2_tol,
            self.root_precision,
            self.locus_tol,
        ];
        if tols.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(HarnessError::Config("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Sizes the global rayon pool from `TALEX_THREADS` when set. Returns the
/// requested count; a pool that already exists is left alone.
pub fn init_threads() -> Option<usize> {
    let n = std::env::var("TALEX_THREADS")
        .ok()?
        .trim()
        .parse::<usize>()
        .ok()?;
    if n == 0 {
        return None;
    }
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Some(n)
}
