use std::io::Write;

use serde::{Deserialize, Serialize};

use super::record::{CaseRecord, CaseSource, FamilyRecord, Outcome, RileyRecord};
use super::{HarnessError, RunConfig};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format `{other}` (json|csv)")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub families: usize,
    pub passed: usize,
    pub informational: usize,
    pub counterexamples: usize,
    pub failures: usize,
    /// Samples dropped before evaluation (reducible or on a locus).
    pub skipped: usize,
}

impl Summary {
    fn tally(families: &[FamilyRecord], cases: &[CaseRecord], skipped: usize) -> Self {
        let mut s = Summary {
            cases: cases.len(),
            families: families.len(),
            skipped,
            ..Summary::default()
        };
        for o in families
            .iter()
            .map(|f| &f.outcome)
            .chain(cases.iter().map(|c| &c.outcome))
        {
            match o {
                Outcome::Pass => s.passed += 1,
                Outcome::Info => s.informational += 1,
                Outcome::Counterexample(_) => s.counterexamples += 1,
                Outcome::Failure(_) => s.failures += 1,
            }
        }
        s
    }

    /// 0 when everything holds, 1 on a counterexample, 2 when the numerics
    /// failed somewhere (which makes any verdict suspect).
    pub fn exit_code(&self) -> i32 {
        if self.failures > 0 {
            2
        } else if self.counterexamples > 0 {
            1
        } else {
            0
        }
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            0 => "pass",
            1 => "counterexample",
            _ => "failure",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: RunConfig,
    pub riley: Vec<RileyRecord>,
    pub families: Vec<FamilyRecord>,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

/// Flat CSV row: one per case.
#[derive(Serialize)]
struct Row<'a> {
    suite: &'a str,
    link: &'a str,
    flip: bool,
    source: String,
    x_re: Option<f64>,
    x_im: Option<f64>,
    y_re: Option<f64>,
    y_im: Option<f64>,
    z_re: Option<f64>,
    z_im: Option<f64>,
    span: Option<i64>,
    expected_span: Option<i64>,
    top_re: Option<f64>,
    top_im: Option<f64>,
    monic: Option<bool>,
    genus_detected: Option<bool>,
    fiber_detected: Option<bool>,
    unstable: Option<bool>,
    commutation_residual: Option<f64>,
    loci: String,
    status: &'static str,
    detail: String,
}

fn source_label(s: &CaseSource) -> String {
    match s {
        CaseSource::RileyRoot { index, real, .. } => {
            format!("root{index}{}", if *real { "-real" } else { "" })
        }
        CaseSource::Explicit => "explicit".into(),
        CaseSource::Sample { index } => format!("sample{index}"),
        CaseSource::Locus { label, index } => format!("{label}#{index}"),
        CaseSource::Presentation => "presentation".into(),
    }
}

fn outcome_parts(o: &Outcome) -> (&'static str, String) {
    match o {
        Outcome::Pass => ("pass", String::new()),
        Outcome::Info => ("info", String::new()),
        Outcome::Counterexample(d) => ("counterexample", d.clone()),
        Outcome::Failure(d) => ("failure", d.clone()),
    }
}

impl Report {
    pub(crate) fn assemble(
        suite: &str,
        config: &RunConfig,
        riley: Vec<RileyRecord>,
        families: Vec<FamilyRecord>,
        cases: Vec<CaseRecord>,
        skipped: usize,
    ) -> Self {
        let summary = Summary::tally(&families, &cases, skipped);
        Report {
            suite: suite.to_string(),
            config: config.clone(),
            riley,
            families,
            cases,
            summary,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code()
    }

    /// Every summary count agrees with the records.
    pub fn summary_consistent(&self) -> bool {
        Summary::tally(&self.families, &self.cases, self.summary.skipped) == self.summary
    }

    pub fn to_json(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), HarnessError> {
        let mut w = csv::Writer::from_writer(out);
        for c in &self.cases {
            let ch = c.character;
            let (status, detail) = outcome_parts(&c.outcome);
            let tw = c.twisted.as_ref();
            w.serialize(Row {
                suite: &self.suite,
                link: &c.name,
                flip: c.orientation.flip,
                source: source_label(&c.source),
                x_re: ch.map(|c| c.x.re),
                x_im: ch.map(|c| c.x.im),
                y_re: ch.map(|c| c.y.re),
                y_im: ch.map(|c| c.y.im),
                z_re: ch.map(|c| c.z.re),
                z_im: ch.map(|c| c.z.im),
                span: tw.and_then(|t| t.span),
                expected_span: c.expected_span,
                top_re: tw.map(|t| t.top_coeff.re),
                top_im: tw.map(|t| t.top_coeff.im),
                monic: tw.map(|t| t.monic),
                genus_detected: c.verdict.map(|v| v.genus_detected),
                fiber_detected: c.verdict.and_then(|v| v.fiber_detected),
                unstable: c.verdict.map(|v| v.unstable),
                commutation_residual: c.commutation_residual,
                loci: c
                    .loci
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                status,
                detail,
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn render(&self, format: ReportFormat) -> Result<String, HarnessError> {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => {
                let mut buf = Vec::new();
                self.write_csv(&mut buf)?;
                Ok(String::from_utf8(buf).expect("csv output is utf-8"))
            }
        }
    }
}
