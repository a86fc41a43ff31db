use num_complex::Complex64;

use talex_core::harness::{
    compute_presentation, compute_single, parse_rep, suite_dfj, suite_loci, suite_parabolic,
    Bounds, CaseSource, HarnessError, OrientationChoice, Outcome, Report, ReportFormat, RunConfig,
    SingleInput,
};
use talex_core::{FamilyKind, FamilySpec, Orientation};

fn dfj_config() -> RunConfig {
    RunConfig {
        m: Bounds::upto(2),
        n: Bounds::upto(2),
        orientation: OrientationChoice::Both,
        ..RunConfig::default()
    }
}

fn loci_config(seed: u64) -> RunConfig {
    RunConfig {
        m: Bounds::single(2),
        n: Bounds::single(1),
        orientation: OrientationChoice::Both,
        samples: 10,
        locus_points: 2,
        seed,
        ..RunConfig::default()
    }
}

fn parabolic_config() -> RunConfig {
    RunConfig {
        family: FamilyKind::C,
        m: Bounds::upto(3),
        n: Bounds::upto(1),
        p: Bounds::upto(3),
        ..RunConfig::default()
    }
}

#[test]
fn json_round_trip() {
    for report in [
        suite_dfj(&dfj_config()).unwrap(),
        suite_loci(&loci_config(7)).unwrap(),
    ] {
        let text = report.to_json().unwrap();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back.to_json().unwrap(), text);
        assert_eq!(back.summary, report.summary);
        assert_eq!(back.cases.len(), report.cases.len());
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let cfg = loci_config(42);
    let a = suite_loci(&cfg)
        .unwrap()
        .render(ReportFormat::Json)
        .unwrap();
    let b = suite_loci(&cfg)
        .unwrap()
        .render(ReportFormat::Json)
        .unwrap();
    assert_eq!(a, b);
    let other = suite_loci(&loci_config(43))
        .unwrap()
        .render(ReportFormat::Json)
        .unwrap();
    assert_ne!(a, other);
    let a = suite_dfj(&dfj_config())
        .unwrap()
        .render(ReportFormat::Csv)
        .unwrap();
    let b = suite_dfj(&dfj_config())
        .unwrap()
        .render(ReportFormat::Csv)
        .unwrap();
    assert_eq!(a, b);
}

fn check_summary(r: &Report) {
    assert!(r.summary_consistent());
    let count = |f: fn(&Outcome) -> bool| {
        r.cases.iter().filter(|c| f(&c.outcome)).count()
            + r.families.iter().filter(|c| f(&c.outcome)).count()
    };
    assert_eq!(r.summary.passed, count(|o| *o == Outcome::Pass));
    assert_eq!(r.summary.informational, count(|o| *o == Outcome::Info));
    assert_eq!(r.summary.counterexamples, count(Outcome::is_counterexample));
    assert_eq!(r.summary.failures, count(Outcome::is_failure));
    assert_eq!(r.summary.cases, r.cases.len());
    assert_eq!(r.summary.families, r.families.len());
}

#[test]
fn summaries_match_records() {
    for r in [
        suite_dfj(&dfj_config()).unwrap(),
        suite_loci(&loci_config(5)).unwrap(),
        suite_parabolic(&parabolic_config()).unwrap(),
    ] {
        check_summary(&r);
        assert_eq!(r.exit_code(), 0, "{}: {:?}", r.suite, r.summary);
    }
}

#[test]
fn cases_are_sorted_by_parameters() {
    let r = suite_dfj(&dfj_config()).unwrap();
    let keys: Vec<_> = r
        .cases
        .iter()
        .map(|c| (c.family.map(|f| (f.m, f.n)), c.orientation.flip))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn csv_has_one_row_per_case() {
    let r = suite_loci(&loci_config(3)).unwrap();
    let text = r.render(ReportFormat::Csv).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    for col in ["link", "flip", "span", "expected_span", "monic", "status"] {
        assert!(headers.iter().any(|h| h == col), "missing {col}");
    }
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), r.cases.len());
    let status = headers.iter().position(|h| h == "status").unwrap();
    assert!(rows.iter().all(|row| &row[status] == "pass"));
}

#[test]
fn whitehead_single_record() {
    let input = SingleInput {
        family: FamilySpec::j(1, 1).unwrap(),
        orientation: Orientation::DEFAULT,
        z: None,
    };
    let r = compute_single(&input, &RunConfig::default()).unwrap();
    assert_eq!(r.riley.len(), 1);
    let nonreal: Vec<_> = r.cases.iter().filter(|c| c.is_nonreal_root()).collect();
    assert_eq!(nonreal.len(), 2);
    for c in nonreal {
        let z = c.character.unwrap().z;
        assert!((z.re - 1.0).abs() < 1e-10 && (z.im.abs() - 1.0).abs() < 1e-10);
        let tw = c.twisted.as_ref().unwrap();
        assert_eq!(tw.span, Some(4));
        assert!(tw.monic);
    }
    check_summary(&r);
}

#[test]
fn explicit_z_bypasses_root_finding() {
    let input = SingleInput {
        family: FamilySpec::c(1, 1, 1).unwrap(),
        orientation: Orientation::DEFAULT,
        z: Some(Complex64::new(0.5, 1.2)),
    };
    let r = compute_single(&input, &RunConfig::default()).unwrap();
    assert!(r.riley.is_empty());
    assert_eq!(r.cases.len(), 1);
    let c = &r.cases[0];
    assert_eq!(c.source, CaseSource::Explicit);
    assert_eq!(c.expected_span, Some(4));
    assert_eq!(r.families[0].ground_truth.genus, 1);
    // not a root: the relator fails, which the record must show
    assert!(c.commutation_residual.unwrap() > 1e-3);
    assert!(c.outcome.is_failure());
}

const WHITEHEAD: &str = "gens: a b\nlet u = b A b a B a\nlet w = B a u\nrel: a w A W\n";

#[test]
fn presentation_input() {
    let rep = "a: 1,0 1,0 0,0 1,0\nb: 1,0 0,0 1,-1 1,0  # z = 1 + i\n";
    let r = compute_presentation(WHITEHEAD, rep, &RunConfig::default()).unwrap();
    assert_eq!(r.cases.len(), 1);
    let c = &r.cases[0];
    assert!(c.variety_residual.unwrap() < 1e-12);
    let tw = c.twisted.as_ref().unwrap();
    assert_eq!(tw.span, Some(4));
    assert!(tw.monic);
}

#[test]
fn malformed_rep_files() {
    let gens = vec!["a".to_string(), "b".to_string()];
    let line_of = |text: &str| match parse_rep(text, &gens) {
        Err(HarnessError::RepSyntax { line, .. }) => Some(line),
        _ => None,
    };
    assert_eq!(line_of("a 1,0 0,0 0,0 1,0\n"), Some(1));
    assert_eq!(line_of("# header\nc: 1,0 0,0 0,0 1,0\n"), Some(2));
    assert_eq!(line_of("a: 1,0 0,0 0,0\n"), Some(1));
    assert_eq!(line_of("a: 1,0 0,0 0,x 1,0\n"), Some(1));
    assert_eq!(line_of("a: 1,0 0,0 0,0 1,0\na: 1,0 0,0 0,0 1,0\n"), Some(2));
    assert!(matches!(
        parse_rep("a: 1,0 0,0 0,0 1,0\n", &gens),
        Err(HarnessError::Twisted(_))
    ));
    assert_eq!(
        parse_rep("a: 1,0 0,0 0,0 1,0\nb: 2,0 0,0 0,0 0.5,0\n", &gens)
            .unwrap()
            .len(),
        2
    );
}

#[test]
fn invalid_configs_are_rejected() {
    let mut cfg = RunConfig {
        m: Bounds::new(2, 1),
        ..RunConfig::default()
    };
    assert!(matches!(suite_dfj(&cfg), Err(HarnessError::Config(_))));
    cfg = RunConfig {
        root_precision: 0.0,
        ..RunConfig::default()
    };
    assert!(matches!(suite_dfj(&cfg), Err(HarnessError::Config(_))));
    // m = p is outside the suite's range
    cfg = RunConfig {
        m: Bounds::single(3),
        p: Bounds::single(3),
        ..parabolic_config()
    };
    let r = suite_parabolic(&cfg).unwrap();
    assert!(r.cases.is_empty());
}
