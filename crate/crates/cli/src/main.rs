//! `talex`: twisted Alexander polynomials of 2-bridge links at parabolic
//! representations.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use talex_core::harness::{
    compute_presentation, compute_single, init_threads, suite_dfj, suite_loci, suite_parabolic,
    Bounds, OrientationChoice, Report, ReportFormat, RileyRecord, RunConfig, SingleInput,
};
use talex_core::repvariety::{parabolic_slice_j, riley_poly_c};
use talex_core::{FamilyKind, FamilySpec, Orientation};

#[derive(Debug, Parser)]
#[command(name = "talex", version)]
#[command(about = "Twisted Alexander polynomials of 2-bridge links at parabolic representations")]
struct Cli {
    /// Relative coefficient threshold for degree spans.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Largest accepted relative root residual.
    #[arg(long, global = true, default_value_t = 1e-9)]
    precision: f64,

    /// Report format; `riley` prints plain text unless this is given.
    #[arg(long, global = true)]
    format: Option<ReportFormat>,

    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One family instance, or a presentation with explicit generator images
    Single(SingleArgs),
    /// Experiment suites
    #[command(subcommand)]
    Suite(SuiteCommand),
    /// Exact Riley polynomial and its roots
    Riley(FamilyArgs),
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    family: Option<FamilyKind>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
    /// Third parameter of `C`.
    #[arg(long)]
    p: Option<i64>,
}

impl FamilyArgs {
    fn spec(&self) -> anyhow::Result<FamilySpec> {
        let (Some(kind), Some(m), Some(n)) = (self.family, self.m, self.n) else {
            bail!("--family, --m and --n are required");
        };
        Ok(match kind {
            FamilyKind::J => FamilySpec::j(m, n)?,
            FamilyKind::C => FamilySpec::c(m, n, self.p.context("--p is required for C")?)?,
        })
    }
}

#[derive(Debug, Args)]
struct SingleArgs {
    #[command(flatten)]
    family: FamilyArgs,

    /// Reverse the orientation of one component.
    #[arg(long)]
    flip: bool,

    /// Evaluate at the parabolic character (2, 2, z) instead of every root.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Option<Complex64>,

    #[arg(long, conflicts_with_all = ["family", "z"], requires = "rep")]
    presentation: Option<PathBuf>,

    /// Generator images, one line `a: re,im re,im re,im re,im` each.
    #[arg(long, requires = "presentation")]
    rep: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum SuiteCommand {
    /// Genus and fiberedness detection for J(2m+1, 2n+1)
    Dfj {
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value = "both")]
        flip: OrientationChoice,
    },
    /// Genus detection for C(2m, 2n, -2p), m and p odd up to --odd-max
    Parabolic {
        #[arg(long, default_value_t = 9)]
        odd_max: u32,
        /// Odd n up to this bound.
        #[arg(long, default_value_t = 1)]
        n_max: u32,
        #[arg(long, default_value = "none")]
        flip: OrientationChoice,
    },
    /// Random and constructed characters around the exceptional loci
    Loci {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Constructed points per locus family.
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long, default_value = "both")]
        flip: OrientationChoice,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let part = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Complex64::new(part(re)?, part(im)?))
}

fn base_config(cli: &Cli) -> RunConfig {
    let mut cfg = RunConfig {
        root_precision: cli.precision,
        seed: cli.seed,
        format: cli.format.unwrap_or_default(),
        ..RunConfig::default()
    };
    cfg.engine.span_threshold = cli.tol;
    cfg
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn riley_text(rec: &RileyRecord) -> String {
    let mut out = format!("{}\n", rec.name);
    if let Some(p) = rec.int_poly() {
        out += &format!("W(z) = {}\n", p.display_var("z"));
    }
    out += &format!("degree {:?}, {} roots", rec.degree, rec.roots.len());
    if !rec.reducible.is_empty() {
        out += &format!(" (+{} at z = 2)", rec.reducible.len());
    }
    out.push('\n');
    for r in &rec.roots {
        let kind = if r.is_real { "real" } else { "nonreal" };
        out += &format!("{:+.15e} {:+.15e}i  {kind}", r.value.re, r.value.im);
        if r.multiplicity > 1 {
            out += &format!("  x{}", r.multiplicity);
        }
        out.push('\n');
    }
    out
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    let mut cfg = base_config(cli);
    let report: Report = match &cli.command {
        Command::Riley(args) => {
            let f = args.spec()?;
            let data = match f.kind {
                FamilyKind::J => parabolic_slice_j(f.m, f.n, cfg.root_precision)?,
                FamilyKind::C => riley_poly_c(f.m, f.n, f.p, cfg.root_precision)?,
            };
            let rec = RileyRecord::new(f, &data);
            let text = match cli.format {
                None => riley_text(&rec),
                Some(ReportFormat::Json) => serde_json::to_string_pretty(&rec)?,
                Some(ReportFormat::Csv) => bail!("riley output is text or json"),
            };
            emit(cli, &text)?;
            return Ok(0);
        }
        Command::Single(args) => {
            if let (Some(pres), Some(rep)) = (&args.presentation, &args.rep) {
                let pres_text = std::fs::read_to_string(pres)
                    .with_context(|| format!("reading {}", pres.display()))?;
                let rep_text = std::fs::read_to_string(rep)
                    .with_context(|| format!("reading {}", rep.display()))?;
                compute_presentation(&pres_text, &rep_text, &cfg)?
            } else {
                let family = args.family.spec()?;
                let orientation = if args.flip {
                    Orientation::FLIPPED
                } else {
                    Orientation::DEFAULT
                };
                compute_single(
                    &SingleInput {
                        family,
                        orientation,
                        z: args.z,
                    },
                    &cfg,
                )?
            }
        }
        Command::Suite(s) => match *s {
            SuiteCommand::Dfj { m_max, n_max, flip } => {
                cfg.family = FamilyKind::J;
                (cfg.m, cfg.n, cfg.orientation) = (Bounds::upto(m_max), Bounds::upto(n_max), flip);
                suite_dfj(&cfg)?
            }
            SuiteCommand::Parabolic {
                odd_max,
                n_max,
                flip,
            } => {
                cfg.family = FamilyKind::C;
                cfg.m = Bounds::upto(odd_max);
                cfg.n = Bounds::upto(n_max);
                cfg.p = Bounds::upto(odd_max);
                cfg.orientation = flip;
                suite_parabolic(&cfg)?
            }
            SuiteCommand::Loci {
                m,
                n,
                samples,
                points,
                flip,
            } => {
                cfg.family = FamilyKind::J;
                (cfg.m, cfg.n, cfg.orientation) = (Bounds::single(m), Bounds::single(n), flip);
                (cfg.samples, cfg.locus_points) = (samples, points);
                suite_loci(&cfg)?
            }
        },
    };
    emit(cli, &report.render(cfg.format)?)?;
    let s = &report.summary;
    eprintln!(
        "{}: {} cases, {} families; {} passed, {} info, {} counterexamples, {} failures, {} skipped",
        s.status(),
        s.cases,
        s.families,
        s.passed,
        s.informational,
        s.counterexamples,
        s.failures,
        s.skipped
    );
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
