//! Command-line front end.
//!
//! Exit codes: 0 on success or when every selected check passes, 1 when a
//! check fails or a labeling is inconsistent, 2 on usage, I/O or parse
//! errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::format::{self, Document};
use crate::incidence::{IncidenceStructure, LineId, DEFAULT_MAX_LINES};
use crate::labeling::{coordinate_labels, dualize, GeometryModel, Seed};
use crate::models::{gen_negative, gen_pg3, gen_tetrahedron, NegativeKind};
use crate::report::{CheckReport, Outcome, Witness};
use crate::{axioms, theorems};

pub const MAX_LINES_ENV: &str = "LINESPACE_MAX_LINES";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "linespace",
    version,
    about = "Check line-geometry axioms on finite incidence structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated structure: tetrahedron, pg3, or negative:<fixture>
    Generate {
        kind: String,
        /// Field order for pg3 (2, 3, 5 or 7)
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run axiom, theorem and/or alignment checks on a structure or model
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        /// Write a machine-readable report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Label secondary elements as points and planes and write the model
    Derive {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Seed pair and class as "i,j,k"
        #[arg(long)]
        seed: Option<String>,
    },
    /// Swap points and planes of a model, re-verify, and write it
    Dualize {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print summary statistics of a structure or model
    Info { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Axioms,
    Theorems,
    Vy,
    All,
}

/// Usage-level failures map to 2, failed checks and inconsistent labelings to 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotTwoClasses { .. }
        | Error::LabelInconsistency(_)
        | Error::MissingElement { .. } => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Reads the line cap from the environment, falling back to the default.
pub fn max_lines_from_env() -> Result<usize> {
    match std::env::var(MAX_LINES_ENV) {
        Err(_) => Ok(DEFAULT_MAX_LINES),
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "{MAX_LINES_ENV} must be a positive integer, got {v:?}"
            ))
        }),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = max_lines_from_env().and_then(|max| dispatch(cli.command, max, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, max_lines: usize, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Generate { kind, q, out: path } => generate(&kind, q, &path, out),
        Command::Check {
            input,
            which,
            report,
        } => check(&read(&input, max_lines)?, which, report.as_deref(), out),
        Command::Derive {
            input,
            out: path,
            seed,
        } => derive(&read(&input, max_lines)?, seed.as_deref(), &path, out),
        Command::Dualize { input, out: path } => {
            let text = read_text(&input)?;
            dualize_cmd(format::parse_model(&text, max_lines)?, &path, out)
        }
        Command::Info { input } => info(&read(&input, max_lines)?, out),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn read(path: &Path, max_lines: usize) -> Result<Document> {
    format::parse_document(&read_text(path)?, max_lines)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(Error::from)
}

fn generate(kind: &str, q: Option<u32>, path: &Path, out: &mut dyn Write) -> Result<i32> {
    let s = match kind {
        "tetrahedron" => gen_tetrahedron(),
        "pg3" => {
            let q = q.ok_or_else(|| Error::Parse("pg3 needs --q <prime>".into()))?;
            let (s, meta) = gen_pg3(q)?;
            let sidecar = sidecar_path(path);
            write_file(&sidecar, &format::serialize_pg3_metadata(&meta))?;
            writeln!(out, "wrote coordinates to {}", sidecar.display())?;
            s
        }
        other => match other.strip_prefix("negative:") {
            Some(name) => gen_negative(name.parse::<NegativeKind>()?),
            None => {
                return Err(Error::Parse(format!(
                    "unknown kind {other:?}; expected tetrahedron, pg3 or negative:<fixture>"
                )))
            }
        },
    };
    if q.is_some() && kind != "pg3" {
        return Err(Error::Parse("--q only applies to pg3".into()));
    }
    write_file(path, &format::serialize_structure(&s))?;
    writeln!(
        out,
        "wrote {} ({} lines, {} skew pairs) to {}",
        s.name(),
        s.line_count(),
        s.skew_pairs().count(),
        path.display()
    )?;
    Ok(EXIT_OK)
}

/// Metadata for `x.json` goes to `x.json.meta.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn model_for(doc: &Document) -> std::result::Result<GeometryModel, String> {
    match doc {
        Document::Model(m) => Ok(m.clone()),
        Document::Structure(s) => coordinate_labels(s, None).map_err(|e| e.to_string()),
    }
}

fn run_checks(doc: &Document, which: Which) -> Vec<CheckReport> {
    let s = doc.structure();
    let budget = theorems::Budget::default();
    let mut reports = Vec::new();
    if matches!(which, Which::Axioms | Which::All) {
        reports.extend(axioms::check_all(s));
    }
    let needs_model = matches!(which, Which::Theorems | Which::Vy | Which::All);
    let model = if needs_model {
        Some(model_for(doc))
    } else {
        None
    };
    let model_ref = model.as_ref().and_then(|m| m.as_ref().ok());
    if matches!(which, Which::Theorems | Which::All) {
        reports.extend(theorems::run_all(s, model_ref, &budget));
    }
    if matches!(which, Which::Vy | Which::All) {
        match &model {
            Some(Ok(m)) => reports.extend(theorems::vy_axioms(s, m, &budget)),
            Some(Err(why)) => reports.extend(
                [
                    theorems::VY_E0,
                    theorems::VY_E1,
                    theorems::VY_E2,
                    theorems::VY_E3,
                    theorems::VY_E3_PRIME,
                    theorems::VY_A1,
                    theorems::VY_A2,
                    theorems::VY_A3,
                ]
                .map(|n| CheckReport::dependency_unmet(n, "labeling", why.clone())),
            ),
            None => {}
        }
    }
    reports
}

fn describe_witness(s: &IncidenceStructure, w: &Witness) -> String {
    let mut parts: Vec<String> = w
        .lines
        .iter()
        .map(|(n, l)| format!("{n}={}", s.label(*l)))
        .collect();
    parts.extend(
        w.sets
            .iter()
            .map(|(n, set)| format!("{n}={}", s.describe(set))),
    );
    if parts.is_empty() {
        format!("{}: {}", w.tag, w.description)
    } else {
        format!("{}: {} [{}]", w.tag, w.description, parts.join(", "))
    }
}

fn check(doc: &Document, which: Which, report: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let s = doc.structure();
    let reports = run_checks(doc, which);
    writeln!(out, "{}: {} lines", s.name(), s.line_count())?;
    for r in &reports {
        let status = match r.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::DependencyUnmet => "SKIP",
        };
        write!(out, "{status:<5}{:<26}", r.check_name)?;
        match (&r.counterexample, r.stats.sampling_seed) {
            (Some(w), _) => writeln!(out, "{}", describe_witness(s, w))?,
            (None, Some(seed)) => writeln!(
                out,
                "{} cases, sampled with seed {seed}",
                r.stats.cases_examined
            )?,
            (None, None) => writeln!(out, "{} cases", r.stats.cases_examined)?,
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(out, "{passed} of {} checks passed", reports.len())?;
    if let Some(path) = report {
        write_file(path, &format::serialize_reports(s, &reports))?;
    }
    Ok(if passed == reports.len() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

/// Parses "i,j,k" into a seed pair and class.
pub fn parse_seed(text: &str) -> Result<Seed> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("seed must be three indices i,j,k, got {text:?}")))?;
    match parts.as_slice() {
        [i, j, k] => Ok(Seed {
            pair: (LineId(*i), LineId(*j)),
            class_of: *k,
        }),
        _ => Err(Error::Parse(format!(
            "seed must be three indices i,j,k, got {text:?}"
        ))),
    }
}

fn derive(doc: &Document, seed: Option<&str>, path: &Path, out: &mut dyn Write) -> Result<i32> {
    let seed = seed.map(parse_seed).transpose()?;
    let m = coordinate_labels(doc.structure(), seed)?;
    write_file(path, &format::serialize_model(&m))?;
    writeln!(
        out,
        "wrote {} points and {} planes to {}",
        m.points().len(),
        m.planes().len(),
        path.display()
    )?;
    Ok(EXIT_OK)
}

fn dualize_cmd(m: GeometryModel, path: &Path, out: &mut dyn Write) -> Result<i32> {
    let d = dualize(&m);
    d.verify()?;
    write_file(path, &format::serialize_model(&d))?;
    writeln!(
        out,
        "wrote dual model ({} points, {} planes) to {}",
        d.points().len(),
        d.planes().len(),
        path.display()
    )?;
    Ok(EXIT_OK)
}

fn info(doc: &Document, out: &mut dyn Write) -> Result<i32> {
    let s = doc.structure();
    let n = s.line_count();
    let skew = s.skew_pairs().count();
    let pairs = n * n.saturating_sub(1) / 2;
    writeln!(out, "name: {}", s.name())?;
    writeln!(out, "lines: {n}")?;
    writeln!(out, "skew pairs: {skew}")?;
    if pairs > 0 {
        writeln!(
            out,
            "incidence density: {:.4}",
            (pairs - skew) as f64 / pairs as f64
        )?;
    }
    let sizes: Vec<usize> = s.lines().map(|l| s.row(l).len()).collect();
    if let (Some(lo), Some(hi)) = (sizes.iter().min(), sizes.iter().max()) {
        writeln!(out, "perp size: min {lo}, max {hi}")?;
    }
    match model_for(doc) {
        Ok(m) => writeln!(
            out,
            "points: {}, planes: {}",
            m.points().len(),
            m.planes().len()
        )?,
        Err(why) => writeln!(out, "points and planes: not derivable ({why})")?,
    }
    Ok(EXIT_OK)
}
