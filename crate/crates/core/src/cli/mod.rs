//! Front end of the `scatter` binary: the command tree, run configuration,
//! input parsing, JSON report envelopes and the `verify` re-checker.
//!
//! Every report is a JSON object
//! `{"command", "args", "verdict", "affirmative", "notes", "report", ...}`
//! whose keys are emitted in sorted order, so identical inputs give
//! byte-identical output. A `generated_at` field appears only with `--timestamp`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::Error;
use crate::ff::{FieldCtx, FieldElement};
use crate::galois::{self, Place};
use crate::groups::{self, Classification, EmbeddingVerdict, MatrixGroup};
use crate::linalg::Mat;
use crate::linpoly::{LinPoly, LinPolyJson};
use crate::mrd;
use crate::scatter::{self, Budget};

mod verify;

pub use verify::{verify_report, Check, VerifyOutcome};

#[derive(Debug, Parser)]
#[command(name = "scatter", version, about = "Scattered linearized polynomials: tests, invariants and certificates")]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write histogram rows (check, scan) as CSV.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Largest number of specializations s₀ an exhaustive pass may visit.
    #[arg(long, global = true, env = "SCATTER_MAX_SPECIALIZATIONS")]
    pub max_specializations: Option<u64>,
    /// Largest group order a stabilizer chain may reach.
    #[arg(long, global = true, env = "SCATTER_MAX_GROUP_ORDER")]
    pub max_group_order: Option<u128>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "SCATTER_THREADS")]
    pub threads: Option<usize>,
    /// Recorded in the report; core computations are deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Add a `generated_at` field (seconds since the epoch).
    #[arg(long, global = true)]
    pub timestamp: bool,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Decide (q, n, m, t)-scatteredness and report the kernel-dimension histogram.
    Check {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: usize,
    },
    /// Scatteredness for m = 1..=mmax (finite evidence only).
    Scan {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        mmax: usize,
    },
    /// Frobenius orbit types of the specialized polynomials.
    Orbits {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: usize,
        /// A single specialization: element JSON or a packed code.
        #[arg(long)]
        s0: Option<String>,
    },
    /// Newton-polygon ramification profile at s = 0 or s = ∞.
    Ramify {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = parse_place)]
        #[serde(serialize_with = "place_name")]
        place: Place,
    },
    /// Geometric and arithmetic monodromy of ℓ = x.
    Kummer {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
    },
    /// Linear-group computations.
    #[command(subcommand)]
    Groups(GroupsCommand),
    /// Minimum rank distance of the code ⟨x, ℓ(x)⟩.
    Mrd {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Re-check the integer witnesses of a report without re-running searches.
    Verify {
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupsCommand {
    /// |GL_d(F_q)|, |SL_d(F_q)|, |ΓL_1(q^d)| and |Sp_d(F_q)| for even d.
    Orders {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u64,
    },
    /// A primitive prime divisor of b^n - 1.
    Zsigmondy {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: usize,
    },
    /// Classify a transitive G ≤ GL_d(F_q) given by generators.
    Classify {
        #[arg(long)]
        gens: PathBuf,
    },
    /// Witnesses excluding each overgroup case inside GL_d(F_{p^a}).
    Obstructions {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        d: usize,
    },
    /// Exhaustive search for SL_2(F_13) inside GL_3(F_9).
    EmbedCheck {
        /// Abort after this many seconds.
        #[arg(long)]
        timeout: Option<u64>,
    },
}

fn parse_place(s: &str) -> std::result::Result<Place, String> {
    s.parse::<Place>().map_err(|e| e.to_string())
}

fn place_name<S: serde::Serializer>(p: &Place, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.serialize(s)
}

/// Everything a run depends on.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub max_specializations: u64,
    pub max_group_order: Option<u128>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub timestamp: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            out: None,
            csv: None,
            max_specializations: Budget::default().max_specializations,
            max_group_order: None,
            threads: None,
            seed: None,
            timestamp: false,
        }
    }

    fn budget(&self) -> Budget {
        Budget { max_specializations: self.max_specializations }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> RunConfig {
        let o = cli.options;
        RunConfig {
            command: cli.command,
            out: o.out,
            csv: o.csv,
            max_specializations: o.max_specializations.unwrap_or(Budget::default().max_specializations),
            max_group_order: o.max_group_order,
            threads: o.threads,
            seed: o.seed,
            timestamp: o.timestamp,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] Error),
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    /// Success or an affirmative verdict.
    Affirmative = 0,
    Error = 1,
    /// A negative verdict (not scattered, not MRD, an embedding exists, ...).
    Negative = 2,
    /// A budget cap stopped the computation.
    Budget = 3,
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Core(Error::BudgetExceeded(_) | Error::SearchIncomplete(_)) => Exit::Budget,
            _ => Exit::Error,
        }
    }
}

/// A finished run: the exit code, the JSON report and optional CSV rows.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit: Exit,
    pub report: Value,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

/// Runs the command on a worker pool sized by the config.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut outcome = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Invalid(format!("thread pool: {e}")))?
            .install(|| dispatch(config))?,
        None => dispatch(config)?,
    };
    if let Value::Object(map) = &mut outcome.report {
        if let Some(seed) = config.seed {
            map.insert("seed".into(), json!(seed));
        }
        if config.timestamp {
            let now = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs());
            map.insert("generated_at".into(), json!(now));
        }
    }
    Ok(outcome)
}

/// Runs and writes the report (to `--out` or stdout) and the CSV; returns the exit code.
pub fn run_and_write(config: &RunConfig) -> Exit {
    let outcome = match run(config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit();
        }
    };
    let written = match &config.out {
        Some(path) => fs::write(path, outcome.json()).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{}", outcome.json());
            Ok(())
        }
    };
    let written = written.and_then(|_| match (&config.csv, &outcome.csv) {
        (Some(path), Some(rows)) => fs::write(path, rows).map_err(|source| CliError::Io { path: path.clone(), source }),
        _ => Ok(()),
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return Exit::Error;
    }
    if config.out.is_some() {
        println!("{}", outcome.report["verdict"].as_str().unwrap_or(""));
    }
    outcome.exit
}

/// Short input form `{"q": 9, "n": 2, "coeffs": [codes...]}` with default moduli.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShortPoly {
    q: u64,
    n: usize,
    coeffs: Vec<u64>,
}

/// Reads a polynomial in either the full wire format or the short form.
pub fn read_poly(path: &Path) -> Result<LinPoly, CliError> {
    let value = read_json(path)?;
    parse_poly(&value).map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })
}

pub fn parse_poly(value: &Value) -> Result<LinPoly, CliError> {
    let bad = |e: serde_json::Error| CliError::Invalid(e.to_string());
    if value.get("field").is_some() {
        let j: LinPolyJson = serde_json::from_value(value.clone()).map_err(bad)?;
        return Ok(LinPoly::from_json(&j)?);
    }
    let s: ShortPoly = serde_json::from_value(value.clone()).map_err(bad)?;
    let (layer, ctx) = short_field(s.q, s.n)?;
    Ok(LinPoly::new(ctx, layer, s.coeffs)?)
}

/// Coefficient layer and tower for `F_{q^n}` over `F_q`.
fn short_field(q: u64, n: usize) -> Result<(usize, Arc<FieldCtx>), CliError> {
    if n == 0 {
        return Err(CliError::Invalid("n must be positive".into()));
    }
    let (p, a) = crate::ff::prime_power(q)?;
    Ok(match (a, n) {
        (1, 1) => (0, FieldCtx::new(p, &[1])?),
        (1, n) => (1, FieldCtx::new(p, &[n])?),
        (a, 1) => (1, FieldCtx::new(p, &[a])?.with_base_layer(1)?),
        (a, n) => (2, FieldCtx::new(p, &[a, n])?.with_base_layer(1)?),
    })
}

pub(crate) fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })
}

/// `ℓ` rehomed into a tower that has the layer `F_{q^{nm}}`.
pub(crate) fn with_target(l: &LinPoly, m: usize) -> Result<LinPoly, CliError> {
    if m == 0 {
        return Err(CliError::Invalid("m must be positive".into()));
    }
    if scatter::target_layer(l, m).is_ok() {
        return Ok(l.clone());
    }
    let ctx = l.ctx().extend(l.coeff_layer(), m)?;
    Ok(l.rehome(ctx)?)
}

fn poly_notes(l: &LinPoly) -> Vec<String> {
    let mut notes = Vec::new();
    if l.q().is_multiple_of(2) {
        notes.push(format!("q = {} is even: outside the hypotheses of the classification theorem", l.q()));
    }
    notes
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

struct Report {
    verdict: &'static str,
    affirmative: bool,
    notes: Vec<String>,
    extra: Vec<(&'static str, Value)>,
    body: Value,
    csv: Option<String>,
}

impl Report {
    fn new(verdict: &'static str, affirmative: bool, body: Value) -> Report {
        Report { verdict, affirmative, notes: Vec::new(), extra: Vec::new(), body, csv: None }
    }
}

fn dispatch(config: &RunConfig) -> Result<Outcome, CliError> {
    let command = &config.command;
    let report = match command {
        Command::Check { poly, t, m } => check(config, &read_poly(poly)?, *t, *m)?,
        Command::Scan { poly, t, mmax } => scan(config, &read_poly(poly)?, *t, *mmax)?,
        Command::Orbits { poly, t, m, s0 } => orbits(config, &read_poly(poly)?, *t, *m, s0.as_deref())?,
        Command::Ramify { poly, t, place } => ramify(&read_poly(poly)?, *t, *place)?,
        Command::Kummer { q, n, m, t } => kummer(*q, *n, *m, *t)?,
        Command::Groups(g) => groups_command(config, g)?,
        Command::Mrd { poly } => mrd_command(config, &read_poly(poly)?)?,
        Command::Verify { report } => {
            let outcome = verify_report(&read_json(report)?)?;
            let affirmative = outcome.valid;
            Report::new(if affirmative { "valid" } else { "invalid" }, affirmative, to_value(&outcome))
        }
    };
    let name = match command {
        Command::Groups(g) => match g {
            GroupsCommand::Orders { .. } => "groups orders",
            GroupsCommand::Zsigmondy { .. } => "groups zsigmondy",
            GroupsCommand::Classify { .. } => "groups classify",
            GroupsCommand::Obstructions { .. } => "groups obstructions",
            GroupsCommand::EmbedCheck { .. } => "groups embed-check",
        },
        Command::Check { .. } => "check",
        Command::Scan { .. } => "scan",
        Command::Orbits { .. } => "orbits",
        Command::Ramify { .. } => "ramify",
        Command::Kummer { .. } => "kummer",
        Command::Mrd { .. } => "mrd",
        Command::Verify { .. } => "verify",
    };
    let mut args = to_value(command);
    // the externally tagged enum wraps the fields; keep only the fields
    if let Value::Object(map) = &args {
        if let Some((_, inner)) = map.iter().next() {
            args = match inner {
                Value::Object(m) if m.len() == 1 && m.values().all(Value::is_object) => m.values().next().unwrap().clone(),
                other => other.clone(),
            };
        }
    }
    let mut envelope = json!({
        "command": name,
        "args": args,
        "verdict": report.verdict,
        "affirmative": report.affirmative,
        "notes": report.notes,
        "report": report.body,
    });
    for (k, v) in report.extra {
        envelope[k] = v;
    }
    Ok(Outcome { exit: if report.affirmative { Exit::Affirmative } else { Exit::Negative }, report: envelope, csv: report.csv })
}

fn check(config: &RunConfig, l: &LinPoly, t: usize, m: usize) -> Result<Report, CliError> {
    let lm = with_target(l, m)?;
    let profile = scatter::root_count_profile_with(&lm, m, t, config.budget())?;
    let scattered = profile.is_scattered();
    let mut csv = String::from("kernel_dim,count\n");
    for (k, c) in &profile.histogram {
        csv.push_str(&format!("{k},{c}\n"));
    }
    let mut r = Report::new(if scattered { "scattered" } else { "not scattered" }, scattered, to_value(&profile));
    r.notes = poly_notes(l);
    r.extra.push(("poly", to_value(&l.to_json())));
    r.csv = Some(csv);
    Ok(r)
}

fn scan(config: &RunConfig, l: &LinPoly, t: usize, mmax: usize) -> Result<Report, CliError> {
    let report = scatter::exceptional_scan_with(l, t, mmax, config.budget())?;
    let mut csv = String::from("m,scattered,max_dim\n");
    for e in &report.entries {
        csv.push_str(&format!("{},{},{}\n", e.m, e.scattered, e.max_dim));
    }
    let mut r = Report::new("scan completed", true, to_value(&report));
    r.notes = poly_notes(l);
    r.notes.push(format!("scattered for m in {:?}; {}", report.scattered_ms(), report.label));
    r.extra.push(("poly", to_value(&l.to_json())));
    r.csv = Some(csv);
    Ok(r)
}

/// `--s0` as element JSON (nested arrays) or a bare packed code.
fn parse_element(l: &LinPoly, layer: usize, s: &str) -> Result<FieldElement, CliError> {
    let v: Value = serde_json::from_str(s).map_err(|e| CliError::Invalid(format!("--s0: {e}")))?;
    let ctx = l.ctx();
    match v.as_u64() {
        Some(code) if layer > 0 => Ok(ctx.element(layer, code)?),
        _ => Ok(ctx.element_from_json(layer, &v)?),
    }
}

fn orbits(config: &RunConfig, l: &LinPoly, t: usize, m: usize, s0: Option<&str>) -> Result<Report, CliError> {
    let lm = with_target(l, m)?;
    let target = scatter::target_layer(&lm, m)?;
    let size = lm.ctx().cardinality(target);
    if size > config.max_specializations as u128 {
        return Err(Error::BudgetExceeded(format!("{size} specializations exceed the cap of {}", config.max_specializations)).into());
    }
    let mut r = match s0 {
        Some(s) => {
            let s0 = parse_element(&lm, target, s)?;
            let orbit = galois::orbit_type(&lm, t, m, s0)?;
            let q = lm.q() as usize;
            let ok = orbit.ramified || orbit.fixed_nonzero() < q;
            Report::new(if ok { "at most q - 1 fixed nonzero roots" } else { "more than q - 1 fixed nonzero roots" }, ok, to_value(&orbit))
        }
        None => {
            let report = galois::verify_equivalence(&lm, t, m)?;
            let ok = report.orbit_criterion && report.consistent;
            Report::new(if ok { "scattered" } else { "not scattered" }, ok, to_value(&report))
        }
    };
    r.notes = poly_notes(l);
    r.extra.push(("poly", to_value(&l.to_json())));
    Ok(r)
}

fn ramify(l: &LinPoly, t: usize, place: Place) -> Result<Report, CliError> {
    let profile = galois::newton_ramification(l, t, place)?;
    let mut r = Report::new("profile computed", true, to_value(&profile));
    r.notes = poly_notes(l);
    r.extra.push(("poly", to_value(&l.to_json())));
    Ok(r)
}

fn kummer(q: u64, n: usize, m: usize, t: usize) -> Result<Report, CliError> {
    let k = galois::kummer_monodromy(q, n, m, t)?;
    let mut r = Report::new(if k.scattered { "scattered" } else { "not scattered" }, k.scattered, to_value(&k));
    if q.is_multiple_of(2) {
        r.notes.push(format!("q = {q} is even: outside the hypotheses of the classification theorem"));
    }
    Ok(r)
}

/// `{"d": 3, "q": 5, "generators": [[[row], ...], ...]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsFile {
    pub d: usize,
    pub q: u64,
    pub generators: Vec<Vec<Vec<u64>>>,
}

pub(crate) fn group_from_file(g: &GeneratorsFile) -> Result<MatrixGroup, CliError> {
    if g.generators.is_empty() {
        return Err(CliError::Invalid("at least one generator is required".into()));
    }
    let mut mats = Vec::new();
    for (i, rows) in g.generators.iter().enumerate() {
        if rows.len() != g.d || rows.iter().any(|r| r.len() != g.d) {
            return Err(CliError::Invalid(format!("generator {i} is not {0}×{0}", g.d)));
        }
        mats.push(Mat::from_rows(rows.clone()));
    }
    Ok(MatrixGroup::new(g.d, g.q, mats)?)
}

fn groups_command(config: &RunConfig, command: &GroupsCommand) -> Result<Report, CliError> {
    Ok(match command {
        GroupsCommand::Orders { d, q } => {
            let mut body = json!({
                "d": d,
                "q": q,
                "gl": groups::order_gl(*d, *q)?.to_string(),
                "sl": groups::order_sl(*d, *q)?.to_string(),
                "gammal1": groups::order_gammal1(*d, *q)?.to_string(),
            });
            if d % 2 == 0 {
                body["sp"] = json!(groups::order_sp(*d, *q)?.to_string());
            }
            Report::new("orders computed", true, body)
        }
        GroupsCommand::Zsigmondy { b, n } => {
            let z = groups::zsigmondy(*b, *n)?;
            let found = z.prime().is_some();
            Report::new(if found { "primitive prime divisor" } else { "no primitive prime divisor" }, found, to_value(&z))
        }
        GroupsCommand::Classify { gens } => {
            let value = read_json(gens)?;
            let file: GeneratorsFile = serde_json::from_value(value)
                .map_err(|e| CliError::Parse { path: gens.clone(), message: e.to_string() })?;
            let g = group_from_file(&file)?;
            if let Some(cap) = config.max_group_order {
                g.chain_capped(cap).map_err(|_| Error::BudgetExceeded(format!("group order exceeds the cap of {cap}")))?;
            }
            let class = groups::classify_transitive(&g)?;
            let verdict = match class {
                Classification::ContainsSL { .. } => "contains SL_d(F_q)",
                Classification::SubGammaL1 { .. } => "conjugate into ΓL_1(q^d)",
                Classification::Inconclusive { .. } => "inconclusive",
            };
            let ok = !matches!(class, Classification::Inconclusive { .. });
            let mut r = Report::new(verdict, ok, to_value(&class));
            r.extra.push(("generators", to_value(&file)));
            r
        }
        GroupsCommand::Obstructions { p, a, d } => {
            let reports = groups::proposition_obstructions(*p, *a, *d)?;
            let ok = reports.iter().all(|r| r.revalidate());
            Report::new(if ok { "obstructions hold" } else { "witness failed to revalidate" }, ok, to_value(&reports))
        }
        GroupsCommand::EmbedCheck { timeout } => {
            let cert = groups::no_embedding_sl2_13_in_gl3_9(timeout.map(Duration::from_secs))?;
            let ok = cert.verdict == EmbeddingVerdict::NoEmbedding;
            Report::new(if ok { "NoEmbedding" } else { "Embeds" }, ok, to_value(&cert))
        }
    })
}

fn mrd_command(config: &RunConfig, l: &LinPoly) -> Result<Report, CliError> {
    let code = mrd::RankCode::new(l)?;
    let classes = (code.q() as u128).pow(code.n() as u32);
    if classes > config.max_specializations as u128 {
        return Err(Error::BudgetExceeded(format!("{classes} projective classes exceed the cap of {}", config.max_specializations)).into());
    }
    let report = mrd::min_rank_distance(&code)?;
    let mut r = Report::new(if report.is_mrd { "MRD" } else { "not MRD" }, report.is_mrd, to_value(&report));
    r.notes = poly_notes(l);
    r.extra.push(("poly", to_value(&l.to_json())));
    Ok(r)
}

#[cfg(test)]
mod tests;
