//! Batch front end: `eqbif <spectrum|decompose|index|certify|branch|selftest>`.
//!
//! Every command except `selftest` reads a JSON run config:
//!
//! ```json
//! {"space": {"kind": "sphere", "n": 2}, "a": [-1], "cutoff": 6,
//!  "galerkin": {"K": 8, "nl": "quartic", "crossing": 2, "target_norm": 1.0}}
//! ```
//!
//! Exit codes: 0 success, 1 domain failure, 2 usage or config error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bifurcation::{BifurcationAnalysis, BifurcationLevel, SystemSignature, UnboundednessCertificate};
use crate::error::Error;
use crate::galerkin::{
    continue_branch, gradient_check, random_coeffs, BranchOutcome, BranchState, ContinuationError, ContinuationOptions,
    GalerkinBasis, IsotropyRestriction, NonlinearitySpec,
};
use crate::json::{self, format_rational};
use crate::symmetric_space::{SpaceDescriptor, SpectralLevel, SymmetricSpaceData};
use crate::torus_rep::TorusRepDecomposition;
use crate::weight_lattice::{RestrictedWeight, SubgroupId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "eqbif", version, about = "Equivariant bifurcation indices and branch continuation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run config
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Seed for randomized sampling
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Eigenvalues of the Laplacian up to the cutoff
    Spectrum,
    /// Torus decompositions of each eigenspace
    Decompose,
    /// Bifurcation indices on [-cutoff, cutoff]
    Index,
    /// Unboundedness certificates for guaranteed levels
    Certify,
    /// Galerkin continuation from a trivial-branch crossing
    Branch,
    /// Run the invariant sweeps
    Selftest,
}

fn default_isotropy() -> IsotropyRestriction {
    IsotropyRestriction::Axisymmetric
}

/// The `galerkin` block of a run config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GalerkinConfig {
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(default = "default_nl")]
    pub nl: String,
    /// Falls back to the top-level `a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<i64>>,
    pub crossing: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_norm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default = "default_isotropy")]
    pub isotropy: IsotropyRestriction,
}

fn default_nl() -> String {
    "quartic".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub space: SpaceDescriptor,
    #[serde(default)]
    pub a: Vec<i64>,
    #[serde(default)]
    pub cutoff: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galerkin: Option<GalerkinConfig>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn cutoff(&self) -> Result<BigRational, Error> {
        let c = match &self.cutoff {
            None => BigRational::zero(),
            Some(v) => json::parse_rational_value(v).map_err(Error::Parse)?,
        };
        if c.is_negative() {
            return Err(Error::InvalidArgument(format!("cutoff {} is negative", format_rational(&c))));
        }
        Ok(c)
    }

    pub fn signature(&self) -> Result<SystemSignature, Error> {
        SystemSignature::from_coefficients(&self.a)
    }
}

/// A command failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidSpace(_)
            | Error::InvalidSignature(_)
            | Error::InvalidArgument(_)
            | Error::NotACrossing(_)
            | Error::TablesRequired(_)
            | Error::DimensionMismatch { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// What a command produced: the main document and an exit code.
struct Output {
    text: String,
    code: i32,
    /// Extra file written next to `--out`, e.g. the branch summary.
    side_file: Option<(PathBuf, String)>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0, side_file: None }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
}

fn alphas_text(alphas: &[RestrictedWeight]) -> String {
    alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
}

fn planes_text(d: &TorusRepDecomposition) -> String {
    d.mults().iter().map(|(h, k)| format!("{k}x{h}")).collect::<Vec<_>>().join(" ")
}

struct Context {
    config: RunConfig,
    base_dir: Option<PathBuf>,
    format: OutputFormat,
    seed: u64,
    out: Option<PathBuf>,
}

impl Context {
    fn space(&self) -> Result<SymmetricSpaceData, Error> {
        self.config.space.build(self.base_dir.as_deref())
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    #[serde(with = "json::rational")]
    pub cutoff: BigRational,
    pub levels: Vec<SpectralLevel>,
}

fn cmd_spectrum(ctx: &Context) -> Result<Output, Failure> {
    let cutoff = ctx.config.cutoff()?;
    let levels = ctx.space()?.spectrum_up_to(&cutoff)?;
    let text = match ctx.format {
        OutputFormat::Json => to_json(&SpectrumReport { cutoff, levels }),
        OutputFormat::Csv => {
            let ids: BTreeSet<SubgroupId> =
                levels.iter().flat_map(|l| l.torus_decomp.mults().keys().cloned()).collect();
            let mut header: Vec<String> =
                ["eigenvalue_num", "eigenvalue_den", "alphas", "real_dim", "k0"].map(String::from).to_vec();
            header.extend(ids.iter().map(|h| h.to_string()));
            let rows: Vec<Vec<String>> = levels
                .iter()
                .map(|l| {
                    let mut r = vec![
                        l.eigenvalue.numer().to_string(),
                        l.eigenvalue.denom().to_string(),
                        alphas_text(&l.alphas),
                        l.real_dim.to_string(),
                        l.torus_decomp.k0.to_string(),
                    ];
                    r.extend(ids.iter().map(|h| l.torus_decomp.mult_of(h).to_string()));
                    r
                })
                .collect();
            csv_text(&header, &rows)
        }
        OutputFormat::Pretty => {
            let mut s = format!("{:>10}  {:>8}  alphas\n", "lambda", "dim");
            for l in &levels {
                s += &format!("{:>10}  {:>8}  {}\n", format_rational(&l.eigenvalue), l.real_dim, alphas_text(&l.alphas));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct AlphaBlock {
    pub alpha: RestrictedWeight,
    pub dim: u64,
    pub decomposition: TorusRepDecomposition,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DecomposedLevel {
    #[serde(with = "json::rational")]
    pub eigenvalue: BigRational,
    pub blocks: Vec<AlphaBlock>,
    pub total: TorusRepDecomposition,
}

fn cmd_decompose(ctx: &Context) -> Result<Output, Failure> {
    let cutoff = ctx.config.cutoff()?;
    let space = ctx.space()?;
    let mut out = Vec::new();
    for level in space.spectrum_up_to(&cutoff)? {
        let blocks = level
            .alphas
            .iter()
            .map(|a| {
                Ok(AlphaBlock {
                    alpha: a.clone(),
                    dim: space.alpha_dim(a)?,
                    decomposition: space.torus_decomposition_of(std::slice::from_ref(a))?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        out.push(DecomposedLevel { eigenvalue: level.eigenvalue, blocks, total: level.torus_decomp });
    }
    let text = match ctx.format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Csv => {
            let header = ["eigenvalue_num", "eigenvalue_den", "alpha", "dim", "k0", "planes"].map(String::from);
            let rows: Vec<Vec<String>> = out
                .iter()
                .flat_map(|l| {
                    l.blocks.iter().map(move |b| {
                        vec![
                            l.eigenvalue.numer().to_string(),
                            l.eigenvalue.denom().to_string(),
                            b.alpha.to_string(),
                            b.dim.to_string(),
                            b.decomposition.k0.to_string(),
                            planes_text(&b.decomposition),
                        ]
                    })
                })
                .collect();
            csv_text(&header, &rows)
        }
        OutputFormat::Pretty => {
            let mut s = String::new();
            for l in &out {
                s += &format!("lambda = {}\n", format_rational(&l.eigenvalue));
                for b in &l.blocks {
                    s += &format!("  {}  dim {}  k0 {}  {}\n", b.alpha, b.dim, b.decomposition.k0, planes_text(&b.decomposition));
                }
            }
            s
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct IndexReport {
    pub signature: SystemSignature,
    #[serde(with = "json::rational")]
    pub cutoff: BigRational,
    pub levels: Vec<BifurcationLevel>,
}

fn cmd_index(ctx: &Context) -> Result<Output, Failure> {
    let cutoff = ctx.config.cutoff()?;
    let sig = ctx.config.signature()?;
    let levels = BifurcationAnalysis::new(&ctx.space()?, sig, &cutoff)?.levels()?;
    let text = match ctx.format {
        OutputFormat::Json => to_json(&IndexReport { signature: sig, cutoff, levels }),
        OutputFormat::Csv => {
            let header = ["lambda_num", "lambda_den", "kernel_dim", "unit", "index"].map(String::from);
            let rows: Vec<Vec<String>> = levels
                .iter()
                .map(|l| {
                    vec![
                        l.lambda0.numer().to_string(),
                        l.lambda0.denom().to_string(),
                        l.kernel_dim.to_string(),
                        l.index.unit_coeff().to_string(),
                        l.index.to_string(),
                    ]
                })
                .collect();
            csv_text(&header, &rows)
        }
        OutputFormat::Pretty => {
            let mut s = String::new();
            for l in &levels {
                s += &format!("BIF({}) = {}   (kernel dim {})\n", format_rational(&l.lambda0), l.index, l.kernel_dim);
            }
            s
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LevelNote {
    #[serde(with = "json::rational")]
    pub level: BigRational,
    pub note: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CertifyReport {
    pub signature: SystemSignature,
    pub certificates: Vec<UnboundednessCertificate>,
    pub skipped: Vec<LevelNote>,
    pub failed: Vec<LevelNote>,
    pub all_certified: bool,
}

fn cmd_certify(ctx: &Context) -> Result<Output, Failure> {
    let cutoff = ctx.config.cutoff()?;
    let sig = ctx.config.signature()?;
    let analysis = BifurcationAnalysis::new(&ctx.space()?, sig, &cutoff)?;
    let mut report = CertifyReport { signature: sig, certificates: vec![], skipped: vec![], failed: vec![], all_certified: true };
    for level in analysis.levels()? {
        let lambda = level.lambda0;
        if lambda.is_zero() && sig.p() % 2 == 0 {
            report.skipped.push(LevelNote { level: lambda, note: "p even, no claim".into() });
            continue;
        }
        match analysis.certify(&lambda) {
            Ok(c) if c.unbounded => report.certificates.push(c),
            Ok(c) => {
                report.failed.push(LevelNote { level: lambda, note: c.conclusion.clone() });
                report.certificates.push(c);
            }
            Err(e) => report.failed.push(LevelNote { level: lambda, note: e.to_string() }),
        }
    }
    report.all_certified = report.failed.is_empty();
    let code = if report.all_certified { 0 } else { 1 };
    let text = match ctx.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let header = ["level_num", "level_den", "status", "witness", "coefficients", "note"].map(String::from);
            let mut rows: Vec<(BigRational, Vec<String>)> = report
                .certificates
                .iter()
                .map(|c| {
                    let coeffs = c
                        .ledger
                        .iter()
                        .map(|e| format!("{}:{}", format_rational(&e.level), e.coeff))
                        .collect::<Vec<_>>()
                        .join(" ");
                    let status = if c.unbounded { "unbounded" } else { "failed" };
                    let witness = c.witness.as_ref().map(|h| h.to_string()).unwrap_or_default();
                    (c.level.clone(), vec![status.into(), witness, coeffs, c.conclusion.clone()])
                })
                .collect();
            rows.extend(report.skipped.iter().map(|n| (n.level.clone(), vec!["skipped".into(), String::new(), String::new(), n.note.clone()])));
            rows.extend(
                report
                    .failed
                    .iter()
                    .filter(|n| !report.certificates.iter().any(|c| c.level == n.level))
                    .map(|n| (n.level.clone(), vec!["failed".into(), String::new(), String::new(), n.note.clone()])),
            );
            rows.sort_by(|a, b| a.0.cmp(&b.0));
            let rows: Vec<Vec<String>> = rows
                .into_iter()
                .map(|(l, rest)| {
                    let mut r = vec![l.numer().to_string(), l.denom().to_string()];
                    r.extend(rest);
                    r
                })
                .collect();
            csv_text(&header, &rows)
        }
        OutputFormat::Pretty => {
            let mut s = String::new();
            for c in &report.certificates {
                s += &format!("level {}: {}\n", format_rational(&c.level), c.conclusion);
            }
            for n in &report.skipped {
                s += &format!("level {}: skipped ({})\n", format_rational(&n.level), n.note);
            }
            for n in &report.failed {
                s += &format!("level {}: FAILED ({})\n", format_rational(&n.level), n.note);
            }
            s
        }
    };
    Ok(Output { text, code, side_file: None })
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum BranchStatus {
    ReachedTarget,
    ReturnedToTrivial,
    Incomplete,
    Diverged,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BranchPoint {
    pub arclength: f64,
    pub lambda: f64,
    pub h1_norm: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BranchSummary {
    pub status: BranchStatus,
    #[serde(with = "json::rational")]
    pub crossing: BigRational,
    #[serde(rename = "K")]
    pub k: u32,
    pub nl: String,
    pub a: Vec<i64>,
    pub isotropy: IsotropyRestriction,
    pub steps: usize,
    pub last: Option<BranchPoint>,
    pub max_h1_norm: f64,
    pub all_nonconstant: bool,
    /// Gradient check of the discretization at a seeded random state, at the last `λ`.
    pub gradient_check: Option<f64>,
    pub seed: u64,
    pub note: String,
}

fn branch_columns(basis: &GalerkinBasis, p: usize, isotropy: IsotropyRestriction) -> Vec<(String, usize)> {
    let n = basis.n_modes();
    let mut cols = Vec::new();
    for i in 0..p {
        for (j, mode) in basis.modes().iter().enumerate() {
            if mode.k <= 4 && (isotropy == IsotropyRestriction::None && mode.k <= 2 || mode.m == 0) {
                cols.push((format!("c{}_{}_{}", i, mode.k, mode.m), i * n + j));
            }
        }
    }
    cols
}

fn cmd_branch(ctx: &Context) -> Result<Output, Failure> {
    let g = ctx.config.galerkin.clone().ok_or_else(|| usage("config has no galerkin block"))?;
    let a = g.a.clone().unwrap_or_else(|| ctx.config.a.clone());
    SystemSignature::from_coefficients(&a)?;
    let nl = match g.nl.as_str() {
        "quartic" => NonlinearitySpec::quartic(),
        "linear" => NonlinearitySpec::linear(),
        other => return Err(usage(format!("unknown nonlinearity {other:?} (expected quartic or linear)"))),
    };
    let crossing = json::parse_rational_value(&g.crossing).map_err(Error::Parse)?;
    let defaults = ContinuationOptions::default();
    let opts = ContinuationOptions {
        step: g.step.unwrap_or(defaults.step),
        max_steps: g.max_steps.unwrap_or(defaults.max_steps),
        target_norm: g.target_norm.unwrap_or(defaults.target_norm),
        isotropy: g.isotropy,
        ..defaults
    };
    let basis = GalerkinBasis::new(g.k);
    let (states, status, code, message) = match continue_branch(&basis, &nl, &a, &crossing, &opts) {
        Ok(run) => {
            let status = match run.outcome {
                BranchOutcome::ReachedTarget => BranchStatus::ReachedTarget,
                BranchOutcome::ReturnedToTrivial => BranchStatus::ReturnedToTrivial,
                BranchOutcome::Incomplete => BranchStatus::Incomplete,
            };
            (run.states, status, 0, None)
        }
        Err(ContinuationError::Setup(e)) => return Err(e.into()),
        Err(e @ ContinuationError::Diverged { .. }) => {
            let msg = e.to_string();
            let ContinuationError::Diverged { states, .. } = e else { unreachable!() };
            (states, BranchStatus::Diverged, 1, Some(msg))
        }
    };
    let p = a.len();
    // At a converged state the residual vanishes, so the check samples a seeded random state instead.
    let gradient = match states.last() {
        Some(s) => {
            let probe = random_coeffs(&basis, p, 0.3, ctx.seed);
            Some(gradient_check(&basis, &nl, &a, &probe, s.lambda, 1e-5, 50, ctx.seed)?)
        }
        None => None,
    };
    let point = |s: &BranchState| BranchPoint { arclength: s.arclength, lambda: s.lambda, h1_norm: s.h1_norm };
    let summary = BranchSummary {
        status,
        crossing,
        k: g.k,
        nl: g.nl.clone(),
        a: a.clone(),
        isotropy: g.isotropy,
        steps: states.len(),
        last: states.last().map(point),
        max_h1_norm: states.iter().map(|s| s.h1_norm).fold(0.0, f64::max),
        all_nonconstant: states.iter().all(|s| s.is_nonconstant(&basis, p)),
        gradient_check: gradient,
        seed: ctx.seed,
        note: message.unwrap_or_else(|| {
            "norm growth to the target is numerical evidence only; the link to the topological continuum is heuristic".into()
        }),
    };
    let cols = branch_columns(&basis, p, g.isotropy);
    let mut header: Vec<String> = ["arclength", "lambda", "h1_norm"].map(String::from).to_vec();
    header.extend(cols.iter().map(|(name, _)| name.clone()));
    let rows: Vec<Vec<String>> = states
        .iter()
        .map(|s| {
            let mut r = vec![format!("{:e}", s.arclength), format!("{:e}", s.lambda), format!("{:e}", s.h1_norm)];
            r.extend(cols.iter().map(|(_, j)| format!("{:e}", s.coeffs[*j])));
            r
        })
        .collect();
    let csv = csv_text(&header, &rows);
    let summary_json = to_json(&summary);
    // With --out the CSV goes to the file and the summary next to it.
    let (text, side_file) = match (&ctx.out, ctx.format) {
        (Some(out), _) => (csv, Some((out.with_extension("summary.json"), summary_json))),
        (None, OutputFormat::Json) => (summary_json, None),
        (None, OutputFormat::Csv) => (csv, None),
        (None, OutputFormat::Pretty) => (pretty_branch(&summary), None),
    };
    Ok(Output { text, code, side_file })
}

fn pretty_branch(s: &BranchSummary) -> String {
    let mut out = format!("status: {:?}\nsteps: {}\n", s.status, s.steps);
    if let Some(l) = &s.last {
        out += &format!("last: lambda {:.6}  h1 {:.6}  arclength {:.6}\n", l.lambda, l.h1_norm, l.arclength);
    }
    out += &format!("all states nonconstant: {}\n", s.all_nonconstant);
    out
}

fn cmd_selftest(format: OutputFormat, seed: u64) -> Output {
    let report = crate::selftest::run(seed);
    let code = if report.all_passed { 0 } else { 1 };
    let text = match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let header = ["id", "name", "passed", "detail"].map(String::from);
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.id.to_string(), c.name.clone(), c.passed.to_string(), c.detail.clone()])
                .collect();
            csv_text(&header, &rows)
        }
        OutputFormat::Pretty => report
            .checks
            .iter()
            .map(|c| format!("{} {:>2} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.detail))
            .collect(),
    };
    Output { text, code, side_file: None }
}

fn execute(cli: Cli) -> Result<Output, Failure> {
    if let Command::Selftest = cli.command {
        return Ok(cmd_selftest(cli.format.unwrap_or(OutputFormat::Pretty), cli.seed.unwrap_or(0)));
    }
    let path = cli.config.ok_or_else(|| usage("--config is required"))?;
    let config = RunConfig::load(&path)?;
    let ctx = Context {
        format: cli.format.or(config.format).unwrap_or(OutputFormat::Json),
        seed: cli.seed.or(config.seed).unwrap_or(0),
        base_dir: path.parent().map(Path::to_path_buf),
        out: cli.out,
        config,
    };
    match cli.command {
        Command::Spectrum => cmd_spectrum(&ctx),
        Command::Decompose => cmd_decompose(&ctx),
        Command::Index => cmd_index(&ctx),
        Command::Certify => cmd_certify(&ctx),
        Command::Branch => cmd_branch(&ctx),
        Command::Selftest => unreachable!(),
    }
}

/// Run the CLI on `args` (including the program name). Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let out_path = cli.out.clone();
    match execute(cli) {
        Ok(output) => {
            let written = match &out_path {
                Some(p) => std::fs::write(p, &output.text),
                None => stdout.write_all(output.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return 2;
            }
            if let Some((p, text)) = &output.side_file {
                if let Err(e) = std::fs::write(p, text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", p.display());
                    return 2;
                }
            }
            output.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
