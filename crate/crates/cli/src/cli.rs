use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagmat_core::contractions::verify_main_theorem;
use flagmat_core::factorize::factorize;
use flagmat_core::hermitian::{assemble, quadratic_coefficients, quadratic_residual, SpectrumKind, SpectrumSpec, TwoLevelProfile};
use flagmat_core::manifolds::{grassmann_matrix, grassmann_projection, stiefel_frame};
use flagmat_core::sample::{random_angles, random_params};
use flagmat_core::{compose, hermitian_eig, param_count, Scheme, SchemeTag, VerificationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::document::{default_tolerance, DocumentKind, MatrixDocument, Meta, ParamsDocument};
use crate::error::{CliError, Result};
use crate::format::to_json;

/// Generate, factorize and verify flag, Stiefel and Grassmann matrices.
///
/// Random draws use ChaCha8 seeded with `--seed` (default 0). Angles are
/// uniform on [0, π/2) and phases on [0, 2π); this is not the Haar measure.
#[derive(Debug, Parser)]
#[command(name = "flagmat", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a matrix document from random or supplied parameters.
    Generate(GenerateArgs),
    /// Recover parameters from a unitary matrix document.
    Factorize(FactorizeArgs),
    /// Run a residual suite on a matrix document (exit 1 on failure).
    Verify(VerifyArgs),
    /// Print an eigenvalue cascade as JSON.
    Spectrum(SpectrumCommandArgs),
    /// Print real parameter counts per scheme.
    Dim(DimArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Full,
    Flag,
    StiefelReduced,
    StiefelFull,
    Grassmann,
    Orthogonal,
    Hermitian,
}

impl SchemeArg {
    fn tag(self) -> Option<SchemeTag> {
        Some(match self {
            SchemeArg::Full => SchemeTag::FullUnitary,
            SchemeArg::Flag => SchemeTag::Flag,
            SchemeArg::StiefelReduced => SchemeTag::StiefelReduced,
            SchemeArg::StiefelFull => SchemeTag::StiefelFull,
            SchemeArg::Grassmann => SchemeTag::Grassmann,
            SchemeArg::Orthogonal => SchemeTag::SpecialOrthogonal,
            SchemeArg::Hermitian => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Unitary,
    Isometry,
    Projection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumKindArg {
    Positive,
    Traceless,
    Indefinite,
    Degenerate,
    TwoLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Unitary,
    Projection,
    Isometry,
    Quadratic,
    MainTheorem,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Eigenvalue family.
    #[arg(long, value_enum)]
    pub kind: Option<SpectrumKindArg>,
    /// Trace scale (the trace, or the positive block total when traceless).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub h: f64,
    /// Number of positive eigenvalues (traceless, indefinite).
    #[arg(long)]
    pub p: Option<usize>,
    /// Two-level angle in [0, π/2]: eigenvalues h·cos²θ and h·sin²θ.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Hyperbolic parameter (indefinite; two-level hyperbolic profile).
    #[arg(long)]
    pub theta_hyp: Option<f64>,
    /// Comma-separated cascade angles; drawn from the seed when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub angles: Option<Vec<f64>>,
    /// Rescale degenerate spectra so the trace (with multiplicity) is h.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Block count (Stiefel), subspace dimension (Grassmann) or multiplicity
    /// (degenerate and two-level spectra).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Take parameters from this document instead of drawing them.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
    /// Number of documents; more than one are written as a JSON array.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Check the output against its declared kind before writing it.
    #[arg(long)]
    pub validate: bool,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FactorizeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub validate: bool,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Residual tolerance, default 1e-10·rows.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub validate: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumCommandArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DimArgs {
    /// Single dimension; all of 1..=12 when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Generate(args) => generate(&args, stdout),
        Command::Factorize(args) => factorize_command(&args, stdout),
        Command::Verify(args) => verify(&args, stdout),
        Command::Spectrum(args) => spectrum(&args, stdout),
        Command::Dim(args) => dim(&args, stdout),
    }
}

fn write_stdout(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn emit_text(out: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => write_stdout(stdout, text),
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required here")))
}

fn load(path: &PathBuf, validate: bool, tol: Option<f64>) -> Result<MatrixDocument> {
    let doc = MatrixDocument::load(path)?;
    if validate {
        let report = doc.validate(tol.unwrap_or(default_tolerance(doc.rows)))?;
        if !report.passed() {
            return Err(CliError::Verification(report));
        }
    }
    Ok(doc)
}

fn scheme_from(tag: SchemeTag, n: usize, k: Option<usize>) -> Result<Scheme> {
    let k = if tag.uses_k() { require(k, "k")? } else { n };
    let inner = if tag == SchemeTag::Grassmann && 2 * k > n { n.saturating_sub(k) } else { k };
    Ok(Scheme::new(tag, n, inner)?)
}

/// Builds the spectrum for `n`, drawing missing angles and θ from `rng`.
pub fn build_spectrum(n: usize, k: Option<usize>, args: &SpectrumArgs, rng: &mut impl Rng) -> Result<SpectrumSpec> {
    let kind = require(args.kind, "kind")?;
    let h = args.h;
    let mut angles = |count: usize| match &args.angles {
        Some(a) => a.clone(),
        None => random_angles(rng, count),
    };
    let kind = match kind {
        SpectrumKindArg::Positive => SpectrumKind::PositiveTrace { h, angles: angles(n.saturating_sub(1)) },
        SpectrumKindArg::Traceless => SpectrumKind::Traceless {
            h,
            p: require(args.p, "p")?,
            angles: angles(n.saturating_sub(2)),
        },
        SpectrumKindArg::Indefinite => {
            let p = require(args.p, "p")?;
            let a = angles(n.saturating_sub(2));
            let theta_hyp = args.theta_hyp.unwrap_or_else(|| rng.random_range(0.0..1.0));
            SpectrumKind::IndefiniteTrace { h, p, theta_hyp, angles: a }
        }
        SpectrumKindArg::Degenerate => {
            let k = require(k, "k")?;
            SpectrumKind::DegenerateK {
                k,
                h,
                angles: angles(n.saturating_sub(k)),
            }
        }
        SpectrumKindArg::TwoLevel => {
            let profile = match (args.theta, args.theta_hyp) {
                (Some(_), Some(_)) => return Err(CliError::Usage("give --theta or --theta-hyp, not both".into())),
                (_, Some(theta)) => TwoLevelProfile::Hyperbolic { theta },
                (Some(theta), None) => TwoLevelProfile::Trigonometric { theta },
                (None, None) => TwoLevelProfile::Trigonometric {
                    theta: rng.random_range(0.0..std::f64::consts::FRAC_PI_2),
                },
            };
            SpectrumKind::TwoLevel {
                k: require(k, "k")?,
                h,
                profile,
            }
        }
    };
    Ok(SpectrumSpec::new(n, kind, args.normalize)?)
}

fn generate(args: &GenerateArgs, stdout: &mut dyn Write) -> Result<()> {
    if args.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let supplied = match &args.params {
        Some(path) => Some(require(MatrixDocument::load(path)?.params, "params document with a `params` field")?),
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let docs = (0..args.count)
        .map(|_| generate_one(args, supplied.as_ref(), &mut rng))
        .collect::<Result<Vec<_>>>()?;
    if args.validate {
        for doc in &docs {
            let report = doc.validate(args.tol.unwrap_or(default_tolerance(doc.rows)))?;
            if !report.passed() {
                write_stdout(stdout, &render_report(&report))?;
                return Err(CliError::Verification(report));
            }
        }
    }
    let text = if docs.len() == 1 { docs[0].to_json()? } else { to_json(&docs)? };
    emit_text(args.out.as_ref(), &text, stdout)
}

fn generate_one(args: &GenerateArgs, supplied: Option<&ParamsDocument>, rng: &mut ChaCha8Rng) -> Result<MatrixDocument> {
    let scheme_arg = match (args.scheme, supplied) {
        (Some(s), _) => s,
        (None, Some(p)) => match p.tag()? {
            SchemeTag::FullUnitary => SchemeArg::Full,
            SchemeTag::Flag => SchemeArg::Flag,
            SchemeTag::StiefelReduced => SchemeArg::StiefelReduced,
            SchemeTag::StiefelFull => SchemeArg::StiefelFull,
            SchemeTag::Grassmann => SchemeArg::Grassmann,
            SchemeTag::SpecialOrthogonal => SchemeArg::Orthogonal,
        },
        (None, None) => return Err(CliError::Usage("--scheme or --params is required".into())),
    };
    let meta = Meta::new(if supplied.is_some() { None } else { Some(args.seed) });

    let Some(tag) = scheme_arg.tag() else {
        let n = match (args.n, supplied) {
            (Some(n), _) => n,
            (None, Some(p)) => p.n,
            (None, None) => require(args.n, "n")?,
        };
        let spec = build_spectrum(n, args.k, &args.spectrum, rng)?;
        let frame = match supplied {
            Some(p) => p.to_params()?,
            None => random_params(rng, spec.frame_scheme()),
        };
        let op = assemble(&spec, &frame)?;
        let doc_k = match spec.kind() {
            SpectrumKind::TwoLevel { k, .. } => *k,
            _ => frame.scheme().k(),
        };
        let params = ParamsDocument::new(&frame, doc_k);
        return Ok(MatrixDocument::new(DocumentKind::Hermitian, &op.matrix, Some(params), meta));
    };

    let params = match supplied {
        Some(p) => {
            if p.tag()? != tag {
                return Err(CliError::Usage(format!("--scheme {} does not match the parameter file ({})", tag, p.scheme)));
            }
            p.clone()
        }
        None => {
            let n = require(args.n, "n")?;
            let scheme = scheme_from(tag, n, args.k)?;
            let drawn = random_params(rng, scheme);
            match tag {
                SchemeTag::Grassmann => ParamsDocument::new(&drawn, require(args.k, "k")?),
                _ => ParamsDocument::from_params(&drawn),
            }
        }
    };

    let emit = args.emit.unwrap_or(Emit::Unitary);
    let (kind, matrix) = if tag == SchemeTag::Grassmann {
        let point = params.to_grassmann()?;
        match emit {
            Emit::Projection => (DocumentKind::Projection, grassmann_projection(&point)),
            Emit::Unitary if point.is_complemented() => {
                return Err(CliError::Usage(format!(
                    "k = {} > n/2 is stored as a complement; use --emit projection",
                    point.k()
                )))
            }
            Emit::Unitary => (DocumentKind::Unitary, grassmann_matrix(&point)?),
            Emit::Isometry if point.is_complemented() => {
                return Err(CliError::Usage("isometry output needs k <= n/2 for grassmann".into()))
            }
            Emit::Isometry => (DocumentKind::Isometry, grassmann_matrix(&point)?.leading_columns(point.k())?),
        }
    } else {
        let p = params.to_params()?;
        let unitary = compose(&p);
        let k = match tag {
            SchemeTag::StiefelReduced | SchemeTag::StiefelFull => stiefel_frame(&p)?.k(),
            _ => args.k.unwrap_or(p.scheme().n()),
        };
        match emit {
            Emit::Unitary => (DocumentKind::Unitary, unitary),
            Emit::Isometry => (DocumentKind::Isometry, unitary.leading_columns(k)?),
            Emit::Projection => (DocumentKind::Projection, unitary.leading_columns(k)?.gram_outer()),
        }
    };
    Ok(MatrixDocument::new(kind, &matrix, Some(params), meta))
}

fn factorize_command(args: &FactorizeArgs, stdout: &mut dyn Write) -> Result<()> {
    let doc = load(&args.input, args.validate, args.tol)?;
    let tag = match args.scheme.tag() {
        Some(SchemeTag::Grassmann) | None => {
            return Err(CliError::Usage(format!("cannot factorize under --scheme {:?}", args.scheme)))
        }
        Some(tag) => tag,
    };
    let m = doc.matrix()?;
    let scheme = scheme_from(tag, m.rows(), args.k)?;
    let params = factorize(&m, scheme)?;
    let out = MatrixDocument::new(
        DocumentKind::Params,
        &compose(&params),
        Some(ParamsDocument::from_params(&params)),
        Meta::new(doc.meta.seed),
    );
    emit_text(args.out.as_ref(), &out.to_json()?, stdout)
}

pub fn render_report(report: &VerificationReport) -> String {
    let mut text = String::new();
    for check in report.iter() {
        let status = if check.passed() { "ok" } else { "FAIL" };
        text += &format!("{:<14} {:>11.3e} <= {:.3e}  {status}\n", check.name, check.value, check.tolerance);
    }
    text += if report.passed() { "PASS\n" } else { "FAIL\n" };
    text
}

/// Runs `suite` on a document. Extra informational lines (trace, p, q) are
/// appended to `notes`.
pub fn verify_document(doc: &MatrixDocument, suite: Suite, tol: f64, notes: &mut Vec<String>) -> Result<VerificationReport> {
    let m = doc.matrix()?;
    let mut report = VerificationReport::new();
    match suite {
        Suite::Unitary => report.push("unitarity", m.unitarity_residual()?, tol),
        Suite::Isometry => report.push("isometry", m.isometry_residual(), tol),
        Suite::Projection => {
            report.push("hermitian", m.hermitian_residual()?, tol);
            report.push("idempotence", m.idempotence_residual()?, tol);
            let tr = m.trace()?;
            report.push("trace", (tr.re - tr.re.round()).abs() + tr.im.abs(), tol);
            notes.push(format!("trace = {:.12}", tr.re));
        }
        Suite::Quadratic => {
            report.push("hermitian", m.hermitian_residual()?, tol);
            let h = m.hermitian_part()?;
            let eig = hermitian_eig(&h, 1e-14 * h.frobenius_norm().max(1.0))?;
            let (l1, l2) = (eig.eigenvalues[0], eig.eigenvalues[eig.eigenvalues.len() - 1]);
            let (p, q) = quadratic_coefficients(l1, l2);
            notes.push(format!("p = {p:.12}, q = {q:.12}"));
            report.push("quadratic", quadratic_residual(&m, p, q)?, tol);
        }
        Suite::MainTheorem => report = verify_main_theorem(&m, tol),
    }
    Ok(report)
}

fn verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<()> {
    let doc = load(&args.input, args.validate, args.tol)?;
    let tol = args.tol.unwrap_or(default_tolerance(doc.rows));
    let mut notes = Vec::new();
    let report = verify_document(&doc, args.suite, tol, &mut notes)?;
    let mut text = render_report(&report);
    for note in notes {
        text.insert_str(0, &format!("{note}\n"));
    }
    write_stdout(stdout, &text)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Verification(report))
    }
}

#[derive(Debug, Serialize)]
struct Level {
    value: f64,
    multiplicity: usize,
}

#[derive(Debug, Serialize)]
struct SpectrumDocument {
    kind: &'static str,
    n: usize,
    normalize: bool,
    eigenvalues: Vec<f64>,
    levels: Vec<Level>,
    trace: f64,
}

fn spectrum(args: &SpectrumCommandArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let spec = build_spectrum(args.n, args.k, &args.spectrum, &mut rng)?;
    let eigenvalues = spec.eigenvalues()?;
    let doc = SpectrumDocument {
        kind: spec.kind().name(),
        n: spec.n(),
        normalize: spec.normalize(),
        trace: eigenvalues.iter().sum(),
        levels: spec
            .levels()?
            .into_iter()
            .map(|(value, multiplicity)| Level { value, multiplicity })
            .collect(),
        eigenvalues,
    };
    write_stdout(stdout, &to_json(&doc)?)
}

/// `(scheme, n, k, count)` rows; `k` is `None` for complete schemes.
pub fn dim_table(n: Option<usize>, k: Option<usize>) -> Result<Vec<(SchemeTag, usize, Option<usize>, usize)>> {
    let dims: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (1..=12).collect(),
    };
    let mut rows = Vec::new();
    for &n in &dims {
        for tag in SchemeTag::ALL {
            if !tag.uses_k() {
                rows.push((tag, n, None, param_count(&Scheme::new(tag, n, n)?)));
                continue;
            }
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (1..=n).collect(),
            };
            for k in ks {
                let Ok(scheme) = Scheme::new(tag, n, k) else {
                    continue;
                };
                rows.push((tag, n, Some(k), param_count(&scheme)));
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::Usage("no scheme accepts these dimensions".into()));
    }
    Ok(rows)
}

fn dim(args: &DimArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut text = format!("{:<16} {:>3} {:>3} {:>6}\n", "scheme", "n", "k", "params");
    for (tag, n, k, count) in dim_table(args.n, args.k)? {
        let k = k.map_or_else(|| "-".to_string(), |k| k.to_string());
        text += &format!("{:<16} {n:>3} {k:>3} {count:>6}\n", tag.name());
    }
    write_stdout(stdout, &text)
}
