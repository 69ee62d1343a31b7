//! Command-line front end: `check`, `extend-verify`, `render`, `convolve`.
//!
//! Exit codes: 0 success or member, 1 condition not met, 2 input error,
//! 3 a verification exceeded its analytic bound.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::conditions::{check_membership, check_sigma_condition, weighted_sum, WeightProfile};
use crate::convolution::closure_check;
use crate::document::{DocumentError, LoadedMap, MapDocument};
use crate::extension::{extend_exterior, extend_interior, PlaneExtension};
use crate::render::{render_svg, RenderOptions, DEFAULT_FIGURE_RADII, DEFAULT_RAYS, DEFAULT_SAMPLES};
use crate::report::{BoundsEntry, ClassEntry, ConvolutionEntry, RunReport, SigmaEntry, VerificationEntry};
use crate::scalar::Scalar;
use crate::verify::{verify_extension, GridSpec, DEFAULT_ANGLES, DEFAULT_RADII, DEFAULT_R_MAX};

/// Slack allowed between a measured quantity and its analytic bound.
pub const VERIFY_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_PAIRS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    ConditionNotMet = 1,
    BoundViolation = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Numeric(#[from] crate::Error),
}

impl CliError {
    pub const EXIT_CODE: i32 = 2;
}

#[derive(Debug, Parser)]
#[command(
    name = "harmonic-qc",
    version,
    about = "Coefficient classes and quasiconformal extensions of harmonic maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Map document (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Second map document (convolve).
    #[arg(long, global = true)]
    pub input2: Option<PathBuf>,
    /// Comma-separated profiles: starlike, convex, strongly-starlike, sigma.
    #[arg(long, global = true, value_delimiter = ',')]
    pub profiles: Vec<String>,
    /// Strong-starlikeness order in (0, 1); overrides the document's `order`.
    #[arg(long, global = true)]
    pub order: Option<f64>,
    /// Radii per side of the unit circle in the verification grid.
    #[arg(long, global = true, default_value_t = DEFAULT_RADII)]
    pub grid_radii: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_ANGLES)]
    pub grid_angles: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_R_MAX)]
    pub r_max: f64,
    /// Random point pairs for the bi-Lipschitz check.
    #[arg(long, global = true, default_value_t = DEFAULT_PAIRS)]
    pub pairs: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Leave the generation time out of figures.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient-class membership.
    Check,
    /// Build the plane extension and run the grid and sampling checks.
    ExtendVerify,
    /// Draw images of circles and rays under the extension as SVG.
    Render {
        /// Circle radii of the figure.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_FIGURE_RADII)]
        radii: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_RAYS)]
        rays: usize,
        /// Vertices per curve.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Harmonic convolution of two exterior maps.
    Convolve,
}

/// A document together with the map it validated into.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub doc: MapDocument,
    pub map: LoadedMap,
}

impl Loaded {
    pub fn from_document(doc: MapDocument, origin: &str) -> Result<Self, CliError> {
        let map = doc.to_map(origin)?;
        Ok(Loaded { doc, map })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let doc = MapDocument::load(path)?;
        Self::from_document(doc, &path.display().to_string())
    }
}

fn resolve_order(doc: &MapDocument, flag: Option<f64>) -> Result<Option<f64>, CliError> {
    match flag.or(doc.order) {
        Some(o) if !(o > 0.0 && o < 1.0) => Err(CliError::Usage(format!("order must lie in (0, 1), got {o}"))),
        other => Ok(other),
    }
}

fn default_profiles(map: &LoadedMap, order: Option<f64>) -> Vec<String> {
    match map {
        LoadedMap::Interior(_) => {
            let mut p = vec!["starlike".to_owned(), "convex".to_owned()];
            if order.is_some() {
                p.push("strongly-starlike".to_owned());
            }
            p
        }
        LoadedMap::Exterior(_) => vec!["sigma".to_owned()],
    }
}

fn interior_profile(name: &str, order: Option<f64>) -> Result<WeightProfile<f64>, CliError> {
    match name {
        "starlike" => Ok(WeightProfile::starlike()),
        "convex" => Ok(WeightProfile::convex()),
        "strongly-starlike" => {
            let order = order.ok_or_else(|| {
                CliError::Usage("profile strongly-starlike needs an order (--order or the document's `order`)".into())
            })?;
            Ok(WeightProfile::strongly_starlike(order)?)
        }
        "sigma" => Err(CliError::Usage("profile sigma applies to exterior maps only".into())),
        other => Err(CliError::Usage(format!("unknown profile `{other}`"))),
    }
}

/// Class checks for every requested profile (defaults when `profiles` is empty).
pub fn cmd_check(input: &Loaded, profiles: &[String], order: Option<f64>) -> Result<(RunReport, Outcome), CliError> {
    let order = resolve_order(&input.doc, order)?;
    let profiles = if profiles.is_empty() {
        default_profiles(&input.map, order)
    } else {
        profiles.to_vec()
    };
    let mut report = RunReport::new("check", input.doc.clone());
    let mut all_hold = true;
    match &input.map {
        LoadedMap::Interior(f) => {
            for name in &profiles {
                let r = check_membership(f, &interior_profile(name, order)?)?;
                all_hold &= r.member;
                report.class_reports.push(ClassEntry::from(&r));
            }
        }
        LoadedMap::Exterior(f) => {
            if let Some(bad) = profiles.iter().find(|p| p.as_str() != "sigma") {
                return Err(CliError::Usage(format!(
                    "profile `{bad}` applies to interior maps only"
                )));
            }
            let s = check_sigma_condition(f)?;
            all_hold &= s.member_of.is_some();
            report.sigma = Some(SigmaEntry::from(&s));
        }
    }
    let outcome = if all_hold {
        Outcome::Success
    } else {
        Outcome::ConditionNotMet
    };
    Ok((report, outcome))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub order: Option<f64>,
    pub grid_radii: usize,
    pub grid_angles: usize,
    pub r_max: f64,
    pub pairs: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            order: None,
            grid_radii: DEFAULT_RADII,
            grid_angles: DEFAULT_ANGLES,
            r_max: DEFAULT_R_MAX,
            pairs: DEFAULT_PAIRS,
            seed: 0,
        }
    }
}

fn build_extension(map: &LoadedMap) -> PlaneExtension<f64> {
    match map {
        LoadedMap::Interior(f) => extend_interior(f.clone()),
        LoadedMap::Exterior(f) => extend_exterior(f.clone()),
    }
}

/// Builds the extension, measures it and compares every measurement with its
/// analytic bound. Bounds are only enforced where they are guaranteed.
pub fn cmd_extend_verify(input: &Loaded, opts: &VerifyOptions) -> Result<(RunReport, Outcome), CliError> {
    let order = resolve_order(&input.doc, opts.order)?;
    let ext = build_extension(&input.map);
    let grid = GridSpec::both(opts.grid_radii, opts.grid_angles, opts.r_max)?;
    let v = verify_extension(&ext, &grid, opts.pairs, opts.seed, order.is_some())?;
    let bounds = ext.bounds();

    // Lipschitz constant and whether it certifies the sandwich.
    let k = match &input.map {
        LoadedMap::Interior(f) => f.lipschitz_constant(),
        LoadedMap::Exterior(f) => check_sigma_condition(f)?.minimal_k,
    };
    let alpha = ext.leading_modulus();

    let starlike_limit = match (&input.map, order) {
        (LoadedMap::Interior(f), Some(o)) => {
            let in_class =
                weighted_sum(f, &WeightProfile::strongly_starlike(o)?)? <= 1.0 + <f64 as Scalar>::class_tolerance();
            in_class.then_some(std::f64::consts::FRAC_PI_2 * o)
        }
        _ => None,
    };

    let mut violations = Vec::new();
    let mut exceeds = |what: &str, value: Option<f64>, bound: Option<f64>| {
        if let (Some(v), Some(b)) = (value, bound) {
            if v > b + VERIFY_TOLERANCE {
                violations.push(format!("{what}: measured {v} exceeds bound {b}"));
            }
        }
    };
    exceeds("inner |mu|", v.sup_mu_inner, bounds.inner);
    exceeds("outer |mu|", v.sup_mu_outer, bounds.outer);
    exceeds("starlike angle", v.max_starlike_angle, starlike_limit);
    if k < 1.0 {
        let b = v.bilipschitz;
        if b.min_ratio < (1.0 - k) * alpha - VERIFY_TOLERANCE || b.max_ratio > (1.0 + k) * alpha + VERIFY_TOLERANCE {
            violations.push(format!(
                "bi-Lipschitz ratios [{}, {}] leave [{}, {}]",
                b.min_ratio,
                b.max_ratio,
                (1.0 - k) * alpha,
                (1.0 + k) * alpha
            ));
        }
    }
    if bounds.overall().is_some_and(|b| b < 1.0) && v.min_jacobian <= 0.0 {
        violations.push(format!("Jacobian {} is not positive", v.min_jacobian));
    }

    let mut report = RunReport::new("extend-verify", input.doc.clone());
    report.extension = Some(BoundsEntry::from(bounds));
    report.verification = Some(VerificationEntry::new(&v, k, alpha, starlike_limit));
    let outcome = if violations.is_empty() {
        Outcome::Success
    } else {
        Outcome::BoundViolation
    };
    report.violations = violations;
    Ok((report, outcome))
}

pub fn cmd_render(input: &Loaded, opts: &RenderOptions) -> Result<String, CliError> {
    let ext = build_extension(&input.map);
    let mut opts = opts.clone();
    if opts.label.is_none() {
        opts.label = input.doc.label.clone();
    }
    Ok(render_svg(&ext, &opts)?)
}

pub fn cmd_convolve(first: &Loaded, second: &Loaded) -> Result<(RunReport, Outcome), CliError> {
    let (LoadedMap::Exterior(f1), LoadedMap::Exterior(f2)) = (&first.map, &second.map) else {
        return Err(CliError::Usage("convolve needs two exterior maps".into()));
    };
    let r = closure_check(f1, f2)?;
    let mut report = RunReport::new("convolve", first.doc.clone());
    report.input2 = Some(second.doc.clone());
    report.convolution = Some(ConvolutionEntry::from(&r));
    let outcome = if r.within_bound {
        Outcome::Success
    } else {
        Outcome::BoundViolation
    };
    Ok((report, outcome))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require_input(path: Option<&PathBuf>, flag: &str) -> Result<Loaded, CliError> {
    let path = path.ok_or_else(|| CliError::Usage(format!("{flag} PATH is required")))?;
    Loaded::load(path)
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let input = require_input(cli.input.as_ref(), "--input")?;
    match &cli.command {
        Command::Check => {
            let (report, outcome) = cmd_check(&input, &cli.profiles, cli.order)?;
            emit(cli.out.as_deref(), &report.to_json())?;
            Ok(outcome)
        }
        Command::ExtendVerify => {
            let opts = VerifyOptions {
                order: cli.order,
                grid_radii: cli.grid_radii,
                grid_angles: cli.grid_angles,
                r_max: cli.r_max,
                pairs: cli.pairs,
                seed: cli.seed,
            };
            let (report, outcome) = cmd_extend_verify(&input, &opts)?;
            emit(cli.out.as_deref(), &report.to_json())?;
            Ok(outcome)
        }
        Command::Render { radii, rays, samples } => {
            let opts = RenderOptions {
                radii: radii.clone(),
                rays: *rays,
                samples: *samples,
                timestamp: !cli.no_timestamp,
                label: None,
            };
            let svg = cmd_render(&input, &opts)?;
            emit(cli.out.as_deref(), &svg)?;
            Ok(Outcome::Success)
        }
        Command::Convolve => {
            let second = require_input(cli.input2.as_ref(), "--input2")?;
            let (report, outcome) = cmd_convolve(&input, &second)?;
            emit(cli.out.as_deref(), &report.to_json())?;
            Ok(outcome)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, A>(args: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { CliError::EXIT_CODE } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome as i32,
        Err(e) => {
            eprintln!("error: {e}");
            CliError::EXIT_CODE
        }
    }
}
