//! Command-line front end.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::constructor::{build_self_cheeger_with, fixture, ConstructionReport, FIXTURES};
use crate::criterion::{
    check_prescribed_curvature, check_self_cheeger, maximal_minimizer, maximal_minimizer_with_bound, CheegerStatus,
    CheegerVerdict, MaximalMinimizer, PmcStatus, PmcVerdict,
};
use crate::error::{Error, Result};
use crate::geom::{ArcPolygon, Region, TolerancePolicy, ValidationReport};
use crate::morphology::{connected_components, erode, open, symmetric_difference_area, RegionSet};
use crate::oracle::{cheeger_estimate, CheegerEstimate};
use crate::report::{emit_json, render_svg, write_text, Scene};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_REGION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_DETERMINED: i32 = 3;
pub const EXIT_CONSTRUCTION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cheeger", version, about = "Self-Cheeger tests for planar arc-polygon domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a shape is (minimal) self-Cheeger
    Analyze(AnalyzeArgs),
    /// Build a self-Cheeger set around an inner set
    Construct(ConstructArgs),
    /// Bracket the Cheeger constant on a pixel grid
    Oracle(OracleArgs),
    /// Draw a shape with its inner parallel set and opening
    Render(RenderArgs),
    /// Write a catalog shape, or list the catalog
    Fixtures(FixtureArgs),
    /// Inner parallel set at a radius
    Erode(MorphArgs),
    /// Opening by a disk
    Open(MorphArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ShapeInput {
    /// Shape JSON file
    #[arg(long)]
    pub input: PathBuf,
    /// Relative area tolerance for set equality [default: 1e-7]
    #[arg(long, value_name = "TAU")]
    pub tol_set: Option<f64>,
    /// Absolute length tolerance for snapping and contacts [default: 1e-9]
    #[arg(long, value_name = "TAU")]
    pub tol_geom: Option<f64>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub shape: ShapeInput,
    /// Also test P(E) - kappa|E|
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Inner set: shape JSON or region-set JSON
    #[arg(long)]
    pub input: PathBuf,
    /// Relative area tolerance for set equality [default: 1e-7]
    #[arg(long, value_name = "TAU")]
    pub tol_set: Option<f64>,
    /// Absolute length tolerance for snapping and contacts [default: 1e-9]
    #[arg(long, value_name = "TAU")]
    pub tol_geom: Option<f64>,
    /// Report
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Shape JSON of the built set
    #[arg(long)]
    pub shape: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub shape: ShapeInput,
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Minimizer mask as binary PGM
    #[arg(long)]
    pub pgm: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub shape: ShapeInput,
    /// Verdict JSON whose `R` sets the radius
    #[arg(long)]
    pub verdict: Option<PathBuf>,
    /// Radius (defaults to area/perimeter)
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FixtureArgs {
    /// Fixture name; lists the catalog when absent
    #[arg(long)]
    pub name: Option<String>,
    /// Comma-separated parameters
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Vec<f64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MorphArgs {
    #[command(flatten)]
    pub shape: ShapeInput,
    #[arg(long)]
    pub radius: f64,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Exit code for a failed command.
pub fn exit_code(command: &Command, err: &Error) -> i32 {
    match err {
        Error::InvalidRegion(_) => EXIT_INVALID_REGION,
        Error::Io(_) | Error::Json(_) | Error::BadParameter(_) | Error::ResolutionTooLow { .. } => EXIT_USAGE,
        Error::UnknownFixture(_) | Error::BadFixtureParams(_) => EXIT_USAGE,
        _ if matches!(command, Command::Construct(_)) => EXIT_CONSTRUCTION,
        Error::DegenerateInnerSet | Error::ReachTooSmall(_) | Error::NotSimplyConnected | Error::Disconnected(_) => {
            EXIT_CONSTRUCTION
        }
        Error::NumericalDegeneracy(_) => EXIT_NOT_DETERMINED,
        _ => EXIT_USAGE,
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

/// Parses arguments and runs one command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&cli.command, &e);
            eprintln!("error: {e}");
            if let (Command::Construct(a), false) = (&cli.command, matches!(e, Error::Io(_) | Error::Json(_))) {
                let rep = ErrorReport { error: e.name(), message: e.to_string() };
                if let Err(w) = emit_json(&rep, a.json.as_deref()) {
                    eprintln!("error: {w}");
                }
            }
            code
        }
    }
}

fn dispatch(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Render(a) => cmd_render(a),
        Command::Fixtures(a) => cmd_fixtures(a),
        Command::Erode(a) => cmd_erode(a),
        Command::Open(a) => cmd_open(a),
    }
}

fn tolerances(tol_set: Option<f64>, tol_geom: Option<f64>) -> Result<TolerancePolicy> {
    let mut t = TolerancePolicy::default();
    if let Some(s) = tol_set {
        t.tau_set = s;
    }
    if let Some(g) = tol_geom {
        t.tau_geom = g;
    }
    t.check()?;
    Ok(t)
}

/// Reads a shape JSON file into a validated region.
pub fn read_region(input: &ShapeInput) -> Result<Region> {
    let text = std::fs::read_to_string(&input.input)?;
    let poly: ArcPolygon = serde_json::from_str(&text)?;
    Region::new(poly, tolerances(input.tol_set, input.tol_geom)?)
}

/// Reads either a region-set JSON or a single shape JSON.
pub fn read_region_set(path: &Path) -> Result<RegionSet> {
    let text = std::fs::read_to_string(path)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    if v.get("edges").is_some() {
        Ok(RegionSet::body(serde_json::from_value(v)?))
    } else {
        Ok(serde_json::from_value(v)?)
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    validation: ValidationReport,
    #[serde(flatten)]
    verdict: CheegerVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    prescribed_curvature: Option<PmcVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maximal_minimizer: Option<MaximalMinimizer>,
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<i32> {
    let region = read_region(&a.shape)?;
    let verdict = check_self_cheeger(&region)?;
    let pmc = a.kappa.map(|k| check_prescribed_curvature(&region, k)).transpose()?;
    let maximal = match (a.kappa, verdict.h) {
        (Some(k), h) => maximal_minimizer(&region, k).or_else(|e| match h {
            Some(h) => maximal_minimizer_with_bound(&region, k, h),
            None => Err(e),
        }),
        (None, _) => Err(Error::PreconditionFailed(String::new())),
    }
    .ok();
    let code = match &pmc {
        Some(p) if matches!(p.status, PmcStatus::NotDetermined | PmcStatus::NotApplicable) => EXIT_NOT_DETERMINED,
        Some(_) => EXIT_OK,
        None if verdict.status == CheegerStatus::NotDetermined => EXIT_NOT_DETERMINED,
        None => EXIT_OK,
    };
    if let Some(svg) = &a.svg {
        let scene = Scene::for_radius(&region, verdict.r)?;
        write_text(&render_svg(&region, &scene), Some(svg))?;
    }
    let report =
        AnalyzeReport { validation: region.validate(), verdict, prescribed_curvature: pmc, maximal_minimizer: maximal };
    emit_json(&report, a.json.as_deref())?;
    Ok(code)
}

fn cmd_construct(a: &ConstructArgs) -> Result<i32> {
    let omega = read_region_set(&a.input)?;
    let tol = tolerances(a.tol_set, a.tol_geom)?;
    let rep: ConstructionReport = build_self_cheeger_with(&omega, tol)?;
    emit_json(&rep, a.json.as_deref())?;
    if let Some(p) = &a.shape {
        emit_json(&rep.big_omega, Some(p))?;
    }
    if let Some(svg) = &a.svg {
        let scene = Scene { inner: Some(rep.omega.clone()), minimizer: Some(RegionSet::from(&rep.big_omega)) };
        write_text(&render_svg(&rep.big_omega, &scene), Some(svg))?;
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(a: &OracleArgs) -> Result<i32> {
    let region = read_region(&a.shape)?;
    let est: CheegerEstimate = cheeger_estimate(&region, a.resolution)?;
    if let Some(p) = &a.pgm {
        est.minimizer_pixels.write_pgm(p)?;
    }
    emit_json(&est, a.json.as_deref())?;
    Ok(EXIT_OK)
}

fn radius_from_verdict(path: &Path) -> Result<f64> {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    v.get("R")
        .and_then(serde_json::Value::as_f64)
        .ok_or_else(|| Error::BadParameter(format!("{} has no numeric field R", path.display())))
}

fn cmd_render(a: &RenderArgs) -> Result<i32> {
    let region = read_region(&a.shape)?;
    let r = match (a.radius, &a.verdict) {
        (Some(r), _) => r,
        (None, Some(v)) => radius_from_verdict(v)?,
        (None, None) => region.area() / region.perimeter(),
    };
    let scene = Scene::for_radius(&region, r)?;
    write_text(&render_svg(&region, &scene), a.svg.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CatalogEntry {
    name: &'static str,
    params: &'static [&'static str],
    defaults: &'static [f64],
}

fn cmd_fixtures(a: &FixtureArgs) -> Result<i32> {
    let Some(name) = &a.name else {
        let list: Vec<CatalogEntry> =
            FIXTURES.iter().map(|f| CatalogEntry { name: f.name, params: f.params, defaults: f.defaults }).collect();
        emit_json(&list, a.json.as_deref())?;
        return Ok(EXIT_OK);
    };
    let region = fixture(name, &a.params)?;
    emit_json(&region, a.json.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ErodeReport {
    radius: f64,
    components: usize,
    area: f64,
    curve_length: f64,
    set: RegionSet,
}

fn cmd_erode(a: &MorphArgs) -> Result<i32> {
    let region = read_region(&a.shape)?;
    let set = erode(&region, a.radius)?;
    let rep = ErodeReport {
        radius: a.radius,
        components: connected_components(&set, region.tolerance().tau_geom).count,
        area: set.area(),
        curve_length: set.curve_length(),
        set,
    };
    if let Some(svg) = &a.svg {
        let scene = Scene { inner: Some(rep.set.clone()), minimizer: None };
        write_text(&render_svg(&region, &scene), Some(svg))?;
    }
    emit_json(&rep, a.json.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct OpenReport {
    radius: f64,
    area: f64,
    relative_symdiff: f64,
    equal: bool,
    set: RegionSet,
}

fn cmd_open(a: &MorphArgs) -> Result<i32> {
    let region = read_region(&a.shape)?;
    let set = open(&region, a.radius)?;
    let tol = region.tolerance();
    let rel = symmetric_difference_area(&set, &RegionSet::from(&region), tol) / region.area();
    let rep = OpenReport { radius: a.radius, area: set.area(), relative_symdiff: rel, equal: rel <= tol.tau_set, set };
    if let Some(svg) = &a.svg {
        let scene = Scene { inner: None, minimizer: Some(rep.set.clone()) };
        write_text(&render_svg(&region, &scene), Some(svg))?;
    }
    emit_json(&rep, a.json.as_deref())?;
    Ok(EXIT_OK)
}
