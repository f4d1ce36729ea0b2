//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cheeger::constructor::{build_self_cheeger, fixture, fixture_names};
use cheeger::criterion::{
    check_self_cheeger, inradius, rolling_disk, strict_rolling_disk, CheegerStatus, UniquenessRoute,
};
use cheeger::geom::json::to_json_string;
use cheeger::morphology::{dilate, erode, intersection_area, open, symmetric_difference_area, RegionSet};
use cheeger::oracle::{cheeger_estimate, pmc_minimize_grid, BinaryGrid, Stencil};
use cheeger::{ArcPolygon, Point, Region, TolerancePolicy};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde_json::Value;

use common::{brute_force, random_convex, PATTERNS};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Check + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cheeger")).args(args).output().map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("killed by a signal")?;
    let v = serde_json::from_slice(&out.stdout).map_err(|e| format!("exit {code}, bad JSON on stdout: {e}"))?;
    Ok((code, v))
}

fn write_shape(dir: &Path, name: &str, poly: &ArcPolygon) -> PathBuf {
    let p = dir.join(format!("{name}.json"));
    std::fs::write(&p, to_json_string(poly).unwrap()).unwrap();
    p
}

fn fixture_file(dir: &Path, name: &str) -> PathBuf {
    write_shape(dir, name, fixture(name, &[]).unwrap().outer())
}

fn num(v: &Value, key: &str) -> Result<f64, String> {
    v[key].as_f64().ok_or_else(|| format!("missing number {key}"))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn unit_disk(dir: &Path) -> Check {
    let (code, v) = cli(&["analyze", "--input", fixture_file(dir, "disk").to_str().unwrap()])?;
    ensure!(code == 0, "exit code {code}");
    ensure!(v["status"] == "MINIMAL_CHEEGER", "status {}", v["status"]);
    let h = num(&v, "h")?;
    ensure!((h - 2.0).abs() <= 1e-9, "h = {h}");
    ensure!(v["uniqueness_route"] == "STRICT", "route {}", v["uniqueness_route"]);
    Ok(format!("h = {h}"))
}

fn constructor_on_square(dir: &Path) -> Check {
    let omega = ArcPolygon::from_vertices(&[
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ]);
    let input = write_shape(dir, "omega", &omega);
    let built = dir.join("built.json");
    let (code, v) = cli(&["construct", "--input", input.to_str().unwrap(), "--shape", built.to_str().unwrap()])?;
    ensure!(code == 0, "exit code {code}");
    let r = num(&v, "R")?;
    ensure!((r - 1.0 / PI.sqrt()).abs() <= 1e-12, "R = {r}");
    let h = num(&v["verdict"], "h")?;
    ensure!((h - PI.sqrt()).abs() <= 1e-9, "h = {h}");
    let (ra, rp) = (num(&v, "steiner_area_residual")?, num(&v, "steiner_perimeter_residual")?);
    ensure!(ra < 1e-9 && rp < 1e-9, "residuals {ra:e}, {rp:e}");
    let (code, w) = cli(&["analyze", "--input", built.to_str().unwrap()])?;
    ensure!(code == 0, "re-analysis exit code {code}");
    ensure!(w["status"] == "MINIMAL_CHEEGER", "re-analysis status {}", w["status"]);
    let h2 = num(&w, "h")?;
    ensure!((h2 - h).abs() <= 1e-9, "re-analysis h = {h2}");
    Ok(format!("R = {r}, h = {h}, residuals {ra:.1e}/{rp:.1e}"))
}

fn unit_square(dir: &Path) -> Check {
    let input = fixture_file(dir, "square");
    let (code, v) = cli(&["analyze", "--input", input.to_str().unwrap()])?;
    ensure!(code == 3, "exit code {code}");
    ensure!(v["status"] == "NOT_DETERMINED", "status {}", v["status"]);
    ensure!(v["convex_flag"] == true, "convex_flag {}", v["convex_flag"]);
    // smallest root of (1 - 2r)^2 = pi r^2
    let r = (4.0 - (16.0 - 4.0 * (4.0 - PI)).sqrt()) / (2.0 * (4.0 - PI));
    let (h, closed) = (1.0 / r, 2.0 + PI.sqrt());
    ensure!(rel(h, closed) <= 1e-12, "quadratic root {h} vs {closed}");
    let (code, e) = cli(&["oracle", "--input", input.to_str().unwrap(), "--resolution", "512"])?;
    ensure!(code == 0, "oracle exit code {code}");
    let (lo, hi) = (num(&e, "h_lo")?, num(&e, "h_hi")?);
    ensure!(lo <= h && h <= hi, "[{lo}, {hi}] misses {h}");
    let width = (hi - lo) / (0.5 * (lo + hi));
    ensure!(width <= 0.03, "relative width {width}");
    Ok(format!("[{lo:.6}, {hi:.6}] contains {h:.7}, width {:.2}%", 100.0 * width))
}

fn stadium() -> Check {
    let region = fixture("stadium", &[1.0, 2.0]).map_err(|e| e.to_string())?;
    let v = check_self_cheeger(&region).map_err(|e| e.to_string())?;
    let exact = (2.0 * PI + 4.0) / (PI + 4.0);
    ensure!(v.status == CheegerStatus::MinimalCheeger, "status {:?}", v.status);
    ensure!(v.uniqueness_route == UniquenessRoute::Strict, "route {:?}", v.uniqueness_route);
    let h = v.h.unwrap();
    ensure!((h - exact).abs() <= 1e-9, "h = {h}");
    let e = cheeger_estimate(&region, 512).map_err(|e| e.to_string())?;
    ensure!(e.contains(exact), "[{}, {}] misses {exact}", e.h_lo, e.h_hi);
    Ok(format!("h = {h:.10}, oracle [{:.6}, {:.6}]", e.h_lo, e.h_hi))
}

fn pinocchio() -> Check {
    let region = fixture("pinocchio", &[]).map_err(|e| e.to_string())?;
    let v = check_self_cheeger(&region).map_err(|e| e.to_string())?;
    ensure!(v.status == CheegerStatus::SelfCheeger, "status {:?}", v.status);
    let inner = erode(&region, v.r).map_err(|e| e.to_string())?;
    ensure!(inner.bodies.len() == 1, "{} bodies", inner.bodies.len());
    ensure!(inner.curves.len() == 1, "{} curves", inner.curves.len());
    ensure!(inner.points.is_empty(), "{} isolated points", inner.points.len());
    let back = dilate(&inner, v.r, region.tolerance()).map_err(|e| e.to_string())?;
    let d = symmetric_difference_area(&back, &RegionSet::from(&region), region.tolerance()) / region.area();
    ensure!(d <= 1e-7, "relative symmetric difference {d:e}");
    let strict = strict_rolling_disk(&region, v.r).map_err(|e| e.to_string())?;
    ensure!(!strict, "strict rolling disk holds");
    Ok(format!("R = {:.6}, spine length {:.6}, symdiff {d:.1e}", v.r, inner.curves[0].length()))
}

fn bowtie() -> Check {
    let region = fixture("bowtie", &[]).map_err(|e| e.to_string())?;
    let v = check_self_cheeger(&region).map_err(|e| e.to_string())?;
    ensure!(!v.diagnostics.no_necks, "no necks reported");
    ensure!(v.diagnostics.components == 2, "{} components", v.diagnostics.components);
    ensure!(v.status == CheegerStatus::NotDetermined, "status {:?}", v.status);
    Ok(format!("R = {:.6}, 2 components", v.r))
}

fn double_bubble() -> Check {
    let region = fixture("double_bubble", &[]).map_err(|e| e.to_string())?;
    let v = check_self_cheeger(&region).map_err(|e| e.to_string())?;
    let strict = strict_rolling_disk(&region, v.r).map_err(|e| e.to_string())?;
    ensure!(!strict, "strict rolling disk holds");
    ensure!(v.diagnostics.closure_of_interior, "inner set is not full-bodied");
    ensure!(v.status == CheegerStatus::MinimalCheeger, "status {:?}", v.status);
    ensure!(v.uniqueness_route == UniquenessRoute::InteriorClosure, "route {:?}", v.uniqueness_route);
    Ok(format!("R = {:.6}", v.r))
}

fn oracle_soundness() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for k in 0..10 {
        let omega = RegionSet::body(random_convex(&mut rng));
        let rep = build_self_cheeger(&omega).map_err(|e| format!("sample {k}: {e}"))?;
        let h = rep.h();
        let e = cheeger_estimate(&rep.big_omega, 512).map_err(|e| format!("sample {k}: {e}"))?;
        ensure!(e.contains(h), "sample {k}: [{}, {}] misses {h}", e.h_lo, e.h_hi);
        let width = (e.h_hi - e.h_lo) / h;
        ensure!(width <= 0.03, "sample {k}: width {width}");
        worst = worst.max(width);
    }
    Ok(format!("10 samples, widest interval {:.2}% of h", 100.0 * worst))
}

fn brute_force_equivalence() -> Check {
    let mut n = 0;
    for rows in &PATTERNS {
        let g = BinaryGrid::from_rows(rows, 1.0);
        for kappa in [0.5, 1.0, 2.0] {
            let m = pmc_minimize_grid(&g, kappa);
            let (best, _) = brute_force(&g, kappa, Stencil::Sixteen);
            ensure!(m.value == best, "{rows:?} at kappa {kappa}: {} vs {best}", m.value);
            n += 1;
        }
    }
    Ok(format!("{n} cases"))
}

fn catalog() -> Vec<Region> {
    fixture_names().map(|n| fixture(n, &[]).unwrap()).collect()
}

fn property_suites() -> Check {
    let mut rng = StdRng::seed_from_u64(10);
    let tol = TolerancePolicy::default();
    let convex: Vec<Region> =
        (0..100).map(|_| Region::with_default_tolerance(random_convex(&mut rng)).unwrap()).collect();
    let catalog = catalog();
    let err = |e: cheeger::Error| e.to_string();

    for (k, r) in catalog.iter().enumerate() {
        let rho = inradius(r).map_err(err)?;
        for _ in 0..4 {
            let (u, v) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
            let (a, b) = (f64::min(u, v) * rho, f64::max(u, v) * rho);
            let (ea, eb) = (erode(r, a).map_err(err)?, erode(r, b).map_err(err)?);
            let lost = eb.area() - intersection_area(&eb, &ea, &tol);
            ensure!(lost.abs() <= 1e-7 * r.area(), "erosion monotonicity, fixture {k}, radii {a} < {b}: {lost:e}");
            for p in
                eb.curves.iter().flat_map(|c| c.edges.iter().map(|e| e.midpoint())).chain(eb.points.iter().copied())
            {
                ensure!(ea.contains(p, 1e-7), "erosion monotonicity, fixture {k}: {p:?} escapes");
            }

            let d = rng.random_range(0.02..1.0) * rho;
            let o = open(r, d).map_err(err)?;
            let outside = o.area() - intersection_area(&o, &RegionSet::from(r), &tol);
            ensure!(outside.abs() <= 1e-7 * r.area(), "opening anti-extensivity, fixture {k}: {outside:e}");
            for body in &o.bodies {
                let piece = Region::with_default_tolerance(body.clone()).map_err(err)?;
                let again = open(&piece, d).map_err(err)?;
                let diff = symmetric_difference_area(&again, &RegionSet::body(body.clone()), &tol);
                ensure!(diff <= 1e-7 * r.area(), "opening idempotence, fixture {k}, radius {d}: {diff:e}");
            }
        }
    }

    for (k, r) in catalog.iter().chain(&convex).enumerate() {
        let (a, p) = (r.area(), r.perimeter());
        ensure!(p * p >= 4.0 * PI * a * (1.0 - 1e-12), "isoperimetric inequality, shape {k}");
        let theta = rng.random_range(0.0..2.0 * PI);
        let t = Point::new(rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0));
        let m = r.transformed(1.0, theta, t).map_err(err)?;
        ensure!(rel(m.area(), a) <= 1e-9 && rel(m.perimeter(), p) <= 1e-9, "rigid-motion invariance, shape {k}");
    }

    for (k, r) in convex.iter().enumerate() {
        let d = rng.random_range(0.01..3.0);
        let sum = dilate(&RegionSet::from(r), d, &tol).map_err(err)?;
        let (a, p) = (r.area(), r.perimeter());
        let sum_p: f64 = sum.loops().map(ArcPolygon::perimeter).sum();
        ensure!(rel(sum.area(), a + p * d + PI * d * d) <= 1e-7, "Steiner area, body {k}");
        ensure!(rel(sum_p, p + 2.0 * PI * d) <= 1e-7, "Steiner perimeter, body {k}");
    }

    let mut strict_checks = 0;
    for (k, r) in catalog.iter().enumerate() {
        let big = r.area() / r.perimeter();
        if !rolling_disk(r, big).map_err(err)?.holds {
            continue;
        }
        for _ in 0..5 {
            let s = rng.random_range(0.05..0.98) * big;
            ensure!(rolling_disk(r, s).map_err(err)?.holds, "rolling disk lost at {s}, fixture {k}");
            ensure!(strict_rolling_disk(r, s).map_err(err)?, "strictness fails at {s} < {big}, fixture {k}");
            strict_checks += 1;
        }
    }
    Ok(format!("{} fixtures, {} convex bodies, {strict_checks} strictness samples", catalog.len(), convex.len()))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temporary directory");
    let d = dir.path();
    let criteria: Vec<Criterion> = vec![
        ("unit disk is a minimal Cheeger set", Duration::from_secs(1), Box::new(|| unit_disk(d))),
        ("construction from the unit square", Duration::from_secs(1), Box::new(|| constructor_on_square(d))),
        (
            "unit square is undetermined, oracle brackets 2 + sqrt(pi)",
            Duration::from_secs(60),
            Box::new(|| unit_square(d)),
        ),
        ("stadium is a minimal Cheeger set", Duration::from_secs(60), Box::new(stadium)),
        ("pinocchio is self-Cheeger but not minimal", Duration::from_secs(5), Box::new(pinocchio)),
        ("bow-tie has a neck and stays undetermined", Duration::from_secs(5), Box::new(bowtie)),
        ("double bubble is unique through interior closure", Duration::from_secs(5), Box::new(double_bubble)),
        ("oracle brackets constructed sets", Duration::from_secs(600), Box::new(oracle_soundness)),
        ("min cut equals enumeration on 4x4 grids", Duration::from_secs(120), Box::new(brute_force_equivalence)),
        ("property suites", Duration::from_secs(600), Box::new(property_suites)),
    ];
    let mut failed = 0;
    for (k, (name, budget, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let dt = t.elapsed();
        let outcome = match outcome {
            Ok(msg) if dt > *budget => Err(format!("{msg}; took {dt:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name} ({dt:.2?}): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({dt:.2?}): {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        println!("all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
