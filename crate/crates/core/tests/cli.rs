use std::path::{Path, PathBuf};
use std::process::Command;

use cheeger::constructor::fixture_names;
use cheeger::geom::json::to_json_string;
use cheeger::ArcPolygon;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cheeger"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn write_fixture(dir: &Path, name: &str) -> PathBuf {
    let p = dir.join(format!("{name}.json"));
    let (code, _) = run(&["fixtures", "--name", name, "--json", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    p
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    let disk = write_fixture(dir.path(), "disk");
    let (code, out) = run(&["analyze", "--input", disk.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["status"], "MINIMAL_CHEEGER");
    assert!((v["h"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(v["uniqueness_route"], "STRICT");
    assert!(v["tolerances"]["tau_set"].is_number());

    let square = write_fixture(dir.path(), "square");
    let (code, out) = run(&["analyze", "--input", square.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["status"], "NOT_DETERMINED");
    assert_eq!(json(&out)["convex_flag"], true);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"edges\": [").unwrap();
    assert_eq!(run(&["analyze", "--input", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["analyze", "--input", dir.path().join("missing.json").to_str().unwrap()]).0, 2);

    let open = dir.path().join("open.json");
    std::fs::write(
        &open,
        r#"{"edges":[{"type":"segment","from":[0,0],"to":[1,0]},{"type":"segment","from":[1,0],"to":[1,1]}]}"#,
    )
    .unwrap();
    assert_eq!(run(&["analyze", "--input", open.to_str().unwrap()]).0, 1);
}

#[test]
fn analyze_with_kappa() {
    let dir = tempfile::tempdir().unwrap();
    let disk = write_fixture(dir.path(), "disk");
    let (code, out) = run(&["analyze", "--input", disk.to_str().unwrap(), "--kappa", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["prescribed_curvature"]["status"], "UNIQUE_MINIMIZER");
    assert!((v["maximal_minimizer"]["area"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-9);
    let (code, out) = run(&["analyze", "--input", disk.to_str().unwrap(), "--kappa", "1"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["prescribed_curvature"]["status"], "NOT_APPLICABLE");
}

#[test]
fn construct_examples() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_fixture(dir.path(), "square");
    let shape = dir.path().join("omega.json");
    let (code, out) = run(&["construct", "--input", square.to_str().unwrap(), "--shape", shape.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!((v["R"].as_f64().unwrap() - 0.5641895835477563).abs() < 1e-12);
    let (code, out) = run(&["analyze", "--input", shape.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((json(&out)["h"].as_f64().unwrap() - 1.7724538509055159).abs() < 1e-9);

    let disk = write_fixture(dir.path(), "disk");
    let (code, out) = run(&["construct", "--input", disk.to_str().unwrap()]);
    assert_eq!(code, 0);
    let big: ArcPolygon = serde_json::from_value(json(&out)["Omega"].clone()).unwrap();
    assert!((big.signed_area() - 4.0 * std::f64::consts::PI).abs() < 1e-9);

    let two = dir.path().join("two.json");
    std::fs::write(
        &two,
        r#"{"bodies":[{"edges":[{"type":"segment","from":[0,0],"to":[1,0]},{"type":"segment","from":[1,0],"to":[0,1]},{"type":"segment","from":[0,1],"to":[0,0]}]},
        {"edges":[{"type":"segment","from":[3,0],"to":[4,0]},{"type":"segment","from":[4,0],"to":[3,1]},{"type":"segment","from":[3,1],"to":[3,0]}]}]}"#,
    )
    .unwrap();
    let (code, out) = run(&["construct", "--input", two.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert_eq!(json(&out)["error"], "Disconnected");
}

#[test]
fn oracle_rejects_low_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let disk = write_fixture(dir.path(), "disk");
    assert_eq!(run(&["oracle", "--input", disk.to_str().unwrap(), "--resolution", "8"]).0, 2);
    let (code, out) = run(&["oracle", "--input", disk.to_str().unwrap(), "--resolution", "128"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["h_lo"].as_f64().unwrap() <= 2.0 && 2.0 <= v["h_hi"].as_f64().unwrap());
    assert_eq!(v["resolution"], 128);
}

#[test]
fn render_layers() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_fixture(dir.path(), "pinocchio");
    let svg = dir.path().join("p.svg");
    assert_eq!(run(&["render", "--input", p.to_str().unwrap(), "--svg", svg.to_str().unwrap()]).0, 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    let inner = &text[text.find("id=\"inner\"").unwrap()..];
    let inner = &inner[..inner.find("</g>").unwrap()];
    assert!(inner.contains("class=\"spine\""));
    assert!(text.contains("id=\"omega\"") && text.contains("id=\"minimizer\""));
    // identical bytes on a second run
    let (_, again) = run(&["render", "--input", p.to_str().unwrap()]);
    assert_eq!(again, text);

    let disk = write_fixture(dir.path(), "disk");
    let (_, text) = run(&["render", "--input", disk.to_str().unwrap()]);
    let path_of = |id: &str| {
        let g = &text[text.find(&format!("id=\"{id}\"")).unwrap()..];
        let d = &g[g.find(" d=\"").unwrap() + 4..];
        d[..d.find('"').unwrap()].to_string()
    };
    assert_eq!(path_of("omega"), path_of("minimizer"));

    let (code, text) = run(&["render", "--input", disk.to_str().unwrap(), "--radius", "1.5"]);
    assert_eq!(code, 0);
    assert!(!text.contains("id=\"inner\""));

    let verdict = dir.path().join("v.json");
    std::fs::write(&verdict, r#"{"R": 0.25}"#).unwrap();
    let (code, _) = run(&["render", "--input", disk.to_str().unwrap(), "--verdict", verdict.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn fixture_catalog() {
    let (code, out) = run(&["fixtures"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out).as_array().unwrap().len(), fixture_names().count());
    for name in ["bowtie", "double_bubble"] {
        let (code, out) = run(&["fixtures", "--name", name]);
        assert_eq!(code, 0);
        let _: ArcPolygon = serde_json::from_str(&out).unwrap();
    }
    assert_eq!(run(&["fixtures", "--name", "nosuch"]).0, 2);
    assert_eq!(run(&["fixtures", "--name", "disk", "--params", "-1"]).0, 2);
    let (code, out) = run(&["fixtures", "--name", "rectangle", "--params", "3,1"]);
    assert_eq!(code, 0);
    let p: ArcPolygon = serde_json::from_str(&out).unwrap();
    assert!((p.signed_area() - 3.0).abs() < 1e-12);
}

#[test]
fn shape_json_round_trip_is_idempotent() {
    for name in fixture_names() {
        let (_, first) = run(&["fixtures", "--name", name]);
        let p: ArcPolygon = serde_json::from_str(&first).unwrap();
        let once = to_json_string(&p).unwrap();
        let q: ArcPolygon = serde_json::from_str(&once).unwrap();
        assert_eq!(to_json_string(&q).unwrap(), once, "{name}");
        assert_eq!(once, first, "{name}");
    }
}

#[test]
fn exit_codes_over_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    for name in fixture_names() {
        let p = write_fixture(dir.path(), name);
        let (code, out) = run(&["analyze", "--input", p.to_str().unwrap()]);
        let status = json(&out)["status"].as_str().unwrap().to_string();
        let expected = if status == "NOT_DETERMINED" { 3 } else { 0 };
        assert_eq!(code, expected, "{name}");
    }
}

#[test]
fn erode_and_open() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_fixture(dir.path(), "pinocchio");
    let (_, out) = run(&["analyze", "--input", p.to_str().unwrap()]);
    let r = json(&out)["R"].as_f64().unwrap().to_string();
    let (code, out) = run(&["erode", "--input", p.to_str().unwrap(), "--radius", &r]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["components"], 1);
    assert_eq!(v["set"]["curves"].as_array().unwrap().len(), 1);
    let (code, out) = run(&["open", "--input", p.to_str().unwrap(), "--radius", &r]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["equal"], true);
    let sq = write_fixture(dir.path(), "square");
    let (_, out) = run(&["open", "--input", sq.to_str().unwrap(), "--radius", "0.2"]);
    assert_eq!(json(&out)["equal"], false);
    assert_eq!(run(&["erode", "--input", sq.to_str().unwrap(), "--radius", "-1"]).0, 2);
    assert_eq!(run(&["analyze", "--input", sq.to_str().unwrap(), "--tol-set", "-1"]).0, 2);
}
