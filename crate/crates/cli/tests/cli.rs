use std::path::PathBuf;
use std::process::{Command, Output};

use ewalk::report::*;
use ewalk_core::format;

const H: &str = "0.7071067811865476";

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ewalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ewalk")).args(args).env_remove("EW_BUDGET").output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = ewalk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str], code: i32) -> String {
    let out = ewalk(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stderr).unwrap()
}

fn json<T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(text: &str) -> T {
    let value: T = serde_json::from_str(text).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(value, again);
    value
}

#[test]
fn projective_plane_file() {
    let r: FacesReport = json(&ok(&["faces", &data("k4_projective.rot")]));
    assert_eq!(r.lengths, vec![6, 3, 3]);
    assert!(!r.orientable);
    assert_eq!(r.surface.label, "k=1");
    assert_eq!(r.euler_characteristic, 1);
    let six = r.faces.iter().find(|f| f.length == 6).unwrap();
    assert_eq!(six.walk.len(), 6);
    let source = format::parse(&std::fs::read_to_string(data("k4_projective.rot")).unwrap()).unwrap();
    assert_eq!(format::parse(&r.system).unwrap(), source);
}

#[test]
fn planar_four_cycle() {
    let r: GenusReport = json(&ok(&["genus", &data("c4.rot")]));
    assert_eq!(r.surface.label, "g=0");
    assert_eq!(r.faces, 2);
    let f: FacesReport = json(&ok(&["faces", "C4"]));
    assert_eq!(f.lengths, vec![4, 4]);
}

#[test]
fn orientability_report() {
    let r: OrientableReport = json(&ok(&["orientable", &data("k4_projective.rot")]));
    assert_eq!((r.orientable, r.double_cover, r.scattering), (false, false, Some(false)));
    let r: OrientableReport = json(&ok(&["orientable", &data("k4_sphere.rot")]));
    assert_eq!((r.orientable, r.double_cover, r.scattering), (true, true, Some(true)));
}

#[test]
fn parse_errors_exit_2() {
    let err = fails(&["faces", &data("malformed.rot")], 2);
    assert!(err.contains("line 11"), "{err}");
    fails(&["faces", &data("missing.rot")], 2);
    fails(&["comfort", "K4", "--a", "0.5", "--b", "0.5"], 2);
}

#[test]
fn assumption_errors_exit_3() {
    let neg = format!("0,-{H}");
    let pos = format!("0,{H}");
    let err = fails(&["scatter", "K4", "--a", H, "--b", H, "--c", &neg, "--d", &pos], 3);
    assert!(err.contains("d real"), "{err}");
    let err = fails(&["scatter", "K4", "--a", "0.5", "--b", "0.5", "--c", "0.5", "--d", "0.5"], 3);
    assert!(err.contains("unitary"), "{err}");
}

#[test]
fn non_convergence_exits_4() {
    let err = fails(&["simulate", "K4", "--max-steps", "1"], 4);
    assert!(err.contains("residual"), "{err}");
}

#[test]
fn budget_exits_5() {
    fails(&["enumerate", "K6"], 5);
    let out = Command::new(env!("CARGO_BIN_EXE_ewalk")).args(["enumerate", "K4"]).env("EW_BUDGET", "100").output().unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn ranking_reproduces_endpoints() {
    let csv = ok(&["rank", "K4", "--a", "0.98"]);
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let header = reader.headers().unwrap().clone();
    let surface = header.iter().position(|h| h == "surface").unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(&rows[0][surface], "g=0");
    assert_eq!(&rows[10][surface], "k=3");

    let r: EnumerateReport = json(&ok(&["rank", "K4", "--format", "json"]));
    assert_eq!(r.ranked_at, Some(0.98));
    assert_eq!(r.rows.iter().map(|c| c.orbit_size).sum::<usize>(), 1024);
    assert!(r.rows.windows(2).all(|w| w[0].comfort[0] >= w[1].comfort[0]));
}

#[test]
fn enumeration_contains_named_classes() {
    let r: EnumerateReport = json(&ok(&["enumerate", "K4", "--format", "json", "--grid", "3"]));
    assert_eq!(r.a, vec![0.25, 0.5, 0.75]);
    let has = |s: &str, f: &[usize]| r.rows.iter().any(|c| c.surface == s && c.faces == f);
    assert!(has("g=0", &[3, 3, 3, 3]));
    assert!(has("k=1", &[6, 3, 3]));
    assert!(has("k=2", &[8, 4]));
    assert!(has("g=1", &[9, 3]));
    assert!(r.rows.iter().all(|c| c.rank.is_none() && c.comfort.len() == 3));
}

#[test]
fn comfortability_examples() {
    let r: ComfortReport = json(&ok(&["comfort", &data("k4_sphere.rot"), "--limit"]));
    assert!((r.limit.unwrap() - 2.0 / 3.0).abs() < 1e-12);
    let r: ComfortReport = json(&ok(&["comfort", "K4", "--a", "1e-6", "--inflow", "uniform"]));
    assert!((r.average.unwrap().value - 3.0).abs() < 1e-4);
    let r: ComfortReport = json(&ok(&["comfort", "K4", "--inflow", "zero"]));
    assert_eq!(r.comfort.unwrap().total, 0.0);
    let r: ComfortReport = json(&ok(&["comfort", "K4", "--inflow", "7"]));
    let c = r.comfort.unwrap();
    assert!((c.total - c.island - c.bridge).abs() < 1e-12);
}

#[test]
fn scattering_dump() {
    let text = ok(&["scatter", &data("k4_sphere.rot")]);
    let r: ScatterReport = json(&text);
    assert_eq!(r.dim, 24);
    assert_eq!(r.blocks.len(), 8);
    assert!(r.blocks.iter().all(|b| b.matrix.len() == 3 && b.tails.len() == 3));
    assert!(r.unitarity_defect < 1e-10);
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);

    let r: ScatterReport = json(&ok(&["scatter", "K4", "--a", "1", "--b", "0", "--c", "0", "--d", "-1"]));
    for b in &r.blocks {
        for (i, row) in b.matrix.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let expected = if i == j { -1.0 } else { 0.0 };
                assert_eq!((z.0.re, z.0.im), (expected, 0.0));
            }
        }
    }
    let csv = ok(&["scatter", &data("k4_sphere.rot"), "--format", "csv"]);
    assert_eq!(csv.lines().count(), 1 + 8 * 9);
    let torus = ok(&["scatter", "K4", "--format", "csv"]);
    assert_eq!(torus.lines().count(), 1 + 2 * (8 * 8 + 4 * 4));
}

#[test]
fn simulation_matches_closed_forms() {
    let r: SimulateReport = json(&ok(&["simulate", "K4", "--inflow", "5"]));
    let cmp = r.comparison.unwrap();
    assert!(cmp.outflow_vs_scattering < 1e-8);
    assert!(cmp.state_vs_closed_form < 1e-8);
    assert!(cmp.comfort_vs_formula < 1e-8);
    let r: SimulateReport = json(&ok(&["simulate", "K4", "--a", "1", "--b", "0", "--c", "0", "--d", "-1"]));
    assert!(r.steps <= 24);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("ewalk-cli-{}.json", std::process::id()));
    ok(&["genus", &data("k4_sphere.rot"), "--out", path.to_str().unwrap()]);
    let r: GenusReport = json(&std::fs::read_to_string(&path).unwrap());
    std::fs::remove_file(&path).unwrap();
    assert_eq!(r.surface.label, "g=0");
}
