use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use zos::error::EngineError;
use zos::geom::Point;
use zos::oracle::OracleError;
use zos::oracle::naive_theta;
use zos_cli::CliError;
use zos::sampling::choose_theta;

fn zos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zos")).args(args).env_remove("ZOS_LOG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const TWO_SQUARES: &str = r#"{"version":"zos-scene/1","epsilon":0.5,"regions":[
 {"weight":"zero","shape":{"polygon":[[0,0],[1,0],[1,1],[0,1]]}},
 {"weight":"zero","shape":{"polygon":[[3,0],[4,0],[4,1],[3,1]]}}]}"#;

const BLOCKED: &str = r#"{"version":"zos-scene/1","epsilon":0.25,"regions":[
 {"weight":"zero","shape":{"polygon":[[0,3],[1,3],[1,4],[0,4]]}},
 {"weight":"obstacle","shape":{"polygon":[[-1,-1],[1,-1],[1,1],[-1,1]]}},
 {"weight":"zero","shape":{"ellipse_rect":{"cx":4,"cy":0,"rx":1,"ry":0.5,"rot":0.3,"xmin":3,"xmax":5,"ymin":-1,"ymax":1}}}]}"#;

#[test]
fn empty_scene_has_no_vertices() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "e.json", r#"{"version":"zos-scene/1","epsilon":0.5,"regions":[]}"#);
    let o = zos(&["build", &s]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 vertices, 0 edges"), "{}", stdout(&o));
}

#[test]
fn two_squares_counts() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "two.json", TWO_SQUARES);
    let out = dir.path().join("b.json");
    let o = zos(&["build", &s, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let b = &b["build"];
    // The corners are the only sample points; each square contributes a
    // three-edge star to its anchor, and one edge joins the two squares.
    let corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (3.0, 0.0), (4.0, 0.0), (4.0, 1.0), (3.0, 1.0)];
    let pts: Vec<Point> = corners.iter().map(|&(x, y)| Point::new(x, y)).collect();
    assert_eq!(b["vertices"], 8);
    assert_eq!(b["edges_by_provenance"]["anchor"], 6);
    assert_eq!(b["edges_by_provenance"]["adjacency"], 1);
    let ds = choose_theta(0.5, false);
    let mut cross = std::collections::BTreeSet::new();
    for (i, cones) in naive_theta(&pts, ds.theta, ds.m, &[], 1e-12).iter().enumerate() {
        for &j in cones.iter().flatten() {
            if (i < 4) != (j < 4) {
                cross.insert((i.min(j), i.max(j)));
            }
        }
    }
    assert_eq!(b["edges_by_provenance"]["theta"], cross.len());
    assert_eq!(b["edges"], 7 + cross.len());
}

#[test]
fn build_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "s.json", BLOCKED);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let oa = zos(&["build", &s, "--seed", "7", "--out", a.to_str().unwrap()]);
    let ob = zos(&["build", &s, "--seed", "7", "--out", b.to_str().unwrap()]);
    assert_eq!(oa.stdout, ob.stdout);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    let q = ["query", &s, "-3", "0", "6", "2", "--seed", "7"];
    assert_eq!(zos(&q).stdout, zos(&q).stdout);
}

#[test]
fn plane_query_and_identity() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "e.json", r#"{"version":"zos-scene/1","epsilon":0.5,"regions":[]}"#);
    let r = json(&zos(&["query", &s, "1", "2", "4", "6"]));
    assert_eq!(r["weight"].as_f64().unwrap(), 5.0);
    let s2 = write(dir.path(), "two.json", TWO_SQUARES);
    let r = json(&zos(&["query", &s2, "2", "2", "2", "2"]));
    assert_eq!(r["weight"].as_f64().unwrap(), 0.0);
}

#[test]
fn result_weight_is_sum_of_segments() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "s.json", BLOCKED);
    let svg = dir.path().join("p.svg");
    let r = json(&zos(&["query", &s, "-3", "0", "6", "2", "--svg", svg.to_str().unwrap()]));
    let sum: f64 = r["segments"].as_array().unwrap().iter().map(|g| g["cost"].as_f64().unwrap()).sum();
    assert!((sum - r["weight"].as_f64().unwrap()).abs() <= 1e-9);
    let media: Vec<&str> = r["segments"].as_array().unwrap().iter().map(|g| g["medium"].as_str().unwrap()).collect();
    assert!(media.iter().all(|m| ["plane", "zero", "obstacle_boundary"].contains(m)));
    let pic = std::fs::read_to_string(svg).unwrap();
    assert!(pic.starts_with("<svg") && pic.contains("<polyline") && pic.contains("#444444"));
}

#[test]
fn query_sandwiched_by_oracle() {
    let dir = TempDir::new().unwrap();
    let two = write(dir.path(), "two.json", TWO_SQUARES);
    let blocked = write(dir.path(), "s.json", BLOCKED);
    let cases: [(&str, &str, [&str; 4]); 3] = [
        (&two, "exact", ["-1", "0.5", "5", "0.7"]),
        (&two, "exact", ["0.5", "-2", "3.5", "3"]),
        (&blocked, "dense", ["-3", "0", "6", "2"]),
    ];
    for (scene, method, [sx, sy, tx, ty]) in cases {
        let r = json(&zos(&["query", scene, sx, sy, tx, ty]));
        let o = json(&zos(&["oracle", scene, sx, sy, tx, ty, "--method", method, "--K", "200"]));
        let (w, eps) = (r["weight"].as_f64().unwrap(), r["epsilon"].as_f64().unwrap());
        let (v, err) = (o["value"].as_f64().unwrap(), o["error_bound"].as_f64().unwrap());
        assert!(w >= v - err - 1e-9, "{method}: {w} below {v} - {err}");
        assert!(w <= (1.0 + eps) * (v + err) + 1e-9, "{method}: {w} above (1+{eps}) {v}");
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let two = write(dir.path(), "two.json", TWO_SQUARES);
    let blocked = write(dir.path(), "s.json", BLOCKED);
    let bad = write(dir.path(), "bad.json", r#"{"version":"zos-scene/1","epsilon":0.5,"regions":[
 {"weight":"zero","shape":{"polygon":[[0,0],[2,0],[2,2],[0,2]]}},
 {"weight":"obstacle","shape":{"polygon":[[1,1],[3,1],[3,3],[1,3]]}}]}"#);
    let o = zos(&["build", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("regions 0 and 1"));
    assert!(o.stdout.is_empty());
    let syntax = write(dir.path(), "syntax.json", "{\"version\":\"zos-scene/1\",\n\"epsilon\":0.5,\n\"regions\":[}");
    let o = zos(&["build", &syntax]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(zos(&["query", &blocked, "0", "0", "6", "2"]).status.code(), Some(2));
    assert_eq!(zos(&["oracle", &blocked, "-3", "0", "6", "2", "--method", "exact"]).status.code(), Some(2));
    assert_eq!(zos(&["oracle", &two, "-3", "0", "6", "2", "--method", "dense"]).status.code(), Some(0));
    let curve = write(dir.path(), "a.txt", "0 0\n1 x\n");
    let good = write(dir.path(), "b.txt", "0 0\n1 0\n");
    let o = zos(&["frechet", &curve, &good, "--d", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a.txt:2"));
    let short = write(dir.path(), "c.txt", "0 0\n");
    assert_eq!(zos(&["frechet", &short, &good, "--d", "0.5"]).status.code(), Some(2));
}

#[test]
fn seams_between_touching_obstacles_are_walkable() {
    // Four obstacles close a ring, but their shared edges stay free.
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "ring.json", r#"{"version":"zos-scene/1","epsilon":0.5,"regions":[
 {"weight":"obstacle","shape":{"polygon":[[-2,-2],[2,-2],[2,-1],[-2,-1]]}},
 {"weight":"obstacle","shape":{"polygon":[[-2,1],[2,1],[2,2],[-2,2]]}},
 {"weight":"obstacle","shape":{"polygon":[[-2,-1],[-1,-1],[-1,1],[-2,1]]}},
 {"weight":"obstacle","shape":{"polygon":[[1,-1],[2,-1],[2,1],[1,1]]}}]}"#);
    let r = json(&zos(&["query", &s, "0", "0", "5", "5"]));
    let w = r["weight"].as_f64().unwrap();
    // Out through a corner and along a seam: at least the straight distance.
    assert!(w >= 50f64.sqrt() - 1e-9);
}

#[test]
fn no_path_maps_to_exit_4() {
    assert_eq!(CliError::from(EngineError::NoPath).exit_code(), 4);
    assert_eq!(CliError::from(OracleError::NoPath).exit_code(), 4);
    assert_eq!(CliError::from(EngineError::Internal("x".into())).exit_code(), 3);
}

#[test]
fn frechet_reports() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", "# zigzag\n0 0\n1 1\n2 0\n\n3 1\n");
    let r = json(&zos(&["frechet", &a, &a, "--d", "0.1"]));
    assert!(r["minex_value"].as_f64().unwrap().abs() < 1e-9);
    assert_eq!(r["cells"], 9);
    let b = write(dir.path(), "b.txt", "0 0.6\n1 1.6\n2 0.6\n3 1.6\n");
    let mut last = f64::INFINITY;
    for d in ["0.1", "0.3", "0.5", "0.7", "1.0"] {
        let r = json(&zos(&["frechet", &a, &b, "--d", d, "--epsilon", "0.1"]));
        let v = r["minex_value"].as_f64().unwrap();
        assert!(v <= last + 1e-9, "d = {d}: {v} after {last}");
        last = v;
    }
    assert_eq!(last, 0.0);
}
