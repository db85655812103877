//! Command implementations behind the `zos` binary.

pub mod format;
pub mod svg;

use serde::Serialize;
use thiserror::Error;
use zos::engine::StructureB;
use zos::error::EngineError;
use zos::frechet::{minex, FrechetError, PolyCurve};
use zos::geom::Point;
use zos::oracle::{dense_obstacle_sp, exact_zero_region_sp, OracleError, OracleReport};
use zos::scene::Scene;

use format::{read_curve, read_scene, BuildFile, FormatError, ResultFile};

/// Errors with their process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{0}")]
    NoPath(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
            CliError::NoPath(_) => 4,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Scene(_) | EngineError::InsideObstacle { .. } | EngineError::NonFinite => {
                CliError::Invalid(e.to_string())
            }
            EngineError::NoPath => CliError::NoPath(e.to_string()),
            EngineError::Internal(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<FrechetError> for CliError {
    fn from(e: FrechetError) -> Self {
        match e {
            FrechetError::Engine(e) => e.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::NoPath => CliError::NoPath(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn write_out(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Internal(format!("{path}: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("result serializes") + "\n"
}

fn load(scene_path: &str, epsilon: Option<f64>) -> Result<Scene, CliError> {
    let mut scene = read_scene(scene_path)?;
    if let Some(e) = epsilon {
        scene.epsilon = e;
        scene.validate().map_err(|e| CliError::Invalid(format!("{scene_path}: {e}")))?;
    }
    Ok(scene)
}

/// Build the structure and return the stdout line; the JSON summary goes to
/// `out` when given.
pub fn cmd_build(scene_path: &str, out: Option<&str>, seed: u64, epsilon: Option<f64>) -> Result<String, CliError> {
    let scene = load(scene_path, epsilon)?;
    let b = StructureB::build(&scene, seed)?;
    if let Some(out) = out {
        write_out(out, &to_json(&BuildFile::new(&b, seed)))?;
    }
    Ok(format!(
        "{} vertices, {} edges, theta {:.9}, m {}\n",
        b.stats.vertices, b.stats.edges, b.ds.theta, b.ds.m
    ))
}

pub struct QueryArgs<'a> {
    pub scene: &'a str,
    pub s: Point,
    pub t: Point,
    pub seed: u64,
    pub epsilon: Option<f64>,
    pub svg: Option<&'a str>,
}

/// Run a query and return the result file as JSON.
pub fn cmd_query(a: &QueryArgs<'_>) -> Result<String, CliError> {
    let scene = load(a.scene, a.epsilon)?;
    let b = StructureB::build(&scene, a.seed)?;
    let path = b.query(a.s, a.t)?;
    if let Some(svg_path) = a.svg {
        write_out(svg_path, &svg::render(&b, Some(&path)))?;
    }
    Ok(to_json(&ResultFile::new(&b, a.s, a.t, &path)))
}

#[derive(Serialize)]
struct MinExReport {
    d: f64,
    epsilon: f64,
    minex_value: f64,
    matched_measure: f64,
    cells: usize,
    nonempty_cells: usize,
}

pub fn cmd_frechet(curve_a: &str, curve_b: &str, d: f64, epsilon: f64) -> Result<String, CliError> {
    let pi = PolyCurve::new(read_curve(curve_a)?).map_err(|e| CliError::Invalid(format!("{curve_a}: {e}")))?;
    let sigma = PolyCurve::new(read_curve(curve_b)?).map_err(|e| CliError::Invalid(format!("{curve_b}: {e}")))?;
    let r = minex(&pi, &sigma, d, epsilon)?;
    Ok(to_json(&MinExReport {
        d,
        epsilon,
        minex_value: r.minex_value,
        matched_measure: r.matched_measure,
        cells: r.cells,
        nonempty_cells: r.nonempty_cells,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Exact,
    Dense,
}

#[derive(Serialize)]
struct OracleFile {
    method: &'static str,
    value: f64,
    error_bound: f64,
    witness: Vec<[f64; 2]>,
}

impl From<OracleReport> for OracleFile {
    fn from(r: OracleReport) -> Self {
        OracleFile {
            method: r.method.name(),
            value: r.value,
            error_bound: r.error_bound,
            witness: r.witness.iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

pub fn cmd_oracle(scene_path: &str, s: Point, t: Point, method: Method, k: usize) -> Result<String, CliError> {
    let scene = read_scene(scene_path)?;
    let report = match method {
        Method::Exact => exact_zero_region_sp(&scene, s, t)?,
        Method::Dense => dense_obstacle_sp(&scene, s, t, k)?,
    };
    Ok(to_json(&OracleFile::from(report)))
}
