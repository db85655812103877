//! Scene, curve and result files.
//!
//! Scene and result files are JSON with a version tag and a fixed field
//! order. Curve files are plain text, one `x y` pair per line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use zos::engine::{BuildStats, Medium, StructureB, WeightedPath};
use zos::error::{GeomError, SceneError};
use zos::geom::{EllipseRect, Point, Polygon, Shape};
use zos::scene::{Region, RegionKind, Scene};

pub const SCENE_VERSION: &str = "zos-scene/1";
pub const RESULT_VERSION: &str = "zos-result/1";
pub const BUILD_VERSION: &str = "zos-build/1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: unsupported version {found:?}, expected {SCENE_VERSION:?}")]
    Version { path: String, found: String },
    #[error("{path}: {source}")]
    Scene { path: String, source: SceneError },
    #[error("{path}:{line}: {message}")]
    Curve { path: String, line: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    Zero,
    Obstacle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseSpec {
    pub cx: f64,
    pub cy: f64,
    pub rx: f64,
    pub ry: f64,
    pub rot: f64,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSpec {
    Polygon(Vec<[f64; 2]>),
    EllipseRect(EllipseSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    pub weight: Weight,
    pub shape: ShapeSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub version: String,
    pub epsilon: f64,
    pub regions: Vec<RegionSpec>,
}

impl ShapeSpec {
    fn to_shape(&self) -> Result<Shape, GeomError> {
        match self {
            ShapeSpec::Polygon(v) => Ok(Polygon::new(v.iter().map(|p| Point::new(p[0], p[1])).collect())?.into()),
            ShapeSpec::EllipseRect(e) => {
                Ok(EllipseRect::new(e.cx, e.cy, e.rx, e.ry, e.rot, e.xmin, e.xmax, e.ymin, e.ymax)?.into())
            }
        }
    }

    fn from_shape(s: &Shape) -> ShapeSpec {
        match s {
            Shape::Polygon(p) => ShapeSpec::Polygon(p.vertices().iter().map(|q| [q.x, q.y]).collect()),
            Shape::EllipseRect(e) => {
                let [cx, cy, rx, ry, rot, xmin, xmax, ymin, ymax] = e.params();
                ShapeSpec::EllipseRect(EllipseSpec { cx, cy, rx, ry, rot, xmin, xmax, ymin, ymax })
            }
        }
    }
}

impl SceneFile {
    pub fn from_scene(scene: &Scene) -> SceneFile {
        SceneFile {
            version: SCENE_VERSION.to_string(),
            epsilon: scene.epsilon,
            regions: scene
                .regions
                .iter()
                .map(|r| RegionSpec {
                    weight: match r.kind {
                        RegionKind::Zero => Weight::Zero,
                        RegionKind::Obstacle => Weight::Obstacle,
                    },
                    shape: ShapeSpec::from_shape(&r.shape),
                })
                .collect(),
        }
    }

    /// Build and validate the scene.
    pub fn to_scene(&self) -> Result<Scene, SceneError> {
        let mut regions = Vec::with_capacity(self.regions.len());
        for (index, r) in self.regions.iter().enumerate() {
            let shape = r.shape.to_shape().map_err(|source| SceneError::Region { index, source })?;
            let kind = match r.weight {
                Weight::Zero => RegionKind::Zero,
                Weight::Obstacle => RegionKind::Obstacle,
            };
            regions.push(Region { kind, shape });
        }
        let scene = Scene { epsilon: self.epsilon, regions };
        scene.validate()?;
        Ok(scene)
    }
}

pub fn emit_scene(scene: &Scene) -> String {
    serde_json::to_string_pretty(&SceneFile::from_scene(scene)).expect("scene serializes") + "\n"
}

pub fn parse_scene(text: &str, path: &str) -> Result<Scene, FormatError> {
    let file: SceneFile = serde_json::from_str(text).map_err(|source| FormatError::Json { path: path.into(), source })?;
    if file.version != SCENE_VERSION {
        return Err(FormatError::Version { path: path.into(), found: file.version });
    }
    file.to_scene().map_err(|source| FormatError::Scene { path: path.into(), source })
}

pub fn read_scene(path: &str) -> Result<Scene, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.into(), source })?;
    parse_scene(&text, path)
}

/// Whitespace-separated `x y` pairs, one per line. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_curve(text: &str, path: &str) -> Result<Vec<Point>, FormatError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| FormatError::Curve { path: path.into(), line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected 2 numbers, found {}", fields.len())));
        }
        let mut xy = [0.0; 2];
        for (k, f) in fields.iter().enumerate() {
            xy[k] = f.parse::<f64>().map_err(|e| err(format!("{f:?}: {e}")))?;
            if !xy[k].is_finite() {
                return Err(err(format!("{f:?} is not finite")));
            }
        }
        out.push(Point::new(xy[0], xy[1]));
    }
    if out.len() < 2 {
        return Err(FormatError::Curve { path: path.into(), line: 0, message: format!("need at least 2 points, found {}", out.len()) });
    }
    Ok(out)
}

pub fn read_curve(path: &str) -> Result<Vec<Point>, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.into(), source })?;
    parse_curve(&text, path)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildSummary {
    pub vertices: usize,
    pub edges: usize,
    pub original: usize,
    pub propagated: usize,
    pub tangent: usize,
    pub maps: usize,
    pub edges_by_provenance: BTreeMap<String, usize>,
}

impl From<&BuildStats> for BuildSummary {
    fn from(s: &BuildStats) -> Self {
        BuildSummary {
            vertices: s.vertices,
            edges: s.edges,
            original: s.original,
            propagated: s.propagated,
            tangent: s.tangent,
            maps: s.maps,
            edges_by_provenance: s.by_provenance.iter().map(|(p, n)| (p.name().to_string(), *n)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildFile {
    pub version: String,
    pub epsilon: f64,
    pub theta: f64,
    pub m: usize,
    pub seed: u64,
    pub build: BuildSummary,
}

impl BuildFile {
    pub fn new(b: &StructureB, seed: u64) -> BuildFile {
        BuildFile {
            version: BUILD_VERSION.to_string(),
            epsilon: b.scene.epsilon,
            theta: b.ds.theta,
            m: b.ds.m,
            seed,
            build: (&b.stats).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentRecord {
    /// `plane`, `zero` or `obstacle_boundary`.
    pub medium: String,
    pub region: Option<usize>,
    pub cost: f64,
    pub points: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub s: [f64; 2],
    pub t: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub version: String,
    pub query: QueryRecord,
    pub epsilon: f64,
    pub theta: f64,
    pub m: usize,
    pub graph_weight: f64,
    pub weight: f64,
    pub segments: Vec<SegmentRecord>,
    pub build: BuildSummary,
}

impl ResultFile {
    pub fn new(b: &StructureB, s: Point, t: Point, path: &WeightedPath) -> ResultFile {
        let segments = path
            .segments
            .iter()
            .map(|seg| {
                let (medium, region) = match seg.medium {
                    Medium::Plane => ("plane", None),
                    Medium::ZeroRegion(r) => ("zero", Some(r)),
                    Medium::ObstacleBoundary(r) => ("obstacle_boundary", Some(r)),
                };
                SegmentRecord {
                    medium: medium.to_string(),
                    region,
                    cost: seg.cost,
                    points: seg.points.iter().map(|p| [p.x, p.y]).collect(),
                }
            })
            .collect();
        ResultFile {
            version: RESULT_VERSION.to_string(),
            query: QueryRecord { s: [s.x, s.y], t: [t.x, t.y] },
            epsilon: b.scene.epsilon,
            theta: b.ds.theta,
            m: b.ds.m,
            graph_weight: path.graph_weight,
            weight: path.weight,
            segments,
            build: (&b.stats).into(),
        }
    }
}
