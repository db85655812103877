//! Partial weak Fréchet similarity through free-space diagrams.
//!
//! The diagram of two curves is cut into one cell per segment pair. The free
//! part of a cell is an ellipse clipped by the cell rectangle, a clipped strip
//! when the segments are parallel, or empty. Feeding the nonempty cells to the
//! engine as 0-regions turns the minimum-exposure problem into a single
//! corner-to-corner query.

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{Medium, StructureB, WeightedPath};
use crate::error::EngineError;
use crate::geom::{EllipseRect, Point, Polygon, Shape};
use crate::scene::{Region, RegionKind, Scene};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrechetError {
    #[error("a curve needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("curve vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("non-finite curve coordinate")]
    NonFinite,
    #[error("threshold must be a finite value >= 0, got {0}")]
    Threshold(f64),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Polygonal curve parameterized by arc length.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCurve {
    vertices: Vec<Point>,
    /// Arc length at each vertex.
    cumulative: Vec<f64>,
}

impl PolyCurve {
    pub fn new(vertices: Vec<Point>) -> Result<PolyCurve, FrechetError> {
        if vertices.len() < 2 {
            return Err(FrechetError::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(FrechetError::NonFinite);
        }
        let mut cumulative = vec![0.0];
        for i in 1..vertices.len() {
            let l = vertices[i - 1].dist(vertices[i]);
            if l == 0.0 {
                return Err(FrechetError::RepeatedVertex(i - 1, i));
            }
            cumulative.push(cumulative[i - 1] + l);
        }
        Ok(PolyCurve { vertices, cumulative })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn segments(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Arc length at vertex `i`.
    pub fn arc(&self, i: usize) -> f64 {
        self.cumulative[i]
    }

    /// Point at arc length `s`, clamped to the curve.
    pub fn at(&self, s: f64) -> Point {
        let s = s.clamp(0.0, self.length());
        let i = self.cumulative.partition_point(|&c| c <= s).clamp(1, self.segments()) - 1;
        let (a, b) = (self.vertices[i], self.vertices[i + 1]);
        a.lerp(b, (s - self.cumulative[i]) / (self.cumulative[i + 1] - self.cumulative[i]))
    }

    /// Segment index containing arc length `s`.
    pub fn segment_at(&self, s: f64) -> usize {
        self.cumulative.partition_point(|&c| c <= s).clamp(1, self.segments()) - 1
    }

    pub fn scaled(&self, k: f64) -> PolyCurve {
        PolyCurve::new(self.vertices.iter().map(|&p| p * k).collect()).expect("scaling keeps vertices distinct")
    }
}

/// The squared distance `‖π(x) − σ(y)‖²` on one cell, in cell-local
/// coordinates: `x² + y² − 2c·xy + 2gx·x + 2gy·y + w2`.
#[derive(Clone, Copy, Debug)]
pub struct CellQuadratic {
    pub c: f64,
    pub gx: f64,
    pub gy: f64,
    pub w2: f64,
}

impl CellQuadratic {
    fn new(a: Point, u: Point, b: Point, v: Point) -> CellQuadratic {
        let w = a - b;
        CellQuadratic { c: u.dot(v), gx: w.dot(u), gy: -w.dot(v), w2: w.dot(w) }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        x * x + y * y - 2.0 * self.c * x * y + 2.0 * self.gx * x + 2.0 * self.gy * y + self.w2
    }

    /// Minimum over `[0, lx] × [0, ly]` and where it is attained.
    fn min_on_rect(&self, lx: f64, ly: f64) -> (f64, Point) {
        let mut cands: Vec<Point> = vec![
            Point::new(0.0, 0.0),
            Point::new(lx, 0.0),
            Point::new(0.0, ly),
            Point::new(lx, ly),
        ];
        let det = 1.0 - self.c * self.c;
        if det > 0.0 {
            let x = -(self.gx + self.c * self.gy) / det;
            let y = -(self.gy + self.c * self.gx) / det;
            if (0.0..=lx).contains(&x) && (0.0..=ly).contains(&y) {
                cands.push(Point::new(x, y));
            }
        }
        for y in [0.0, ly] {
            let x = (self.c * y - self.gx).clamp(0.0, lx);
            cands.push(Point::new(x, y));
        }
        for x in [0.0, lx] {
            let y = (self.c * x - self.gy).clamp(0.0, ly);
            cands.push(Point::new(x, y));
        }
        cands
            .into_iter()
            .map(|p| (self.eval(p.x, p.y), p))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap()
    }
}

/// Free space of two curves at threshold `d`, one entry per segment pair.
#[derive(Clone, Debug)]
pub struct FreeSpaceDiagram {
    pub pi: PolyCurve,
    pub sigma: PolyCurve,
    pub d: f64,
    /// Free part of cell `(i, j)` at index `i·(m−1) + j`.
    pub cells: Vec<Option<Shape>>,
}

impl FreeSpaceDiagram {
    pub fn rows(&self) -> usize {
        self.pi.segments()
    }

    pub fn cols(&self) -> usize {
        self.sigma.segments()
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<&Shape> {
        self.cells[i * self.cols() + j].as_ref()
    }

    pub fn nonempty(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Diagram rectangle `[0, |π|] × [0, |σ|]` corner.
    pub fn corner(&self) -> Point {
        Point::new(self.pi.length(), self.sigma.length())
    }

    /// `‖π(x) − σ(y)‖ ≤ d`, evaluated directly.
    pub fn is_free(&self, p: Point) -> bool {
        self.pi.at(p.x).dist(self.sigma.at(p.y)) <= self.d
    }

    pub fn quadratic(&self, i: usize, j: usize) -> CellQuadratic {
        cell_quadratic(&self.pi, &self.sigma, i, j)
    }
}

pub fn cell_quadratic(pi: &PolyCurve, sigma: &PolyCurve, i: usize, j: usize) -> CellQuadratic {
    let (a0, a1) = (pi.vertices[i], pi.vertices[i + 1]);
    let (b0, b1) = (sigma.vertices[j], sigma.vertices[j + 1]);
    CellQuadratic::new(a0, (a1 - a0).normalized(), b0, (b1 - b0).normalized())
}

/// Clip a convex polygon by `n·p ≤ k`.
fn clip_halfplane(poly: &[Point], n: Point, k: f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fa, fb) = (n.dot(a) - k, n.dot(b) - k);
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
            out.push(a.lerp(b, fa / (fa - fb)));
        }
    }
    out
}

fn polygon_from(points: &[Point]) -> Option<Shape> {
    if points.is_empty() {
        return None;
    }
    if let Ok(p) = Polygon::hull(points) {
        return Some(p.into());
    }
    // Collinear: keep the two farthest points.
    let a = points[0];
    let far = |from: Point| *points.iter().max_by(|p, q| from.dist(**p).total_cmp(&from.dist(**q))).unwrap();
    let b = far(a);
    let c = far(b);
    let verts = if b == c { vec![b] } else { vec![b, c] };
    Polygon::new(verts).ok().map(Into::into)
}

fn cell_shape(pi: &PolyCurve, sigma: &PolyCurve, i: usize, j: usize, d: f64) -> Option<Shape> {
    let q = cell_quadratic(pi, sigma, i, j);
    let (x0, y0) = (pi.arc(i), sigma.arc(j));
    let (lx, ly) = (pi.arc(i + 1) - x0, sigma.arc(j + 1) - y0);
    let d2 = d * d;
    let (fmin, argmin) = q.min_on_rect(lx, ly);
    let slack = 1e-12 * (d2 + q.w2).max(1e-300);
    if fmin > d2 + slack {
        return None;
    }
    let origin = Point::new(x0, y0);
    let rect = [Point::new(0.0, 0.0), Point::new(lx, 0.0), Point::new(lx, ly), Point::new(0.0, ly)];
    if 1.0 - q.c.abs() < 1e-12 {
        // Parallel segments: d² ≥ (x − c·y + gx)² + ‖w⊥‖².
        let c = q.c.signum();
        let perp2 = (q.w2 - q.gx * q.gx).max(0.0);
        let r = (d2 - perp2).max(0.0).sqrt();
        let n = Point::new(1.0, -c);
        let mut poly = clip_halfplane(&rect, n, r - q.gx);
        poly = clip_halfplane(&poly, -n, r + q.gx);
        if poly.is_empty() {
            poly = vec![argmin];
        }
        let pts: Vec<Point> = poly.into_iter().map(|p| p + origin).collect();
        return polygon_from(&pts);
    }
    let det = 1.0 - q.c * q.c;
    let cx = -(q.gx + q.c * q.gy) / det;
    let cy = -(q.gy + q.c * q.gx) / det;
    let r2 = d2 - q.eval(cx, cy);
    if r2 > 0.0 {
        let r = r2.sqrt();
        let e = EllipseRect::new(
            x0 + cx,
            y0 + cy,
            r / (1.0 - q.c).sqrt(),
            r / (1.0 + q.c).sqrt(),
            std::f64::consts::FRAC_PI_4,
            x0,
            x0 + lx,
            y0,
            y0 + ly,
        );
        if let Ok(e) = e {
            return Some(e.into());
        }
    }
    // Touching in a single point.
    polygon_from(&[argmin + origin])
}

pub fn build_free_space(pi: &PolyCurve, sigma: &PolyCurve, d: f64) -> Result<FreeSpaceDiagram, FrechetError> {
    if !(d.is_finite() && d >= 0.0) {
        return Err(FrechetError::Threshold(d));
    }
    let (n, m) = (pi.segments(), sigma.segments());
    let cells = (0..n * m).into_par_iter().map(|k| cell_shape(pi, sigma, k / m, k % m, d)).collect();
    Ok(FreeSpaceDiagram { pi: pi.clone(), sigma: sigma.clone(), d, cells })
}

#[derive(Clone, Debug)]
pub struct MinExResult {
    /// Length of the path outside the free space.
    pub minex_value: f64,
    /// Corner-to-corner path in diagram coordinates.
    pub path: WeightedPath,
    /// Length of the path inside the free space.
    pub matched_measure: f64,
    pub cells: usize,
    pub nonempty_cells: usize,
}

/// The diagram as a scene: nonempty cells become 0-regions.
pub fn diagram_scene(fsd: &FreeSpaceDiagram, epsilon: f64) -> Scene {
    let regions = fsd
        .cells
        .iter()
        .flatten()
        .map(|s| Region { kind: RegionKind::Zero, shape: s.clone() })
        .collect();
    Scene { epsilon, regions }
}

pub fn minex(pi: &PolyCurve, sigma: &PolyCurve, d: f64, epsilon: f64) -> Result<MinExResult, FrechetError> {
    let fsd = build_free_space(pi, sigma, d)?;
    let scene = diagram_scene(&fsd, epsilon);
    let b = StructureB::new(&scene)?;
    let path = b.query(Point::ORIGIN, fsd.corner())?;
    let matched_measure = path
        .segments
        .iter()
        .filter(|s| matches!(s.medium, Medium::ZeroRegion(_)))
        .map(|s| s.length())
        .sum();
    Ok(MinExResult {
        minex_value: path.weight,
        path,
        matched_measure,
        cells: fsd.cells.len(),
        nonempty_cells: fsd.nonempty(),
    })
}

/// Whether a free corner-to-corner path exists, up to `tol` of exposure.
pub fn weak_frechet_decide(pi: &PolyCurve, sigma: &PolyCurve, d: f64, tol: f64) -> Result<bool, FrechetError> {
    Ok(minex(pi, sigma, d, 0.5)?.minex_value <= tol)
}
