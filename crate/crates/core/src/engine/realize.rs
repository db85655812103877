//! Turning graph paths into weighted paths in the plane.

use super::query::QueryOverlay;
use super::{EdgeGeometry, GraphPath, GraphView};
use crate::geom::{Bbox, Orientation, Point, Shape};
use crate::scene::{RegionKind, Scene};

/// What a path piece travels through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Medium {
    Plane,
    ZeroRegion(usize),
    ObstacleBoundary(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathSegment {
    /// Polyline; two points except for boundary arcs.
    pub points: Vec<Point>,
    pub medium: Medium,
    pub cost: f64,
}

impl PathSegment {
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

/// A path in the environment with its graph weight and realized weight.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedPath {
    pub segments: Vec<PathSegment>,
    /// Weight of the graph path found by Dijkstra.
    pub graph_weight: f64,
    /// Sum of segment costs.
    pub weight: f64,
    /// Locations of the graph vertices visited.
    pub waypoints: Vec<Point>,
}

impl WeightedPath {
    pub fn start(&self) -> Option<Point> {
        self.segments.first().map(|s| s.points[0])
    }

    pub fn end(&self) -> Option<Point> {
        self.segments.last().map(|s| *s.points.last().unwrap())
    }
}

pub(super) fn realize(q: &QueryOverlay<'_>, gp: &GraphPath) -> WeightedPath {
    let scene = &q.b.scene;
    let mut out = Vec::new();
    for (i, &e) in gp.edges.iter().enumerate() {
        let edge = q.graph.edge(e);
        let from = gp.vertices[i];
        let to = gp.vertices[i + 1];
        let (a, b) = (q.vertex(from).location, q.vertex(to).location);
        match edge.geometry {
            EdgeGeometry::Straight => straight_piece(scene, a, b, q.eta, &mut out),
            EdgeGeometry::Inside(r) => push(&mut out, vec![a, b], Medium::ZeroRegion(r), 0.0),
            EdgeGeometry::Via { region_a, p, q: qq, region_b } => {
                // Stored from edge.a to edge.b.
                let (ra, p1, p2, rb) = if from == edge.a { (region_a, p, qq, region_b) } else { (region_b, qq, p, region_a) };
                match ra {
                    Some(r) => push(&mut out, vec![a, p1], Medium::ZeroRegion(r), 0.0),
                    None => straight_piece(scene, a, p1, q.eta, &mut out),
                }
                straight_piece(scene, p1, p2, q.eta, &mut out);
                match rb {
                    Some(r) => push(&mut out, vec![p2, b], Medium::ZeroRegion(r), 0.0),
                    None => straight_piece(scene, p2, b, q.eta, &mut out),
                }
            }
            EdgeGeometry::Arc { region, ccw_from } => {
                let shape = &scene.regions[region].shape;
                let orient = if from == ccw_from { Orientation::Ccw } else { Orientation::Cw };
                let tol = q.eta.max(1e-9 * shape.diameter());
                match shape.boundary_arc(a, b, orient, tol) {
                    Ok((pts, len)) => push(&mut out, pts, Medium::ObstacleBoundary(region), len),
                    Err(_) => straight_piece(scene, a, b, q.eta, &mut out),
                }
            }
        }
    }
    let weight = out.iter().map(|s| s.cost).sum();
    let waypoints = gp.vertices.iter().map(|&v| q.vertex(v).location).collect();
    WeightedPath { segments: out, graph_weight: gp.weight, weight, waypoints }
}

fn push(out: &mut Vec<PathSegment>, points: Vec<Point>, medium: Medium, cost: f64) {
    if points.len() < 2 || points.windows(2).all(|w| w[0] == w[1]) {
        return;
    }
    out.push(PathSegment { points, medium, cost });
}

/// A straight move from `a` to `b`: obstacle crossings are replaced by the
/// shorter boundary arc, and stretches inside 0-regions cost nothing.
pub(crate) fn straight_piece(scene: &Scene, a: Point, b: Point, eta: f64, out: &mut Vec<PathSegment>) {
    let sb = Bbox::from_points([a, b]);
    let mut crossings: Vec<(f64, f64, usize)> = Vec::new();
    for (r, reg) in scene.regions.iter().enumerate() {
        if reg.kind != RegionKind::Obstacle || !reg.shape.bbox().overlaps(&sb) {
            continue;
        }
        if reg.shape.segment_crosses_interior(a, b, eta) {
            if let Some((t0, t1)) = reg.shape.segment_interval(a, b, 0.0) {
                crossings.push((t0, t1, r));
            }
        }
    }
    crossings.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut cur = a;
    for (t0, t1, r) in crossings {
        let shape = &scene.regions[r].shape;
        let entry = shape.closest_boundary_point(a.lerp(b, t0)).0;
        let exit = shape.closest_boundary_point(a.lerp(b, t1)).0;
        plane_piece(scene, cur, entry, out);
        let tol = eta.max(1e-9 * shape.diameter());
        match shape.shorter_arc(entry, exit, tol) {
            Ok((pts, len)) => push(out, pts, Medium::ObstacleBoundary(r), len),
            Err(_) => plane_piece(scene, entry, exit, out),
        }
        cur = exit;
    }
    plane_piece(scene, cur, b, out);
}

/// Split a segment into plane and 0-region stretches.
fn plane_piece(scene: &Scene, a: Point, b: Point, out: &mut Vec<PathSegment>) {
    if a == b {
        return;
    }
    let sb = Bbox::from_points([a, b]);
    let mut inside: Vec<(f64, f64, usize)> = Vec::new();
    for (r, reg) in scene.regions.iter().enumerate() {
        if reg.kind != RegionKind::Zero || !reg.shape.bbox().overlaps(&sb) {
            continue;
        }
        if let Some((t0, t1)) = zero_interval(&reg.shape, a, b) {
            if t1 > t0 {
                inside.push((t0, t1, r));
            }
        }
    }
    inside.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut t = 0.0;
    for (t0, t1, r) in inside {
        let t0 = t0.max(t);
        if t1 <= t0 {
            continue;
        }
        if t0 > t {
            let len = a.lerp(b, t).dist(a.lerp(b, t0));
            push(out, vec![a.lerp(b, t), a.lerp(b, t0)], Medium::Plane, len);
        }
        push(out, vec![a.lerp(b, t0), a.lerp(b, t1)], Medium::ZeroRegion(r), 0.0);
        t = t1;
    }
    if t < 1.0 {
        let p = a.lerp(b, t);
        push(out, vec![p, b], Medium::Plane, p.dist(b));
    }
}

fn zero_interval(shape: &Shape, a: Point, b: Point) -> Option<(f64, f64)> {
    shape.segment_interval(a, b, 0.0)
}
