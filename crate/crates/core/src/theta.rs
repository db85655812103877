//! Θ-graphs over sample points, optionally constrained by polygonal obstacles.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::geom::{Bbox, Point, Shape};

/// Cone index of direction `v` for `m` cones of angle `theta`; cone `i`
/// covers angles `[iθ, (i+1)θ)`.
#[inline]
pub fn cone_of(v: Point, theta: f64, m: usize) -> usize {
    let a = v.y.atan2(v.x).rem_euclid(TAU);
    ((a / theta) as usize).min(m - 1)
}

/// Distance of `v` projected on the bisector of cone `i`.
#[inline]
pub fn projected(v: Point, theta: f64, i: usize) -> f64 {
    v.dot(Point::from_angle((i as f64 + 0.5) * theta))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaVertex {
    pub location: Point,
    pub region: Option<usize>,
}

/// An undirected Θ edge `(a, b, ‖ab‖)` with `a < b`.
pub type ThetaEdge = (usize, usize, f64);

#[derive(Clone, Debug)]
struct Obstacle {
    shape: Shape,
    bbox: Bbox,
}

/// Interior angle of obstacle `obstacle` at a boundary vertex: the open cone
/// swept counter-clockwise from `next` to `prev` (unit vectors).
#[derive(Clone, Copy, Debug)]
struct Wedge {
    obstacle: usize,
    next: Point,
    prev: Point,
}

const WEDGE_ANGLE_TOL: f64 = 1e-9;

impl Wedge {
    fn inward(&self, d: Point) -> bool {
        let d = d.normalized();
        self.next.cross(d) > WEDGE_ANGLE_TOL && d.cross(self.prev) > WEDGE_ANGLE_TOL
    }
}

/// Outcome of inserting one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Insertion {
    pub id: usize,
    /// Existing vertex at the same location, if any. The point still gets an
    /// id but no edges.
    pub merged: Option<usize>,
    /// New edges incident to `id`, both forward and reverse repairs.
    pub edges: Vec<ThetaEdge>,
}

/// Cone-nearest structure: for every vertex and cone, the nearest visible
/// vertex by projected distance (ties by id).
#[derive(Clone, Debug)]
pub struct ThetaGraph {
    pub theta: f64,
    pub m: usize,
    pub vertices: Vec<ThetaVertex>,
    nearest: Vec<Vec<Option<(usize, f64)>>>,
    obstacles: Vec<Obstacle>,
    wedges: Vec<Vec<Wedge>>,
    tol: f64,
}

impl ThetaGraph {
    /// Build over `vertices`. Points closer than `tol` are not linked.
    pub fn build(vertices: Vec<ThetaVertex>, theta: f64, m: usize, obstacles: Vec<Shape>, tol: f64) -> ThetaGraph {
        let obstacles = obstacles
            .into_iter()
            .map(|shape| {
                let bbox = shape.bbox();
                Obstacle { shape, bbox }
            })
            .collect();
        let mut g = ThetaGraph { theta, m, vertices, nearest: Vec::new(), obstacles, wedges: Vec::new(), tol };
        g.wedges = g.vertices.par_iter().map(|v| g.wedges_at(v.location)).collect();
        let nearest: Vec<_> = (0..g.vertices.len())
            .into_par_iter()
            .map(|p| g.cone_nearest(g.vertices[p].location, Some(p), &g.wedges[p]))
            .collect();
        g.nearest = nearest;
        g
    }

    /// Interior angles of the obstacle polygons having a vertex at `p`.
    fn wedges_at(&self, p: Point) -> Vec<Wedge> {
        let mut out = Vec::new();
        for (i, o) in self.obstacles.iter().enumerate() {
            let Shape::Polygon(poly) = &o.shape else { continue };
            let v = poly.vertices();
            let n = v.len();
            if n < 3 || !o.bbox.inflate(self.tol).contains(p) {
                continue;
            }
            let Some(k) = v.iter().position(|q| q.dist(p) <= self.tol) else { continue };
            let step = |dir: usize| {
                (1..n).map(|j| v[(k + if dir == 0 { j } else { n - j }) % n]).find(|q| q.dist(p) > self.tol)
            };
            if let (Some(a), Some(b)) = (step(0), step(1)) {
                out.push(Wedge { obstacle: i, next: (a - p).normalized(), prev: (b - p).normalized() });
            }
        }
        out
    }

    /// Visibility with known interior angles at the endpoints.
    fn visible_with(&self, a: Point, b: Point, wa: &[Wedge], wb: &[Wedge]) -> bool {
        let sb = Bbox::from_points([a, b]);
        let d = b - a;
        self.obstacles.iter().enumerate().all(|(i, o)| {
            if let Some(w) = wa.iter().find(|w| w.obstacle == i) {
                return !w.inward(d);
            }
            if let Some(w) = wb.iter().find(|w| w.obstacle == i) {
                return !w.inward(-d);
            }
            !o.bbox.overlaps(&sb) || !o.shape.segment_crosses_interior(a, b, self.tol)
        })
    }

    /// Cone `c` lies inside an interior angle.
    fn cone_blocked(&self, c: usize, wedges: &[Wedge]) -> bool {
        let lo = Point::from_angle(c as f64 * self.theta);
        let hi = Point::from_angle((c + 1) as f64 * self.theta);
        wedges.iter().any(|w| w.inward(lo) && w.inward(hi) && w.next.cross(w.prev) > 0.0)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Open segment `ab` avoids every obstacle interior.
    pub fn visible(&self, a: Point, b: Point) -> bool {
        let sb = Bbox::from_points([a, b]);
        self.obstacles
            .iter()
            .all(|o| !o.bbox.overlaps(&sb) || !o.shape.segment_crosses_interior(a, b, self.tol))
    }

    fn cone_nearest(&self, p: Point, skip: Option<usize>, wedges: &[Wedge]) -> Vec<Option<(usize, f64)>> {
        let mut best: Vec<Option<(usize, f64)>> = vec![None; self.m];
        if self.obstacles.is_empty() {
            for (q, v) in self.vertices.iter().enumerate() {
                if Some(q) == skip {
                    continue;
                }
                let d = v.location - p;
                if d.norm() <= self.tol {
                    continue;
                }
                let c = cone_of(d, self.theta, self.m);
                let pr = projected(d, self.theta, c);
                if best[c].is_none_or(|(bq, bp)| (pr, q) < (bp, bq)) {
                    best[c] = Some((q, pr));
                }
            }
            return best;
        }
        let mut cand: Vec<(usize, f64, usize)> = Vec::with_capacity(self.vertices.len());
        for (q, v) in self.vertices.iter().enumerate() {
            if Some(q) == skip {
                continue;
            }
            let d = v.location - p;
            if d.norm() <= self.tol {
                continue;
            }
            let c = cone_of(d, self.theta, self.m);
            cand.push((c, projected(d, self.theta, c), q));
        }
        cand.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut i = 0;
        while i < cand.len() {
            let c = cand[i].0;
            let mut j = i;
            let mut open = !self.cone_blocked(c, wedges);
            while j < cand.len() && cand[j].0 == c {
                let q = cand[j].2;
                if open && self.visible_with(p, self.vertices[q].location, wedges, self.wedges_of(q)) {
                    best[c] = Some((q, cand[j].1));
                    open = false;
                }
                j += 1;
            }
            i = j;
        }
        best
    }

    fn wedges_of(&self, q: usize) -> &[Wedge] {
        self.wedges.get(q).map_or(&[], |w| w.as_slice())
    }

    /// Cone-nearest neighbour of vertex `p` in cone `c`.
    pub fn nearest(&self, p: usize, c: usize) -> Option<(usize, f64)> {
        self.nearest[p][c]
    }

    fn distinct(&self, a: usize, b: usize) -> bool {
        match (self.vertices[a].region, self.vertices[b].region) {
            (Some(x), Some(y)) => x != y,
            _ => true,
        }
    }

    fn edge(&self, a: usize, b: usize) -> ThetaEdge {
        let d = self.vertices[a].location.dist(self.vertices[b].location);
        (a.min(b), a.max(b), d)
    }

    /// Undirected edges between vertices of distinct regions, sorted.
    pub fn edges(&self) -> Vec<ThetaEdge> {
        let mut out: Vec<ThetaEdge> = Vec::new();
        for (p, cones) in self.nearest.iter().enumerate() {
            for &(q, _) in cones.iter().flatten() {
                if self.distinct(p, q) {
                    out.push(self.edge(p, q));
                }
            }
        }
        out.sort_by_key(|a| (a.0, a.1));
        out.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        out
    }

    /// Insert a point: link it to its cone-nearest vertices and to every
    /// vertex for which it becomes the cone-nearest.
    pub fn insert_point(&mut self, location: Point, region: Option<usize>) -> Insertion {
        let id = self.vertices.len();
        let wedges = self.wedges_at(location);
        if let Some(q) = self.vertices.iter().position(|v| v.location.dist(location) <= self.tol) {
            self.vertices.push(ThetaVertex { location, region });
            self.nearest.push(vec![None; self.m]);
            self.wedges.push(wedges);
            return Insertion { id, merged: Some(q), edges: Vec::new() };
        }
        let forward = self.cone_nearest(location, None, &wedges);
        self.vertices.push(ThetaVertex { location, region });
        self.wedges.push(wedges);
        let mut edges = Vec::new();
        for &(q, _) in forward.iter().flatten() {
            if self.distinct(id, q) {
                edges.push(self.edge(id, q));
            }
        }
        for p in 0..id {
            let d = location - self.vertices[p].location;
            if d.norm() <= self.tol {
                continue;
            }
            let c = cone_of(d, self.theta, self.m);
            let pr = projected(d, self.theta, c);
            let better = self.nearest[p][c].is_none_or(|(bq, bp)| (pr, id) < (bp, bq));
            if better && self.visible_with(self.vertices[p].location, location, &self.wedges[p], &self.wedges[id]) {
                self.nearest[p][c] = Some((id, pr));
                if self.distinct(id, p) {
                    edges.push(self.edge(id, p));
                }
            }
        }
        self.nearest.push(forward);
        edges.sort_by_key(|a| (a.0, a.1));
        edges.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        Insertion { id, merged: None, edges }
    }
}
