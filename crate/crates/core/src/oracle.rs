//! Reference computations for cross-checking the engine.

use rayon::prelude::*;
use thiserror::Error;

use crate::frechet::PolyCurve;
use crate::geom::{
    common_tangents, point_segment_distance, point_tangents, polygon_distance_brute, shape_distance, Bbox, Orientation,
    Point, Shape,
};
use crate::sampling::{original_sample_points, DirectionSet};
use crate::scene::{RegionKind, Scene};
use crate::theta::{cone_of, projected};
use crate::trapmap::TrapMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMethod {
    CompleteGraphExact,
    DenseVisibility,
    GridDijkstra,
    NaiveScan,
}

impl OracleMethod {
    pub fn name(self) -> &'static str {
        match self {
            OracleMethod::CompleteGraphExact => "complete-graph-exact",
            OracleMethod::DenseVisibility => "dense-visibility",
            OracleMethod::GridDijkstra => "grid-dijkstra",
            OracleMethod::NaiveScan => "naive-scan",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub value: f64,
    pub method: OracleMethod,
    /// Bound on `value − optimum` (the value is always a feasible cost).
    pub error_bound: f64,
    pub witness: Vec<Point>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("the exact oracle handles 0-regions only")]
    ObstaclesPresent,
    #[error("query point lies inside obstacle {0}")]
    InsideObstacle(usize),
    #[error("no path")]
    NoPath,
    #[error("dense oracle needs K >= 50, got {0}")]
    TooFewSamples(usize),
}

/// O(V²) Dijkstra over a weight callback; `None` weights are missing edges.
fn dense_dijkstra<W>(n: usize, s: usize, t: usize, weight: W) -> Option<(f64, Vec<usize>)>
where
    W: Fn(usize, usize) -> Option<f64> + Sync,
{
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    loop {
        let mut u = usize::MAX;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && (u == usize::MAX || dist[v] < dist[u]) {
                u = v;
            }
        }
        if u == usize::MAX {
            return None;
        }
        done[u] = true;
        if u == t {
            break;
        }
        let du = dist[u];
        let relax: Vec<(usize, f64)> = (0..n)
            .into_par_iter()
            .filter(|&v| !done[v])
            .filter_map(|v| weight(u, v).map(|w| (v, du + w)))
            .collect();
        for (v, d) in relax {
            if d < dist[v] {
                dist[v] = d;
                prev[v] = u;
            }
        }
    }
    let mut path = vec![t];
    let mut v = t;
    while v != s {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    Some((dist[t], path))
}

fn vertex_list(shape: &Shape) -> Vec<Point> {
    match shape {
        Shape::Polygon(p) => p.vertices().to_vec(),
        Shape::EllipseRect(_) => shape.boundary().to_vec(),
    }
}

fn point_in_convex(pts: &[Point], p: Point) -> bool {
    pts.len() >= 3 && (0..pts.len()).all(|i| crate::geom::orient(pts[i], pts[(i + 1) % pts.len()], p) >= 0.0)
}

fn point_to_list(p: Point, pts: &[Point]) -> (f64, Point) {
    if point_in_convex(pts, p) {
        return (0.0, p);
    }
    let n = pts.len();
    let mut best = (f64::INFINITY, p);
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        let d = point_segment_distance(p, a, b);
        if d < best.0 {
            let (q, _) = crate::geom::closest_on_segment(p, a, b);
            best = (d, q);
        }
    }
    best
}

/// Exact optimum for 0-regions only: Dijkstra on the complete graph over
/// regions and endpoints with exact pairwise distances. Polygon distances
/// are computed by exhaustive segment pairs.
pub fn exact_zero_region_sp(scene: &Scene, s: Point, t: Point) -> Result<OracleReport, OracleError> {
    if scene.has_obstacles() {
        return Err(OracleError::ObstaclesPresent);
    }
    let n = scene.regions.len();
    let lists: Vec<Vec<Point>> = scene.regions.iter().map(|r| vertex_list(&r.shape)).collect();
    // Nodes: regions, then s, then t.
    let total = n + 2;
    let mut w = vec![vec![(0.0, Point::ORIGIN, Point::ORIGIN); total]; total];
    for i in 0..n {
        for j in i + 1..n {
            let sep = match (&scene.regions[i].shape, &scene.regions[j].shape) {
                (Shape::Polygon(_), Shape::Polygon(_)) => polygon_distance_brute(&lists[i], &lists[j]),
                (a, b) => shape_distance(a, b, 0.0).unwrap_or_else(|_| polygon_distance_brute(&lists[i], &lists[j])),
            };
            w[i][j] = (sep.dist, sep.p, sep.q);
            w[j][i] = (sep.dist, sep.q, sep.p);
        }
    }
    for (k, p) in [(n, s), (n + 1, t)] {
        for i in 0..n {
            let (d, q) = match &scene.regions[i].shape {
                Shape::Polygon(_) => point_to_list(p, &lists[i]),
                sh => {
                    let sep = crate::geom::point_shape_distance(p, sh);
                    (sep.dist, sep.q)
                }
            };
            w[k][i] = (d, p, q);
            w[i][k] = (d, q, p);
        }
    }
    w[n][n + 1] = (s.dist(t), s, t);
    w[n + 1][n] = (s.dist(t), t, s);
    let (value, path) = dense_dijkstra(total, n, n + 1, |a, b| (a != b).then(|| w[a][b].0)).ok_or(OracleError::NoPath)?;
    let mut witness = vec![s];
    for pair in path.windows(2) {
        let (_, p, q) = w[pair[0]][pair[1]];
        witness.push(p);
        witness.push(q);
    }
    witness.push(t);
    witness.dedup();
    Ok(OracleReport { value, method: OracleMethod::CompleteGraphExact, error_bound: 0.0, witness })
}

#[derive(Clone, Copy, Debug)]
struct DenseNode {
    p: Point,
    /// Region whose boundary carries the node, or the hub of a 0-region.
    region: Option<usize>,
    hub: bool,
}

/// Cost of the straight segment `ab` outside every 0-region, or `None` when
/// it crosses an obstacle interior.
fn clipped_cost(scene: &Scene, boxes: &[Bbox], a: Point, b: Point, tol: f64) -> Option<f64> {
    let sb = Bbox::from_points([a, b]);
    let len = a.dist(b);
    let mut inside: Vec<(f64, f64)> = Vec::new();
    for (r, reg) in scene.regions.iter().enumerate() {
        if !boxes[r].overlaps(&sb) {
            continue;
        }
        match reg.kind {
            RegionKind::Obstacle => {
                if reg.shape.segment_crosses_interior(a, b, tol) {
                    return None;
                }
            }
            RegionKind::Zero => {
                if let Some((t0, t1)) = reg.shape.segment_interval(a, b, 0.0) {
                    if t1 > t0 {
                        inside.push((t0, t1));
                    }
                }
            }
        }
    }
    inside.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut covered = 0.0;
    let mut end = 0.0f64;
    for (t0, t1) in inside {
        let t0 = t0.max(end);
        if t1 > t0 {
            covered += t1 - t0;
            end = t1;
        }
    }
    Some((len * (1.0 - covered)).max(0.0))
}

/// `k` points evenly spaced by arc length on a closed polyline, plus its
/// vertices. Returns the points in boundary order and the largest gap.
fn arc_samples(boundary: &[Point], k: usize, keep_vertices: bool) -> (Vec<Point>, f64) {
    let n = boundary.len();
    if n == 1 {
        return (vec![boundary[0]], 0.0);
    }
    let mut cum = vec![0.0];
    for i in 0..n {
        cum.push(cum[i] + boundary[i].dist(boundary[(i + 1) % n]));
    }
    let per = cum[n];
    let mut marks: Vec<(f64, Point)> = (0..k)
        .map(|j| {
            let s = per * j as f64 / k as f64;
            let i = cum.partition_point(|&c| c <= s).saturating_sub(1).min(n - 1);
            let l = cum[i + 1] - cum[i];
            let f = if l > 0.0 { (s - cum[i]) / l } else { 0.0 };
            (s, boundary[i].lerp(boundary[(i + 1) % n], f))
        })
        .collect();
    if keep_vertices {
        marks.extend((0..n).map(|i| (cum[i], boundary[i])));
    }
    marks.sort_by(|a, b| a.0.total_cmp(&b.0));
    marks.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-12 * per.max(1.0));
    let mut gap: f64 = 0.0;
    for i in 0..marks.len() {
        let next = if i + 1 < marks.len() { marks[i + 1].0 } else { marks[0].0 + per };
        gap = gap.max(next - marks[i].0);
    }
    (marks.into_iter().map(|m| m.1).collect(), gap)
}

/// Dense visibility-graph approximation for mixed scenes.
///
/// Nodes are `k` arc-length samples per region boundary, polygon vertices,
/// common-tangent points of obstacle pairs, tangent points from `s` and `t`,
/// and `s`, `t` themselves. Every 0-region gets a hub joined to its samples
/// at cost 0. Straight edges between visible nodes cost their length outside
/// 0-regions; consecutive samples on an obstacle are joined along the
/// boundary. `error_bound` is the largest arc gap between consecutive samples.
pub fn dense_obstacle_sp(scene: &Scene, s: Point, t: Point, k: usize) -> Result<OracleReport, OracleError> {
    if k < 50 {
        return Err(OracleError::TooFewSamples(k));
    }
    let tol = scene.eta_with(&[s, t]);
    for (i, r) in scene.regions.iter().enumerate() {
        if r.kind == RegionKind::Obstacle && (r.shape.strictly_contains(s, tol) || r.shape.strictly_contains(t, tol)) {
            return Err(OracleError::InsideObstacle(i));
        }
    }
    let n = scene.regions.len();
    let boxes: Vec<Bbox> = scene.regions.iter().map(|r| r.shape.bbox()).collect();
    let mut nodes: Vec<DenseNode> = vec![
        DenseNode { p: s, region: None, hub: false },
        DenseNode { p: t, region: None, hub: false },
    ];
    let mut extra: Vec<Vec<Point>> = vec![Vec::new(); n];
    for i in 0..n {
        if scene.regions[i].kind != RegionKind::Obstacle {
            continue;
        }
        for j in i + 1..n {
            if scene.regions[j].kind != RegionKind::Obstacle {
                continue;
            }
            if let Ok(ts) = common_tangents(&scene.regions[i].shape, &scene.regions[j].shape, tol) {
                for tp in ts {
                    extra[i].push(tp.point_on_a);
                    extra[j].push(tp.point_on_b);
                }
            }
        }
        for p in [s, t] {
            if let Ok(ts) = point_tangents(p, &scene.regions[i].shape, tol) {
                extra[i].extend(ts);
            }
        }
    }
    let mut gap: f64 = 0.0;
    // Obstacle rings for boundary edges: (region, node ids in ccw order).
    let mut rings: Vec<(usize, Vec<usize>)> = Vec::new();
    for (r, reg) in scene.regions.iter().enumerate() {
        let boundary = reg.shape.boundary();
        let (mut pts, g) = arc_samples(boundary, k, true);
        gap = gap.max(g);
        if reg.kind == RegionKind::Obstacle && !extra[r].is_empty() {
            let param = |p: Point| reg.shape.boundary_param(p).0;
            let mut tagged: Vec<(f64, Point)> = pts.iter().map(|&p| (param(p), p)).collect();
            tagged.extend(extra[r].iter().map(|&p| (param(p), p)));
            tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
            tagged.dedup_by(|a, b| a.1.dist(b.1) <= tol);
            pts = tagged.into_iter().map(|x| x.1).collect();
        }
        let first = nodes.len();
        nodes.extend(pts.iter().map(|&p| DenseNode { p, region: Some(r), hub: false }));
        let ids: Vec<usize> = (first..nodes.len()).collect();
        match reg.kind {
            RegionKind::Obstacle => rings.push((r, ids)),
            RegionKind::Zero => nodes.push(DenseNode { p: reg.shape.interior_point(), region: Some(r), hub: true }),
        }
    }
    // Boundary-walk lengths between ring neighbours.
    let mut ring_next: std::collections::HashMap<(usize, usize), f64> = std::collections::HashMap::new();
    for (r, ids) in &rings {
        let shape = &scene.regions[*r].shape;
        let m = ids.len();
        for i in 0..m {
            let (a, b) = (ids[i], ids[(i + 1) % m]);
            if a == b {
                continue;
            }
            let len = shape
                .boundary_arc(nodes[a].p, nodes[b].p, Orientation::Ccw, tol.max(1e-9 * shape.diameter()))
                .map(|x| x.1)
                .unwrap_or_else(|_| nodes[a].p.dist(nodes[b].p));
            ring_next.insert((a.min(b), a.max(b)), len);
        }
    }
    let zero_contains: Vec<Vec<bool>> = nodes
        .iter()
        .map(|nd| {
            scene
                .regions
                .iter()
                .map(|r| r.kind == RegionKind::Zero && r.shape.contains(nd.p, tol))
                .collect()
        })
        .collect();
    let weight = |a: usize, b: usize| -> Option<f64> {
        if a == b {
            return None;
        }
        let (na, nb) = (nodes[a], nodes[b]);
        if na.hub || nb.hub {
            let (h, o) = if na.hub { (na, b) } else { (nb, a) };
            let r = h.region.unwrap();
            return (!nodes[o].hub && zero_contains[o][r]).then_some(0.0);
        }
        let mut best = ring_next.get(&(a.min(b), a.max(b))).copied();
        if let Some(c) = clipped_cost(scene, &boxes, na.p, nb.p, tol) {
            best = Some(best.map_or(c, |x: f64| x.min(c)));
        }
        best
    };
    let (value, path) = dense_dijkstra(nodes.len(), 0, 1, weight).ok_or(OracleError::NoPath)?;
    let witness = path.iter().filter(|&&i| !nodes[i].hub).map(|&i| nodes[i].p).collect();
    Ok(OracleReport { value, method: OracleMethod::DenseVisibility, error_bound: gap, witness })
}

fn line_intersection(p: Point, u: Point, q: Point, v: Point) -> Point {
    // p + a·u = q + b·v
    let a = (q - p).cross(v) / u.cross(v);
    p + u * a
}

/// Residuals `| ‖pq′‖ − cosβ/cosθ·‖pq‖ |` and `| ‖qq′‖ − sinα/cosθ·‖pq‖ |`
/// for `q` at angle `β = θ − α` from `r(k)`, where `q′` is where the ray from
/// `p` in direction `r(k+1)` meets the ray from `q` perpendicular to `r(k)`.
pub fn verify_cone_projection(alpha: f64, theta: f64) -> [f64; 2] {
    let beta = theta - alpha;
    let p = Point::ORIGIN;
    let q = Point::from_angle(beta);
    let qq = line_intersection(p, Point::from_angle(theta), q, Point::new(0.0, 1.0));
    let pq = p.dist(q);
    [
        (p.dist(qq) - beta.cos() / theta.cos() * pq).abs(),
        (q.dist(qq) - alpha.sin() / theta.cos() * pq).abs(),
    ]
}

/// Residuals of `‖p′q′‖ = ‖pq‖/cosθ` and
/// `‖cp′‖ + ‖cq′‖ = (sinα + sinβ)/(cosθ sinθ)·‖pq‖`, with `q′` as in
/// [`verify_cone_projection`], `p′` where the ray from `p` at `θ + π/2` meets the ray
/// from `q` opposite to `r(k)`, and `c` the crossing of `pq′` and `qp′`.
pub fn verify_cone_rectangle(alpha: f64, theta: f64) -> [f64; 2] {
    let beta = theta - alpha;
    let p = Point::ORIGIN;
    let q = Point::from_angle(beta);
    let qq = line_intersection(p, Point::from_angle(theta), q, Point::new(0.0, 1.0));
    let pp = line_intersection(p, Point::from_angle(theta + std::f64::consts::FRAC_PI_2), q, Point::new(-1.0, 0.0));
    let c = line_intersection(p, qq - p, q, pp - q);
    let pq = p.dist(q);
    let (st, ct) = theta.sin_cos();
    [
        (pp.dist(qq) - pq / ct).abs(),
        (c.dist(pp) + c.dist(qq) - (alpha.sin() + beta.sin()) / (ct * st) * pq).abs(),
    ]
}

/// Largest ratio of boundary arc to chord between consecutive original
/// sample points of `shape`.
pub fn verify_arc_chord_ratio(shape: &Shape, ds: &DirectionSet) -> f64 {
    let tol = 1e-9 * shape.diameter().max(1.0);
    let sp = original_sample_points(shape, ds, tol);
    let m = sp.len();
    if m < 2 {
        return 1.0;
    }
    let mut worst: f64 = 1.0;
    for i in 0..m {
        let (a, b) = (sp[i].location, sp[(i + 1) % m].location);
        let chord = a.dist(b);
        if chord <= tol {
            continue;
        }
        let arc = shape
            .boundary_arc(a, b, Orientation::Ccw, tol.max(2e-7 * shape.diameter()))
            .map(|x| x.1)
            .unwrap_or(f64::INFINITY);
        worst = worst.max(arc / chord);
    }
    worst
}

/// All faces of `map` containing `p` (closed, tolerance `tol`) by linear
/// scan, and the face the locate tie rule selects.
pub fn naive_locate(map: &TrapMap, p: Point, tol: f64) -> (Vec<usize>, Option<usize>) {
    let all: Vec<usize> = (0..map.faces.len()).filter(|&f| map.face_contains(f, p, tol)).collect();
    let pick = all.iter().copied().filter(|&f| !map.faces[f].interior).min();
    (all, pick)
}

/// Cone-nearest neighbours of every point by brute force, with visibility
/// against `obstacles`.
pub fn naive_theta(points: &[Point], theta: f64, m: usize, obstacles: &[Shape], tol: f64) -> Vec<Vec<Option<usize>>> {
    points
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let mut best: Vec<Option<(f64, usize)>> = vec![None; m];
            for (j, &q) in points.iter().enumerate() {
                if i == j || p.dist(q) <= tol {
                    continue;
                }
                if obstacles.iter().any(|o| o.segment_crosses_interior(p, q, tol)) {
                    continue;
                }
                let c = cone_of(q - p, theta, m);
                let pr = projected(q - p, theta, c);
                if best[c].is_none_or(|b| (pr, j) < b) {
                    best[c] = Some((pr, j));
                }
            }
            best.into_iter().map(|b| b.map(|x| x.1)).collect()
        })
        .collect()
}

/// Sub-interval of `t ∈ [0, 1]` where `‖p + t·q‖ ≤ d`.
fn disk_interval(p: Point, q: Point, d: f64) -> Option<(f64, f64)> {
    let a = q.dot(q);
    let b = 2.0 * p.dot(q);
    let c = p.dot(p) - d * d;
    if a == 0.0 {
        return (c <= 0.0).then_some((0.0, 1.0));
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let r = disc.sqrt();
    let (t0, t1) = (((-b - r) / (2.0 * a)).max(0.0), ((-b + r) / (2.0 * a)).min(1.0));
    (t0 <= t1).then_some((t0, t1))
}

/// Length of the straight diagram move `a → b` where `‖π(x) − σ(y)‖ > d`.
pub fn forbidden_length(pi: &PolyCurve, sigma: &PolyCurve, d: f64, a: Point, b: Point) -> f64 {
    let mut cuts = vec![0.0, 1.0];
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    for i in 1..pi.segments() {
        let t = (pi.arc(i) - a.x) / dx;
        if dx != 0.0 && t > 0.0 && t < 1.0 {
            cuts.push(t);
        }
    }
    for j in 1..sigma.segments() {
        let t = (sigma.arc(j) - a.y) / dy;
        if dy != 0.0 && t > 0.0 && t < 1.0 {
            cuts.push(t);
        }
    }
    cuts.sort_by(f64::total_cmp);
    let len = a.dist(b);
    let mut free = 0.0;
    for w in cuts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 <= t0 {
            continue;
        }
        let (u, v) = (a.lerp(b, t0), a.lerp(b, t1));
        // Within one cell the difference vector is affine in the parameter.
        let p0 = pi.at(u.x) - sigma.at(u.y);
        let p1 = pi.at(v.x) - sigma.at(v.y);
        if let Some((s0, s1)) = disk_interval(p0, p1 - p0, d) {
            free += (s1 - s0) * (t1 - t0);
        }
    }
    (len * (1.0 - free)).max(0.0)
}

/// Minimum exposure by Dijkstra on an `n × n` lattice over the diagram with
/// the 16-neighbourhood. Edge costs are exact forbidden lengths, so the value
/// is the cost of a real path.
///
/// `error_bound = (ρ − 1)·value + 2·h`, with `h` the lattice diagonal step
/// and `ρ = sec(½·atan(1/2))` the worst stretch of a 16-neighbourhood path
/// against a straight segment.
pub fn grid_minex(pi: &PolyCurve, sigma: &PolyCurve, d: f64, n: usize) -> OracleReport {
    let n = n.max(2);
    let (lx, ly) = (pi.length(), sigma.length());
    let (hx, hy) = (lx / (n - 1) as f64, ly / (n - 1) as f64);
    let node = |i: usize, j: usize| Point::new(i as f64 * hx, j as f64 * hy);
    const STEPS: [(i64, i64); 16] = [
        (1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (-1, -1), (1, -1),
        (2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1),
    ];
    let total = n * n;
    let mut dist = vec![f64::INFINITY; total];
    let mut prev = vec![usize::MAX; total];
    let mut heap = std::collections::BinaryHeap::new();
    dist[0] = 0.0;
    heap.push((std::cmp::Reverse(OrdF64(0.0)), 0usize));
    let target = total - 1;
    while let Some((std::cmp::Reverse(OrdF64(du)), u)) = heap.pop() {
        if du > dist[u] {
            continue;
        }
        if u == target {
            break;
        }
        let (i, j) = ((u / n) as i64, (u % n) as i64);
        for (di, dj) in STEPS {
            let (a, b) = (i + di, j + dj);
            if a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                continue;
            }
            let v = a as usize * n + b as usize;
            let w = forbidden_length(pi, sigma, d, node(i as usize, j as usize), node(a as usize, b as usize));
            if du + w < dist[v] {
                dist[v] = du + w;
                prev[v] = u;
                heap.push((std::cmp::Reverse(OrdF64(du + w)), v));
            }
        }
    }
    let mut witness = vec![node(n - 1, n - 1)];
    let mut v = target;
    while v != 0 {
        v = prev[v];
        witness.push(node(v / n, v % n));
    }
    witness.reverse();
    let value = dist[target];
    let rho = 1.0 / (0.5 * 0.5f64.atan()).cos();
    let error_bound = (rho - 1.0) * value + 2.0 * hx.hypot(hy);
    OracleReport { value, method: OracleMethod::GridDijkstra, error_bound, witness }
}

#[derive(Clone, Copy)]
struct OrdF64(f64);

impl PartialEq for OrdF64 {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o).is_eq()
    }
}

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

/// Weak Fréchet decision by breadth-first search over diagram cells. Two
/// edge-adjacent cells connect when their shared edge has a free point, and
/// corner-adjacent cells when the shared corner is free.
pub fn weak_frechet_reachable(pi: &PolyCurve, sigma: &PolyCurve, d: f64) -> bool {
    let (n, m) = (pi.segments(), sigma.segments());
    let pv = pi.vertices();
    let sv = sigma.vertices();
    if pv[0].dist(sv[0]) > d || pv[n].dist(sv[m]) > d {
        return false;
    }
    // Free point on the diagram edge x = arc(i), y in segment j of σ.
    let vert = |i: usize, j: usize| disk_interval(pv[i] - sv[j], -(sv[j + 1] - sv[j]), d).is_some();
    let horiz = |i: usize, j: usize| disk_interval(pv[i] - sv[j], pv[i + 1] - pv[i], d).is_some();
    let corner = |i: usize, j: usize| pv[i].dist(sv[j]) <= d;
    let mut seen = vec![false; n * m];
    let mut queue = std::collections::VecDeque::from([(0usize, 0usize)]);
    seen[0] = true;
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == (n - 1, m - 1) {
            return true;
        }
        let mut next: Vec<(usize, usize)> = Vec::new();
        if i + 1 < n && vert(i + 1, j) {
            next.push((i + 1, j));
        }
        if i > 0 && vert(i, j) {
            next.push((i - 1, j));
        }
        if j + 1 < m && horiz(i, j + 1) {
            next.push((i, j + 1));
        }
        if j > 0 && horiz(i, j) {
            next.push((i, j - 1));
        }
        for (di, dj) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let (a, b) = (i as i64 + di, j as i64 + dj);
            if a < 0 || b < 0 || a >= n as i64 || b >= m as i64 {
                continue;
            }
            let ci = if di > 0 { i + 1 } else { i };
            let cj = if dj > 0 { j + 1 } else { j };
            if corner(ci, cj) {
                next.push((a as usize, b as usize));
            }
        }
        for (a, b) in next {
            if !seen[a * m + b] {
                seen[a * m + b] = true;
                queue.push_back((a, b));
            }
        }
    }
    false
}
