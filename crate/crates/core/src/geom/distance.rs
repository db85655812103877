//! Distances between convex shapes (GJK on the Minkowski difference) and an
//! exhaustive segment-pair routine for polygons.

use super::{segment_segment_closest, Point, Shape};
use crate::error::GeomError;

/// Closest pair between two shapes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Separation {
    pub dist: f64,
    /// Witness on the first shape.
    pub p: Point,
    /// Witness on the second shape.
    pub q: Point,
}

#[derive(Clone, Copy)]
struct Vtx {
    w: Point,
    a: Point,
    b: Point,
}

enum Gjk {
    Separated(Separation),
    Intersecting,
}

const MAX_ITERS: usize = 256;

fn gjk<FA, FB>(sa: FA, sb: FB, init: Point, scale: f64) -> Gjk
where
    FA: Fn(Point) -> Point,
    FB: Fn(Point) -> Point,
{
    let sup = |d: Point| {
        let a = sa(d);
        let b = sb(-d);
        Vtx { w: a - b, a, b }
    };
    let init = if init.norm2() > 0.0 { init } else { Point::new(1.0, 0.0) };
    let mut simplex: Vec<Vtx> = vec![sup(-init)];
    let mut v = simplex[0].w;
    let mut bary: Vec<f64> = vec![1.0];
    let tiny = 1e-15 * scale.max(f64::MIN_POSITIVE);
    for _ in 0..MAX_ITERS {
        let vv = v.norm2();
        if vv.sqrt() <= tiny {
            return Gjk::Intersecting;
        }
        let w = sup(-v);
        // Duality gap v·v − v·w bounds the error in |v|².
        if vv - v.dot(w.w) <= 1e-13 * vv + tiny * tiny {
            break;
        }
        if simplex.iter().any(|s| s.w == w.w) {
            break;
        }
        simplex.push(w);
        match closest_on_simplex(&simplex) {
            None => return Gjk::Intersecting,
            Some((nv, keep, nb)) => {
                if nv.norm2() >= vv && keep.len() == simplex.len() {
                    break;
                }
                simplex = keep.iter().map(|&i| simplex[i]).collect();
                bary = nb;
                v = nv;
            }
        }
    }
    let mut p = Point::ORIGIN;
    let mut q = Point::ORIGIN;
    for (s, &l) in simplex.iter().zip(&bary) {
        p = p + s.a * l;
        q = q + s.b * l;
    }
    Gjk::Separated(Separation { dist: v.norm(), p, q })
}

/// Closest point of the simplex to the origin, with the vertex subset that
/// supports it and barycentric weights. `None` when the origin is enclosed.
fn closest_on_simplex(s: &[Vtx]) -> Option<(Point, Vec<usize>, Vec<f64>)> {
    match s.len() {
        1 => Some((s[0].w, vec![0], vec![1.0])),
        2 => Some(closest_on_edge(s, 0, 1)),
        3 => {
            let (a, b, c) = (s[0].w, s[1].w, s[2].w);
            let area = (b - a).cross(c - a);
            let o = Point::ORIGIN;
            let d1 = (b - a).cross(o - a);
            let d2 = (c - b).cross(o - b);
            let d3 = (a - c).cross(o - c);
            let inside = if area > 0.0 {
                d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0
            } else if area < 0.0 {
                d1 <= 0.0 && d2 <= 0.0 && d3 <= 0.0
            } else {
                false
            };
            if inside {
                return None;
            }
            let mut best: Option<(Point, Vec<usize>, Vec<f64>)> = None;
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                let r = closest_on_edge(s, i, j);
                if best.as_ref().is_none_or(|b| r.0.norm2() < b.0.norm2()) {
                    best = Some(r);
                }
            }
            best
        }
        _ => unreachable!("2d simplex has at most three vertices"),
    }
}

fn closest_on_edge(s: &[Vtx], i: usize, j: usize) -> (Point, Vec<usize>, Vec<f64>) {
    let a = s[i].w;
    let b = s[j].w;
    let e = b - a;
    let l2 = e.norm2();
    let t = if l2 > 0.0 { (-a.dot(e) / l2).clamp(0.0, 1.0) } else { 0.0 };
    if t <= 0.0 {
        (a, vec![i], vec![1.0])
    } else if t >= 1.0 {
        (b, vec![j], vec![1.0])
    } else {
        (a + e * t, vec![i, j], vec![1.0 - t, t])
    }
}

/// Candidate separating directions for the overlap test.
fn axis_candidates(s: &Shape) -> Vec<Point> {
    match s {
        Shape::Polygon(p) => {
            let mut out = Vec::new();
            for (a, b) in p.edges() {
                let e = b - a;
                if e.norm2() > 0.0 {
                    let n = Point::new(e.y, -e.x).normalized();
                    out.push(n);
                    out.push(-n);
                }
            }
            out
        }
        Shape::EllipseRect(_) => (0..720).map(|i| Point::from_angle(i as f64 * std::f64::consts::TAU / 720.0)).collect(),
    }
}

/// Minimum over directions of `h_A(u) + h_B(−u)`; the depth by which the
/// shapes interpenetrate (≤ 0 means separated or touching).
fn penetration(a: &Shape, b: &Shape) -> (f64, Point) {
    let f = |u: Point| a.support_value(u) + b.support_value(-u);
    let mut best = (f64::INFINITY, Point::new(1.0, 0.0));
    let mut cands = axis_candidates(a);
    cands.extend(axis_candidates(b));
    if cands.is_empty() {
        cands = (0..8).map(|i| Point::from_angle(i as f64 * std::f64::consts::FRAC_PI_4)).collect();
    }
    for u in cands {
        let v = f(u);
        if v < best.0 {
            best = (v, u);
        }
    }
    let curved = matches!(a, Shape::EllipseRect(_)) || matches!(b, Shape::EllipseRect(_));
    if curved {
        // Golden-section refinement around the best sampled angle.
        let c = best.1.angle();
        let (mut lo, mut hi) = (c - std::f64::consts::TAU / 720.0, c + std::f64::consts::TAU / 720.0);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if f(Point::from_angle(m1)) < f(Point::from_angle(m2)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let u = Point::from_angle(0.5 * (lo + hi));
        let v = f(u);
        if v < best.0 {
            best = (v, u);
        }
    }
    best
}

/// Euclidean distance between two convex shapes with witness points.
///
/// Shapes touching within `tol` report distance zero; deeper overlap is an
/// error.
pub fn shape_distance(a: &Shape, b: &Shape, tol: f64) -> Result<Separation, GeomError> {
    let scale = a.bbox().union(&b.bbox()).diagonal() + a.bbox().max.norm() + b.bbox().max.norm();
    let init = a.interior_point() - b.interior_point();
    let sa = |d: Point| a.support(d).map(|s| s.first()).unwrap_or(Point::ORIGIN);
    let sb = |d: Point| b.support(d).map(|s| s.first()).unwrap_or(Point::ORIGIN);
    match gjk(sa, sb, init, scale) {
        Gjk::Separated(s) if s.dist > tol => Ok(s),
        _ => {
            let (pen, u) = penetration(a, b);
            if pen > tol {
                return Err(GeomError::Overlap { penetration: pen });
            }
            let p = a.support(u)?.first();
            let q = b.support(-u)?.first();
            let mid = if p.dist(q) <= tol { p.lerp(q, 0.5) } else { p };
            Ok(Separation { dist: 0.0, p: mid, q: mid })
        }
    }
}

/// Distance from a point to a shape; zero with `q = p` when `p` is inside.
pub fn point_shape_distance(p: Point, a: &Shape) -> Separation {
    if a.contains(p, 0.0) {
        return Separation { dist: 0.0, p, q: p };
    }
    match a {
        Shape::Polygon(poly) => {
            let (q, d) = poly.closest_boundary_point(p);
            Separation { dist: d, p, q }
        }
        Shape::EllipseRect(_) => {
            let scale = a.bbox().diagonal() + a.bbox().max.norm() + p.norm();
            let sa = |d: Point| a.support(d).map(|s| s.first()).unwrap_or(Point::ORIGIN);
            match gjk(sa, |_| p, a.interior_point() - p, scale) {
                Gjk::Separated(s) => Separation { dist: s.dist, p, q: s.p },
                Gjk::Intersecting => Separation { dist: 0.0, p, q: p },
            }
        }
    }
}

/// Exact distance between two polygons by checking every segment pair and
/// vertex containment. Quadratic; used for cross-checking.
pub fn polygon_distance_brute(a: &[Point], b: &[Point]) -> Separation {
    let inside = |pts: &[Point], p: Point| -> bool {
        pts.len() >= 3
            && (0..pts.len()).all(|i| super::orient(pts[i], pts[(i + 1) % pts.len()], p) >= 0.0)
    };
    if let Some(&p) = a.iter().find(|&&p| inside(b, p)) {
        return Separation { dist: 0.0, p, q: p };
    }
    if let Some(&q) = b.iter().find(|&&q| inside(a, q)) {
        return Separation { dist: 0.0, p: q, q };
    }
    let seg = |pts: &[Point], i: usize| (pts[i], pts[(i + 1) % pts.len()]);
    let mut best = Separation { dist: f64::INFINITY, p: a[0], q: b[0] };
    for i in 0..a.len() {
        let (a0, a1) = seg(a, i);
        for j in 0..b.len() {
            let (b0, b1) = seg(b, j);
            let (d, p, q) = segment_segment_closest(a0, a1, b0, b1);
            if d < best.dist {
                best = Separation { dist: d, p, q };
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{EllipseRect, Polygon};

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Shape {
        Polygon::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
        .unwrap()
        .into()
    }

    #[test]
    fn facing_squares() {
        let s = shape_distance(&rect(0.0, 0.0, 1.0, 1.0), &rect(3.0, 0.0, 4.0, 1.0), 1e-9).unwrap();
        assert!((s.dist - 2.0).abs() < 1e-12);
        assert!((s.p.x - 1.0).abs() < 1e-12 && (s.q.x - 3.0).abs() < 1e-12);
        assert!((s.p.y - s.q.y).abs() < 1e-12);
    }

    #[test]
    fn touching_is_zero() {
        let s = shape_distance(&rect(0.0, 0.0, 1.0, 1.0), &rect(1.0, 0.5, 2.0, 2.0), 1e-9).unwrap();
        assert_eq!(s.dist, 0.0);
    }

    #[test]
    fn overlap_is_error() {
        let r = shape_distance(&rect(0.0, 0.0, 1.0, 1.0), &rect(0.5, 0.5, 2.0, 2.0), 1e-9);
        assert!(matches!(r, Err(GeomError::Overlap { .. })));
    }

    #[test]
    fn point_to_square() {
        let s = point_shape_distance(Point::new(0.0, 0.0), &rect(1.0, 0.0, 2.0, 1.0));
        assert_eq!(s.dist, 1.0);
        assert_eq!(point_shape_distance(Point::new(1.5, 0.5), &rect(1.0, 0.0, 2.0, 1.0)).dist, 0.0);
    }

    #[test]
    fn circles() {
        let c1: Shape = EllipseRect::new(0.0, 0.0, 1.0, 1.0, 0.0, -9.0, 9.0, -9.0, 9.0).unwrap().into();
        let c2: Shape = EllipseRect::new(4.0, 3.0, 1.0, 1.0, 0.0, -9.0, 9.0, -9.0, 9.0).unwrap().into();
        let s = shape_distance(&c1, &c2, 1e-9).unwrap();
        assert!((s.dist - 3.0).abs() < 1e-9, "{}", s.dist);
        let d = point_shape_distance(Point::new(0.0, 5.0), &c1);
        assert!((d.dist - 4.0).abs() < 1e-9);
    }
}
