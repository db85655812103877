//! Common tangents by bisection on support-function differences.

use super::{point_shape_distance, shape_distance, Point, Shape, Support};
use crate::error::GeomError;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangentKind {
    /// Both shapes on the same side of the line.
    Outer,
    /// The line separates the shapes.
    Inner,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentPair {
    pub point_on_a: Point,
    pub point_on_b: Point,
    pub kind: TangentKind,
    /// Unit normal of the line; the first shape lies on `normal·x ≤ c`.
    pub normal: Point,
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn closest_pair(a: Support, b: Support) -> (Point, Point) {
    let mut best = (a.first(), b.first());
    for p in a.points() {
        for q in b.points() {
            if p.dist(q) < best.0.dist(best.1) {
                best = (p, q);
            }
        }
    }
    best
}

/// Outer tangents (always two) and inner tangents (two when the shapes are
/// strictly separated).
pub fn common_tangents(a: &Shape, b: &Shape, tol: f64) -> Result<Vec<TangentPair>, GeomError> {
    let sep = shape_distance(a, b, tol)?;
    let u = if sep.dist > 0.0 {
        (sep.q - sep.p).normalized()
    } else {
        (b.interior_point() - a.interior_point()).normalized()
    };
    let phi = u.angle();
    let g = |t: f64| {
        let n = Point::from_angle(t);
        a.support_value(n) - b.support_value(n)
    };
    let mut out = Vec::with_capacity(4);
    for (lo, hi) in [(phi, phi + PI), (phi - PI, phi)] {
        let t = bisect(g, lo, hi);
        let n = Point::from_angle(t);
        let (p, q) = closest_pair(a.support(n)?, b.support(n)?);
        out.push(TangentPair { point_on_a: p, point_on_b: q, kind: TangentKind::Outer, normal: n });
    }
    if sep.dist > tol {
        let f = |t: f64| {
            let n = Point::from_angle(t);
            a.support_value(n) + b.support_value(-n)
        };
        for (lo, hi) in [(phi, phi + FRAC_PI_2), (phi - FRAC_PI_2, phi)] {
            let t = bisect(f, lo, hi);
            let n = Point::from_angle(t);
            let (p, q) = closest_pair(a.support(n)?, b.support(-n)?);
            out.push(TangentPair { point_on_a: p, point_on_b: q, kind: TangentKind::Inner, normal: n });
        }
    }
    Ok(out)
}

/// Touch points of the two tangent lines from `p` to `a`.
pub fn point_tangents(p: Point, a: &Shape, tol: f64) -> Result<[Point; 2], GeomError> {
    if a.strictly_contains(p, tol) {
        return Err(GeomError::Inside);
    }
    let sep = point_shape_distance(p, a);
    if sep.dist <= tol {
        return Ok(boundary_neighbors(p, a));
    }
    let u = (p - sep.q).normalized();
    let phi = u.angle();
    let f = |t: f64| {
        let n = Point::from_angle(t);
        a.support_value(n) - n.dot(p)
    };
    let mut out = [p; 2];
    for (k, (lo, hi)) in [(phi, phi + FRAC_PI_2), (phi - FRAC_PI_2, phi)].into_iter().enumerate() {
        let n = Point::from_angle(bisect(f, lo, hi));
        let s = a.support(n)?;
        out[k] = s.points().into_iter().min_by(|x, y| x.dist(p).total_cmp(&y.dist(p))).unwrap();
    }
    Ok(out)
}

/// For a boundary point: the far ends of the incident edges (polygons) or the
/// point itself (curved boundary).
fn boundary_neighbors(p: Point, a: &Shape) -> [Point; 2] {
    let Shape::Polygon(poly) = a else {
        return [p, p];
    };
    let v = poly.vertices();
    let n = v.len();
    if n == 1 {
        return [v[0], v[0]];
    }
    let scale = poly.bbox().diagonal().max(1.0);
    if let Some(i) = v.iter().position(|q| q.dist(p) <= 1e-12 * scale) {
        return [v[(i + n - 1) % n], v[(i + 1) % n]];
    }
    let mut best = (0, f64::INFINITY);
    for i in 0..n {
        let d = super::point_segment_distance(p, v[i], v[(i + 1) % n]);
        if d < best.1 {
            best = (i, d);
        }
    }
    [v[best.0], v[(best.0 + 1) % n]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::EllipseRect;

    fn circle(x: f64, y: f64, r: f64) -> Shape {
        EllipseRect::new(x, y, r, r, 0.0, -1e3, 1e3, -1e3, 1e3).unwrap().into()
    }

    #[test]
    fn congruent_circles_outer() {
        let t = common_tangents(&circle(0.0, 0.0, 1.0), &circle(4.0, 0.0, 1.0), 1e-9).unwrap();
        assert_eq!(t.len(), 4);
        let outer: Vec<_> = t.iter().filter(|p| p.kind == TangentKind::Outer).collect();
        assert_eq!(outer.len(), 2);
        for tp in outer {
            assert!((tp.point_on_a.x).abs() < 1e-9 && (tp.point_on_a.y.abs() - 1.0).abs() < 1e-9);
            assert!((tp.point_on_b.x - 4.0).abs() < 1e-9);
            assert!((tp.point_on_a.y - tp.point_on_b.y).abs() < 1e-9);
        }
    }

    #[test]
    fn circle_point_tangent() {
        let t = point_tangents(Point::new(0.0, 0.0), &circle(2.0, 0.0, 1.0), 1e-9).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let mut ys: Vec<f64> = t.iter().map(|p| p.y).collect();
        ys.sort_by(f64::total_cmp);
        assert!((ys[0] + h).abs() < 1e-9 && (ys[1] - h).abs() < 1e-9);
        for p in t {
            assert!((p.x - 1.5).abs() < 1e-9);
        }
    }

    #[test]
    fn touching_has_no_inner() {
        let t = common_tangents(&circle(0.0, 0.0, 1.0), &circle(2.0, 0.0, 1.0), 1e-9).unwrap();
        assert_eq!(t.len(), 2);
    }
}
