use super::{closed_perimeter, closest_on_segment, orient, signed_area, Bbox, Point};
use crate::error::GeomError;

/// Convex polygon with counter-clockwise vertices.
///
/// One- and two-vertex polygons are accepted as degenerate point and segment
/// regions.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    verts: Vec<Point>,
}

impl Polygon {
    /// Validates strict convexity. Clockwise input is reversed.
    pub fn new(mut verts: Vec<Point>) -> Result<Polygon, GeomError> {
        if verts.is_empty() {
            return Err(GeomError::Empty);
        }
        if verts.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        match verts.len() {
            1 => return Ok(Polygon { verts }),
            2 => {
                if verts[0] == verts[1] {
                    return Err(GeomError::NotConvex { index: 1 });
                }
                return Ok(Polygon { verts });
            }
            _ => {}
        }
        if signed_area(&verts) < 0.0 {
            verts.reverse();
        }
        let n = verts.len();
        let scale = Bbox::from_points(verts.iter().copied()).diagonal();
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let c = verts[(i + 2) % n];
            let e1 = b - a;
            let e2 = c - b;
            if e1.norm() <= 1e-12 * scale || orient(a, b, c) <= 1e-12 * e1.norm() * e2.norm() {
                return Err(GeomError::NotConvex { index: (i + 1) % n });
            }
        }
        // Winding must be exactly once around.
        let turn: f64 = (0..n)
            .map(|i| {
                let e1 = verts[(i + 1) % n] - verts[i];
                let e2 = verts[(i + 2) % n] - verts[(i + 1) % n];
                e1.cross(e2).atan2(e1.dot(e2))
            })
            .sum();
        if (turn - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(GeomError::NotConvex { index: 0 });
        }
        Ok(Polygon { verts })
    }

    /// Convex hull of `pts` (monotone chain), dropping collinear points.
    pub fn hull(pts: &[Point]) -> Result<Polygon, GeomError> {
        let mut v: Vec<Point> = pts.to_vec();
        v.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        v.dedup();
        if v.len() < 3 {
            return Polygon::new(v);
        }
        let mut h: Vec<Point> = Vec::with_capacity(2 * v.len());
        for pass in 0..2 {
            let start = h.len();
            let it: Box<dyn Iterator<Item = &Point>> = if pass == 0 { Box::new(v.iter()) } else { Box::new(v.iter().rev()) };
            for &p in it {
                while h.len() >= start + 2 && orient(h[h.len() - 2], h[h.len() - 1], p) <= 0.0 {
                    h.pop();
                }
                h.push(p);
            }
            h.pop();
        }
        Polygon::new(h)
    }

    /// Trusted constructor for vertices already in counter-clockwise boundary
    /// order (collinear runs allowed).
    pub fn from_ccw_unchecked(verts: Vec<Point>) -> Polygon {
        Polygon { verts }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.verts.len() < 3
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.verts)
    }

    pub fn perimeter(&self) -> f64 {
        closed_perimeter(&self.verts)
    }

    pub fn bbox(&self) -> Bbox {
        Bbox::from_points(self.verts.iter().copied())
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| (self.verts[i], self.verts[(i + 1) % n]))
    }

    pub fn centroid(&self) -> Point {
        let n = self.verts.len() as f64;
        self.verts.iter().fold(Point::ORIGIN, |a, &p| a + p) / n
    }

    /// Closed membership with tolerance `tol`.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        if self.is_degenerate() {
            return self.boundary_distance(p) <= tol;
        }
        self.edges().all(|(a, b)| {
            let e = b - a;
            let l = e.norm();
            l == 0.0 || orient(a, b, p) >= -tol * l
        })
    }

    /// Distance from `p` to the polygon boundary, with the closest point.
    pub fn closest_boundary_point(&self, p: Point) -> (Point, f64) {
        if self.verts.len() == 1 {
            return (self.verts[0], p.dist(self.verts[0]));
        }
        let mut best = (self.verts[0], f64::INFINITY);
        for (a, b) in self.edges() {
            let (q, _) = closest_on_segment(p, a, b);
            let d = p.dist(q);
            if d < best.1 {
                best = (q, d);
            }
        }
        best
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.closest_boundary_point(p).1
    }

    /// Parameter interval of the line `o + t·d` inside the polygon offset
    /// outward by `offset` (inward when negative).
    pub fn clip_line(&self, o: Point, d: Point, offset: f64) -> Option<(f64, f64)> {
        if self.is_degenerate() {
            if offset <= 0.0 {
                return None;
            }
            return capsule_line(&self.verts, o, d, offset);
        }
        let mut t0 = f64::NEG_INFINITY;
        let mut t1 = f64::INFINITY;
        for (a, b) in self.edges() {
            let e = b - a;
            let l = e.norm();
            if l == 0.0 {
                continue;
            }
            // Outward normal of a ccw edge is (e.y, -e.x)/l; constraint n·(x−a) ≤ offset.
            let n = Point::new(e.y, -e.x) / l;
            let num = offset - n.dot(o - a);
            let den = n.dot(d);
            if den.abs() < 1e-300 {
                if num < 0.0 {
                    return None;
                }
                continue;
            }
            let t = num / den;
            if den > 0.0 {
                t1 = t1.min(t);
            } else {
                t0 = t0.max(t);
            }
            if t0 > t1 {
                return None;
            }
        }
        Some((t0, t1))
    }
}

/// Line against the Minkowski sum of a point or segment with a disk.
fn capsule_line(v: &[Point], o: Point, d: Point, r: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut push = |iv: Option<(f64, f64)>| {
        if let Some((a, b)) = iv {
            lo = lo.min(a);
            hi = hi.max(b);
        }
    };
    for &c in v {
        push(line_disk(o, d, c, r));
    }
    if v.len() == 2 {
        let a = v[0];
        let b = v[1];
        let e = b - a;
        let l = e.norm();
        let u = e / l;
        let n = u.perp();
        // Strip |n·(x−a)| ≤ r and 0 ≤ u·(x−a) ≤ l.
        let mut t0 = f64::NEG_INFINITY;
        let mut t1 = f64::INFINITY;
        let mut ok = true;
        for (dir, lo_b, hi_b) in [(n, -r, r), (u, 0.0, l)] {
            let base = dir.dot(o - a);
            let rate = dir.dot(d);
            if rate.abs() < 1e-300 {
                if base < lo_b || base > hi_b {
                    ok = false;
                }
                continue;
            }
            let ta = (lo_b - base) / rate;
            let tb = (hi_b - base) / rate;
            t0 = t0.max(ta.min(tb));
            t1 = t1.min(ta.max(tb));
        }
        if ok && t0 <= t1 {
            push(Some((t0, t1)));
        }
    }
    (lo <= hi).then_some((lo, hi))
}

pub(crate) fn line_disk(o: Point, d: Point, c: Point, r: f64) -> Option<(f64, f64)> {
    let a = d.norm2();
    if a == 0.0 {
        return None;
    }
    let f = o - c;
    let b = f.dot(d);
    let cc = f.norm2() - r * r;
    let disc = b * b - a * cc;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((-b - s) / a, (-b + s) / a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq() -> Polygon {
        Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_nonconvex() {
        let r = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.5),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
        ]);
        assert!(matches!(r, Err(GeomError::NotConvex { .. })));
    }

    #[test]
    fn rejects_collinear() {
        let r = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 1.0),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn clockwise_input_is_reversed() {
        let p = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        ])
        .unwrap();
        assert!(p.area() > 0.0);
    }

    #[test]
    fn clip_through_square() {
        let (t0, t1) = sq().clip_line(Point::new(0.5, -2.0), Point::new(0.0, 1.0), 0.0).unwrap();
        assert!((t0 - 2.0).abs() < 1e-15 && (t1 - 3.0).abs() < 1e-15);
        assert!(sq().clip_line(Point::new(2.0, -2.0), Point::new(0.0, 1.0), 0.0).is_none());
    }

    #[test]
    fn segment_capsule() {
        let s = Polygon::new(vec![Point::new(0.0, 0.0), Point::new(2.0, 0.0)]).unwrap();
        let (t0, t1) = s.clip_line(Point::new(-1.0, 0.0), Point::new(1.0, 0.0), 0.1).unwrap();
        assert!((t0 - 0.9).abs() < 1e-12 && (t1 - 3.1).abs() < 1e-12);
        assert!(s.clip_line(Point::new(1.0, 1.0), Point::new(1.0, 0.0), 0.1).is_none());
        let (t0, t1) = s.clip_line(Point::new(1.0, -1.0), Point::new(0.0, 1.0), 0.1).unwrap();
        assert!((t0 - 0.9).abs() < 1e-12 && (t1 - 1.1).abs() < 1e-12);
    }

    #[test]
    fn contains_closed() {
        let s = sq();
        assert!(s.contains(Point::new(1.0, 0.5), 0.0));
        assert!(!s.contains(Point::new(1.0 + 1e-6, 0.5), 1e-9));
        assert!(s.contains(Point::new(1.0 + 1e-10, 0.5), 1e-9));
    }
}
