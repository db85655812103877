use super::{closest_on_segment, Bbox, EllipseRect, Point, Polygon};
use crate::error::GeomError;

/// A convex region: polygon or clipped ellipse.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Polygon(Polygon),
    EllipseRect(EllipseRect),
}

/// Extreme point(s) of a shape in one direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Support {
    One(Point),
    /// A whole edge is extreme; its two endpoints.
    Two(Point, Point),
}

impl Support {
    pub fn first(&self) -> Point {
        match *self {
            Support::One(p) | Support::Two(p, _) => p,
        }
    }

    pub fn points(&self) -> Vec<Point> {
        match *self {
            Support::One(p) => vec![p],
            Support::Two(p, q) => vec![p, q],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl From<Polygon> for Shape {
    fn from(p: Polygon) -> Self {
        Shape::Polygon(p)
    }
}

impl From<EllipseRect> for Shape {
    fn from(e: EllipseRect) -> Self {
        Shape::EllipseRect(e)
    }
}

impl Shape {
    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            Shape::Polygon(p) => Some(p),
            _ => None,
        }
    }

    /// Boundary as a closed counter-clockwise polyline (exact for polygons).
    pub fn boundary(&self) -> &[Point] {
        match self {
            Shape::Polygon(p) => p.vertices(),
            Shape::EllipseRect(e) => e.boundary(),
        }
    }

    pub fn bbox(&self) -> Bbox {
        match self {
            Shape::Polygon(p) => p.bbox(),
            Shape::EllipseRect(e) => e.bbox(),
        }
    }

    pub fn diameter(&self) -> f64 {
        self.bbox().diagonal()
    }

    pub fn area(&self) -> f64 {
        match self {
            Shape::Polygon(p) => p.area(),
            Shape::EllipseRect(e) => e.area(),
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            Shape::Polygon(p) => p.perimeter(),
            Shape::EllipseRect(e) => e.perimeter(),
        }
    }

    /// A point strictly inside the shape when it has interior.
    pub fn interior_point(&self) -> Point {
        match self {
            Shape::Polygon(p) => p.centroid(),
            Shape::EllipseRect(e) => {
                let b = e.boundary();
                b.iter().fold(Point::ORIGIN, |a, &p| a + p) / b.len().max(1) as f64
            }
        }
    }

    pub fn support(&self, d: Point) -> Result<Support, GeomError> {
        match self {
            Shape::Polygon(p) => polygon_support(p, d),
            Shape::EllipseRect(e) => match e.support(d) {
                Some((a, None)) => Ok(Support::One(a)),
                Some((a, Some(b))) => Ok(Support::Two(a, b)),
                None => Err(GeomError::Empty),
            },
        }
    }

    /// Support function value `max_{x ∈ shape} d·x`.
    pub fn support_value(&self, d: Point) -> f64 {
        match self {
            Shape::Polygon(p) => p.vertices().iter().map(|v| v.dot(d)).fold(f64::NEG_INFINITY, f64::max),
            Shape::EllipseRect(e) => e.support(d).map_or(f64::NEG_INFINITY, |(a, _)| a.dot(d)),
        }
    }

    /// Closed membership with tolerance.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        match self {
            Shape::Polygon(q) => q.contains(p, tol),
            Shape::EllipseRect(e) => e.contains(p, tol),
        }
    }

    /// Inside the shape shrunk by `tol` (never true for degenerate shapes).
    pub fn strictly_contains(&self, p: Point, tol: f64) -> bool {
        match self {
            Shape::Polygon(q) => !q.is_degenerate() && q.contains(p, -tol),
            Shape::EllipseRect(e) => e.contains(p, -tol),
        }
    }

    pub fn clip_line(&self, o: Point, d: Point, offset: f64) -> Option<(f64, f64)> {
        match self {
            Shape::Polygon(p) => p.clip_line(o, d, offset),
            Shape::EllipseRect(e) => e.clip_line(o, d, offset),
        }
    }

    /// Parameter sub-interval of segment `ab` lying inside the shape offset by
    /// `offset`, clamped to `[0, 1]`.
    pub fn segment_interval(&self, a: Point, b: Point, offset: f64) -> Option<(f64, f64)> {
        if a == b {
            return self.contains(a, offset).then_some((0.0, 1.0));
        }
        let (t0, t1) = self.clip_line(a, b - a, offset)?;
        let (t0, t1) = (t0.max(0.0), t1.min(1.0));
        (t0 <= t1).then_some((t0, t1))
    }

    /// Does the open segment `ab` cross the interior by more than `tol`?
    pub fn segment_crosses_interior(&self, a: Point, b: Point, tol: f64) -> bool {
        match self.segment_interval(a, b, -tol) {
            Some((t0, t1)) => (t1 - t0) * a.dist(b) > tol,
            None => false,
        }
    }

    /// First boundary point hit by the ray `o + t·d`, `t ≥ 0`. Grazing within
    /// `tol` counts as a hit.
    pub fn ray_intersect(&self, o: Point, d: Point, tol: f64) -> Option<(Point, f64)> {
        if let Some((t0, t1)) = self.clip_line(o, d, 0.0) {
            if t1 >= 0.0 {
                let t = t0.max(0.0);
                return Some((o + d * t, t));
            }
        }
        let (t0, t1) = self.clip_line(o, d, tol)?;
        if t1 < 0.0 {
            return None;
        }
        let t = t0.max(0.0);
        let (q, _) = self.closest_boundary_point(o + d * t);
        Some((q, (q - o).dot(d) / d.norm2()))
    }

    /// Closest boundary point to `p` and its distance (on the polyline for
    /// clipped ellipses).
    pub fn closest_boundary_point(&self, p: Point) -> (Point, f64) {
        match self {
            Shape::Polygon(q) => q.closest_boundary_point(p),
            Shape::EllipseRect(_) => polyline_closest(self.boundary(), p),
        }
    }

    /// Arc-length position of boundary point `p` counter-clockwise from the
    /// first boundary vertex.
    pub fn boundary_param(&self, p: Point) -> (f64, f64) {
        let b = self.boundary();
        let n = b.len();
        if n == 1 {
            return (0.0, p.dist(b[0]));
        }
        let mut acc = 0.0;
        let mut best = (0.0, f64::INFINITY);
        for i in 0..n {
            let a = b[i];
            let c = b[(i + 1) % n];
            let (q, t) = closest_on_segment(p, a, c);
            let d = p.dist(q);
            let l = a.dist(c);
            if d < best.1 {
                best = (acc + t * l, d);
            }
            acc += l;
        }
        best
    }

    /// Walk the boundary from `a` to `b`.
    pub fn boundary_arc(
        &self,
        a: Point,
        b: Point,
        orient: Orientation,
        tol: f64,
    ) -> Result<(Vec<Point>, f64), GeomError> {
        let poly = self.boundary();
        let n = poly.len();
        let chord = match self {
            Shape::Polygon(_) => 0.0,
            Shape::EllipseRect(e) => 2e-7 * e.diameter(),
        };
        let (sa, da) = self.boundary_param(a);
        let (sb, db) = self.boundary_param(b);
        let worst = da.max(db);
        if worst > tol + chord {
            return Err(GeomError::NotOnBoundary(worst));
        }
        if a.dist(b) <= tol || n < 2 {
            return Ok((vec![a, b], a.dist(b)));
        }
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        for i in 0..n {
            cum.push(cum[i] + poly[i].dist(poly[(i + 1) % n]));
        }
        let per = cum[n];
        let (from, to) = match orient {
            Orientation::Ccw => (sa, sb),
            Orientation::Cw => (sb, sa),
        };
        let span = (to - from).rem_euclid(per);
        let mut mids: Vec<(f64, Point)> = Vec::new();
        for (i, &v) in poly.iter().enumerate() {
            let off = (cum[i] - from).rem_euclid(per);
            if off > 1e-15 * per && off < span - 1e-15 * per {
                mids.push((off, v));
            }
        }
        mids.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut pts = Vec::with_capacity(mids.len() + 2);
        match orient {
            Orientation::Ccw => {
                pts.push(a);
                pts.extend(mids.into_iter().map(|m| m.1));
                pts.push(b);
            }
            Orientation::Cw => {
                pts.push(a);
                pts.extend(mids.into_iter().rev().map(|m| m.1));
                pts.push(b);
            }
        }
        let len = pts.windows(2).map(|w| w[0].dist(w[1])).sum();
        Ok((pts, len))
    }

    /// The shorter of the two boundary arcs between `a` and `b`.
    pub fn shorter_arc(&self, a: Point, b: Point, tol: f64) -> Result<(Vec<Point>, f64), GeomError> {
        let ccw = self.boundary_arc(a, b, Orientation::Ccw, tol)?;
        let cw = self.boundary_arc(a, b, Orientation::Cw, tol)?;
        Ok(if ccw.1 <= cw.1 { ccw } else { cw })
    }
}

fn polyline_closest(b: &[Point], p: Point) -> (Point, f64) {
    let n = b.len();
    if n == 1 {
        return (b[0], p.dist(b[0]));
    }
    let mut best = (b[0], f64::INFINITY);
    for i in 0..n {
        let (q, _) = closest_on_segment(p, b[i], b[(i + 1) % n]);
        let d = p.dist(q);
        if d < best.1 {
            best = (q, d);
        }
    }
    best
}

fn polygon_support(p: &Polygon, d: Point) -> Result<Support, GeomError> {
    let v = p.vertices();
    if v.is_empty() {
        return Err(GeomError::Empty);
    }
    let scale = v.iter().map(|q| q.norm()).fold(0.0, f64::max) + p.bbox().diagonal();
    let tie = 1e-12 * scale * d.norm();
    let best = v.iter().map(|q| q.dot(d)).fold(f64::NEG_INFINITY, f64::max);
    let along = d.perp();
    let mut lo: Option<Point> = None;
    let mut hi: Option<Point> = None;
    for &q in v {
        if q.dot(d) >= best - tie {
            let t = q.dot(along);
            if lo.is_none_or(|r| t < r.dot(along)) {
                lo = Some(q);
            }
            if hi.is_none_or(|r| t > r.dot(along)) {
                hi = Some(q);
            }
        }
    }
    let (lo, hi) = (lo.unwrap(), hi.unwrap());
    Ok(if lo == hi { Support::One(lo) } else { Support::Two(lo, hi) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn square(x: f64, y: f64, s: f64) -> Shape {
        Polygon::new(vec![
            Point::new(x, y),
            Point::new(x + s, y),
            Point::new(x + s, y + s),
            Point::new(x, y + s),
        ])
        .unwrap()
        .into()
    }

    #[test]
    fn square_edge_support() {
        let s = square(0.0, 0.0, 1.0).support(Point::new(0.0, 1.0)).unwrap();
        let mut pts = s.points();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x));
        assert_eq!(pts, vec![Point::new(0.0, 1.0), Point::new(1.0, 1.0)]);
    }

    #[test]
    fn ray_hits_square() {
        let sq = square(0.0, 0.0, 1.0);
        let (p, t) = sq.ray_intersect(Point::new(0.5, -2.0), Point::new(0.0, 1.0), 1e-9).unwrap();
        assert_eq!(p, Point::new(0.5, 0.0));
        assert_eq!(t, 2.0);
        assert!(sq.ray_intersect(Point::new(1.5, -2.0), Point::new(0.0, 1.0), 1e-9).is_none());
        assert!(sq.ray_intersect(Point::new(0.5, 2.0), Point::new(0.0, 1.0), 1e-9).is_none());
        // Grazing the left edge counts.
        let (p, _) = sq.ray_intersect(Point::new(-1e-12, -2.0), Point::new(0.0, 1.0), 1e-9).unwrap();
        assert!(p.dist(Point::new(0.0, 0.0)) < 1e-9);
    }

    #[test]
    fn square_arc() {
        let sq = square(0.0, 0.0, 1.0);
        let (pts, len) =
            sq.boundary_arc(Point::new(0.0, 0.0), Point::new(1.0, 1.0), Orientation::Ccw, 1e-9).unwrap();
        assert_eq!(pts, vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)]);
        assert_eq!(len, 2.0);
        let (_, z) = sq.boundary_arc(Point::new(0.5, 0.0), Point::new(0.5, 0.0), Orientation::Ccw, 1e-9).unwrap();
        assert_eq!(z, 0.0);
        let (pts, len) =
            sq.boundary_arc(Point::new(0.0, 0.0), Point::new(1.0, 1.0), Orientation::Cw, 1e-9).unwrap();
        assert_eq!(pts, vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0)]);
        assert_eq!(len, 2.0);
        assert!(sq.boundary_arc(Point::new(0.5, 0.5), Point::new(1.0, 1.0), Orientation::Cw, 1e-9).is_err());
    }

    #[test]
    fn circle_quarter_arc() {
        let c: Shape = EllipseRect::new(0.0, 0.0, 1.0, 1.0, 0.0, -5.0, 5.0, -5.0, 5.0).unwrap().into();
        let (_, len) =
            c.boundary_arc(Point::new(1.0, 0.0), Point::new(0.0, 1.0), Orientation::Ccw, 1e-9).unwrap();
        assert!((len - PI / 2.0).abs() < 1e-6, "{len}");
    }

    #[test]
    fn crossing_interior() {
        let sq = square(0.0, 0.0, 1.0);
        assert!(sq.segment_crosses_interior(Point::new(-1.0, 0.5), Point::new(2.0, 0.5), 1e-9));
        assert!(!sq.segment_crosses_interior(Point::new(-1.0, 0.0), Point::new(2.0, 0.0), 1e-9));
        assert!(!sq.segment_crosses_interior(Point::new(-1.0, 1.0), Point::new(1.0, -1.0), 1e-9));
        assert!(!sq.segment_crosses_interior(Point::new(0.0, 0.0), Point::new(1.0, 0.0), 1e-9));
    }
}
