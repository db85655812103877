use std::f64::consts::TAU;
use std::sync::OnceLock;

use super::polygon::line_disk;
use super::{closed_perimeter, signed_area, Bbox, Point};
use crate::error::GeomError;

/// Intersection of an ellipse with an axis-aligned rectangle.
///
/// The ellipse has center `(cx, cy)`, semi-axes `rx`, `ry` and is rotated
/// counter-clockwise by `rot`. This is the shape of one free-space cell.
#[derive(Debug)]
pub struct EllipseRect {
    pub cx: f64,
    pub cy: f64,
    pub rx: f64,
    pub ry: f64,
    pub rot: f64,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    e1: Point,
    e2: Point,
    boundary: OnceLock<Vec<Point>>,
}

impl Clone for EllipseRect {
    fn clone(&self) -> Self {
        EllipseRect::new_unchecked(
            self.cx, self.cy, self.rx, self.ry, self.rot, self.xmin, self.xmax, self.ymin, self.ymax,
        )
    }
}

impl PartialEq for EllipseRect {
    fn eq(&self, o: &Self) -> bool {
        self.params() == o.params()
    }
}

const SAGITTA_REL: f64 = 1e-7;

impl EllipseRect {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        cx: f64,
        cy: f64,
        rx: f64,
        ry: f64,
        rot: f64,
        xmin: f64,
        xmax: f64,
        ymin: f64,
        ymax: f64,
    ) -> Result<EllipseRect, GeomError> {
        let all = [cx, cy, rx, ry, rot, xmin, xmax, ymin, ymax];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if rx <= 0.0 || ry <= 0.0 {
            return Err(GeomError::InvalidEllipse("semi-axes must be positive"));
        }
        if xmin > xmax || ymin > ymax {
            return Err(GeomError::InvalidEllipse("rectangle bounds are inverted"));
        }
        let e = EllipseRect::new_unchecked(cx, cy, rx, ry, rot, xmin, xmax, ymin, ymax);
        if e.boundary().len() < 3 || e.area() <= 1e-12 * e.diameter().powi(2) {
            return Err(GeomError::Empty);
        }
        Ok(e)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new_unchecked(
        cx: f64,
        cy: f64,
        rx: f64,
        ry: f64,
        rot: f64,
        xmin: f64,
        xmax: f64,
        ymin: f64,
        ymax: f64,
    ) -> EllipseRect {
        let e1 = Point::from_angle(rot);
        EllipseRect {
            cx,
            cy,
            rx,
            ry,
            rot,
            xmin,
            xmax,
            ymin,
            ymax,
            e1,
            e2: e1.perp(),
            boundary: OnceLock::new(),
        }
    }

    pub fn params(&self) -> [f64; 9] {
        [self.cx, self.cy, self.rx, self.ry, self.rot, self.xmin, self.xmax, self.ymin, self.ymax]
    }

    pub fn center(&self) -> Point {
        Point::new(self.cx, self.cy)
    }

    fn at(&self, phi: f64) -> Point {
        let (s, c) = phi.sin_cos();
        self.center() + self.e1 * (self.rx * c) + self.e2 * (self.ry * s)
    }

    fn to_local(&self, p: Point) -> Point {
        let d = p - self.center();
        Point::new(d.dot(self.e1), d.dot(self.e2))
    }

    fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.xmin, self.ymin),
            Point::new(self.xmax, self.ymin),
            Point::new(self.xmax, self.ymax),
            Point::new(self.xmin, self.ymax),
        ]
    }

    fn in_rect(&self, p: Point, tol: f64) -> bool {
        p.x >= self.xmin - tol && p.x <= self.xmax + tol && p.y >= self.ymin - tol && p.y <= self.ymax + tol
    }

    fn in_ellipse(&self, p: Point, tol: f64) -> bool {
        let l = self.to_local(p);
        let a = self.rx + tol;
        let b = self.ry + tol;
        a > 0.0 && b > 0.0 && (l.x / a).powi(2) + (l.y / b).powi(2) <= 1.0
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.in_rect(p, tol) && self.in_ellipse(p, tol)
    }

    fn scale(&self) -> f64 {
        let r = self.rx.max(self.ry);
        self.center().norm().max(self.xmin.abs().max(self.xmax.abs())).max(self.ymin.abs().max(self.ymax.abs())) + r
    }

    /// Extreme points in direction `d` (one, or two when an edge is extreme).
    pub fn support(&self, d: Point) -> Option<(Point, Option<Point>)> {
        let tie = 1e-12 * self.scale();
        let mut cands: Vec<Point> = Vec::with_capacity(12);
        let l = Point::new(d.dot(self.e1), d.dot(self.e2));
        let den = (self.rx * l.x).hypot(self.ry * l.y);
        if den > 0.0 {
            let loc = Point::new(self.rx * self.rx * l.x / den, self.ry * self.ry * l.y / den);
            let p = self.center() + self.e1 * loc.x + self.e2 * loc.y;
            if self.in_rect(p, tie) {
                cands.push(p);
            }
        }
        let cs = self.corners();
        for c in cs {
            if self.in_ellipse(c, tie) {
                cands.push(c);
            }
        }
        for i in 0..4 {
            let a = cs[i];
            let b = cs[(i + 1) % 4];
            for p in self.ellipse_segment_hits(a, b) {
                cands.push(p);
            }
        }
        if cands.is_empty() {
            return None;
        }
        let best = cands.iter().map(|p| p.dot(d)).fold(f64::NEG_INFINITY, f64::max);
        let along = d.perp();
        let mut lo: Option<Point> = None;
        let mut hi: Option<Point> = None;
        for &p in &cands {
            if p.dot(d) >= best - tie {
                let t = p.dot(along);
                if lo.is_none_or(|q| t < q.dot(along)) {
                    lo = Some(p);
                }
                if hi.is_none_or(|q| t > q.dot(along)) {
                    hi = Some(p);
                }
            }
        }
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        if lo.dist(hi) > tie {
            Some((lo, Some(hi)))
        } else {
            Some((lo, None))
        }
    }

    /// Crossings of the ellipse boundary with segment `ab`.
    fn ellipse_segment_hits(&self, a: Point, b: Point) -> Vec<Point> {
        let la = self.to_local(a);
        let lb = self.to_local(b);
        let o = Point::new(la.x / self.rx, la.y / self.ry);
        let e = Point::new((lb.x - la.x) / self.rx, (lb.y - la.y) / self.ry);
        let mut out = Vec::new();
        if let Some((t0, t1)) = line_disk(o, e, Point::ORIGIN, 1.0) {
            for t in [t0, t1] {
                if (-1e-12..=1.0 + 1e-12).contains(&t) {
                    out.push(a.lerp(b, t.clamp(0.0, 1.0)));
                }
            }
        }
        out
    }

    /// Parameter interval of the line `o + t·d` inside the shape offset by
    /// `offset`.
    pub fn clip_line(&self, o: Point, d: Point, offset: f64) -> Option<(f64, f64)> {
        let a = self.rx + offset;
        let b = self.ry + offset;
        if a <= 0.0 || b <= 0.0 {
            return None;
        }
        let lo = self.to_local(o);
        let ld = Point::new(d.dot(self.e1), d.dot(self.e2));
        let (mut t0, mut t1) =
            line_disk(Point::new(lo.x / a, lo.y / b), Point::new(ld.x / a, ld.y / b), Point::ORIGIN, 1.0)?;
        for (oc, dc, mn, mx) in [(o.x, d.x, self.xmin, self.xmax), (o.y, d.y, self.ymin, self.ymax)] {
            let (mn, mx) = (mn - offset, mx + offset);
            if mn > mx {
                return None;
            }
            if dc.abs() < 1e-300 {
                if oc < mn || oc > mx {
                    return None;
                }
                continue;
            }
            let ta = (mn - oc) / dc;
            let tb = (mx - oc) / dc;
            t0 = t0.max(ta.min(tb));
            t1 = t1.min(ta.max(tb));
        }
        (t0 <= t1).then_some((t0, t1))
    }

    /// Counter-clockwise boundary polyline whose vertices lie on the true
    /// boundary; chord sagitta is below `1e-7` of the diameter.
    pub fn boundary(&self) -> &[Point] {
        self.boundary.get_or_init(|| self.polygonize())
    }

    pub fn area(&self) -> f64 {
        signed_area(self.boundary())
    }

    pub fn perimeter(&self) -> f64 {
        closed_perimeter(self.boundary())
    }

    pub fn bbox(&self) -> Bbox {
        let r = Bbox::from_points(self.boundary().iter().copied());
        if r.is_empty() {
            Bbox::from_points(self.corners())
        } else {
            r
        }
    }

    pub fn diameter(&self) -> f64 {
        let rect = Point::new(self.xmax - self.xmin, self.ymax - self.ymin).norm();
        rect.min(2.0 * self.rx.max(self.ry))
    }

    fn polygonize(&self) -> Vec<Point> {
        let arcs = self.inside_arcs();
        let mut out: Vec<Point> = Vec::new();
        let rmax = self.rx.max(self.ry);
        let tol = SAGITTA_REL * self.diameter().max(1e-300);
        let step = (8.0 * tol / rmax).sqrt().min(TAU / 64.0);
        match arcs {
            Arcs::Full => {
                let n = (TAU / step).ceil().max(8.0) as usize;
                for j in 0..n {
                    out.push(self.at(TAU * j as f64 / n as f64));
                }
            }
            Arcs::None => {
                if self.corners().iter().all(|&c| self.in_ellipse(c, 0.0)) {
                    out.extend(self.corners());
                }
            }
            Arcs::Some(iv) => {
                for (k, &(s, e)) in iv.iter().enumerate() {
                    let n = ((e - s) / step).ceil().max(1.0) as usize;
                    for j in 0..=n {
                        out.push(self.at(s + (e - s) * j as f64 / n as f64));
                    }
                    let next = iv[(k + 1) % iv.len()].0;
                    let from = self.rect_param(self.at(e));
                    let to = self.rect_param(self.at(next));
                    for c in self.corners_between(from, to) {
                        out.push(c);
                    }
                }
            }
        }
        let eps = 1e-12 * self.scale();
        let mut clean: Vec<Point> = Vec::with_capacity(out.len());
        for p in out {
            if clean.last().is_none_or(|q: &Point| q.dist(p) > eps) {
                clean.push(p);
            }
        }
        while clean.len() > 1 && clean[0].dist(*clean.last().unwrap()) <= eps {
            clean.pop();
        }
        clean
    }

    fn rect_perimeter(&self) -> f64 {
        2.0 * ((self.xmax - self.xmin) + (self.ymax - self.ymin))
    }

    /// Position along the rectangle boundary, counter-clockwise from `(xmin, ymin)`.
    fn rect_param(&self, p: Point) -> f64 {
        let w = self.xmax - self.xmin;
        let h = self.ymax - self.ymin;
        let ds = [
            (p.y - self.ymin).abs(),
            (p.x - self.xmax).abs(),
            (p.y - self.ymax).abs(),
            (p.x - self.xmin).abs(),
        ];
        let mut k = 0;
        for i in 1..4 {
            if ds[i] < ds[k] {
                k = i;
            }
        }
        match k {
            0 => (p.x - self.xmin).clamp(0.0, w),
            1 => w + (p.y - self.ymin).clamp(0.0, h),
            2 => w + h + (self.xmax - p.x).clamp(0.0, w),
            _ => 2.0 * w + h + (self.ymax - p.y).clamp(0.0, h),
        }
    }

    fn corners_between(&self, from: f64, to: f64) -> Vec<Point> {
        let w = self.xmax - self.xmin;
        let h = self.ymax - self.ymin;
        let per = self.rect_perimeter();
        let marks = [(w, 1usize), (w + h, 2), (2.0 * w + h, 3), (per, 0)];
        let span = (to - from).rem_euclid(per);
        let cs = self.corners();
        let mut out = Vec::new();
        let eps = 1e-14 * per;
        // Walk once around starting just after `from`.
        for lap in 0..2 {
            for &(m, idx) in &marks {
                let off = m + lap as f64 * per - from;
                if off > eps && off < span - eps {
                    out.push((off, cs[idx]));
                }
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out.dedup_by(|a, b| (a.0 - b.0).abs() <= eps);
        out.into_iter().map(|(_, p)| p).collect()
    }

    /// Angular intervals of the ellipse boundary lying inside the rectangle.
    fn inside_arcs(&self) -> Arcs {
        // Each constraint reads A·cosφ + B·sinφ ≥ k.
        let c = self.center();
        let cons = [
            (self.rx * self.e1.x, self.ry * self.e2.x, self.xmin - c.x),
            (-self.rx * self.e1.x, -self.ry * self.e2.x, c.x - self.xmax),
            (self.rx * self.e1.y, self.ry * self.e2.y, self.ymin - c.y),
            (-self.rx * self.e1.y, -self.ry * self.e2.y, c.y - self.ymax),
        ];
        let mut set: Vec<(f64, f64)> = vec![(0.0, TAU)];
        for (a, b, k) in cons {
            let r = a.hypot(b);
            let allowed: Vec<(f64, f64)> = if k <= -r {
                vec![(0.0, TAU)]
            } else if k > r {
                Vec::new()
            } else {
                let delta = b.atan2(a);
                let w = (k / r).clamp(-1.0, 1.0).acos();
                circular_pieces(delta - w, delta + w)
            };
            set = intersect_sets(&set, &allowed);
            if set.is_empty() {
                return Arcs::None;
            }
        }
        if set.len() == 1 && set[0].0 <= 0.0 && set[0].1 >= TAU {
            return Arcs::Full;
        }
        // Join a piece ending at 2π with one starting at 0.
        if set.len() >= 2 && set[0].0 <= 0.0 && set.last().unwrap().1 >= TAU {
            let first = set.remove(0);
            let last = set.last_mut().unwrap();
            last.1 = TAU + first.1;
        }
        Arcs::Some(set)
    }
}

enum Arcs {
    Full,
    None,
    Some(Vec<(f64, f64)>),
}

fn circular_pieces(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    if hi - lo >= TAU {
        return vec![(0.0, TAU)];
    }
    let s = lo.rem_euclid(TAU);
    let e = s + (hi - lo);
    if e <= TAU {
        vec![(s, e)]
    } else {
        vec![(0.0, e - TAU), (s, TAU)]
    }
}

fn intersect_sets(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if lo <= hi {
                out.push((lo, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn disk() -> EllipseRect {
        EllipseRect::new(0.0, 0.0, 1.0, 1.0, 0.0, -1e3, 1e3, -1e3, 1e3).unwrap()
    }

    #[test]
    fn disk_support_is_on_circle() {
        let (p, q) = disk().support(Point::new(1.0, 0.0)).unwrap();
        assert!(q.is_none());
        assert!(p.dist(Point::new(1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn clipped_disk_has_flat_edge() {
        let e = EllipseRect::new(0.0, 0.0, 1.0, 1.0, 0.0, -2.0, 2.0, -2.0, 0.5).unwrap();
        let (p, q) = e.support(Point::new(0.0, 1.0)).unwrap();
        let q = q.expect("edge-extreme");
        let h = (1.0f64 - 0.25).sqrt();
        let (p, q) = if p.x < q.x { (p, q) } else { (q, p) };
        assert!((p.x + h).abs() < 1e-12 && (q.x - h).abs() < 1e-12);
        assert!((p.y - 0.5).abs() < 1e-15);
    }

    #[test]
    fn disk_perimeter_and_area() {
        let d = disk();
        assert!((d.perimeter() - TAU).abs() < 1e-5);
        assert!((d.area() - PI).abs() < 1e-5);
    }

    #[test]
    fn half_disk_polygonization() {
        let e = EllipseRect::new(0.0, 0.0, 1.0, 1.0, 0.0, -2.0, 2.0, 0.0, 2.0).unwrap();
        assert!((e.area() - PI / 2.0).abs() < 1e-5);
        assert!((e.perimeter() - (PI + 2.0)).abs() < 1e-5);
        for &p in e.boundary() {
            assert!(p.y >= -1e-12 && p.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rect_inside_ellipse() {
        let e = EllipseRect::new(0.0, 0.0, 10.0, 10.0, 0.3, -1.0, 1.0, -1.0, 1.0).unwrap();
        assert_eq!(e.boundary().len(), 4);
        assert!((e.area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rotated_clip_corner_pieces() {
        let e = EllipseRect::new(0.2, 0.1, 2.0, 0.7, PI / 4.0, -1.0, 1.0, -1.0, 1.0).unwrap();
        let b = e.boundary();
        assert!(signed_area(b) > 0.0);
        for &p in b {
            assert!(e.contains(p, 1e-9));
        }
    }

    #[test]
    fn disjoint_is_empty() {
        assert!(EllipseRect::new(0.0, 0.0, 1.0, 1.0, 0.0, 5.0, 6.0, 5.0, 6.0).is_err());
    }
}
