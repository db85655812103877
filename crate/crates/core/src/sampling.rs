//! Direction sets and sample points.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::geom::{Point, Polygon, Shape};
use crate::trapmap::{TrapMap, Wall};

/// The `m = 4j` directions `r(k)` at angles `k·θ`, `θ = (π/2)/j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionSet {
    pub theta: f64,
    /// Directions per quadrant.
    pub quarter: usize,
    pub m: usize,
    pub directions: Vec<Point>,
}

impl DirectionSet {
    pub fn with_quarter(j: usize) -> DirectionSet {
        assert!(j >= 1);
        let theta = FRAC_PI_2 / j as f64;
        let m = 4 * j;
        let directions = (0..m)
            .map(|k| {
                let (q, r) = (k / j, k % j);
                let base = Point::from_angle(r as f64 * theta);
                // Quarter turns are exact.
                match q {
                    0 => base,
                    1 => Point::new(-base.y, base.x),
                    2 => Point::new(-base.x, -base.y),
                    _ => Point::new(base.y, -base.x),
                }
            })
            .collect();
        DirectionSet { theta, quarter: j, m, directions }
    }

    #[inline]
    pub fn dir(&self, k: usize) -> Point {
        self.directions[k % self.m]
    }

    /// Index of the direction opposite to `k`.
    #[inline]
    pub fn opposite(&self, k: usize) -> usize {
        (k + self.m / 2) % self.m
    }

    /// Θ-graph spanning ratio for this cone angle.
    pub fn spanning_ratio(&self) -> f64 {
        let h = 0.5 * self.theta;
        1.0 + 2.0 * h.sin() / (h.cos() - h.sin())
    }
}

/// Largest `θ = (π/2)/j` meeting the ε bound and the strict angular cap.
pub fn choose_theta(epsilon: f64, has_obstacles: bool) -> DirectionSet {
    assert!(epsilon > 0.0 && epsilon.is_finite(), "epsilon must be positive");
    let mut bound = (epsilon / (1.0 + epsilon)).asin();
    let cap = if has_obstacles {
        bound *= 0.5;
        PI / 12.0
    } else {
        PI / 6.0
    };
    // θ < cap  ⇔  j > (π/2)/cap, which is an exact integer (3 or 6).
    let j_cap = (FRAC_PI_2 / cap).round() as usize + 1;
    let mut j = (FRAC_PI_2 / bound).ceil() as usize;
    // Guard against rounding on either side of the bound.
    while j > 1 && FRAC_PI_2 / (j - 1) as f64 <= bound {
        j -= 1;
    }
    while FRAC_PI_2 / j as f64 > bound {
        j += 1;
    }
    DirectionSet::with_quarter(j.max(j_cap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleKind {
    Original,
    Propagated,
    Tangent,
    Query,
}

/// A vertex of the spanner graph.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub id: usize,
    pub location: Point,
    pub kind: SampleKind,
    pub region: Option<usize>,
    /// Direction indices for which this point is extreme.
    pub extreme_for: Vec<usize>,
}

/// Support points of `shape` in every direction, merged within `tol` and
/// returned in boundary order. Ids are local indices; `region` is unset.
pub fn original_sample_points(shape: &Shape, ds: &DirectionSet, tol: f64) -> Vec<SamplePoint> {
    let mut pts: Vec<(Point, Vec<usize>)> = Vec::new();
    for k in 0..ds.m {
        let Ok(sup) = shape.support(ds.dir(k)) else {
            continue;
        };
        for p in sup.points() {
            match pts.iter_mut().find(|(q, _)| q.dist(p) <= tol) {
                Some((_, ks)) => {
                    if !ks.contains(&k) {
                        ks.push(k);
                    }
                }
                None => pts.push((p, vec![k])),
            }
        }
    }
    let locs: Vec<Point> = pts.iter().map(|p| p.0).collect();
    let frame = BoundaryFrame::new(shape, &locs);
    pts.sort_by(|a, b| frame.key(a.0).total_cmp(&frame.key(b.0)));
    pts.into_iter()
        .enumerate()
        .map(|(i, (location, extreme_for))| SamplePoint {
            id: i,
            location,
            kind: SampleKind::Original,
            region: None,
            extreme_for,
        })
        .collect()
}

/// Orders points on the boundary of a convex region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryFrame {
    center: Point,
    /// Set for regions without interior: order by projection on this axis.
    axis: Option<Point>,
}

impl BoundaryFrame {
    /// Built from the region's shape and its original sample points.
    pub fn new(shape: &Shape, samples: &[Point]) -> BoundaryFrame {
        let n = samples.len().max(1) as f64;
        let mean = samples.iter().fold(Point::ORIGIN, |a, &p| a + p) / n;
        let spread = samples.iter().map(|p| p.dist(mean)).fold(0.0, f64::max);
        let flat = samples.iter().all(|&p| {
            samples.iter().all(|&q| {
                let e = q - samples[0];
                e.norm() == 0.0 || (p - samples[0]).cross(e).abs() <= 1e-12 * e.norm() * spread.max(1e-300)
            })
        });
        if !flat {
            return BoundaryFrame { center: mean, axis: None };
        }
        let has_interior = match shape {
            Shape::Polygon(p) => !p.is_degenerate(),
            Shape::EllipseRect(_) => true,
        };
        if has_interior {
            return BoundaryFrame { center: shape.interior_point(), axis: None };
        }
        let axis = match shape {
            Shape::Polygon(p) if p.len() == 2 => (p.vertices()[1] - p.vertices()[0]).normalized(),
            _ => Point::new(1.0, 0.0),
        };
        BoundaryFrame { center: mean, axis: Some(axis) }
    }

    pub fn key(&self, p: Point) -> f64 {
        match self.axis {
            Some(a) => (p - self.center).dot(a),
            None => (p - self.center).angle().rem_euclid(2.0 * PI),
        }
    }
}

/// Inscribed polygon through a region's sample points.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplifiedRegion {
    pub region: usize,
    pub polygon: Polygon,
    /// Sample point ids matching `polygon` vertices.
    pub ids: Vec<usize>,
}

impl SimplifiedRegion {
    pub fn is_degenerate(&self) -> bool {
        self.polygon.is_degenerate()
    }
}

/// Connect sample points in boundary order, merging duplicates within `tol`.
pub fn simplify(region: usize, frame: &BoundaryFrame, points: &[(usize, Point)], tol: f64) -> SimplifiedRegion {
    let mut pts: Vec<(usize, Point)> = points.to_vec();
    pts.sort_by(|a, b| frame.key(a.1).total_cmp(&frame.key(b.1)).then(a.0.cmp(&b.0)));
    let mut out: Vec<(usize, Point)> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.iter().any(|q| q.1.dist(p.1) <= tol) {
            continue;
        }
        out.push(p);
    }
    if out.len() > 2 {
        let locs: Vec<Point> = out.iter().map(|p| p.1).collect();
        let diam = crate::geom::Bbox::from_points(locs.iter().copied()).diagonal();
        if crate::geom::signed_area(&locs).abs() <= 1e-12 * diam * diam {
            // Collinear: keep the two ends.
            let axis = (locs[1] - locs[0]).normalized();
            let lo = *out.iter().min_by(|a, b| a.1.dot(axis).total_cmp(&b.1.dot(axis))).unwrap();
            let hi = *out.iter().max_by(|a, b| a.1.dot(axis).total_cmp(&b.1.dot(axis))).unwrap();
            out = vec![lo, hi];
        }
    }
    SimplifiedRegion {
        region,
        polygon: Polygon::from_ccw_unchecked(out.iter().map(|p| p.1).collect()),
        ids: out.iter().map(|p| p.0).collect(),
    }
}

/// Lowest-id original sample point of a region.
pub fn assign_anchor(samples: &[SamplePoint], region: usize) -> Option<usize> {
    samples
        .iter()
        .filter(|s| s.region == Some(region) && s.kind == SampleKind::Original)
        .map(|s| s.id)
        .min()
}

/// A landing point of a trapezoid wall on another region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Propagated {
    pub region: usize,
    pub location: Point,
    /// Sample point id that emitted the wall.
    pub emitter: usize,
    pub direction: usize,
}

/// First region boundary hit by the ray `o + t·d`, ignoring regions in
/// `skip`. Returns `(region, point, t)`.
pub fn first_hit(shapes: &[Shape], o: Point, d: Point, skip: &[usize], tol: f64) -> Option<(usize, Point, f64)> {
    let mut best: Option<(usize, Point, f64)> = None;
    for (r, s) in shapes.iter().enumerate() {
        if skip.contains(&r) {
            continue;
        }
        if let Some((p, t)) = s.ray_intersect(o, d, tol) {
            if best.is_none_or(|b| t < b.2) {
                best = Some((r, p, t));
            }
        }
    }
    best
}

/// Where one end of a wall lands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Landing {
    /// The wall ends at its own emitter (sample id).
    Emitter(usize),
    /// The wall reaches another region at this point.
    Hit { region: usize, location: Point },
}

/// Lower and upper ends of a wall. Each side is cast from the emitter; the
/// landing point is the first hit on an original shape other than the
/// emitter's own regions.
pub fn wall_landings(w: &Wall, up: Point, shapes: &[Shape], tol: f64) -> [Option<Landing>; 2] {
    let own: Vec<usize> = w.emitters.iter().map(|e| e.0).collect();
    let mut out = [None, None];
    for (slot, (side, dir)) in [(w.down_region, -up), (w.up_region, up)].into_iter().enumerate() {
        let Some(r) = side else { continue };
        if let Some(&(_, id)) = w.emitters.iter().find(|e| e.0 == r) {
            out[slot] = Some(Landing::Emitter(id));
            continue;
        }
        if let Some((region, location, _)) = first_hit(shapes, w.at, dir, &own, tol) {
            out[slot] = Some(Landing::Hit { region, location });
        }
    }
    out
}

/// Landing points of the walls of faces lying between two distinct regions.
pub fn propagated_points(map: &TrapMap, shapes: &[Shape], ds: &DirectionSet, tol: f64) -> Vec<Propagated> {
    let mut out = Vec::new();
    let up = ds.dir(map.k);
    for adj in map.face_adjacencies() {
        for w in &adj.walls {
            for landing in wall_landings(w, up, shapes, tol).into_iter().flatten() {
                if let Landing::Hit { region, location } = landing {
                    for &(_, emitter) in &w.emitters {
                        out.push(Propagated { region, location, emitter, direction: map.k });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::EllipseRect;

    #[test]
    fn theta_eps_one() {
        let ds = choose_theta(1.0, false);
        assert_eq!(ds.quarter, 4);
        assert!((ds.theta - PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn theta_eps_tenth() {
        let ds = choose_theta(0.1, false);
        let bound = (0.1f64 / 1.1).asin();
        assert_eq!(ds.quarter, 18);
        assert!(ds.theta <= bound && FRAC_PI_2 / 17.0 > bound);
    }

    #[test]
    fn theta_with_obstacles() {
        let ds = choose_theta(0.25, true);
        assert!(ds.theta < PI / 12.0);
        assert!(ds.theta <= (0.2f64).asin() / 2.0);
        assert_eq!(ds.quarter, 16);
    }

    #[test]
    fn perpendicular_directions_exact() {
        let ds = choose_theta(0.3, false);
        for k in 0..ds.m {
            assert_eq!(ds.dir(k).dot(ds.dir(k + ds.m / 4)), 0.0);
        }
    }

    #[test]
    fn square_gives_corners() {
        let sq: Shape = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
        .into();
        let s = original_sample_points(&sq, &choose_theta(0.5, false), 1e-9);
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn circle_gives_m_points() {
        let c: Shape = EllipseRect::new(0.0, 0.0, 1.0, 1.0, 0.0, -9.0, 9.0, -9.0, 9.0).unwrap().into();
        let ds = choose_theta(0.5, false);
        let s = original_sample_points(&c, &ds, 1e-9);
        assert_eq!(s.len(), ds.m);
        for p in &s {
            assert_eq!(p.extreme_for.len(), 1);
            let k = p.extreme_for[0];
            assert!(p.location.dist(ds.dir(k)) < 1e-12);
        }
    }
}
