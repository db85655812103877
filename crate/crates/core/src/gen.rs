//! Seeded random scenes for tests and benchmarks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{shape_distance, Point, Polygon, Shape};
use crate::scene::{Region, RegionKind, Scene};

/// Random convex polygon with at most `max_vertices` vertices: the hull of
/// points on a jittered circle.
pub fn random_polygon(rng: &mut ChaCha8Rng, center: Point, radius: f64, max_vertices: usize) -> Polygon {
    loop {
        let k = rng.gen_range(3..=max_vertices.max(3));
        let pts: Vec<Point> = (0..k)
            .map(|_| {
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                let r = radius * rng.gen_range(0.6..1.0);
                center + Point::from_angle(a) * r
            })
            .collect();
        if let Ok(p) = Polygon::hull(&pts) {
            if p.len() >= 3 && p.area() > 0.05 * radius * radius {
                return p;
            }
        }
    }
}

/// Scene of pairwise disjoint random polygons in `[0, size]²`, at least
/// `gap` apart. Gives up on a region after 200 failed placements.
pub fn random_scene(rng: &mut ChaCha8Rng, epsilon: f64, kinds: &[RegionKind], size: f64, max_vertices: usize, gap: f64) -> Scene {
    let mut scene = Scene::new(epsilon);
    for &kind in kinds {
        for _ in 0..200 {
            let radius = rng.gen_range(0.05..0.15) * size;
            let c = Point::new(rng.gen_range(radius..size - radius), rng.gen_range(radius..size - radius));
            let shape: Shape = random_polygon(rng, c, radius, max_vertices).into();
            let clear = scene
                .regions
                .iter()
                .all(|r| shape_distance(&r.shape, &shape, 0.0).is_ok_and(|s| s.dist > gap));
            if clear {
                scene.regions.push(Region { kind, shape });
                break;
            }
        }
    }
    scene
}

/// Point in `[0, size]²` outside every obstacle.
pub fn random_free_point(rng: &mut ChaCha8Rng, scene: &Scene, size: f64) -> Point {
    loop {
        let p = Point::new(rng.gen_range(0.0..size), rng.gen_range(0.0..size));
        if !scene.regions.iter().any(|r| r.kind == RegionKind::Obstacle && r.shape.contains(p, 1e-6 * size)) {
            return p;
        }
    }
}
