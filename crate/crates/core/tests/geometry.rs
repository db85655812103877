use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zos::gen::random_polygon;
use zos::geom::{
    common_tangents, point_shape_distance, point_tangents, polygon_distance_brute, shape_distance, EllipseRect, Point,
    Polygon, Shape, TangentKind,
};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() }
}

fn poly(seed: u64, cx: f64, cy: f64, r: f64) -> Polygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_polygon(&mut rng, Point::new(cx, cy), r, 12)
}

/// Brute-force distance from a point to a convex polygon.
fn point_poly(p: Point, v: &[Point]) -> f64 {
    let n = v.len();
    let inside = (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(p - v[i]) >= 0.0);
    if inside {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let t = ((p - a).dot(b - a) / (b - a).dot(b - a)).clamp(0.0, 1.0);
            p.dist(a + (b - a) * t)
        })
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn gjk_matches_brute_force(s1 in 0u64..10_000, s2 in 0u64..10_000, dx in 2.5f64..8.0, dy in -4.0f64..4.0) {
        let a = poly(s1, 0.0, 0.0, 1.0);
        let b = poly(s2, dx, dy, 1.0);
        let g = shape_distance(&a.clone().into(), &b.clone().into(), 0.0).unwrap();
        let r = polygon_distance_brute(a.vertices(), b.vertices());
        prop_assert!((g.dist - r.dist).abs() <= 1e-9, "{} vs {}", g.dist, r.dist);
        prop_assert!((g.p.dist(g.q) - g.dist).abs() <= 1e-9);
        let back = shape_distance(&b.into(), &a.into(), 0.0).unwrap();
        prop_assert!((back.dist - g.dist).abs() <= 1e-9);
    }

    #[test]
    fn point_distance_matches_brute_force(seed in 0u64..10_000, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let a = poly(seed, 0.0, 0.0, 1.0);
        let p = Point::new(x, y);
        let sep = point_shape_distance(p, &a.clone().into());
        prop_assert!((sep.dist - point_poly(p, a.vertices())).abs() <= 1e-9);
    }

    #[test]
    fn support_is_extreme(seed in 0u64..10_000, angle in 0.0f64..std::f64::consts::TAU) {
        let shape: Shape = poly(seed, 1.0, -2.0, 2.0).into();
        let d = Point::from_angle(angle);
        let best = shape.boundary().iter().map(|p| p.dot(d)).fold(f64::NEG_INFINITY, f64::max);
        for p in shape.support(d).unwrap().points() {
            prop_assert!((p.dot(d) - best).abs() <= 1e-9);
        }
    }

    #[test]
    fn ellipse_support_on_boundary(rx in 0.5f64..3.0, ry in 0.5f64..3.0, rot in 0.0f64..3.1, angle in 0.0f64..std::f64::consts::TAU) {
        let e = EllipseRect::new(0.0, 0.0, rx, ry, rot, -1.0, 1.5, -0.8, 2.0).unwrap();
        let shape: Shape = e.into();
        let d = Point::from_angle(angle);
        let best = shape.boundary().iter().map(|p| p.dot(d)).fold(f64::NEG_INFINITY, f64::max);
        for p in shape.support(d).unwrap().points() {
            prop_assert!(shape.contains(p, 1e-9));
            // The polygonized boundary is inscribed, so it can only fall short.
            prop_assert!(p.dot(d) >= best - 1e-12 && p.dot(d) <= best + 1e-6 * shape.diameter());
        }
    }

    #[test]
    fn tangents_support_both_shapes(s1 in 0u64..10_000, s2 in 0u64..10_000, dx in 3.0f64..8.0, dy in -3.0f64..3.0) {
        let a: Shape = poly(s1, 0.0, 0.0, 1.0).into();
        let b: Shape = poly(s2, dx, dy, 1.0).into();
        let ts = common_tangents(&a, &b, 1e-9).unwrap();
        prop_assert_eq!(ts.len(), 4);
        for t in ts {
            let c = t.normal.dot(t.point_on_a);
            prop_assert!((t.normal.dot(t.point_on_b) - c).abs() <= 1e-7);
            prop_assert!(a.support_value(t.normal) <= c + 1e-7);
            match t.kind {
                TangentKind::Outer => prop_assert!(b.support_value(t.normal) <= c + 1e-7),
                TangentKind::Inner => prop_assert!(b.support_value(-t.normal) <= -c + 1e-7),
            }
        }
    }

    #[test]
    fn point_tangent_lines_touch(seed in 0u64..10_000, angle in 0.0f64..std::f64::consts::TAU, r in 1.5f64..6.0) {
        let a: Shape = poly(seed, 0.0, 0.0, 1.0).into();
        let p = Point::from_angle(angle) * r;
        let ts = point_tangents(p, &a, 1e-9).unwrap();
        for q in ts {
            let n = (q - p).perp().normalized();
            let c = n.dot(p);
            let vals: Vec<f64> = a.boundary().iter().map(|v| n.dot(*v) - c).collect();
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(lo >= -1e-7 || hi <= 1e-7, "line through {:?} splits the polygon", q);
        }
    }

    #[test]
    fn hull_contains_inputs(seed in 0u64..10_000) {
        let p = poly(seed, 0.0, 0.0, 1.0);
        let area: f64 = p.area();
        prop_assert!(area > 0.0);
        let back = Polygon::new(p.vertices().to_vec()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn ellipse_rect_area_against_grid_count() {
    let e = EllipseRect::new(0.3, -0.2, 2.0, 1.0, 0.4, -1.0, 1.5, -0.8, 0.9).unwrap();
    let shape: Shape = e.into();
    let n = 600;
    let (x0, x1, y0, y1) = (-1.0, 1.5, -0.8, 0.9);
    let mut hits = 0usize;
    for i in 0..n {
        for j in 0..n {
            let x = x0 + (x1 - x0) * (i as f64 + 0.5) / n as f64;
            let y = y0 + (y1 - y0) * (j as f64 + 0.5) / n as f64;
            let l = Point::new(x - 0.3, y + 0.2);
            let (s, c) = 0.4f64.sin_cos();
            let (u, v) = (l.x * c + l.y * s, -l.x * s + l.y * c);
            if (u / 2.0).powi(2) + v * v <= 1.0 {
                hits += 1;
            }
        }
    }
    let grid = hits as f64 / (n * n) as f64 * (x1 - x0) * (y1 - y0);
    assert!((shape.area() - grid).abs() < 5e-3, "{} vs {grid}", shape.area());
}
