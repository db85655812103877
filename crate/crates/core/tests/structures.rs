use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zos::engine::{Provenance, StructureB};
use zos::gen::{random_free_point, random_scene};
use zos::geom::{Point, Polygon, Shape};
use zos::oracle::{exact_zero_region_sp, naive_locate, naive_theta};
use zos::sampling::choose_theta;
use zos::scene::{RegionKind, Scene};
use zos::theta::{ThetaGraph, ThetaVertex};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn points(seed: u64, n: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Point::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))).collect()
}

fn assert_theta_matches_naive(g: &ThetaGraph, pts: &[Point], obstacles: &[Shape]) {
    let naive = naive_theta(pts, g.theta, g.m, obstacles, 1e-9);
    for (p, cones) in naive.iter().enumerate() {
        for (c, want) in cones.iter().enumerate() {
            assert_eq!(g.nearest(p, c).map(|x| x.0), *want, "vertex {p} cone {c}");
        }
    }
}

#[test]
fn theta_empty_inputs() {
    let g = ThetaGraph::build(Vec::new(), 0.3, 21, Vec::new(), 1e-9);
    assert!(g.is_empty() && g.edges().is_empty());
    assert!(naive_theta(&[], 0.3, 21, &[], 1e-9).is_empty());
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn theta_nearest_matches_brute_force(seed in 0u64..10_000, n in 2usize..120) {
        let ds = choose_theta(0.25, false);
        let pts = points(seed, n);
        let verts = pts.iter().map(|&p| ThetaVertex { location: p, region: None }).collect();
        let g = ThetaGraph::build(verts, ds.theta, ds.m, Vec::new(), 1e-9);
        assert_theta_matches_naive(&g, &pts, &[]);
    }

    #[test]
    fn constrained_theta_matches_brute_force(seed in 0u64..10_000, n in 2usize..80) {
        let ds = choose_theta(0.25, true);
        let block: Shape = Polygon::new(vec![
            Point::new(4.0, 3.0), Point::new(6.0, 3.5), Point::new(5.5, 7.0), Point::new(4.2, 6.0),
        ]).unwrap().into();
        let pts: Vec<Point> = points(seed, n).into_iter().filter(|&p| !block.contains(p, 1e-6)).collect();
        let verts = pts.iter().map(|&p| ThetaVertex { location: p, region: None }).collect();
        let g = ThetaGraph::build(verts, ds.theta, ds.m, vec![block.clone()], 1e-9);
        assert_theta_matches_naive(&g, &pts, &[block]);
    }

    #[test]
    fn incremental_insert_matches_rebuild(seed in 0u64..10_000, n in 2usize..60) {
        let ds = choose_theta(0.5, false);
        let pts = points(seed, n);
        let verts: Vec<ThetaVertex> = pts.iter().map(|&p| ThetaVertex { location: p, region: None }).collect();
        let mut g = ThetaGraph::build(verts[..n - 1].to_vec(), ds.theta, ds.m, Vec::new(), 1e-9);
        g.insert_point(pts[n - 1], None);
        let full = ThetaGraph::build(verts, ds.theta, ds.m, Vec::new(), 1e-9);
        prop_assert_eq!(g.edges(), full.edges());
    }

    #[test]
    fn locate_matches_naive_scan(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let kinds: Vec<RegionKind> = (0..n).map(|_| if rng.gen_bool(0.5) { RegionKind::Zero } else { RegionKind::Obstacle }).collect();
        let scene = random_scene(&mut rng, 0.5, &kinds, 10.0, 8, 0.05);
        let b = StructureB::build(&scene, seed).unwrap();
        for map in &b.maps {
            for _ in 0..100 {
                let p = Point::new(rng.gen_range(-5.0..15.0), rng.gen_range(-5.0..15.0));
                prop_assert_eq!(map.locate(p).ok(), naive_locate(map, p, 0.0).1);
            }
        }
    }

    #[test]
    fn engine_never_beats_exact_optimum(seed in 0u64..10_000, eps in prop::sample::select(vec![0.5, 0.3, 0.1])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let scene = random_scene(&mut rng, eps, &vec![RegionKind::Zero; n], 10.0, 10, 0.05);
        let b = StructureB::build(&scene, seed).unwrap();
        for _ in 0..4 {
            let s = random_free_point(&mut rng, &scene, 10.0);
            let t = random_free_point(&mut rng, &scene, 10.0);
            let w = b.query(s, t).unwrap();
            let o = exact_zero_region_sp(&scene, s, t).unwrap();
            prop_assert!(w.weight >= o.value - 1e-9);
            prop_assert!(w.weight <= (1.0 + eps) * o.value + 1e-9);
            prop_assert!(w.weight <= s.dist(t) + 1e-9);
        }
    }
}

fn square(x: f64, y: f64, s: f64) -> Polygon {
    Polygon::new(vec![Point::new(x, y), Point::new(x + s, y), Point::new(x + s, y + s), Point::new(x, y + s)]).unwrap()
}

#[test]
fn build_is_deterministic_per_seed() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let scene = random_scene(&mut rng, 0.3, &[RegionKind::Zero, RegionKind::Obstacle, RegionKind::Zero], 10.0, 8, 0.05);
    let a = StructureB::build(&scene, 4).unwrap();
    let b = StructureB::build(&scene, 4).unwrap();
    assert_eq!(a.stats, b.stats);
    assert_eq!(a.graph.edges.len(), b.graph.edges.len());
    let s = Point::new(0.0, 0.0);
    let t = Point::new(10.0, 10.0);
    assert_eq!(a.query(s, t).unwrap(), b.query(s, t).unwrap());
}

#[test]
fn query_at_same_point_is_free() {
    let scene = Scene::new(0.5).with_zero(square(0.0, 0.0, 1.0)).with_obstacle(square(3.0, 0.0, 1.0));
    let b = StructureB::new(&scene).unwrap();
    let p = Point::new(2.0, 2.0);
    assert_eq!(b.query(p, p).unwrap().weight, 0.0);
}

#[test]
fn plane_only_query_is_euclidean() {
    let b = StructureB::new(&Scene::new(0.2)).unwrap();
    let w = b.query(Point::new(1.0, 1.0), Point::new(4.0, 5.0)).unwrap();
    assert_eq!(w.weight, 5.0);
    assert_eq!(b.stats.vertices, 0);
    assert_eq!(b.stats.edges, 0);
}

#[test]
fn square_samples_are_corners() {
    // Every direction set contains the four axis directions, so a square has
    // exactly its corners as samples and a star of three anchor edges.
    for eps in [0.5, 0.25, 0.1] {
        let b = StructureB::new(&Scene::new(eps).with_zero(square(0.0, 0.0, 1.0))).unwrap();
        assert_eq!(b.stats.vertices, 4);
        assert_eq!(b.stats.by_provenance.get(&Provenance::Anchor), Some(&3));
    }
}

#[test]
fn obstacle_detour_lies_between_bounds() {
    // Square obstacle [1,3]×[-1,1]; s and t straddle it. The geodesic runs
    // over a corner pair: 2·√(1 + 1) + 2.
    let scene = Scene::new(0.25).with_obstacle(square(1.0, -1.0, 2.0));
    let b = StructureB::new(&scene).unwrap();
    let w = b.query(Point::new(0.0, 0.0), Point::new(4.0, 0.0)).unwrap();
    let opt = 2.0 * 2f64.sqrt() + 2.0;
    assert!(w.weight >= opt - 1e-9 && w.weight <= 1.25 * opt, "{}", w.weight);
}

#[test]
fn touching_zero_regions_chain_for_free() {
    let scene = Scene::new(0.5).with_zero(square(0.0, 0.0, 1.0)).with_zero(square(1.0, 0.0, 1.0)).with_zero(square(2.0, 0.5, 1.0));
    let b = StructureB::new(&scene).unwrap();
    let w = b.query(Point::new(0.1, 0.1), Point::new(2.9, 1.4)).unwrap();
    assert!(w.weight <= 1e-12, "{}", w.weight);
}
