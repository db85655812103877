use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zos::gen::random_scene;
use zos::geom::EllipseRect;
use zos::scene::{Region, RegionKind};
use zos_cli::format::{emit_scene, parse_scene};

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn emit_then_parse_is_identity(seed in any::<u64>(), n in 0usize..6, ellipses in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kinds: Vec<RegionKind> = (0..n)
            .map(|_| if rng.gen_bool(0.5) { RegionKind::Zero } else { RegionKind::Obstacle })
            .collect();
        let eps = rng.gen_range(0.01..1.0);
        let mut scene = random_scene(&mut rng, eps, &kinds, 10.0, 8, 0.1);
        // Ellipses go in their own column to the right of the polygons.
        for i in 0..ellipses {
            let (cx, cy) = (20.0, 3.0 * i as f64);
            let (rx, ry): (f64, f64) = (rng.gen_range(0.2..1.0), rng.gen_range(0.2..1.0));
            let e = EllipseRect::new(
                cx,
                cy,
                rx,
                ry,
                rng.gen_range(-3.0..3.0),
                cx - rng.gen_range(0.3..1.0) * rx.max(ry),
                cx + rx.max(ry),
                cy - ry.max(rx),
                cy + rng.gen_range(0.3..1.0) * rx.max(ry),
            );
            if let Ok(e) = e {
                let kind = if rng.gen_bool(0.5) { RegionKind::Zero } else { RegionKind::Obstacle };
                scene.regions.push(Region { kind, shape: e.into() });
            }
        }
        let text = emit_scene(&scene);
        let back = parse_scene(&text, "gen.json").unwrap();
        prop_assert_eq!(&back, &scene);
        prop_assert_eq!(emit_scene(&back), text);
    }
}
