use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zos::frechet::{build_free_space, minex, weak_frechet_decide, PolyCurve};
use zos::geom::Point;
use zos::oracle::{grid_minex, weak_frechet_reachable};

fn random_curve(rng: &mut ChaCha8Rng, n: usize) -> PolyCurve {
    let pts = (0..n).map(|_| Point::new(rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0))).collect();
    PolyCurve::new(pts).unwrap()
}

#[test]
fn cell_membership_matches_direct_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let pi = random_curve(&mut rng, 2);
        let sigma = random_curve(&mut rng, 2);
        let d = rng.gen_range(0.2..2.0);
        let f = build_free_space(&pi, &sigma, d).unwrap();
        let c = f.corner();
        for a in 0..50 {
            for b in 0..50 {
                let p = Point::new(c.x * (a as f64 + 0.5) / 50.0, c.y * (b as f64 + 0.5) / 50.0);
                let direct = pi.at(p.x).dist(sigma.at(p.y));
                if (direct - d).abs() < 1e-6 {
                    continue;
                }
                let inside = f.cell(0, 0).is_some_and(|s| s.contains(p, 1e-9));
                assert_eq!(inside, direct <= d, "{p:?} {direct} {d}");
            }
        }
    }
}

#[test]
fn decision_agrees_with_cell_bfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut agree = 0;
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(2..=6);
        let pi = random_curve(&mut rng, n);
        let sigma = random_curve(&mut rng, m);
        let d = rng.gen_range(0.3..2.0);
        let bfs = weak_frechet_reachable(&pi, &sigma, d);
        let dec = weak_frechet_decide(&pi, &sigma, d, 1e-6).unwrap();
        assert_eq!(bfs, dec, "n={n} m={m} d={d}");
        agree += 1;
    }
    assert_eq!(agree, 40);
}

#[test]
fn minex_against_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..6 {
        let pi = random_curve(&mut rng, 3);
        let sigma = random_curve(&mut rng, 3);
        let d = rng.gen_range(0.3..1.0);
        let eps = 0.25;
        let r = minex(&pi, &sigma, d, eps).unwrap();
        let g = grid_minex(&pi, &sigma, d, 200);
        println!("{} grid {} err {}", r.minex_value, g.value, g.error_bound);
        assert!(r.minex_value <= (1.0 + eps) * g.value + 1e-9);
        assert!(r.minex_value >= g.value - g.error_bound - 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]
    #[test]
    fn swap_and_scale_invariance(seed in 0u64..1000, d in 0.2f64..1.5, lambda in 0.3f64..4.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pi = random_curve(&mut rng, 3);
        let sigma = random_curve(&mut rng, 3);
        let a = minex(&pi, &sigma, d, 0.5).unwrap().minex_value;
        let b = minex(&sigma, &pi, d, 0.5).unwrap().minex_value;
        let c = minex(&pi.scaled(lambda), &sigma.scaled(lambda), d * lambda, 0.5).unwrap().minex_value;
        let diag = (pi.length().powi(2) + sigma.length().powi(2)).sqrt();
        prop_assert!(a >= 0.0 && a <= diag + 1e-9);
        prop_assert!((a - b).abs() <= 1e-6 * a.max(1.0), "swap {} {}", a, b);
        prop_assert!((c - lambda * a).abs() <= 1e-6 * (lambda * a).max(1.0), "scale {} {}", c, lambda * a);
    }
}
