mod common;

use cbpsep_core::brute_force_lp;
use cbpsep_core::cbp::solve_block_lp;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, f64, f64)> {
    (1usize..=10).prop_flat_map(|n| {
        (
            prop::collection::vec(-20i32..=20, n),
            prop::collection::vec(1u32..=4, n),
            0u32..=40,
            0u32..=40,
        )
            .prop_map(|(g, s, a, b)| {
                let total: u32 = s.iter().sum();
                let (lo, hi) = (a.min(b) % (total + 1), a.max(b));
                (
                    g.into_iter().map(f64::from).collect(),
                    s.into_iter().map(f64::from).collect(),
                    f64::from(lo),
                    f64::from(hi),
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn greedy_matches_vertex_enumeration((g, s, l, u) in instance()) {
        let v = solve_block_lp(&g, &s, l, u).unwrap();
        let (best, _) = brute_force_lp(&g, &s, l, u).unwrap();
        let val: f64 = g.iter().zip(&v).map(|(a, b)| a * b).sum();
        prop_assert!((val - best).abs() <= 1e-9, "greedy {val} vs optimum {best}");

        let sum: f64 = s.iter().zip(&v).map(|(a, b)| a * b).sum();
        prop_assert!(sum >= l - 1e-9 && sum <= u + 1e-9);
        prop_assert!(v.iter().all(|&t| (0.0..=1.0).contains(&t)));
        let frac = v.iter().filter(|&&t| t > 1e-12 && t < 1.0 - 1e-12).count();
        prop_assert!(frac <= 1);
    }

    #[test]
    fn single_precision_close_to_double((g, s, l, u) in instance()) {
        let g32: Vec<f32> = g.iter().map(|&t| t as f32).collect();
        let s32: Vec<f32> = s.iter().map(|&t| t as f32).collect();
        let v = solve_block_lp(&g32, &s32, l as f32, u as f32).unwrap();
        let (best, _) = brute_force_lp(&g, &s, l, u).unwrap();
        let val: f64 = g.iter().zip(&v).map(|(a, &b)| a * f64::from(b)).sum();
        prop_assert!((val - best).abs() <= 1e-3 * (1.0 + best.abs()));
    }
}
