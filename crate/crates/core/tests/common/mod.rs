#![allow(dead_code)]

use cbpsep_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi G(n, p).
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &e).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

/// Random point in the box, rescaled so each block lands inside its sum
/// bounds when `n` vertices of unit size allow it.
pub fn fractional_point<R: Rng>(n: usize, lo: u64, hi: u64, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let mut block = || {
        let target = rng.gen_range(lo as f64..=hi as f64);
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        // water-fill toward the target sum, staying inside [0, 1]
        for _ in 0..60 {
            let s: f64 = v.iter().sum();
            if (s - target).abs() < 1e-12 {
                break;
            }
            let free: Vec<usize> = (0..n)
                .filter(|&i| if s < target { v[i] < 1.0 } else { v[i] > 0.0 })
                .collect();
            if free.is_empty() {
                break;
            }
            let step = (target - s) / free.len() as f64;
            for i in free {
                v[i] = (v[i] + step).clamp(0.0, 1.0);
            }
        }
        v
    };
    let x = block();
    let y = block();
    (x, y)
}
