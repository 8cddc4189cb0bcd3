//! Separators of square and triangulated grid meshes.
//!
//! `cargo run --release -p cbpsep-core --example grid -- 40`

use std::time::Instant;

use cbpsep_core::{solve, Graph, SolveParams};

fn grid(k: usize, diagonals: bool) -> Graph {
    let mut e = Vec::new();
    for r in 0..k {
        for c in 0..k {
            let v = r * k + c;
            if c + 1 < k {
                e.push((v, v + 1));
            }
            if r + 1 < k {
                e.push((v, v + k));
                if diagonals && c + 1 < k {
                    e.push((v, v + k + 1));
                }
            }
        }
    }
    Graph::from_edges(k * k, &e).expect("grid edges are in range")
}

fn main() {
    let k: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(30);
    for diagonals in [false, true] {
        let g = grid(k, diagonals);
        let t = Instant::now();
        let sol = solve::<f64>(&g, &SolveParams::default()).expect("grid is separable");
        println!(
            "{k}x{k} grid{}: n = {}, |S| = {}, |A| = {}, |B| = {}, levels = {}, {:.2}s",
            if diagonals { " (triangulated)" } else { "" },
            g.n(),
            sol.partition.separator_weight,
            sol.partition.a.len(),
            sol.partition.b.len(),
            sol.trace.len(),
            t.elapsed().as_secs_f64()
        );
    }
}
