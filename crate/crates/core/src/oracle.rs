//! Exhaustive reference solvers for tiny inputs: the exact vertex separator
//! problem by enumerating every A/B/S assignment, and the block LP by
//! enumerating every candidate vertex of its polytope.

use thiserror::Error;

use crate::cbp::{Bounds, Partition};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Largest graph [`brute_force_vsp`] accepts (3^16 ≈ 43M assignments).
pub const MAX_VSP_VERTICES: usize = 16;
/// Largest dimension [`brute_force_lp`] accepts.
pub const MAX_LP_DIMENSION: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{n} exceeds the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("no point satisfies the sum bounds")]
    InfeasibleBounds,
    #[error("dimension mismatch: {0} gains, {1} sizes")]
    DimensionMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleResult {
    Infeasible,
    Optimal { weight: u64, witness: Partition },
}

impl OracleResult {
    pub fn weight(&self) -> Option<u64> {
        match self {
            OracleResult::Infeasible => None,
            OracleResult::Optimal { weight, .. } => Some(*weight),
        }
    }
}

const SIDE_A: u8 = 0;
const SIDE_B: u8 = 1;
const SIDE_S: u8 = 2;

/// Minimum-cost separator by enumeration of all 3^n assignments in
/// lexicographic order (vertex 0 first, A < B < S), keeping the first
/// optimum. Branches are cut only when they already contain an A–B edge or
/// exceed an upper size bound, neither of which can be undone deeper down.
pub fn brute_force_vsp(g: &Graph, bounds: Bounds) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > MAX_VSP_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            limit: MAX_VSP_VERTICES,
        });
    }
    let mut search = VspSearch {
        g,
        bounds,
        side: vec![SIDE_S; n],
        best: None,
    };
    search.visit(0, 0, 0, 0);
    Ok(match search.best {
        None => OracleResult::Infeasible,
        Some((weight, side)) => {
            let pick = |s| (0..n).filter(|&v| side[v] == s).collect::<Vec<_>>();
            let witness = Partition {
                a: pick(SIDE_A),
                b: pick(SIDE_B),
                separator: pick(SIDE_S),
                separator_weight: weight,
            };
            OracleResult::Optimal { weight, witness }
        }
    })
}

struct VspSearch<'a> {
    g: &'a Graph,
    bounds: Bounds,
    side: Vec<u8>,
    best: Option<(u64, Vec<u8>)>,
}

impl VspSearch<'_> {
    fn visit(&mut self, v: usize, size_a: u64, size_b: u64, weight: u64) {
        let g = self.g;
        if v == g.n() {
            let b = self.bounds;
            let balanced = (b.la..=b.ua).contains(&size_a) && (b.lb..=b.ub).contains(&size_b);
            if balanced && self.best.as_ref().is_none_or(|(w, _)| weight < *w) {
                self.best = Some((weight, self.side.clone()));
            }
            return;
        }
        let s = g.sizes()[v];
        for label in [SIDE_A, SIDE_B, SIDE_S] {
            let other = match label {
                SIDE_A => Some(SIDE_B),
                SIDE_B => Some(SIDE_A),
                _ => None,
            };
            if let Some(other) = other {
                let conflict = g
                    .neighbor_ids(v)
                    .iter()
                    .any(|&u| u < v && self.side[u] == other);
                if conflict {
                    continue;
                }
            }
            let (na, nb, nw) = match label {
                SIDE_A => (size_a + s, size_b, weight),
                SIDE_B => (size_a, size_b + s, weight),
                _ => (size_a, size_b, weight + g.costs()[v]),
            };
            if na > self.bounds.ua || nb > self.bounds.ub {
                continue;
            }
            self.side[v] = label;
            self.visit(v + 1, na, nb, nw);
        }
        self.side[v] = SIDE_S;
    }
}

/// Maximum of `gᵀv` over `{0 ≤ v ≤ 1, l ≤ sᵀv ≤ u}` by enumerating every
/// candidate vertex: each binary vector inside the bounds, and each binary
/// vector with one coordinate reset so the sum lands exactly on `l` or `u`
/// with that coordinate strictly inside (0, 1). Returns the value and the
/// first maximizer found.
pub fn brute_force_lp<T: Scalar>(g: &[T], s: &[T], l: T, u: T) -> Result<(T, Vec<T>), OracleError> {
    let n = g.len();
    if s.len() != n {
        return Err(OracleError::DimensionMismatch(n, s.len()));
    }
    if n > MAX_LP_DIMENSION {
        return Err(OracleError::TooLarge {
            n,
            limit: MAX_LP_DIMENSION,
        });
    }
    let mut best: Option<(T, Vec<T>)> = None;
    let mut offer = |v: Vec<T>| {
        let val: T = g.iter().zip(&v).map(|(&gi, &vi)| gi * vi).sum();
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            best = Some((val, v));
        }
    };
    for mask in 0u32..(1 << n) {
        let v: Vec<T> = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    T::one()
                } else {
                    T::zero()
                }
            })
            .collect();
        let sum: T = s.iter().zip(&v).map(|(&si, &vi)| si * vi).sum();
        if sum >= l && sum <= u {
            offer(v.clone());
        }
        for i in 0..n {
            let others = sum - s[i] * v[i];
            for target in [l, u] {
                let vi = (target - others) / s[i];
                if vi > T::zero() && vi < T::one() {
                    let mut w = v.clone();
                    w[i] = vi;
                    offer(w);
                }
            }
        }
    }
    best.ok_or(OracleError::InfeasibleBounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn p5_middle_vertex() {
        let g = path(5);
        let b = Bounds::symmetric(1, 2);
        let r = brute_force_vsp(&g, b).unwrap();
        let OracleResult::Optimal { weight, witness } = r else {
            panic!("P5 is separable");
        };
        assert_eq!(weight, 1);
        assert_eq!(witness.separator, vec![2]);
        assert_eq!(witness.a, vec![0, 1]);
        witness.validate(&g, b).unwrap();
    }

    #[test]
    fn k4_infeasible() {
        let e = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = Graph::from_edges(4, &e).unwrap();
        assert_eq!(
            brute_force_vsp(&g, Bounds::symmetric(1, 2)).unwrap(),
            OracleResult::Infeasible
        );
    }

    #[test]
    fn isolated_pair() {
        let g = Graph::from_edges(2, &[]).unwrap();
        let r = brute_force_vsp(&g, Bounds::symmetric(1, 1)).unwrap();
        assert_eq!(r.weight(), Some(0));
    }

    #[test]
    fn weighted_costs_respected() {
        // expensive middle vertex is still forced when both sides must be nonempty
        let g = path(3).with_costs(vec![1, 10, 1]);
        let r = brute_force_vsp(&g, Bounds::symmetric(1, 1)).unwrap();
        assert_eq!(r.weight(), Some(10));
        let r = brute_force_vsp(
            &g,
            Bounds {
                la: 1,
                ua: 2,
                lb: 0,
                ub: 2,
            },
        )
        .unwrap();
        assert_eq!(r.weight(), Some(1));
        let r = brute_force_vsp(
            &g,
            Bounds {
                la: 1,
                ua: 3,
                lb: 0,
                ub: 2,
            },
        )
        .unwrap();
        assert_eq!(r.weight(), Some(0));
    }

    #[test]
    fn too_large() {
        let g = Graph::from_edges(17, &[]).unwrap();
        assert!(matches!(
            brute_force_vsp(&g, Bounds::symmetric(1, 8)),
            Err(OracleError::TooLarge { n: 17, .. })
        ));
        assert!(brute_force_lp(&[1.0; 13], &[1.0; 13], 0.0, 1.0).is_err());
    }

    #[test]
    fn lp_examples() {
        let (val, v): (f64, Vec<f64>) = brute_force_lp(&[5.0, 4.0], &[2.0, 3.0], 0.0, 4.0).unwrap();
        assert!((val - 23.0 / 3.0).abs() < 1e-12);
        assert_eq!(v[0], 1.0);
        assert!((v[1] - 2.0 / 3.0).abs() < 1e-12);

        let (val, v) = brute_force_lp(&[3.0, 2.0, 1.0], &[1.0; 3], 1.0, 2.0).unwrap();
        assert_eq!((val, v), (5.0, vec![1.0, 1.0, 0.0]));

        let (val, v) = brute_force_lp(&[2.0, 1.0], &[1.0; 2], 0.0, 0.0).unwrap();
        assert_eq!((val, v), (0.0, vec![0.0, 0.0]));

        assert_eq!(
            brute_force_lp(&[1.0], &[1.0], 2.0, 2.0),
            Err(OracleError::InfeasibleBounds)
        );
    }
}
