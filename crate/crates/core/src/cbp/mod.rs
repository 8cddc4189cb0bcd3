//! The continuous bilinear program
//!
//! ```text
//! max  cᵀ(x + y) − γ·xᵀB y
//! s.t. 0 ≤ x, y ≤ 1,  la ≤ sᵀx ≤ ua,  lb ≤ sᵀy ≤ ub
//! ```
//!
//! at a single level of the hierarchy. On the input graph `B = A + I` and
//! `s = 1`; coarse levels carry aggregated `B`, `c` and `s` so that the
//! objective of a prolonged point is unchanged.

mod escape;
mod lp;
mod partition;
mod refine;
mod round;

use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::{is_binary, Scalar};

pub use escape::{escape, escape_observed, EscapeOutcome, DEFAULT_GAMMA_STEPS};
pub use lp::solve_block_lp;
pub use partition::{extract_partition, Partition, PartitionError};
pub use refine::{refine, refine_observed, Block, BlockUpdate};
pub use round::{round_to_binary, round_to_binary_with, RoundingMode};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CbpError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(
        "infeasible bounds: need lower {lower} <= upper {upper} and lower <= total size {total}"
    )]
    InfeasibleBounds { lower: f64, upper: f64, total: f64 },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("orthogonality repair at x[{x}], y[{y}] would break both lower bounds")]
    DegenerateRepair { x: usize, y: usize },
    #[error("coordinate {index} cannot be made binary without lowering the objective")]
    ResidualFractional { index: usize },
    #[error("coordinate {index} is not binary")]
    NotBinary { index: usize },
    #[error("x[{x}] and y[{y}] are both 1 but interact")]
    NotOrthogonal { x: usize, y: usize },
    #[error("point violates the sum bounds")]
    BoundsViolated,
}

/// Integer sum bounds on the two blocks, measured in vertex size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub la: u64,
    pub ua: u64,
    pub lb: u64,
    pub ub: u64,
}

impl Bounds {
    /// Same bounds for both blocks.
    pub fn symmetric(lower: u64, upper: u64) -> Self {
        Bounds {
            la: lower,
            ua: upper,
            lb: lower,
            ub: upper,
        }
    }
}

/// A pair of relaxed indicator vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: Vec<T>, y: Vec<T>) -> Self {
        Point { x, y }
    }

    pub fn zeros(n: usize) -> Self {
        Point {
            x: vec![T::zero(); n],
            y: vec![T::zero(); n],
        }
    }

    /// Indicator point of the vertex sets `a` and `b`.
    pub fn from_sets(n: usize, a: &[usize], b: &[usize]) -> Self {
        let mut p = Self::zeros(n);
        for &i in a {
            p.x[i] = T::one();
        }
        for &i in b {
            p.y[i] = T::one();
        }
        p
    }

    pub fn is_binary(&self) -> bool {
        self.x.iter().chain(&self.y).all(|&v| is_binary(v))
    }

    pub fn in_box(&self) -> bool {
        let tol = T::binary_tol();
        self.x
            .iter()
            .chain(&self.y)
            .all(|&v| v >= -tol && v <= T::one() + tol)
    }
}

/// One level's bilinear program.
///
/// `B` is stored as the off-diagonal pattern of the level graph plus a
/// separate diagonal; every stored entry is a positive integer.
#[derive(Debug, Clone)]
pub struct CbpInstance<T> {
    xadj: Vec<usize>,
    adjncy: Vec<usize>,
    offdiag: Vec<T>,
    diag: Vec<T>,
    cost: Vec<T>,
    size: Vec<T>,
    cost_int: Vec<u64>,
    size_int: Vec<u64>,
    bounds: Bounds,
    gamma0: T,
}

impl<T: Scalar> CbpInstance<T> {
    /// Finest-level program of `g`: `B = A + I` with `A` the weighted
    /// adjacency of `g`.
    pub fn from_graph(g: &Graph, bounds: Bounds) -> Result<Self, CbpError> {
        Self::with_diagonal(g, &vec![1; g.n()], bounds)
    }

    /// Program with off-diagonal `B` taken from the edge weights of `g` and
    /// the given diagonal. An upper bound above the total size is clamped to
    /// it.
    pub fn with_diagonal(g: &Graph, diag: &[u64], bounds: Bounds) -> Result<Self, CbpError> {
        let n = g.n();
        if diag.len() != n {
            return Err(CbpError::DimensionMismatch {
                expected: n,
                found: diag.len(),
            });
        }
        if let Some(i) = diag.iter().position(|&d| d == 0) {
            return Err(CbpError::InvalidInstance(format!(
                "B[{i}][{i}] must be at least 1"
            )));
        }
        if let Some(v) = g.validate().first() {
            return Err(CbpError::InvalidInstance(v.to_string()));
        }
        let total = g.total_size();
        for (lo, hi) in [(bounds.la, bounds.ua), (bounds.lb, bounds.ub)] {
            if lo > hi || lo > total {
                return Err(CbpError::InfeasibleBounds {
                    lower: lo as f64,
                    upper: hi as f64,
                    total: total as f64,
                });
            }
        }
        let bounds = Bounds {
            ua: bounds.ua.min(total),
            ub: bounds.ub.min(total),
            ..bounds
        };

        let mut xadj = Vec::with_capacity(n + 1);
        let mut adjncy = Vec::with_capacity(2 * g.edge_count());
        let mut offdiag = Vec::with_capacity(2 * g.edge_count());
        xadj.push(0);
        for u in 0..n {
            for (v, w) in g.neighbors(u) {
                adjncy.push(v);
                offdiag.push(T::from_count(w));
            }
            xadj.push(adjncy.len());
        }
        let cost_int = g.costs().to_vec();
        let gamma0 = T::from_count(cost_int.iter().copied().max().unwrap_or(0));
        Ok(CbpInstance {
            xadj,
            adjncy,
            offdiag,
            diag: diag.iter().map(|&d| T::from_count(d)).collect(),
            cost: cost_int.iter().map(|&c| T::from_count(c)).collect(),
            size: g.sizes().iter().map(|&s| T::from_count(s)).collect(),
            size_int: g.sizes().to_vec(),
            cost_int,
            bounds,
            gamma0,
        })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Initial penalty, the largest vertex cost.
    pub fn gamma0(&self) -> T {
        self.gamma0
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn costs(&self) -> &[T] {
        &self.cost
    }

    pub fn sizes(&self) -> &[T] {
        &self.size
    }

    pub fn integer_costs(&self) -> &[u64] {
        &self.cost_int
    }

    pub fn integer_sizes(&self) -> &[u64] {
        &self.size_int
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diag
    }

    /// The level graph behind this program: off-diagonal `B` as edge
    /// weights, with the integer costs and sizes.
    pub fn interaction_graph(&self) -> Graph {
        let rows = (0..self.n())
            .map(|i| {
                let r = self.xadj[i]..self.xadj[i + 1];
                self.adjncy[r.clone()]
                    .iter()
                    .zip(&self.offdiag[r])
                    .map(|(&j, &w)| (j, w.to_u64().expect("integral interaction weight")))
                    .collect()
            })
            .collect();
        Graph::from_raw_parts(rows, self.cost_int.clone(), self.size_int.clone())
    }

    /// Nonzeros of row `i` of `B`, diagonal included, in ascending column
    /// order.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let r = self.xadj[i]..self.xadj[i + 1];
        let cols = &self.adjncy[r.clone()];
        let vals = &self.offdiag[r];
        let split = cols.partition_point(|&j| j < i);
        let lower = cols[..split]
            .iter()
            .copied()
            .zip(vals[..split].iter().copied());
        let upper = cols[split..]
            .iter()
            .copied()
            .zip(vals[split..].iter().copied());
        lower.chain(std::iter::once((i, self.diag[i]))).chain(upper)
    }

    /// `B v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        (0..self.n())
            .map(|i| {
                let r = self.xadj[i]..self.xadj[i + 1];
                self.adjncy[r.clone()]
                    .iter()
                    .zip(&self.offdiag[r])
                    .fold(self.diag[i] * v[i], |acc, (&j, &w)| acc + w * v[j])
            })
            .collect()
    }

    /// `xᵀ B y`.
    pub fn interaction(&self, x: &[T], y: &[T]) -> T {
        self.apply(y).iter().zip(x).map(|(&by, &xi)| xi * by).sum()
    }

    /// `sᵀ v`.
    pub fn size_of(&self, v: &[T]) -> T {
        self.size.iter().zip(v).map(|(&s, &vi)| s * vi).sum()
    }

    /// `cᵀ(x + y) − γ·xᵀBy`.
    pub fn objective(&self, p: &Point<T>, gamma: T) -> Result<T, CbpError> {
        self.check_dims(p)?;
        let linear: T = self
            .cost
            .iter()
            .zip(p.x.iter().zip(&p.y))
            .map(|(&c, (&x, &y))| c * (x + y))
            .sum();
        Ok(linear - gamma * self.interaction(&p.x, &p.y))
    }

    /// Box and sum constraints. Overlap is allowed; the penalty term prices it.
    pub fn feasible(&self, p: &Point<T>) -> bool {
        if self.check_dims(p).is_err() || !p.in_box() {
            return false;
        }
        let b = self.bounds;
        within(self.size_of(&p.x), b.la, b.ua) && within(self.size_of(&p.y), b.lb, b.ub)
    }

    pub(crate) fn check_dims(&self, p: &Point<T>) -> Result<(), CbpError> {
        let n = self.n();
        for len in [p.x.len(), p.y.len()] {
            if len != n {
                return Err(CbpError::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn within<T: Scalar>(sum: T, lo: u64, hi: u64) -> bool {
    let tol = T::improvement_tol();
    sum >= T::from_count(lo) - tol && sum <= T::from_count(hi) + tol
}
