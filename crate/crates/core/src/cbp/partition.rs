use thiserror::Error;

use super::{Bounds, CbpError, CbpInstance, Point};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// A vertex separator: `a` and `b` share no edge, `separator` holds the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub separator: Vec<usize>,
    pub separator_weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {0} is not assigned to exactly one of A, B, S")]
    NotAPartition(usize),
    #[error("edge {0}-{1} joins A and B")]
    CrossingEdge(usize, usize),
    #[error("size of {side} is {size}, outside [{lower}, {upper}]")]
    Unbalanced {
        side: char,
        size: u64,
        lower: u64,
        upper: u64,
    },
    #[error("separator weight is recorded as {recorded} but the costs sum to {actual}")]
    WrongWeight { recorded: u64, actual: u64 },
}

impl Partition {
    /// Builds a partition from explicit sides; everything else is separator.
    pub fn from_sides(g: &Graph, a: Vec<usize>, b: Vec<usize>) -> Self {
        let mut side = vec![2u8; g.n()];
        for &v in &a {
            side[v] = 0;
        }
        for &v in &b {
            side[v] = 1;
        }
        let separator: Vec<usize> = (0..g.n()).filter(|&v| side[v] == 2).collect();
        let separator_weight = separator.iter().map(|&v| g.costs()[v]).sum();
        Partition {
            a,
            b,
            separator,
            separator_weight,
        }
    }

    /// Checks the partition against the graph itself: each vertex in one set,
    /// no A–B edge, both sides within bounds (in vertex size), and the
    /// recorded weight equal to the separator's cost.
    pub fn validate(&self, g: &Graph, bounds: Bounds) -> Result<(), PartitionError> {
        let n = g.n();
        let mut side = vec![None; n];
        for (label, set) in [(0u8, &self.a), (1, &self.b), (2, &self.separator)] {
            for &v in set {
                if v >= n || side[v].is_some() {
                    return Err(PartitionError::NotAPartition(v));
                }
                side[v] = Some(label);
            }
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(PartitionError::NotAPartition(v));
        }
        for (u, v, _) in g.edges() {
            let (su, sv) = (side[u], side[v]);
            if (su == Some(0) && sv == Some(1)) || (su == Some(1) && sv == Some(0)) {
                return Err(PartitionError::CrossingEdge(u, v));
            }
        }
        let weigh = |set: &[usize]| set.iter().map(|&v| g.sizes()[v]).sum::<u64>();
        for (name, set, lower, upper) in [
            ('A', &self.a, bounds.la, bounds.ua),
            ('B', &self.b, bounds.lb, bounds.ub),
        ] {
            let size = weigh(set);
            if size < lower || size > upper {
                return Err(PartitionError::Unbalanced {
                    side: name,
                    size,
                    lower,
                    upper,
                });
            }
        }
        let actual = self.separator.iter().map(|&v| g.costs()[v]).sum();
        if actual != self.separator_weight {
            return Err(PartitionError::WrongWeight {
                recorded: self.separator_weight,
                actual,
            });
        }
        Ok(())
    }
}

/// Reads `A = {x_i = 1}`, `B = {y_i = 1}` and `S` = the rest off a binary,
/// feasible, orthogonal point.
pub fn extract_partition<T: Scalar>(
    inst: &CbpInstance<T>,
    p: &Point<T>,
) -> Result<Partition, CbpError> {
    inst.check_dims(p)?;
    let n = inst.n();
    let one = T::one();
    for (i, (&x, &y)) in p.x.iter().zip(&p.y).enumerate() {
        if !(x == T::zero() || x == one) || !(y == T::zero() || y == one) {
            return Err(CbpError::NotBinary { index: i });
        }
    }
    for i in (0..n).filter(|&i| p.x[i] == one) {
        if let Some((j, _)) = inst.row(i).find(|&(j, _)| p.y[j] == one) {
            return Err(CbpError::NotOrthogonal { x: i, y: j });
        }
    }
    if !inst.feasible(p) {
        return Err(CbpError::BoundsViolated);
    }
    let a: Vec<usize> = (0..n).filter(|&i| p.x[i] == one).collect();
    let b: Vec<usize> = (0..n).filter(|&i| p.y[i] == one).collect();
    let separator: Vec<usize> = (0..n).filter(|&i| p.x[i] != one && p.y[i] != one).collect();
    let costs = inst.integer_costs();
    let separator_weight = separator.iter().map(|&i| costs[i]).sum();
    Ok(Partition {
        a,
        b,
        separator,
        separator_weight,
    })
}
