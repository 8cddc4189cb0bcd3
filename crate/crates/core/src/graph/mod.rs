//! Sparse undirected graphs with integer edge weights, vertex costs and
//! vertex sizes, plus readers for MatrixMarket and METIS files.

mod matrix_market;
mod metis;

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

pub use matrix_market::{load_matrix_market, parse_matrix_market};
pub use metis::{load_metis, parse_metis, write_metis};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("entry ({row}, {col}) at line {line} is outside a {n}x{n} matrix")]
    Index {
        line: usize,
        row: usize,
        col: usize,
        n: usize,
    },
    #[error("edge {from}-{to} is listed by vertex {from} but not by vertex {to}")]
    Asymmetry { from: usize, to: usize },
    #[error("invalid graph: {0}")]
    Invalid(Violation),
}

/// One breach of the graph invariants, as reported by [`Graph::validate`].
///
/// Vertex ids are the internal 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfLoop(usize),
    DuplicateNeighbor {
        vertex: usize,
        neighbor: usize,
    },
    NeighborOutOfRange {
        vertex: usize,
        neighbor: usize,
    },
    /// `to` lists `from`'s edge with a different weight, or not at all.
    Asymmetric {
        from: usize,
        to: usize,
    },
    ZeroEdgeWeight {
        from: usize,
        to: usize,
    },
    ZeroVertexSize(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop(v) => write!(f, "self-loop: {v}"),
            Violation::DuplicateNeighbor { vertex, neighbor } => {
                write!(f, "duplicate neighbor: {vertex} lists {neighbor} twice")
            }
            Violation::NeighborOutOfRange { vertex, neighbor } => {
                write!(f, "neighbor out of range: {vertex} lists {neighbor}")
            }
            Violation::Asymmetric { from, to } => write!(f, "asymmetric: ({from}, {to})"),
            Violation::ZeroEdgeWeight { from, to } => write!(f, "zero edge weight: ({from}, {to})"),
            Violation::ZeroVertexSize(v) => write!(f, "zero vertex size: {v}"),
        }
    }
}

/// Immutable undirected graph in compressed adjacency form.
///
/// Every vertex carries a cost (the weight counted when it ends up in the
/// separator) and a size (what the balance bounds count). Both are 1 for
/// graphs read from a plain sparsity pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    xadj: Vec<usize>,
    adjncy: Vec<usize>,
    adjwgt: Vec<u64>,
    cost: Vec<u64>,
    size: Vec<u64>,
}

impl Graph {
    /// Builds a unit-weight graph from an edge list. Both orientations of an
    /// edge and repeated entries collapse into one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::Index {
                    line: 0,
                    row: u + 1,
                    col: v + 1,
                    n,
                });
            }
            if u == v {
                return Err(GraphError::Invalid(Violation::SelfLoop(u)));
            }
            rows[u].push((v, 1));
            rows[v].push((u, 1));
        }
        for row in &mut rows {
            row.sort_unstable();
            row.dedup_by_key(|e| e.0);
        }
        Ok(Self::from_raw_parts(rows, vec![1; n], vec![1; n]))
    }

    /// Assembles a graph from per-vertex neighbor lists without checking the
    /// invariants. Rows are sorted by neighbor id; duplicates are kept so that
    /// [`Graph::validate`] can report them.
    pub fn from_raw_parts(
        mut rows: Vec<Vec<(usize, u64)>>,
        cost: Vec<u64>,
        size: Vec<u64>,
    ) -> Self {
        assert_eq!(rows.len(), cost.len(), "one cost per vertex");
        assert_eq!(rows.len(), size.len(), "one size per vertex");
        let mut xadj = Vec::with_capacity(rows.len() + 1);
        xadj.push(0);
        let total = rows.iter().map(Vec::len).sum();
        let mut adjncy = Vec::with_capacity(total);
        let mut adjwgt = Vec::with_capacity(total);
        for row in &mut rows {
            row.sort_by_key(|e| e.0);
            for &(v, w) in row.iter() {
                adjncy.push(v);
                adjwgt.push(w);
            }
            xadj.push(adjncy.len());
        }
        Graph {
            xadj,
            adjncy,
            adjwgt,
            cost,
            size,
        }
    }

    /// Same graph with the vertex costs replaced.
    pub fn with_costs(mut self, cost: Vec<u64>) -> Self {
        assert_eq!(cost.len(), self.n());
        self.cost = cost;
        self
    }

    /// Same graph with the vertex sizes replaced.
    pub fn with_sizes(mut self, size: Vec<u64>) -> Self {
        assert_eq!(size.len(), self.n());
        self.size = size;
        self
    }

    pub fn n(&self) -> usize {
        self.cost.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adjncy.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.xadj[v + 1] - self.xadj[v]
    }

    /// Neighbors of `v` with edge weights, in ascending neighbor order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let r = self.xadj[v]..self.xadj[v + 1];
        self.adjncy[r.clone()]
            .iter()
            .copied()
            .zip(self.adjwgt[r].iter().copied())
    }

    pub fn neighbor_ids(&self, v: usize) -> &[usize] {
        &self.adjncy[self.xadj[v]..self.xadj[v + 1]]
    }

    /// Weight of edge `u-v`, if present.
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<u64> {
        let r = self.xadj[u]..self.xadj[u + 1];
        self.adjncy[r.clone()]
            .binary_search(&v)
            .ok()
            .map(|k| self.adjwgt[r.start + k])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_weight(u, v).is_some()
    }

    pub fn costs(&self) -> &[u64] {
        &self.cost
    }

    pub fn sizes(&self) -> &[u64] {
        &self.size
    }

    pub fn total_size(&self) -> u64 {
        self.size.iter().sum()
    }

    /// Iterates each undirected edge once as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Lists every invariant breach; empty iff the graph is simple, symmetric
    /// and positively weighted.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            if self.size[u] == 0 {
                out.push(Violation::ZeroVertexSize(u));
            }
            let mut prev = None;
            for (v, w) in self.neighbors(u) {
                if v >= n {
                    out.push(Violation::NeighborOutOfRange {
                        vertex: u,
                        neighbor: v,
                    });
                    continue;
                }
                if prev == Some(v) {
                    out.push(Violation::DuplicateNeighbor {
                        vertex: u,
                        neighbor: v,
                    });
                    continue;
                }
                prev = Some(v);
                if v == u {
                    out.push(Violation::SelfLoop(u));
                    continue;
                }
                if w == 0 {
                    out.push(Violation::ZeroEdgeWeight { from: u, to: v });
                }
                if self.edge_weight(v, u) != Some(w) {
                    out.push(Violation::Asymmetric { from: u, to: v });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn p3_is_valid() {
        let g = p3();
        assert!(g.validate().is_empty());
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbor_ids(1), &[0, 2]);
        assert_eq!(g.edge_weight(2, 1), Some(1));
        assert_eq!(g.edge_weight(0, 2), None);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn self_loop_reported() {
        let g = Graph::from_raw_parts(
            vec![vec![(1, 1)], vec![(0, 1), (2, 1)], vec![(1, 1), (2, 1)]],
            vec![1; 3],
            vec![1; 3],
        );
        let v = g.validate();
        assert_eq!(v, vec![Violation::SelfLoop(2)]);
        assert_eq!(v[0].to_string(), "self-loop: 2");
    }

    #[test]
    fn asymmetry_reported_with_ordered_pair() {
        let g = Graph::from_raw_parts(
            vec![vec![(1, 1)], vec![(0, 1), (2, 1)], vec![]],
            vec![1; 3],
            vec![1; 3],
        );
        let v = g.validate();
        assert_eq!(v, vec![Violation::Asymmetric { from: 1, to: 2 }]);
        assert_eq!(v[0].to_string(), "asymmetric: (1, 2)");
    }

    #[test]
    fn weight_mismatch_is_asymmetric() {
        let g = Graph::from_raw_parts(vec![vec![(1, 2)], vec![(0, 1)]], vec![1; 2], vec![1; 2]);
        assert_eq!(g.validate().len(), 2);
    }

    #[test]
    fn zero_size_and_duplicates() {
        let g = Graph::from_raw_parts(
            vec![vec![(1, 1), (1, 1)], vec![(0, 1)]],
            vec![1, 0],
            vec![1, 0],
        );
        let v = g.validate();
        assert!(v.contains(&Violation::ZeroVertexSize(1)));
        assert!(v.contains(&Violation::DuplicateNeighbor {
            vertex: 0,
            neighbor: 1
        }));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::Index { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(GraphError::Invalid(Violation::SelfLoop(1)))
        ));
    }

    #[test]
    fn edges_listed_once() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let e: Vec<_> = g.edges().collect();
        assert_eq!(e, vec![(0, 1, 1), (0, 3, 1), (1, 2, 1), (2, 3, 1)]);
    }
}
