use super::matching::Matching;
use crate::cbp::{Bounds, CbpError, CbpInstance, Point};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// One level of the hierarchy.
#[derive(Debug, Clone)]
pub struct Level<T> {
    pub graph: Graph,
    /// Diagonal of the interaction matrix `B`.
    pub diag: Vec<u64>,
    pub inst: CbpInstance<T>,
    /// For coarse levels, the finer-level members of each vertex (one or two).
    pub groups: Option<Vec<Vec<usize>>>,
}

impl<T: Scalar> Level<T> {
    /// The input graph as the finest level, with `B = A + I`.
    pub fn finest(graph: Graph, bounds: Bounds) -> Result<Self, CbpError> {
        let diag = vec![1; graph.n()];
        let inst = CbpInstance::with_diagonal(&graph, &diag, bounds)?;
        Ok(Level {
            graph,
            diag,
            inst,
            groups: None,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// Collapses each pair or singleton of `m` into one coarse vertex. Coarse
/// vertices are numbered by their lowest member. Costs and sizes add up,
/// parallel edges merge with summed weights, and
/// `B'_IJ = Σ_{p∈I, q∈J} B_pq`, so the diagonal of a merged pair is
/// `B_pp + B_qq + 2·w_pq`. Bounds carry over unchanged; `γ0` is the largest
/// coarse cost.
pub fn contract<T: Scalar>(level: &Level<T>, m: &Matching) -> Result<Level<T>, CbpError> {
    let g = &level.graph;
    let n = g.n();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    for &(u, v) in &m.pairs {
        partner[u] = Some(v);
        partner[v] = Some(u);
    }

    let mut coarse_of = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::with_capacity(m.coarse_len());
    for v in 0..n {
        if coarse_of[v] != usize::MAX {
            continue;
        }
        let id = groups.len();
        coarse_of[v] = id;
        match partner[v] {
            Some(p) => {
                coarse_of[p] = id;
                groups.push(vec![v, p]);
            }
            None => groups.push(vec![v]),
        }
    }

    let nc = groups.len();
    let mut cost = vec![0u64; nc];
    let mut size = vec![0u64; nc];
    let mut diag = vec![0u64; nc];
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); nc];
    for (id, members) in groups.iter().enumerate() {
        for &p in members {
            cost[id] += g.costs()[p];
            size[id] += g.sizes()[p];
            diag[id] += level.diag[p];
            for (q, w) in g.neighbors(p) {
                let jd = coarse_of[q];
                if jd == id {
                    // each internal edge is seen from both ends: 2·w in total
                    diag[id] += w;
                } else {
                    rows[id].push((jd, w));
                }
            }
        }
        let row = &mut rows[id];
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, u64)> = Vec::with_capacity(row.len());
        for &(j, w) in row.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == j => last.1 += w,
                _ => merged.push((j, w)),
            }
        }
        *row = merged;
    }

    let graph = Graph::from_raw_parts(rows, cost, size);
    let inst = CbpInstance::with_diagonal(&graph, &diag, level.inst.bounds())?;
    Ok(Level {
        graph,
        diag,
        inst,
        groups: Some(groups),
    })
}

/// Copies each coarse value onto the members of its group. Identity for the
/// finest level.
pub fn prolong<T: Scalar>(coarse: &Level<T>, p: &Point<T>) -> Point<T> {
    let Some(groups) = &coarse.groups else {
        return p.clone();
    };
    let fine_n: usize = groups.iter().map(Vec::len).sum();
    let mut out = Point::zeros(fine_n);
    for (id, members) in groups.iter().enumerate() {
        for &v in members {
            out.x[v] = p.x[id];
            out.y[v] = p.y[id];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilevel::matching::heavy_edge_matching;

    fn p3_level() -> Level<f64> {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        Level::finest(g, Bounds::symmetric(0, 3)).unwrap()
    }

    #[test]
    fn p3_contraction() {
        let fine = p3_level();
        let m = Matching {
            pairs: vec![(0, 1)],
            singletons: vec![2],
        };
        let c = contract(&fine, &m).unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.graph.costs(), &[2, 1]);
        assert_eq!(c.graph.sizes(), &[2, 1]);
        assert_eq!(c.diag, vec![4, 1]);
        assert_eq!(c.graph.edge_weight(0, 1), Some(1));
        assert_eq!(c.inst.gamma0(), 2.0);
        assert_eq!(c.groups, Some(vec![vec![0, 1], vec![2]]));
    }

    #[test]
    fn k2_contraction() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let fine = Level::<f64>::finest(g, Bounds::symmetric(0, 2)).unwrap();
        let c = contract(&fine, &heavy_edge_matching(&fine.graph, &[0, 1])).unwrap();
        assert_eq!(c.n(), 1);
        assert_eq!(c.graph.costs(), &[2]);
        assert_eq!(c.diag, vec![4]);
    }

    #[test]
    fn identity_contraction() {
        let fine = p3_level();
        let c = contract(&fine, &Matching::identity(3)).unwrap();
        assert_eq!(c.graph, fine.graph);
        assert_eq!(c.diag, fine.diag);
        let p = Point::new(vec![0.2, 0.0, 1.0], vec![0.5, 1.0, 0.0]);
        assert_eq!(prolong(&c, &p), p);
    }

    #[test]
    fn p3_prolongation() {
        let fine = p3_level();
        let m = Matching {
            pairs: vec![(0, 1)],
            singletons: vec![2],
        };
        let c = contract(&fine, &m).unwrap();
        let p = Point::new(vec![1.0, 0.0], vec![0.0, 1.0]);
        let q = prolong(&c, &p);
        assert_eq!(q, Point::new(vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]));
        assert_eq!(prolong(&c, &Point::zeros(2)), Point::zeros(3));
        for gamma in [0.0, 1.0, 2.0] {
            assert_eq!(
                fine.inst.objective(&q, gamma).unwrap(),
                c.inst.objective(&p, gamma).unwrap()
            );
        }
    }

    #[test]
    fn parallel_edges_merge() {
        // square 0-1-2-3-0 with pairs (0,1) and (2,3): two edges between groups
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let fine = Level::<f64>::finest(g, Bounds::symmetric(0, 4)).unwrap();
        let m = Matching {
            pairs: vec![(0, 1), (2, 3)],
            singletons: vec![],
        };
        let c = contract(&fine, &m).unwrap();
        assert_eq!(c.graph.edge_weight(0, 1), Some(2));
        assert_eq!(c.diag, vec![4, 4]);
        assert!(c.graph.validate().is_empty());
    }
}
