use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Disjoint pairs of adjacent vertices plus the unmatched rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub singletons: Vec<usize>,
}

impl Matching {
    /// All-singleton matching; contracting with it reproduces the level.
    pub fn identity(n: usize) -> Self {
        Matching {
            pairs: Vec::new(),
            singletons: (0..n).collect(),
        }
    }

    /// Number of vertices after contraction.
    pub fn coarse_len(&self) -> usize {
        self.pairs.len() + self.singletons.len()
    }

    /// Every vertex covered exactly once, every pair an edge of `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        let mut mark = |v: usize| v < seen.len() && !std::mem::replace(&mut seen[v], true);
        for &(u, v) in &self.pairs {
            if u == v || !mark(u) || !mark(v) || !g.has_edge(u, v) {
                return false;
            }
        }
        for &v in &self.singletons {
            if !mark(v) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Order in which [`heavy_edge_matching`] visits vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VisitOrder {
    /// Ascending degree, ties to the lower index.
    #[default]
    DegreeAscending,
    /// Seeded uniform shuffle.
    Shuffled(u64),
}

pub fn visit_order(g: &Graph, order: VisitOrder) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.n()).collect();
    match order {
        VisitOrder::DegreeAscending => v.sort_by_key(|&u| g.degree(u)),
        VisitOrder::Shuffled(seed) => v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }
    v
}

/// Visits vertices in `order`; each unmatched vertex pairs with its unmatched
/// neighbor of largest edge weight (ties to the lower index). Vertices left
/// without an unmatched neighbor become singletons, listed in ascending order.
pub fn heavy_edge_matching(g: &Graph, order: &[usize]) -> Matching {
    let mut matched = vec![false; g.n()];
    let mut pairs = Vec::new();
    for &u in order {
        if matched[u] {
            continue;
        }
        let mut best: Option<(usize, u64)> = None;
        for (v, w) in g.neighbors(u) {
            if !matched[v] && v != u && best.is_none_or(|(_, bw)| w > bw) {
                best = Some((v, w));
            }
        }
        if let Some((v, _)) = best {
            matched[u] = true;
            matched[v] = true;
            pairs.push((u, v));
        }
    }
    let singletons = (0..g.n()).filter(|&v| !matched[v]).collect();
    Matching { pairs, singletons }
}
