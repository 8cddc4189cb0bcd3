//! Coarsening by heavy-edge matching, a multistart solve on the coarsest
//! graph, and the uncoarsen / refine / escape / round loop back to the input.

mod level;
mod matching;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cbp::{
    escape, extract_partition, refine, round_to_binary_with, Bounds, CbpError, CbpInstance,
    Partition, PartitionError, Point, RoundingMode,
};
use crate::graph::Graph;
use crate::oracle::{brute_force_vsp, OracleResult};
use crate::scalar::Scalar;

pub use level::{contract, prolong, Level};
pub use matching::{heavy_edge_matching, visit_order, Matching, VisitOrder};

/// Coarsest graphs up to this size are also solved exactly.
pub const EXACT_COARSEST_LIMIT: usize = 12;

/// Coarsening stops when a matching removes less than this share of vertices.
const MIN_REDUCTION: f64 = 0.05;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Cbp(#[from] CbpError),
    #[error("solver produced an invalid partition: {0}")]
    Validation(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveParams {
    /// Upper bound on each side as a share of the total vertex size.
    pub ub_fraction: f64,
    pub la: u64,
    pub lb: u64,
    /// Coarsening stops once a level has at most this many vertices.
    pub coarsest_size: usize,
    /// Number of penalty reductions per escape walk.
    pub gamma_steps: usize,
    /// Random starts at the coarsest level.
    pub multistarts: usize,
    pub seed: u64,
    pub max_levels: usize,
    pub visit_order: VisitOrder,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            ub_fraction: 0.503,
            la: 1,
            lb: 1,
            coarsest_size: 64,
            gamma_steps: crate::cbp::DEFAULT_GAMMA_STEPS,
            multistarts: 20,
            seed: 0,
            max_levels: 64,
            visit_order: VisitOrder::DegreeAscending,
        }
    }
}

impl SolveParams {
    pub fn check(&self) -> Result<(), SolveError> {
        if !(self.ub_fraction > 0.0 && self.ub_fraction <= 1.0) {
            return Err(SolveError::InvalidParams(format!(
                "upper-bound fraction {} outside (0, 1]",
                self.ub_fraction
            )));
        }
        if self.coarsest_size < 2 {
            return Err(SolveError::InvalidParams(
                "coarsest size must be at least 2".into(),
            ));
        }
        if self.multistarts == 0 {
            return Err(SolveError::InvalidParams(
                "need at least one multistart".into(),
            ));
        }
        Ok(())
    }

    /// `ua = ub = ⌊ub_fraction · total size⌋` with the configured lower bounds.
    pub fn bounds_for(&self, total_size: u64) -> Bounds {
        // guard against 0.503·1000 landing a hair under 503
        let upper = (self.ub_fraction * total_size as f64 + 1e-9).floor() as u64;
        Bounds {
            la: self.la,
            ua: upper,
            lb: self.lb,
            ub: upper,
        }
    }
}

/// Levels from finest (index 0) to coarsest.
#[derive(Debug, Clone)]
pub struct Hierarchy<T> {
    pub levels: Vec<Level<T>>,
    pub params: SolveParams,
}

impl<T: Scalar> Hierarchy<T> {
    /// Coarsens while the level is larger than `coarsest_size`, the level
    /// cap allows, and the matching shrinks the graph by at least 5%.
    pub fn build(g: &Graph, params: &SolveParams) -> Result<Self, SolveError> {
        params.check()?;
        let bounds = params.bounds_for(g.total_size());
        let mut levels = vec![Level::finest(g.clone(), bounds)?];
        while levels.len() < params.max_levels {
            let last = levels.last().expect("finest level present");
            let n = last.n();
            if n <= params.coarsest_size {
                break;
            }
            let order = visit_order(&last.graph, level_order(params.visit_order, levels.len()));
            let m = heavy_edge_matching(&last.graph, &order);
            if (m.coarse_len() as f64) > (1.0 - MIN_REDUCTION) * n as f64 {
                break;
            }
            let coarse = contract(last, &m)?;
            levels.push(coarse);
        }
        Ok(Hierarchy {
            levels,
            params: params.clone(),
        })
    }

    pub fn coarsest(&self) -> &Level<T> {
        self.levels.last().expect("hierarchy is never empty")
    }
}

fn level_order(order: VisitOrder, depth: usize) -> VisitOrder {
    match order {
        VisitOrder::Shuffled(seed) => VisitOrder::Shuffled(seed.wrapping_add(depth as u64)),
        o => o,
    }
}

/// What happened at one level on the way back up.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelTrace {
    /// 0 is the input graph.
    pub level: usize,
    pub n: usize,
    /// Objective at the level's `γ0` of the starting point (the prolonged
    /// point, or the multistart winner on the coarsest level).
    pub objective_before: f64,
    pub objective_after_refine: f64,
    pub objective_after_escape: f64,
    pub objective_after_rounding: f64,
    pub escapes: usize,
    /// Cost of the separator the level ends with.
    pub separator_weight: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub partition: Partition,
    pub bounds: Bounds,
    /// Finest level first.
    pub trace: Vec<LevelTrace>,
}

/// Random binary point inside the sum bounds, or `None` when the greedy fill
/// cannot reach a lower bound. `y` prefers vertices outside `x`.
fn random_start<T: Scalar, R: Rng>(inst: &CbpInstance<T>, rng: &mut R) -> Option<Point<T>> {
    let n = inst.n();
    let b = inst.bounds();
    let sizes = inst.integer_sizes();
    let fill = |order: &[usize], lo: u64, hi: u64, target: u64| -> Option<Vec<T>> {
        let mut v = vec![T::zero(); n];
        let mut sum = 0;
        for &i in order {
            if sum + sizes[i] <= target {
                v[i] = T::one();
                sum += sizes[i];
            }
        }
        for &i in order {
            if sum >= lo {
                break;
            }
            if v[i] == T::zero() && sum + sizes[i] <= hi {
                v[i] = T::one();
                sum += sizes[i];
            }
        }
        (sum >= lo).then_some(v)
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let target = rng.gen_range(b.la..=b.ua);
    let x = fill(&order, b.la, b.ua, target)?;

    order.shuffle(rng);
    order.sort_by_key(|&i| x[i] == T::one());
    let target = rng.gen_range(b.lb..=b.ub);
    let y = fill(&order, b.lb, b.ub, target)?;
    Some(Point::new(x, y))
}

fn binary_objective<T: Scalar>(inst: &CbpInstance<T>, p: &Point<T>) -> Result<T, CbpError> {
    inst.objective(p, inst.gamma0())
}

/// Best binary orthogonal point for the coarsest program: `multistarts`
/// random starts, each refined, escaped and rounded, keeping the first best.
/// Start `r` draws from stream `r` of a ChaCha generator seeded with `seed`.
/// Programs with at most [`EXACT_COARSEST_LIMIT`] vertices are also solved
/// exactly and the exact answer wins when strictly better.
pub fn solve_coarsest<T: Scalar>(
    inst: &CbpInstance<T>,
    params: &SolveParams,
) -> Result<Point<T>, SolveError> {
    params.check()?;
    let tol = T::improvement_tol();
    let mut best: Option<(T, Point<T>)> = None;
    for start in 0..params.multistarts {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(start as u64);
        let Some(p) = random_start(inst, &mut rng) else {
            continue;
        };
        let p = refine(inst, &p, inst.gamma0())?;
        let p = escape(inst, &p, params.gamma_steps)?.point;
        let q = match round_to_binary_with(inst, &p, RoundingMode::AllowLoss) {
            Ok(q) => q,
            Err(CbpError::DegenerateRepair { .. } | CbpError::ResidualFractional { .. }) => {
                continue
            }
            Err(e) => return Err(e.into()),
        };
        let f = binary_objective(inst, &q)?;
        if best.as_ref().is_none_or(|(bf, _)| f > *bf) {
            best = Some((f, q));
        }
    }

    if inst.n() <= EXACT_COARSEST_LIMIT {
        let g = inst.interaction_graph();
        if let Ok(OracleResult::Optimal { witness, .. }) = brute_force_vsp(&g, inst.bounds()) {
            let q = Point::from_sets(inst.n(), &witness.a, &witness.b);
            let f = binary_objective(inst, &q)?;
            if best.as_ref().is_none_or(|(bf, _)| f > *bf + tol) {
                best = Some((f, q));
            }
        }
    }

    best.map(|(_, p)| p).ok_or_else(|| {
        SolveError::Infeasible(
            "no binary point separates the coarsest graph within the bounds".into(),
        )
    })
}

/// Full multilevel solve of `g`.
pub fn solve<T: Scalar>(g: &Graph, params: &SolveParams) -> Result<Solution, SolveError> {
    params.check()?;
    if let Some(v) = g.validate().first() {
        return Err(SolveError::InvalidParams(format!(
            "input graph is invalid: {v}"
        )));
    }
    let bounds = params.bounds_for(g.total_size());
    if bounds.ua < bounds.la || bounds.ub < bounds.lb {
        return Err(SolveError::Infeasible(format!(
            "upper bound {} is below the lower bound {}",
            bounds.ua,
            bounds.la.max(bounds.lb)
        )));
    }
    let hierarchy = Hierarchy::<T>::build(g, params)?;
    let depth = hierarchy.levels.len() - 1;
    let to_f64 = |v: T| v.to_f64().unwrap_or(f64::NAN);

    let coarsest = hierarchy.coarsest();
    let mut point = solve_coarsest(&coarsest.inst, params)?;
    let f = to_f64(binary_objective(&coarsest.inst, &point)?);
    let mut trace = vec![LevelTrace {
        level: depth,
        n: coarsest.n(),
        objective_before: f,
        objective_after_refine: f,
        objective_after_escape: f,
        objective_after_rounding: f,
        escapes: 0,
        separator_weight: extract_partition(&coarsest.inst, &point)?.separator_weight,
    }];

    for idx in (0..depth).rev() {
        let fine = &hierarchy.levels[idx];
        let inst = &fine.inst;
        let gamma0 = inst.gamma0();
        let start = prolong(&hierarchy.levels[idx + 1], &point);
        let f_start = binary_objective(inst, &start)?;
        let refined = refine(inst, &start, gamma0)?;
        let f_refined = inst.objective(&refined, gamma0)?;
        let escaped = escape(inst, &refined, params.gamma_steps)?;
        let f_escaped = inst.objective(&escaped.point, gamma0)?;
        let rounded = match round_to_binary_with(inst, &escaped.point, RoundingMode::AllowLoss) {
            Ok(q) => Some(q),
            Err(CbpError::DegenerateRepair { .. } | CbpError::ResidualFractional { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        // the prolonged point is already binary and orthogonal; never end below it
        point = match rounded {
            Some(q) if binary_objective(inst, &q)? >= f_start => q,
            _ => start,
        };
        let f_rounded = binary_objective(inst, &point)?;
        trace.push(LevelTrace {
            level: idx,
            n: fine.n(),
            objective_before: to_f64(f_start),
            objective_after_refine: to_f64(f_refined),
            objective_after_escape: to_f64(f_escaped),
            objective_after_rounding: to_f64(f_rounded),
            escapes: escaped.escapes,
            separator_weight: extract_partition(inst, &point)?.separator_weight,
        });
    }

    let partition = extract_partition(&hierarchy.levels[0].inst, &point)?;
    partition.validate(g, hierarchy.levels[0].inst.bounds())?;
    trace.reverse();
    Ok(Solution {
        partition,
        bounds: hierarchy.levels[0].inst.bounds(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn bounds_from_fraction() {
        let p = SolveParams::default();
        assert_eq!(p.bounds_for(5).ua, 2);
        assert_eq!(p.bounds_for(10).ua, 5);
        assert_eq!(p.bounds_for(1000).ua, 503);
        assert_eq!(p.bounds_for(1723).ua, 866);
    }

    #[test]
    fn p5_separated_by_middle() {
        let sol = solve::<f64>(&path(5), &SolveParams::default()).unwrap();
        assert_eq!(sol.partition.separator, vec![2]);
        assert_eq!(sol.partition.separator_weight, 1);
    }

    #[test]
    fn edgeless_graph_needs_no_separator() {
        let g = Graph::from_edges(10, &[]).unwrap();
        let sol = solve::<f64>(&g, &SolveParams::default()).unwrap();
        assert_eq!(sol.partition.separator_weight, 0);
        assert_eq!(sol.partition.a.len(), 5);
        assert_eq!(sol.partition.b.len(), 5);
    }

    #[test]
    fn coarsest_p3() {
        let g = path(3);
        let inst = CbpInstance::<f64>::from_graph(&g, Bounds::symmetric(1, 1)).unwrap();
        let p = solve_coarsest(&inst, &SolveParams::default()).unwrap();
        assert_eq!(inst.objective(&p, 1.0).unwrap(), 2.0);
        // either orientation of A = {0}, B = {2}
        assert!(p == Point::from_sets(3, &[0], &[2]) || p == Point::from_sets(3, &[2], &[0]));
    }

    #[test]
    fn coarsest_single_vertex_infeasible() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let inst = CbpInstance::<f64>::from_graph(&g, Bounds::symmetric(1, 1)).unwrap();
        assert!(matches!(
            solve_coarsest(&inst, &SolveParams::default()),
            Err(SolveError::Infeasible(_))
        ));
    }

    #[test]
    fn coarsest_edgeless_four() {
        let g = Graph::from_edges(4, &[]).unwrap();
        let inst = CbpInstance::<f64>::from_graph(&g, Bounds::symmetric(1, 2)).unwrap();
        let p = solve_coarsest(&inst, &SolveParams::default()).unwrap();
        assert_eq!(inst.objective(&p, 1.0).unwrap(), 4.0);
        assert_eq!(extract_partition(&inst, &p).unwrap().separator_weight, 0);
    }

    #[test]
    fn k4_infeasible() {
        let e = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = Graph::from_edges(4, &e).unwrap();
        assert!(matches!(
            solve::<f64>(&g, &SolveParams::default()),
            Err(SolveError::Infeasible(_))
        ));
    }

    #[test]
    fn contradictory_bounds() {
        let params = SolveParams {
            ub_fraction: 0.1,
            ..SolveParams::default()
        };
        assert!(matches!(
            solve::<f64>(&path(5), &params),
            Err(SolveError::Infeasible(_))
        ));
        let bad = SolveParams {
            multistarts: 0,
            ..SolveParams::default()
        };
        assert!(matches!(
            solve::<f64>(&path(5), &bad),
            Err(SolveError::InvalidParams(_))
        ));
    }

    #[test]
    fn long_path_coarsens_and_stays_valid() {
        let g = path(300);
        let params = SolveParams {
            coarsest_size: 16,
            ..SolveParams::default()
        };
        let h = Hierarchy::<f64>::build(&g, &params).unwrap();
        assert!(h.levels.len() > 2);
        for w in h.levels.windows(2) {
            assert!(w[1].n() < w[0].n());
        }
        let sol = solve::<f64>(&g, &params).unwrap();
        assert_eq!(sol.trace.len(), h.levels.len());
        assert_eq!(sol.trace[0].level, 0);
        sol.partition.validate(&g, sol.bounds).unwrap();
        assert_eq!(sol.partition.separator_weight, 1);
    }
}
