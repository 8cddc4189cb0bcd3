use super::refine::{refine_observed, BlockUpdate};
use super::{CbpError, CbpInstance, Point};
use crate::scalar::Scalar;

pub const DEFAULT_GAMMA_STEPS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct EscapeOutcome<T> {
    /// Best blockwise fixed point found, at the initial penalty.
    pub point: Point<T>,
    /// Number of accepted escapes.
    pub escapes: usize,
}

/// Leaves local maxima by lowering the penalty.
///
/// Walks `γ_k = γ0·(1 − k/K)` for `k = 1..=K`, refining at each reduced
/// penalty from the current point and then re-refining at `γ0`. A result that
/// beats the incumbent at `γ0` by more than the improvement tolerance becomes
/// the new incumbent and the walk restarts at `γ_1`; otherwise the walk
/// continues from the reduced-penalty point. Ends after a walk reaches
/// `γ_K = 0` without improvement.
pub fn escape<T: Scalar>(
    inst: &CbpInstance<T>,
    start: &Point<T>,
    steps: usize,
) -> Result<EscapeOutcome<T>, CbpError> {
    escape_observed(inst, start, steps, &mut |_| {})
}

pub fn escape_observed<T, F>(
    inst: &CbpInstance<T>,
    start: &Point<T>,
    steps: usize,
    observe: &mut F,
) -> Result<EscapeOutcome<T>, CbpError>
where
    T: Scalar,
    F: FnMut(&BlockUpdate<T>),
{
    let gamma0 = inst.gamma0();
    let tol = T::improvement_tol();
    let mut best = start.clone();
    let mut best_f = inst.objective(&best, gamma0)?;
    let mut escapes = 0;
    if steps == 0 {
        return Ok(EscapeOutcome {
            point: best,
            escapes,
        });
    }
    let k_total = T::from_count(steps as u64);

    let mut current = best.clone();
    let mut k = 1;
    while k <= steps {
        let gamma = gamma0 * (T::one() - T::from_count(k as u64) / k_total);
        let reduced = refine_observed(inst, &current, gamma, observe)?;
        let restored = refine_observed(inst, &reduced, gamma0, observe)?;
        let f = inst.objective(&restored, gamma0)?;
        if f > best_f + tol {
            best = restored;
            best_f = f;
            current = best.clone();
            escapes += 1;
            k = 1;
        } else {
            current = reduced;
            k += 1;
        }
    }
    Ok(EscapeOutcome {
        point: best,
        escapes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbp::{refine, Bounds};
    use crate::graph::Graph;

    #[test]
    fn no_escape_keeps_input() {
        // two isolated vertices: the point below is optimal for every γ
        let g = Graph::from_edges(2, &[]).unwrap();
        let inst = CbpInstance::<f64>::from_graph(&g, Bounds::symmetric(1, 1)).unwrap();
        let p = Point::from_sets(2, &[0], &[1]);
        let out = escape(&inst, &p, 10).unwrap();
        assert_eq!(out.point, p);
        assert_eq!(out.escapes, 0);
    }

    #[test]
    fn zero_penalty_fills_upper_bound_by_cost() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])
            .unwrap()
            .with_costs(vec![1, 3, 2, 3, 1]);
        let inst = CbpInstance::<f64>::from_graph(&g, Bounds::symmetric(1, 2)).unwrap();
        let out = refine(&inst, &Point::from_sets(5, &[0], &[4]), 0.0).unwrap();
        assert_eq!(out.x, vec![0.0, 1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn zero_steps_is_identity() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = CbpInstance::<f64>::from_graph(&g, Bounds::symmetric(1, 1)).unwrap();
        let p = Point::from_sets(3, &[0], &[2]);
        assert_eq!(escape(&inst, &p, 0).unwrap().point, p);
    }
}
