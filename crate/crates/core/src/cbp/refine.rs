use super::{lp::solve_block_lp, within, CbpError, CbpInstance, Point};
use crate::scalar::Scalar;

/// Hard cap on sweeps; each accepted sweep gains more than the improvement
/// tolerance so real runs stop far below it.
const MAX_SWEEPS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    X,
    Y,
}

/// Objective before and after one block update, at the penalty `gamma` that
/// governed it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockUpdate<T> {
    pub gamma: T,
    pub block: Block,
    pub before: T,
    pub after: T,
}

/// Alternating block maximization at penalty `gamma`.
///
/// With `y` fixed the program is an LP in `x` with gain `c − γ·B y`, solved
/// exactly by [`solve_block_lp`]; then the roles swap. The solver moves fully
/// to the LP solution, except that a feasible block is kept when the LP
/// cannot beat it, so blockwise fixed points are returned untouched. Stops
/// once a full sweep gains no more than the improvement tolerance.
pub fn refine<T: Scalar>(
    inst: &CbpInstance<T>,
    start: &Point<T>,
    gamma: T,
) -> Result<Point<T>, CbpError> {
    refine_observed(inst, start, gamma, &mut |_| {})
}

/// [`refine`], reporting every block update to `observe`.
pub fn refine_observed<T, F>(
    inst: &CbpInstance<T>,
    start: &Point<T>,
    gamma: T,
    observe: &mut F,
) -> Result<Point<T>, CbpError>
where
    T: Scalar,
    F: FnMut(&BlockUpdate<T>),
{
    inst.check_dims(start)?;
    let b = inst.bounds();
    let tol = T::improvement_tol();
    let mut p = start.clone();
    let mut f = inst.objective(&p, gamma)?;

    for _ in 0..MAX_SWEEPS {
        let sweep_start = f;
        for block in [Block::X, Block::Y] {
            let (fixed, free, lo, hi) = match block {
                Block::X => (&p.y, &p.x, b.la, b.ua),
                Block::Y => (&p.x, &p.y, b.lb, b.ub),
            };
            let gain: Vec<T> = inst
                .apply(fixed)
                .into_iter()
                .zip(inst.costs())
                .map(|(bv, &c)| c - gamma * bv)
                .collect();
            let candidate =
                solve_block_lp(&gain, inst.sizes(), T::from_count(lo), T::from_count(hi))?;
            let current_ok = within(inst.size_of(free), lo, hi);
            let mut trial = p.clone();
            match block {
                Block::X => trial.x = candidate,
                Block::Y => trial.y = candidate,
            }
            let after = inst.objective(&trial, gamma)?;
            if current_ok && after <= f + tol {
                continue;
            }
            observe(&BlockUpdate {
                gamma,
                block,
                before: f,
                after,
            });
            p = trial;
            f = after;
        }
        if f - sweep_start <= tol {
            break;
        }
    }
    Ok(p)
}
