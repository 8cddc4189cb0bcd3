//! Rounding a feasible point to a binary point with `xᵀBy = 0` without
//! lowering the objective at the initial penalty.

use super::{CbpError, CbpInstance, Point};
use crate::scalar::{is_binary, snap, Scalar};

/// What to do when a block keeps one fractional coordinate that no
/// objective-nondecreasing move can clear. This only happens with non-unit
/// vertex sizes, where `s_i·x_i` can sit on a sum bound with `x_i ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RoundingMode {
    /// Fail with [`CbpError::ResidualFractional`].
    #[default]
    Strict,
    /// Take the cheapest feasible completion instead.
    AllowLoss,
}

/// Strict rounding; see [`round_to_binary_with`].
pub fn round_to_binary<T: Scalar>(
    inst: &CbpInstance<T>,
    p: &Point<T>,
) -> Result<Point<T>, CbpError> {
    round_to_binary_with(inst, p, RoundingMode::Strict)
}

/// Moves `p` to a binary, feasible, orthogonal point in three phases, each
/// objective-nondecreasing at `γ0` (up to the `AllowLoss` fallback):
///
/// 1. clear fractional `x` coordinates with `y` fixed,
/// 2. the same for `y` with `x` fixed,
/// 3. zero one endpoint of every interacting pair `x_i = y_j = 1`.
pub fn round_to_binary_with<T: Scalar>(
    inst: &CbpInstance<T>,
    p: &Point<T>,
    mode: RoundingMode,
) -> Result<Point<T>, CbpError> {
    inst.check_dims(p)?;
    if !inst.feasible(p) {
        return Err(CbpError::BoundsViolated);
    }
    let gamma0 = inst.gamma0();
    let b = inst.bounds();
    let mut q = Point::new(
        p.x.iter().map(|&v| snap(v)).collect(),
        p.y.iter().map(|&v| snap(v)).collect(),
    );

    let gain = block_gain(inst, &q.y, gamma0);
    Block {
        vals: &mut q.x,
        gain: &gain,
        size: inst.sizes(),
        lo: T::from_count(b.la),
        hi: T::from_count(b.ua),
    }
    .defractionalize(mode)?;

    let gain = block_gain(inst, &q.x, gamma0);
    Block {
        vals: &mut q.y,
        gain: &gain,
        size: inst.sizes(),
        lo: T::from_count(b.lb),
        hi: T::from_count(b.ub),
    }
    .defractionalize(mode)?;

    repair_orthogonality(inst, &mut q)?;
    Ok(q)
}

fn block_gain<T: Scalar>(inst: &CbpInstance<T>, fixed: &[T], gamma: T) -> Vec<T> {
    inst.apply(fixed)
        .into_iter()
        .zip(inst.costs())
        .map(|(bv, &c)| c - gamma * bv)
        .collect()
}

/// One block with the other held fixed; the objective is linear in it with
/// slope `gain`.
struct Block<'a, T> {
    vals: &'a mut [T],
    gain: &'a [T],
    size: &'a [T],
    lo: T,
    hi: T,
}

impl<T: Scalar> Block<'_, T> {
    fn fractional(&self) -> impl Iterator<Item = usize> + '_ {
        self.vals
            .iter()
            .enumerate()
            .filter(|(_, &v)| !is_binary(v))
            .map(|(i, _)| i)
    }

    fn sum(&self) -> T {
        self.size
            .iter()
            .zip(self.vals.iter())
            .map(|(&s, &v)| s * v)
            .sum()
    }

    fn defractionalize(&mut self, mode: RoundingMode) -> Result<(), CbpError> {
        let n = self.vals.len();
        // every pair step fixes at least one coordinate; paired single-coordinate
        // steps can hand the fraction on, hence the slack
        let max_iters = 4 * n + 16;
        for _ in 0..max_iters {
            let mut fr = self.fractional();
            let (first, second) = (fr.next(), fr.next());
            drop(fr);
            match (first, second) {
                (None, _) => return Ok(()),
                (Some(i), Some(j)) => self.pair_step(i, j),
                (Some(i), None) => self.single_step(i, mode)?,
            }
        }
        match self.fractional().next() {
            None => Ok(()),
            Some(index) => Err(CbpError::ResidualFractional { index }),
        }
    }

    /// Moves along `±(s_j e_i − s_i e_j)`, which keeps `sᵀv`, in the sign
    /// with nonnegative slope (ties raise `v_i`), until a coordinate hits a
    /// box bound.
    fn pair_step(&mut self, i: usize, j: usize) {
        let (si, sj) = (self.size[i], self.size[j]);
        let slope = sj * self.gain[i] - si * self.gain[j];
        let (vi, vj) = (self.vals[i], self.vals[j]);
        let one = T::one();
        if slope >= T::zero() {
            let ti = (one - vi) / sj;
            let tj = vj / si;
            if ti <= tj {
                self.vals[i] = one;
                self.vals[j] = snap(vj - ti * si);
            } else {
                self.vals[i] = snap(vi + tj * sj);
                self.vals[j] = T::zero();
            }
        } else {
            let ti = vi / sj;
            let tj = (one - vj) / si;
            if ti <= tj {
                self.vals[i] = T::zero();
                self.vals[j] = snap(vj + ti * si);
            } else {
                self.vals[i] = snap(vi - tj * sj);
                self.vals[j] = one;
            }
        }
    }

    /// Last fractional coordinate: push it toward the bound its gain favors
    /// (ties toward 0), stopping at a sum bound; if it is still fractional
    /// there, trade it against a binary coordinate.
    fn single_step(&mut self, i: usize, mode: RoundingMode) -> Result<(), CbpError> {
        let tol = T::improvement_tol();
        let si = self.size[i];
        let vi = self.vals[i];
        let sum = self.sum();
        let up = self.gain[i] > T::zero();
        if up {
            let room = ((self.hi - sum) / si).max(T::zero());
            self.vals[i] = if room >= T::one() - vi {
                T::one()
            } else {
                snap(vi + room)
            };
        } else {
            let room = ((sum - self.lo) / si).max(T::zero());
            self.vals[i] = if room >= vi {
                T::zero()
            } else {
                snap(vi - room)
            };
        }
        if is_binary(self.vals[i]) {
            return Ok(());
        }

        // stuck on a sum bound: pair with a binary k along ±(s_k e_i − s_i e_k),
        // finishing the move of v_i; preferred direction first
        for dir_up in [up, !up] {
            for k in 0..self.vals.len() {
                if let Some(slope) = self.pair_completion(i, k, dir_up) {
                    if slope >= -tol {
                        self.apply_completion(i, k, dir_up);
                        return Ok(());
                    }
                }
            }
        }
        match mode {
            RoundingMode::Strict => Err(CbpError::ResidualFractional { index: i }),
            RoundingMode::AllowLoss => self.cheapest_completion(i),
        }
    }

    /// Objective slope of finishing `v_i` toward 1 (or 0) by moving binary
    /// `v_k` the other way, if that keeps `v_k` inside the box.
    fn pair_completion(&self, i: usize, k: usize, dir_up: bool) -> Option<T> {
        if k == i || !is_binary(self.vals[k]) {
            return None;
        }
        let (si, sk) = (self.size[i], self.size[k]);
        let vi = self.vals[i];
        let tol = T::binary_tol();
        if dir_up {
            // v_i ↑ to 1, v_k ↓ from 1
            if self.vals[k] < T::one() || (T::one() - vi) * si > sk * (T::one() + tol) {
                return None;
            }
            Some(sk * self.gain[i] - si * self.gain[k])
        } else {
            if self.vals[k] > T::zero() || vi * si > sk * (T::one() + tol) {
                return None;
            }
            Some(si * self.gain[k] - sk * self.gain[i])
        }
    }

    fn apply_completion(&mut self, i: usize, k: usize, dir_up: bool) {
        let (si, sk) = (self.size[i], self.size[k]);
        let vi = self.vals[i];
        if dir_up {
            self.vals[k] = snap(T::one() - (T::one() - vi) * si / sk);
            self.vals[i] = T::one();
        } else {
            self.vals[k] = snap(vi * si / sk);
            self.vals[i] = T::zero();
        }
    }

    /// Fallback for [`RoundingMode::AllowLoss`]: among the feasible ways of
    /// making `v_i` binary (alone, or traded against one binary `v_k`), take
    /// the one leaving no new fraction and losing the least.
    fn cheapest_completion(&mut self, i: usize) -> Result<(), CbpError> {
        enum Move {
            Solo(bool),
            Pair(usize, bool),
        }
        let si = self.size[i];
        let vi = self.vals[i];
        let sum = self.sum();
        let tol = T::improvement_tol();
        let mut candidates: Vec<(bool, T, Move)> = Vec::new();
        for to_one in [false, true] {
            let delta = if to_one { T::one() - vi } else { -vi };
            let new_sum = sum + delta * si;
            if new_sum >= self.lo - tol && new_sum <= self.hi + tol {
                candidates.push((false, -(delta * self.gain[i]), Move::Solo(to_one)));
            }
        }
        for dir_up in [true, false] {
            for k in 0..self.vals.len() {
                if let Some(slope) = self.pair_completion(i, k, dir_up) {
                    let sk = self.size[k];
                    let (step, vk_new) = if dir_up {
                        ((T::one() - vi) / sk, T::one() - (T::one() - vi) * si / sk)
                    } else {
                        (vi / sk, vi * si / sk)
                    };
                    candidates.push((!is_binary(vk_new), -(slope * step), Move::Pair(k, dir_up)));
                }
            }
        }
        let best = candidates.into_iter().reduce(|best, cand| {
            if (cand.0, cand.1) < (best.0, best.1) {
                cand
            } else {
                best
            }
        });
        match best {
            None => Err(CbpError::ResidualFractional { index: i }),
            Some((_, _, Move::Solo(to_one))) => {
                self.vals[i] = if to_one { T::one() } else { T::zero() };
                Ok(())
            }
            Some((_, _, Move::Pair(k, dir_up))) => {
                self.apply_completion(i, k, dir_up);
                Ok(())
            }
        }
    }
}

/// Zeroes one endpoint of every pair `x_i = y_j = 1` with `B_ij ≥ 1`, keeping
/// each side above its lower bound; when both sides could give, the cheaper
/// vertex goes (ties take it from `y`). Each zeroing changes the objective by
/// `−c + γ0·(removed interaction) ≥ 0` because `γ0 = max c`.
fn repair_orthogonality<T: Scalar>(
    inst: &CbpInstance<T>,
    q: &mut Point<T>,
) -> Result<(), CbpError> {
    let b = inst.bounds();
    let sizes = inst.integer_sizes();
    let costs = inst.integer_costs();
    let ones = |v: &[T]| -> u64 {
        v.iter()
            .zip(sizes)
            .filter(|(&vi, _)| vi == T::one())
            .map(|(_, &s)| s)
            .sum()
    };
    let mut sx = ones(&q.x);
    let mut sy = ones(&q.y);
    for i in 0..inst.n() {
        while q.x[i] == T::one() {
            let Some(j) = inst.row(i).map(|(j, _)| j).find(|&j| q.y[j] == T::one()) else {
                break;
            };
            let x_can = sx - sizes[i] >= b.la;
            let y_can = sy - sizes[j] >= b.lb;
            let drop_x = match (x_can, y_can) {
                (false, false) => return Err(CbpError::DegenerateRepair { x: i, y: j }),
                (true, false) => true,
                (false, true) => false,
                (true, true) => costs[i] < costs[j],
            };
            if drop_x {
                q.x[i] = T::zero();
                sx -= sizes[i];
            } else {
                q.y[j] = T::zero();
                sy -= sizes[j];
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbp::Bounds;
    use crate::graph::Graph;

    fn inst(g: &Graph, b: Bounds) -> CbpInstance<f64> {
        CbpInstance::from_graph(g, b).unwrap()
    }

    #[test]
    fn binary_orthogonal_unchanged() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let i = inst(&g, Bounds::symmetric(1, 1));
        let p = Point::from_sets(3, &[0], &[2]);
        assert_eq!(round_to_binary(&i, &p).unwrap(), p);
    }

    #[test]
    fn isolated_pair_tie_raises_lower_index() {
        let g = Graph::from_edges(2, &[]).unwrap();
        let i = inst(
            &g,
            Bounds {
                la: 1,
                ua: 1,
                lb: 0,
                ub: 2,
            },
        );
        let p = Point::new(vec![0.5, 0.5], vec![0.0, 0.0]);
        let q = round_to_binary(&i, &p).unwrap();
        assert_eq!(q.x, vec![1.0, 0.0]);
        assert_eq!(i.objective(&q, 1.0).unwrap(), 1.0);
        // the other rounding is worth the same
        assert_eq!(
            i.objective(&Point::new(vec![0.0, 1.0], vec![0.0, 0.0]), 1.0)
                .unwrap(),
            1.0
        );
    }

    #[test]
    fn k2_overlap_repaired_on_y_side() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let i = inst(
            &g,
            Bounds {
                la: 1,
                ua: 1,
                lb: 0,
                ub: 1,
            },
        );
        let p = Point::from_sets(2, &[0], &[0]);
        assert_eq!(i.objective(&p, 1.0).unwrap(), 1.0);
        let q = round_to_binary(&i, &p).unwrap();
        assert_eq!(q, Point::from_sets(2, &[0], &[]));
        assert_eq!(i.objective(&q, 1.0).unwrap(), 1.0);
        assert_eq!(i.interaction(&q.x, &q.y), 0.0);
    }

    #[test]
    fn degenerate_repair() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let i = inst(&g, Bounds::symmetric(1, 1));
        let p = Point::from_sets(2, &[0], &[1]);
        assert!(matches!(
            round_to_binary(&i, &p),
            Err(CbpError::DegenerateRepair { x: 0, y: 1 })
        ));
    }

    #[test]
    fn cheaper_endpoint_dropped() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)])
            .unwrap()
            .with_costs(vec![1, 3, 1]);
        let i = inst(&g, Bounds::symmetric(0, 3));
        // x = {0, 1}, y = {2}: conflict (1, 2), c_1 = 3 > c_2 = 1 → y_2 dropped
        let p = Point::from_sets(3, &[0, 1], &[2]);
        let q = round_to_binary(&i, &p).unwrap();
        assert_eq!(q, Point::from_sets(3, &[0, 1], &[]));
        assert!(i.objective(&q, 3.0).unwrap() >= i.objective(&p, 3.0).unwrap());
    }

    #[test]
    fn fractional_unit_sizes_round_monotonically() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let i = inst(&g, Bounds::symmetric(1, 2));
        let p = Point::new(vec![0.7, 0.6, 0.3, 0.0, 0.1], vec![0.0, 0.2, 0.4, 0.9, 0.5]);
        assert!(i.feasible(&p));
        let q = round_to_binary(&i, &p).unwrap();
        assert!(q.is_binary() && i.feasible(&q));
        assert_eq!(i.interaction(&q.x, &q.y), 0.0);
        assert!(i.objective(&q, 1.0).unwrap() >= i.objective(&p, 1.0).unwrap() - 1e-9);
    }

    #[test]
    fn stuck_fraction_with_large_size() {
        // one vertex of size 2, sum pinned to 1: x = 0.5 is the only feasible value
        let g = Graph::from_edges(1, &[]).unwrap().with_sizes(vec![2]);
        let i = inst(
            &g,
            Bounds {
                la: 1,
                ua: 1,
                lb: 0,
                ub: 0,
            },
        );
        let p = Point::new(vec![0.5], vec![0.0]);
        assert!(matches!(
            round_to_binary(&i, &p),
            Err(CbpError::ResidualFractional { index: 0 })
        ));
        assert!(round_to_binary_with(&i, &p, RoundingMode::AllowLoss).is_err());
    }

    #[test]
    fn allow_loss_completes_knapsack_vertex() {
        // sizes (1, 2), ua = 2, gains favour vertex 0 first then half of vertex 1
        let g = Graph::from_edges(2, &[])
            .unwrap()
            .with_sizes(vec![1, 2])
            .with_costs(vec![2, 3]);
        let i = inst(
            &g,
            Bounds {
                la: 1,
                ua: 2,
                lb: 0,
                ub: 0,
            },
        );
        let p = Point::new(vec![1.0, 0.5], vec![0.0, 0.0]);
        assert!(matches!(
            round_to_binary(&i, &p),
            Err(CbpError::ResidualFractional { .. })
        ));
        let q = round_to_binary_with(&i, &p, RoundingMode::AllowLoss).unwrap();
        assert!(q.is_binary() && i.feasible(&q));
        // best binary: {1} worth 3 beats {0} worth 2
        assert_eq!(q.x, vec![0.0, 1.0]);
    }

    #[test]
    fn infeasible_input_rejected() {
        let g = Graph::from_edges(2, &[]).unwrap();
        let i = inst(&g, Bounds::symmetric(1, 1));
        assert!(matches!(
            round_to_binary(&i, &Point::zeros(2)),
            Err(CbpError::BoundsViolated)
        ));
    }
}
