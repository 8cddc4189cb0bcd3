use std::cmp::Ordering;

use super::CbpError;
use crate::scalar::Scalar;

/// Maximizes `gᵀv` over `0 ≤ v ≤ 1`, `l ≤ sᵀv ≤ u` (sizes `s` positive).
///
/// Fractional-knapsack greedy: items go in by decreasing `g_i / s_i` (ties to
/// the lower index). Positive items are taken until `u` is reached, the cut
/// item fractionally. If the lower bound is still unmet the walk continues
/// through the non-positive items until the sum lands on `l`. The result has
/// at most one fractional coordinate.
pub fn solve_block_lp<T: Scalar>(g: &[T], s: &[T], l: T, u: T) -> Result<Vec<T>, CbpError> {
    if g.len() != s.len() {
        return Err(CbpError::DimensionMismatch {
            expected: g.len(),
            found: s.len(),
        });
    }
    let total: T = s.iter().copied().sum();
    if l > u || l > total {
        return Err(CbpError::InfeasibleBounds {
            lower: l.to_f64().unwrap_or(f64::NAN),
            upper: u.to_f64().unwrap_or(f64::NAN),
            total: total.to_f64().unwrap_or(f64::NAN),
        });
    }

    // division is correctly rounded, so equal ratios of exact data stay equal
    let ratio: Vec<T> = g.iter().zip(s).map(|(&gi, &si)| gi / si).collect();
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| ratio[b].partial_cmp(&ratio[a]).unwrap_or(Ordering::Equal));

    let mut v = vec![T::zero(); g.len()];
    let mut sum = T::zero();
    let mut next = 0;
    while next < order.len() {
        let i = order[next];
        if g[i] <= T::zero() || sum >= u {
            break;
        }
        next += 1;
        if sum + s[i] <= u {
            v[i] = T::one();
            sum = sum + s[i];
        } else {
            v[i] = (u - sum) / s[i];
            sum = u;
            break;
        }
    }
    for &i in &order[next..] {
        if sum >= l {
            break;
        }
        if sum + s[i] <= l {
            v[i] = T::one();
            sum = sum + s[i];
        } else {
            v[i] = (l - sum) / s[i];
            sum = l;
        }
    }
    Ok(v)
}
