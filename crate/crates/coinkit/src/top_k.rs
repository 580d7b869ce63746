//! All-targets change-making by scanning only the largest coins.
//!
//! For a target j, any optimal solution must use one of the ceil(2u^2 / j)
//! largest coins: if it used only smaller ones it would contain enough
//! repeats of some coin pair to swap for a cheaper combination (the
//! Erdos-Graham representability bound makes this quantitative). Scanning
//! coins in descending order with that per-target cutoff gives an
//! O(u^2 log u + t) table.

use crate::cost::{Cost, CostArray};
use crate::error::{Error, Result};
use crate::instance::{gcd, CoinSet, RankedCoins};

/// How many of the largest coins the recurrence must consider at target
/// `j >= 1`: `min(n, ceil(2u^2 / j))`.
pub fn topk_index_bound(u: u64, j: u64, n: usize) -> usize {
    debug_assert!(j >= 1);
    let need = (2 * u * u).div_ceil(j);
    (need as usize).min(n)
}

/// Every integer above `2 * floor(v1 / (d*k)) * v2 - v1` that is divisible
/// by `d`, the gcd of the `k` largest values, is a nonnegative combination
/// of those values. Returns the bound (it may be negative).
pub fn erdos_graham_bound(ranked: &RankedCoins, k: usize) -> Result<i64> {
    if k < 2 || k > ranked.values_desc().len() {
        return Err(Error::TooFewValues { need: k.max(2), got: ranked.values_desc().len() });
    }
    let top = &ranked.values_desc()[..k];
    let d = top.iter().copied().fold(0, gcd);
    let v1 = top[0];
    let v2 = top[1];
    Ok(2 * (v1 / (d * k as u64)) as i64 * v2 as i64 - v1 as i64)
}

/// Min-count table over `[0, t]` via the top-k index bound.
pub fn algo1_all_targets(coins: &CoinSet, t: u64) -> CostArray {
    algo1_all_targets_counted(coins, t).0
}

/// [`algo1_all_targets`] plus the number of inner-loop probes; the probe
/// count is O(u^2 ln u + t) by the harmonic sum over the per-target cutoffs.
pub fn algo1_all_targets_counted(coins: &CoinSet, t: u64) -> (CostArray, u64) {
    let values = coins.up_to(t);
    let u = values.last().copied().unwrap_or(0);
    let desc: Vec<u64> = values.iter().rev().copied().collect();
    let n = desc.len();
    let mut d = CostArray::infeasible_table(t as usize + 1);
    let mut work = 0u64;
    for j in 1..=t {
        let bound = topk_index_bound(u, j, n);
        let ju = j as usize;
        let mut best = Cost::INF;
        for &v in &desc[..bound] {
            work += 1;
            if v > j {
                continue;
            }
            let cand = d[ju - v as usize] + Cost::ONE;
            if cand < best {
                best = cand;
            }
        }
        d[ju] = best;
    }
    (d, work)
}

pub(crate) fn icbrt_ceil(x: u128) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut r = (x as f64).cbrt() as u128;
    while r * r * r < x {
        r += 1;
    }
    while r > 1 && (r - 1) * (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r as u64
}

/// Min-count table over `[0, t]` in roughly (t*sigma)^(2/3) probes, sigma
/// the coin sum: coins at most (t*sigma)^(1/3) go through
/// [`algo1_all_targets`], the few remaining heavy coins through one
/// ascending sweep.
pub fn tsigma_all_targets(coins: &CoinSet, t: u64) -> CostArray {
    tsigma_all_targets_counted(coins, t).0
}

pub fn tsigma_all_targets_counted(coins: &CoinSet, t: u64) -> (CostArray, u64) {
    let values = coins.up_to(t);
    if values.is_empty() || t == 0 {
        return (CostArray::infeasible_table(t as usize + 1), 0);
    }
    let sigma: u64 = values.iter().sum();
    let ell0 = icbrt_ceil(t as u128 * sigma as u128);
    let cut = values.partition_point(|&v| v <= ell0);
    let (light, heavy) = values.split_at(cut);

    let light_set = CoinSet::new(light.iter().copied()).expect("light coins are positive");
    let (mut d, mut work) = algo1_all_targets_counted(&light_set, t);
    for j in 1..=t as usize {
        let mut best = d[j];
        for &v in heavy {
            let v = v as usize;
            if v > j {
                break;
            }
            work += 1;
            let cand = d[j - v] + Cost::ONE;
            if cand < best {
                best = cand;
            }
        }
        d[j] = best;
    }
    (d, work)
}
