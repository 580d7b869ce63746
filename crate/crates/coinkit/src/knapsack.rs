//! Unbounded knapsack: all capacities by ratio-ranked scans, and a single
//! capacity in near-linear time in the largest weight.
//!
//! The all-capacities recurrence mirrors the coin version but ranks items by
//! profit density: at capacity j only the ceil(3u^2 / j) densest items can
//! start an optimal solution. The single-capacity algorithm never touches
//! most of the table; it hops through windows `[t, t+u]` whose left ends
//! shrink geometrically, rebuilding each window from the previous one by
//! removing a whole run of copies of one item type at a time.

use crate::cost::ProfitArray;
use crate::error::{Error, Result};
use crate::heavy_light::ceil_log2;
use crate::instance::{KnapsackInstance, KnapsackItem, RatioRankedItems};
use crate::top_k::icbrt_ceil;

/// How many of the densest items the recurrence must consider at capacity
/// `j >= 1`: `min(n, ceil(3u^2 / j))`.
pub fn knapsack_index_bound(u: u64, j: u64, n: usize) -> usize {
    debug_assert!(j >= 1);
    let need = (3 * u as u128 * u as u128).div_ceil(j as u128);
    if need >= n as u128 {
        n
    } else {
        need as usize
    }
}

fn algo2_ranked(
    ranked: &RatioRankedItems,
    u: u64,
    t: u64,
    work: &mut u64,
) -> Result<ProfitArray> {
    let items = ranked.items();
    let mut d = ProfitArray::zeros(t as usize + 1);
    for j in 1..=t {
        let bound = knapsack_index_bound(u, j, items.len());
        let ju = j as usize;
        let mut best = 0u64;
        for it in &items[..bound] {
            *work += 1;
            if it.weight > j {
                continue;
            }
            let cand = d[ju - it.weight as usize]
                .checked_add(it.profit)
                .ok_or(Error::ProfitOverflow)?;
            if cand > best {
                best = cand;
            }
        }
        d[ju] = best;
    }
    Ok(d)
}

/// Best-profit table over `[0, t]` scanning only the densest items per
/// capacity; O(u^2 log u + t) probes in total.
pub fn algo2_all_capacities(inst: &KnapsackInstance, t: u64) -> Result<ProfitArray> {
    Ok(algo2_all_capacities_counted(inst, t)?.0)
}

pub fn algo2_all_capacities_counted(
    inst: &KnapsackInstance,
    t: u64,
) -> Result<(ProfitArray, u64)> {
    let items = inst.up_to(t);
    let u = items.last().map(|it| it.weight).unwrap_or(0);
    let ranked = RatioRankedItems::rank(items);
    let mut work = 0u64;
    let d = algo2_ranked(&ranked, u, t, &mut work)?;
    Ok((d, work))
}

/// Best-profit table over `[0, t]` in roughly (t*sigma)^(2/3) probes, sigma
/// the weight sum: items no heavier than (t*sigma)^(1/3) go through the
/// ratio-ranked scan, the few remaining heavy items through one ascending
/// sweep.
pub fn tsigma_all_capacities(inst: &KnapsackInstance, t: u64) -> Result<ProfitArray> {
    Ok(tsigma_all_capacities_counted(inst, t)?.0)
}

pub fn tsigma_all_capacities_counted(
    inst: &KnapsackInstance,
    t: u64,
) -> Result<(ProfitArray, u64)> {
    let items = inst.up_to(t);
    if items.is_empty() || t == 0 {
        return Ok((ProfitArray::zeros(t as usize + 1), 0));
    }
    let sigma: u64 = items.iter().map(|it| it.weight).sum();
    let ell0 = icbrt_ceil(t as u128 * sigma as u128);
    let cut = items.partition_point(|it| it.weight <= ell0);
    let (light, heavy) = items.split_at(cut);

    let u_light = light.last().map(|it| it.weight).unwrap_or(0);
    let ranked = RatioRankedItems::rank(light);
    let mut work = 0u64;
    let mut d = algo2_ranked(&ranked, u_light, t, &mut work)?;
    for j in 1..=t as usize {
        let mut best = d[j];
        for it in heavy {
            let w = it.weight as usize;
            if w > j {
                break;
            }
            work += 1;
            let cand = d[j - w].checked_add(it.profit).ok_or(Error::ProfitOverflow)?;
            if cand > best {
                best = cand;
            }
        }
        d[j] = best;
    }
    Ok((d, work))
}

/// One contiguous slice `[lo, lo+u]` of the all-capacities profit table.
/// Entries are nondecreasing because a solution fitting a capacity also fits
/// every larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacityWindow {
    lo: u64,
    values: Vec<u64>,
}

impl CapacityWindow {
    pub fn new(lo: u64, values: Vec<u64>) -> CapacityWindow {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        CapacityWindow { lo, values }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Table entry for capacity `j`; `j` must lie inside the window.
    pub fn get(&self, j: u64) -> u64 {
        self.values[(j - self.lo) as usize]
    }
}

/// Plain DP over `[0, t]`; items must be sorted by weight.
fn plain_dp(items: &[KnapsackItem], t: u64, work: &mut u64) -> Result<Vec<u64>> {
    let mut d = vec![0u64; t as usize + 1];
    for j in 1..=t as usize {
        let mut best = 0u64;
        for it in items {
            let w = it.weight as usize;
            if w > j {
                break;
            }
            *work += 1;
            let cand = d[j - w].checked_add(it.profit).ok_or(Error::ProfitOverflow)?;
            if cand > best {
                best = cand;
            }
        }
        d[j] = best;
    }
    Ok(d)
}

/// Rebuilds the window `[t, t+u]` from the window `[that, that+u]`, where
/// `that = t - t/b` for the chain's ratio `b`. Entries still covered by the
/// previous window are copied; an entry j above it is the best over all
/// items of "remove x_ij copies of item i", with x_ij the smallest count
/// whose removal lands inside the previous window.
pub(crate) fn window_step(
    items: &[KnapsackItem],
    t: u64,
    u: u64,
    prev: &CapacityWindow,
    work: &mut u64,
) -> Result<CapacityWindow> {
    let that = prev.lo();
    debug_assert!(that <= t);
    let mut values = Vec::with_capacity(u as usize + 1);
    for j in t..=t + u {
        if j <= that + u {
            values.push(prev.get(j));
            continue;
        }
        let gap = j - (that + u);
        let mut best = 0u64;
        for it in items {
            *work += 1;
            let x = gap.div_ceil(it.weight);
            let land = j - x * it.weight;
            debug_assert!(that <= land && land <= that + u);
            let gain = x.checked_mul(it.profit).ok_or(Error::ProfitOverflow)?;
            let cand = prev.get(land).checked_add(gain).ok_or(Error::ProfitOverflow)?;
            if cand > best {
                best = cand;
            }
        }
        values.push(best);
    }
    Ok(CapacityWindow::new(t, values))
}

/// Left window ends visited by the recursion, from `t0` down to the first
/// value at or below `base_floor`: each step drops the current `t` by
/// `floor(t/b)`, i.e. moves to `ceil((1 - 1/b) t)`.
pub(crate) fn window_chain(t0: u64, b: u64, base_floor: u64) -> Vec<u64> {
    let mut chain = vec![t0];
    let mut cur = t0;
    while cur > base_floor && cur >= b {
        cur -= cur / b;
        chain.push(cur);
    }
    chain
}

/// Best profit at capacities `[t0, t0+u]` via the shrinking window chain.
/// `base_floor` is where the chain stops and a full DP takes over; the
/// public entry point uses `u*b^2` — below that the pigeonhole guarantee
/// behind the window formula can run out of slack, and a full DP of that
/// size is within the intended budget anyway.
pub(crate) fn windowed_profit(
    items: &[KnapsackItem],
    t0: u64,
    u: u64,
    base_floor: Option<u64>,
    work: &mut u64,
) -> Result<CapacityWindow> {
    let b = ceil_log2(t0.saturating_add(u).max(1)) as u64 + 1;
    let base_floor = base_floor.unwrap_or(u.saturating_mul(b * b));
    let chain = window_chain(t0, b, base_floor);
    let base_t = *chain.last().expect("chain starts nonempty");
    let full = plain_dp(items, base_t + u, work)?;
    let mut win = CapacityWindow::new(base_t, full[base_t as usize..].to_vec());
    for &t in chain.iter().rev().skip(1) {
        win = window_step(items, t, u, &win, work)?;
    }
    Ok(win)
}

/// Best profit for one capacity in O(nu log^2 u) probes: slack above 3u^2
/// is paid off with copies of the densest item, the rest goes through the
/// window chain.
pub fn single_capacity_nu(inst: &KnapsackInstance, t: u64) -> Result<u64> {
    Ok(single_capacity_nu_counted(inst, t)?.0)
}

pub fn single_capacity_nu_counted(inst: &KnapsackInstance, t: u64) -> Result<(u64, u64)> {
    let items = inst.up_to(t);
    if items.is_empty() || t == 0 {
        return Ok((0, 0));
    }
    let u = items.last().map(|it| it.weight).unwrap_or(0);
    let best = RatioRankedItems::rank(items).best().expect("nonempty items");
    let cap = 3 * u as u128 * u as u128;
    let (copies, t_red) = if t as u128 >= cap {
        // every capacity >= 3u^2 admits an optimum using the densest item,
        // so peel copies until the capacity drops below that threshold
        let k = (t - cap as u64 + 1).div_ceil(best.weight);
        (k, t - k * best.weight)
    } else {
        (0, t)
    };
    let paid = copies.checked_mul(best.profit).ok_or(Error::ProfitOverflow)?;
    let mut work = 0u64;
    let win = windowed_profit(items, t_red, u, None, &mut work)?;
    let total = win.get(t_red).checked_add(paid).ok_or(Error::ProfitOverflow)?;
    Ok((total, work))
}

const TYPE_COUNT_CAPACITY_BOUND: u64 = 60;
const TYPE_COUNT_ITEM_BOUND: usize = 6;

/// Fewest distinct item types over all optimal solutions for capacity `j`,
/// by exhausting type subsets. Exponential in `n`, so refuses large inputs.
pub(crate) fn min_optimal_type_count(inst: &KnapsackInstance, j: u64) -> Result<u32> {
    if j > TYPE_COUNT_CAPACITY_BOUND {
        return Err(Error::BruteForceBound { value: j, bound: TYPE_COUNT_CAPACITY_BOUND });
    }
    if inst.n() > TYPE_COUNT_ITEM_BOUND {
        return Err(Error::BruteForceBound {
            value: inst.n() as u64,
            bound: TYPE_COUNT_ITEM_BOUND as u64,
        });
    }
    let items = inst.up_to(j);
    let mut work = 0u64;
    let target = *plain_dp(items, j, &mut work)?.last().expect("j + 1 entries");
    let mut fewest = u32::MAX;
    for mask in 0u32..1 << items.len() {
        if mask.count_ones() >= fewest {
            continue;
        }
        let subset: Vec<KnapsackItem> = items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &it)| it)
            .collect();
        if *plain_dp(&subset, j, &mut work)?.last().unwrap() == target {
            fewest = mask.count_ones();
        }
    }
    Ok(fewest)
}

/// True when some optimal solution for capacity `j` uses at most
/// floor(log2(j+1)) distinct item types. A collision argument on subset
/// weights proves this always holds, and the window algorithm's per-step
/// guarantee rests on it; the check exists to exercise that argument
/// directly on small instances.
pub fn log_types_check(inst: &KnapsackInstance, j: u64) -> Result<bool> {
    let fewest = min_optimal_type_count(inst, j)?;
    Ok(fewest <= (j + 1).ilog2())
}
