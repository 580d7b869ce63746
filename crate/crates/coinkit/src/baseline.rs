//! Reference solvers and independent oracles.
//!
//! Everything here is deliberately simple: the classic one-coin-at-a-time
//! DPs, a breadth-first search that shares no code with any DP, and small
//! exhaustive scans. The fast solvers in the other modules are checked
//! against these.

use std::collections::VecDeque;

use crate::cost::{Cost, CostArray, ProfitArray};
use crate::error::{Error, Result};
use crate::instance::{CoinSet, KnapsackInstance};

/// Default cap on targets accepted by [`brute_force_min_coins`].
pub const BRUTE_FORCE_TARGET_BOUND: u64 = 10_000;

/// Default cap on the largest coin accepted by [`frobenius_brute`].
pub const FROBENIUS_VALUE_BOUND: u64 = 200;

/// Classic change-making DP: minimum coin counts for every target in
/// `[0, t]`. Values above `t` are skipped.
pub fn dp_all_targets(coins: &CoinSet, t: u64) -> CostArray {
    dp_all_targets_counted(coins, t).0
}

/// [`dp_all_targets`] plus the number of inner-loop probes executed.
pub fn dp_all_targets_counted(coins: &CoinSet, t: u64) -> (CostArray, u64) {
    let t = t as usize;
    let mut d = CostArray::infeasible_table(t + 1);
    let values = coins.up_to(t as u64);
    let mut work = 0u64;
    for j in 1..=t {
        let mut best = Cost::INF;
        for &v in values {
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

/// Classic unbounded knapsack DP: best profit of any multiset with total
/// weight at most `j`, for every capacity `j` in `[0, t]`.
pub fn dp_all_capacities(inst: &KnapsackInstance, t: u64) -> Result<ProfitArray> {
    Ok(dp_all_capacities_counted(inst, t)?.0)
}

pub fn dp_all_capacities_counted(inst: &KnapsackInstance, t: u64) -> Result<(ProfitArray, u64)> {
    let t = t as usize;
    let mut d = ProfitArray::zeros(t + 1);
    let items = inst.up_to(t as u64);
    let mut work = 0u64;
    for j in 1..=t {
        let mut best = 0u64;
        for it in items {
            let w = it.weight as usize;
            if w > j {
                break;
            }
            work += 1;
            let cand = d[j - w]
                .checked_add(it.profit)
                .ok_or(Error::ProfitOverflow)?;
            if cand > best {
                best = cand;
            }
        }
        d[j] = best;
    }
    Ok((d, work))
}

/// Minimum coin count for a single target, by breadth-first search over
/// exact sums. Level k of the search holds every sum reachable with k
/// coins, so the first visit to `j` is optimal. No DP recurrence involved.
pub fn brute_force_min_coins(coins: &CoinSet, j: u64) -> Result<Cost> {
    brute_force_min_coins_bounded(coins, j, BRUTE_FORCE_TARGET_BOUND)
}

pub fn brute_force_min_coins_bounded(coins: &CoinSet, j: u64, bound: u64) -> Result<Cost> {
    if j > bound {
        return Err(Error::BruteForceBound { value: j, bound });
    }
    let j = j as usize;
    let mut dist: Vec<Option<u64>> = vec![None; j + 1];
    dist[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        if s == j {
            break;
        }
        for &v in coins.up_to((j - s) as u64) {
            let next = s + v as usize;
            if dist[next].is_none() {
                dist[next] = Some(dist[s].unwrap() + 1);
                queue.push_back(next);
            }
        }
    }
    Ok(dist[j].map_or(Cost::INF, Cost::finite))
}

/// Largest target not representable as a nonnegative combination of the
/// coins, or `None` when every target is representable (coin 1 present).
///
/// Requires gcd 1 (otherwise no largest non-representable exists) and a
/// small largest coin. The scan certifies completeness by running until it
/// has seen `max_value` consecutive representable targets: past that point
/// subtracting copies of the largest coin reaches a certified target.
pub fn frobenius_brute(coins: &CoinSet) -> Result<Option<u64>> {
    frobenius_brute_bounded(coins, FROBENIUS_VALUE_BOUND)
}

pub fn frobenius_brute_bounded(coins: &CoinSet, value_bound: u64) -> Result<Option<u64>> {
    if coins.is_empty() {
        return Err(Error::EmptyInput);
    }
    let g = coins.gcd();
    if g != 1 {
        return Err(Error::GcdNotOne(g));
    }
    let u = coins.max_value();
    if u > value_bound {
        return Err(Error::BruteForceBound { value: u, bound: value_bound });
    }
    let limit = (u * u + u + 2) as usize;
    let mut reachable = vec![false; limit];
    reachable[0] = true;
    let mut last_gap: Option<u64> = None;
    let mut run = 0u64;
    for j in 1..limit {
        let hit = coins
            .up_to(j as u64)
            .iter()
            .any(|&v| reachable[j - v as usize]);
        reachable[j] = hit;
        if hit {
            run += 1;
            if run >= u {
                return Ok(last_gap);
            }
        } else {
            last_gap = Some(j as u64);
            run = 0;
        }
    }
    unreachable!("gcd-1 coin set failed to certify within {limit} targets");
}

/// An optimal multiset of coins for target `j`, recovered from a finished
/// min-count table by walking backwards: from `j`, some coin `v` must
/// satisfy `d[j - v] = d[j] - 1`, else the table is not a min-coin table.
pub fn reconstruct_witness(d: &CostArray, coins: &CoinSet, j: u64) -> Result<Vec<u64>> {
    let j = j as usize;
    if j >= d.len() {
        return Err(Error::IndexOutOfRange { index: j, len: d.len() });
    }
    if !d[j].is_finite() {
        return Err(Error::InfeasibleTarget(j as u64));
    }
    let mut cur = j;
    let mut picks = Vec::new();
    loop {
        let need = match d[cur].value() {
            Some(0) if cur == 0 => break,
            Some(0) => return Err(Error::CorruptCostArray(cur)),
            Some(c) => c - 1,
            None => return Err(Error::CorruptCostArray(cur)),
        };
        let step = coins
            .up_to(cur as u64)
            .iter()
            .copied()
            .find(|&v| d[cur - v as usize] == Cost::finite(need));
        match step {
            Some(v) => {
                picks.push(v);
                cur -= v as usize;
            }
            None => return Err(Error::CorruptCostArray(cur)),
        }
    }
    picks.sort_unstable();
    Ok(picks)
}

/// Constant-size stand-in for an unbounded all-targets answer.
///
/// Min-coin tables become periodic once the target passes u^2: every
/// feasible target that large has an optimal solution using the largest
/// coin, so `d[j] = d[j - u] + 1` there. Storing the table for `[0, u^2)`
/// therefore answers every target.
#[derive(Clone, Debug)]
pub struct ImplicitCostAnswer {
    prefix: CostArray,
    u: u64,
}

impl ImplicitCostAnswer {
    /// Wraps a finished min-count table over `[0, u^2)` (over `[0, 1)` for
    /// the empty coin set, whose table is just `[0]`).
    pub fn new(prefix: CostArray, u: u64) -> Result<ImplicitCostAnswer> {
        let need = ((u * u) as usize).max(1);
        if prefix.len() != need {
            return Err(Error::IndexOutOfRange { index: need, len: prefix.len() });
        }
        Ok(ImplicitCostAnswer { prefix, u })
    }

    pub fn prefix(&self) -> &CostArray {
        &self.prefix
    }

    pub fn max_value(&self) -> u64 {
        self.u
    }

    /// Minimum coin count for an arbitrary target.
    ///
    /// For `j >= u^2` the query strips `k = ceil((j - u^2 + 1) / u)` copies
    /// of the largest coin, landing in `[u^2 - u, u^2)`, and adds `k` back.
    pub fn query(&self, j: u64) -> Cost {
        if self.u == 0 {
            return if j == 0 { Cost::ZERO } else { Cost::INF };
        }
        let usq = self.u * self.u;
        let k = if j >= usq { (j - usq + 1).div_ceil(self.u) } else { 0 };
        let reduced = j - k * self.u;
        debug_assert!(reduced < usq);
        self.prefix[reduced as usize] + k
    }
}
