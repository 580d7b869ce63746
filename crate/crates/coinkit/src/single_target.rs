//! Single-target change-making in O(u log^3 u).
//!
//! The decision "can at most m coins sum to j" is monotone in m once 0 is
//! adjoined to the coin values, so the optimum is a binary search over a
//! reachability oracle. The oracle never materializes the full table of
//! m-coin sums: any m-element multiset splits into two near-halves whose
//! sums both land within 2u of half the total (split off one element when m
//! is odd, two when m is even, and slide a window to balance the sums), so
//! a short window `[t - W, t]` of the m-coin sums is already determined by
//! the window `[ceil(t/2) - W, ceil(t/2)]` of the half-count sums, with
//! W = 4u + 2 absorbing the rounding of repeated halving. Each level is two
//! or three boolean convolutions of O(u)-size windows.

use crate::conv::conv_bool_counted;
use crate::cost::{BoolArray, Cost};
use crate::instance::CoinSet;

/// Window width `4u + 2`: wide enough that both halves of a split multiset
/// land inside the child window even after ceiling-halving the target.
fn window_width(u: u64) -> u64 {
    4 * u + 2
}

/// One window `[max(0, t_param - W), t_param]` of the m-coin reachability
/// row: bit j is set iff exactly m values from V ∪ {0} (= at most m coins
/// from V) sum to j.
#[derive(Clone, Debug)]
pub struct CountWindow {
    m: u64,
    t_param: u64,
    lo: u64,
    bits: BoolArray,
}

impl CountWindow {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn t_param(&self) -> u64 {
        self.t_param
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn bits(&self) -> &BoolArray {
        &self.bits
    }

    /// Reachability bit for sum `j`, or None outside the window.
    pub fn bit(&self, j: u64) -> Option<bool> {
        if j < self.lo || j > self.t_param {
            return None;
        }
        Some(self.bits[(j - self.lo) as usize])
    }
}

/// The sums reachable with exactly `m` values from `coins ∪ {0}`, restricted
/// to the window `[max(0, t_param - 4u - 2), t_param]`.
pub fn count_window(coins: &CoinSet, m: u64, t_param: u64) -> CountWindow {
    let mut work = 0;
    count_window_counted(coins, m, t_param, &mut work)
}

pub fn count_window_counted(
    coins: &CoinSet,
    m: u64,
    t_param: u64,
    work: &mut u64,
) -> CountWindow {
    let u = coins.max_value();
    let width = window_width(u);
    let lo = t_param.saturating_sub(width);
    let len = (t_param - lo + 1) as usize;
    match m {
        0 => CountWindow {
            m,
            t_param,
            lo,
            bits: BoolArray::from_support(len, (lo == 0).then_some(0)),
        },
        1 => {
            let support = std::iter::once(0u64)
                .chain(coins.values().iter().copied())
                .filter(|&v| v >= lo && v <= t_param)
                .map(|v| (v - lo) as usize);
            CountWindow { m, t_param, lo, bits: BoolArray::from_support(len, support) }
        }
        _ => {
            let (child_m, singles) = if m % 2 == 1 { ((m - 1) / 2, 1) } else { (m / 2 - 1, 2) };
            let child = count_window_counted(coins, child_m, t_param.div_ceil(2), work);

            // exact m-sums in [lo, t_param] decompose as two child-window
            // sums plus `singles` extra values, so the product of those
            // windows covers every parent bit
            let mut acc = conv_bool_counted(
                child.bits.as_slice(),
                child.bits.as_slice(),
                2 * child.bits.len() - 1,
                work,
            );
            let mut acc_lo = 2 * child.lo;
            let one = BoolArray::from_support(
                u as usize + 1,
                std::iter::once(0).chain(coins.values().iter().map(|&v| v as usize)),
            );
            for _ in 0..singles {
                let full = acc.len() + one.len() - 1;
                acc = conv_bool_counted(&acc, one.as_slice(), full, work);
            }
            debug_assert!(acc_lo <= lo && acc_lo + acc.len() as u64 > t_param);
            let skip = (lo - acc_lo) as usize;
            acc_lo += skip as u64;
            debug_assert_eq!(acc_lo, lo);
            let bits = BoolArray::new(acc[skip..skip + len].to_vec());
            CountWindow { m, t_param, lo, bits }
        }
    }
}

/// Whether some multiset of at most `m` coins sums to `t` exactly.
pub fn decide(coins: &CoinSet, t: u64, m: u64) -> bool {
    let mut work = 0;
    decide_counted(coins, t, m, &mut work)
}

pub fn decide_counted(coins: &CoinSet, t: u64, m: u64, work: &mut u64) -> bool {
    count_window_counted(coins, m, t, work)
        .bit(t)
        .expect("t_param is always inside its own window")
}

/// Minimum number of coins summing to `t` exactly, or INF.
pub fn min_coins_single(coins: &CoinSet, t: u64) -> Cost {
    min_coins_single_counted(coins, t).0
}

pub fn min_coins_single_counted(coins: &CoinSet, t: u64) -> (Cost, u64) {
    if t == 0 {
        return (Cost::ZERO, 0);
    }
    let coins = CoinSet::new(coins.up_to(t).iter().copied()).expect("positive values");
    if coins.is_empty() {
        return (Cost::INF, 0);
    }
    let u = coins.max_value();

    // every target at or above u^2 has an optimal solution using the
    // largest coin, so peel copies of it until the target drops below u^2
    let usq = u as u128 * u as u128;
    let copies = if t as u128 >= usq { (t - usq as u64 + 1).div_ceil(u) } else { 0 };
    let t_red = t - copies * u;

    let mut work = 0;
    if !decide_counted(&coins, t_red, t_red, &mut work) {
        return (Cost::INF, work);
    }
    let mut lo = 0; // invariant: decide(lo) false (when lo > 0 checked), decide(hi) true
    let mut hi = t_red;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if decide_counted(&coins, t_red, mid, &mut work) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (Cost::finite(hi + copies), work)
}

/// A split of a multiset into two parts of equal cardinality plus one
/// leftover element (odd size) or two (even size), with each part summing
/// to at most half the total. Such a split always exists; the window
/// recursion above is exact precisely because of that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedSplit {
    pub part1: Vec<u64>,
    pub part2: Vec<u64>,
    pub leftovers: Vec<u64>,
}

/// Constructs a balanced split by the sliding-window argument: scan the
/// contiguous windows of `(m-1)/2` (or `m/2 - 1`) elements from the front
/// half to the back half; the sums start at or below t/2 and end above it,
/// so some window is the last to fit.
pub fn balanced_split(values: &[u64]) -> BalancedSplit {
    let m = values.len();
    let h = if m % 2 == 1 { m / 2 } else { (m / 2).saturating_sub(1) };
    let spares = m - 2 * h;
    let total: u64 = values.iter().sum();

    let mut ordered: Vec<u64> = values.to_vec();
    let sum = |xs: &[u64]| xs.iter().sum::<u64>();
    if sum(&ordered[..h]) > sum(&ordered[m - h..]) {
        ordered.reverse();
    }
    let head: Vec<u64> = ordered[..h].to_vec();
    let tail: Vec<u64> = ordered[m - h..].to_vec();
    if 2 * sum(&tail) <= total {
        return BalancedSplit {
            part1: head,
            part2: tail,
            leftovers: ordered[h..m - h].to_vec(),
        };
    }
    // slide: window sums start <= t/2 (head) and end > t/2 (tail), so a
    // last fitting window exists; its successor's extra element is spare
    let mut window_sum = sum(&head);
    for p in 0..m - h {
        let next = window_sum - ordered[p] + ordered[p + h];
        if 2 * next > total {
            let part1 = ordered[p..p + h].to_vec();
            let mut rest: Vec<u64> = ordered[..p]
                .iter()
                .chain(&ordered[p + h + 1..])
                .copied()
                .collect();
            let mut leftovers = vec![ordered[p + h]];
            for _ in 1..spares {
                leftovers.push(rest.pop().expect("rest has h + spares - 1 elements"));
            }
            return BalancedSplit { part1, part2: rest, leftovers };
        }
        window_sum = next;
    }
    unreachable!("the tail window sum exceeds half the total");
}
