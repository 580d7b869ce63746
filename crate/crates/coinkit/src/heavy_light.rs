//! All-targets change-making via a heavy/light coin split.
//!
//! Coins above a threshold `l0` can appear at most `t / l0` times in any
//! solution, so iterating boolean convolutions of their indicator reaches
//! every heavy-only sum in `t / l0` rounds. Light coins are then folded in
//! either by the classical DP (the ~t^1.5 variant) or group by group with
//! blocked binary (min,+)-convolutions (the ~t^(4/3) variant): a group
//! holds the coins in `(l, 2l]`, and for targets inside one length-`l`
//! block, removing a group coin always lands in the two blocks just left of
//! it, so a window of `2l` finished entries suffices.

use crate::conv;
use crate::cost::{BinaryCostArray, Cost, CostArray};
use crate::error::{Error, Result};
use crate::instance::CoinSet;

/// A coin set split at threshold `ell0`: heavy strictly above, light at or
/// below.
#[derive(Clone, Debug)]
pub struct HeavyLightSplit {
    pub ell0: u64,
    pub heavy: CoinSet,
    pub light: CoinSet,
}

impl HeavyLightSplit {
    pub fn split(coins: &CoinSet, ell0: u64) -> HeavyLightSplit {
        let (light, heavy): (Vec<u64>, Vec<u64>) =
            coins.values().iter().partition(|&&v| v <= ell0);
        HeavyLightSplit {
            ell0,
            heavy: CoinSet::new(heavy).expect("split of valid coins"),
            light: CoinSet::new(light).expect("split of valid coins"),
        }
    }
}

/// The light coins with values in `(ell, 2 * ell]`, `ell` a power of two.
#[derive(Clone, Debug)]
pub struct LightGroup {
    ell: u64,
    members: Vec<u64>,
}

impl LightGroup {
    pub fn new(ell: u64, members: impl IntoIterator<Item = u64>) -> Result<LightGroup> {
        if ell == 0 || !ell.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(ell));
        }
        let mut members: Vec<u64> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &v in &members {
            if v <= ell || v > 2 * ell {
                return Err(Error::GroupMemberOutOfRange { value: v, lo: ell, hi: 2 * ell });
            }
        }
        Ok(LightGroup { ell, members })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }
}

/// Minimum number of heavy coins summing to each target in `[0, t]`, using
/// at most `kmax` coins; unreachable targets are infinite.
///
/// Round k convolves the reachable set with the single-coin indicator, so
/// after round k the set holds exactly the sums of k heavy coins; a target
/// is recorded at its first appearance.
pub fn heavy_min_counts(heavy: &CoinSet, t: u64, kmax: u64) -> CostArray {
    let mut work = 0u64;
    heavy_min_counts_counted(heavy, t, kmax, &mut work)
}

pub(crate) fn heavy_min_counts_counted(
    heavy: &CoinSet,
    t: u64,
    kmax: u64,
    work: &mut u64,
) -> CostArray {
    let t = t as usize;
    let mut out = CostArray::infeasible_table(t + 1);
    let values = heavy.up_to(t as u64);
    if values.is_empty() || kmax == 0 || t == 0 {
        return out;
    }
    let mut cur = vec![false; t + 1];
    for &v in values {
        cur[v as usize] = true;
        out[v as usize] = Cost::ONE;
    }
    // k coins of the smallest heavy value already exceed t past this point
    let kcap = kmax.min(t as u64 / values[0]);
    if kcap < 2 {
        return out;
    }
    let size = conv::conv_size(2 * t + 1);
    let single = conv::bool_to_freq(&cur, size, work);
    for k in 2..=kcap {
        let mut freq = conv::bool_to_freq(&cur, size, work);
        conv::mul_freq_into(&mut freq, &single);
        cur = conv::freq_to_bits(freq, t + 1, work);
        for (j, &reachable) in cur.iter().enumerate() {
            if reachable && !out[j].is_finite() {
                out[j] = Cost::finite(k);
            }
        }
        *work += (t + 1) as u64;
    }
    out
}

/// Extends a finished min-count table `d` (for some coin set S) to the
/// table for S plus the group coins, over targets `[0, t]`.
///
/// Processes length-`ell` blocks left to right. For a target in block i,
/// removing one group coin lands in `[ell*(i-2), ell*i - 2]`, inside the
/// already-final window `[ell*(i-2), ell*i - 1]`, so each block needs one
/// selected-entry binary (min,+)-convolution of that window with the group
/// indicator, min-merged with the old entries.
pub fn add_light_group(d: &CostArray, group: &LightGroup, t: u64) -> CostArray {
    let mut work = 0u64;
    add_light_group_counted(d, group, t, &mut work)
}

pub(crate) fn add_light_group_counted(
    d: &CostArray,
    group: &LightGroup,
    t: u64,
    work: &mut u64,
) -> CostArray {
    let t = t as usize;
    assert_eq!(d.len(), t + 1, "table must cover 0..=t");
    let mut out = d.clone();
    if group.members.is_empty() {
        return out;
    }
    let ell = group.ell as usize;
    let operand = BinaryCostArray::from_support(
        ell + 1,
        group.ell,
        group.members.iter().map(|&v| (v - group.ell) as usize),
    );
    let mut block = 1usize; // block 0 has no room for any group coin
    while ell * block <= t {
        let blo = ell * block;
        let bhi = (ell * (block + 1) - 1).min(t);
        let wlo = ell * block.saturating_sub(2);
        let whi = blo - 1;
        let window = &out.as_slice()[wlo..=whi];
        let wanted: Vec<usize> = (blo..=bhi).map(|j| j - wlo - ell).collect();
        let vals = conv::minplus_selected_counted(window, &operand, &wanted, work)
            .expect("window and wanted are in range by construction");
        for (m, val) in wanted.into_iter().zip(vals) {
            let j = m + wlo + ell;
            if val < out[j] {
                out[j] = val;
            }
        }
        block += 1;
    }
    out
}

pub(crate) fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    x.next_power_of_two().trailing_zeros()
}

/// Smallest power of two strictly above the largest coin; a threshold this
/// high makes the heavy side empty.
fn cap_above_u(coins: &CoinSet, t: u64) -> u64 {
    let u = coins.up_to(t).last().copied().unwrap_or(0);
    1u64 << ceil_log2(u + 1)
}

/// Heavy phase plus classical DP for the light coins.
pub fn all_targets_t32(coins: &CoinSet, t: u64) -> CostArray {
    all_targets_t32_counted(coins, t).0
}

pub fn all_targets_t32_counted(coins: &CoinSet, t: u64) -> (CostArray, u64) {
    let ell0 = if t <= 1 {
        1
    } else {
        (1u64 << ceil_log2(t).div_ceil(2)).min(cap_above_u(coins, t))
    };
    let mut work = 0u64;
    let d = all_targets_t32_with_ell0_counted(coins, t, ell0, &mut work);
    (d, work)
}

/// [`all_targets_t32`] with the split threshold forced; any `ell0 >= 1`
/// yields the same table.
pub fn all_targets_t32_with_ell0(coins: &CoinSet, t: u64, ell0: u64) -> CostArray {
    let mut work = 0u64;
    all_targets_t32_with_ell0_counted(coins, t, ell0, &mut work)
}

fn all_targets_t32_with_ell0_counted(
    coins: &CoinSet,
    t: u64,
    ell0: u64,
    work: &mut u64,
) -> CostArray {
    if t == 0 {
        return CostArray::infeasible_table(1);
    }
    let split = HeavyLightSplit::split(coins, ell0);
    let mut d = heavy_min_counts_counted(&split.heavy, t, t / ell0, work);
    let light = split.light.up_to(t);
    for j in 1..=t as usize {
        let mut best = d[j];
        for &v in light {
            let v = v as usize;
            if v > j {
                break;
            }
            *work += 1;
            let cand = d[j - v] + Cost::ONE;
            if cand < best {
                best = cand;
            }
        }
        d[j] = best;
    }
    d
}

/// Heavy phase plus blocked group convolutions for the light coins.
pub fn all_targets_t43(coins: &CoinSet, t: u64) -> CostArray {
    all_targets_t43_counted(coins, t).0
}

pub fn all_targets_t43_counted(coins: &CoinSet, t: u64) -> (CostArray, u64) {
    let ell0 = if t <= 1 {
        1
    } else {
        (1u64 << (2 * ceil_log2(t)).div_ceil(3)).min(cap_above_u(coins, t))
    };
    let mut work = 0u64;
    let d = all_targets_t43_with_ell0_counted(coins, t, ell0, &mut work);
    (d, work)
}

/// [`all_targets_t43`] with the split threshold forced; any power of two
/// `ell0 >= 1` yields the same table.
pub fn all_targets_t43_with_ell0(coins: &CoinSet, t: u64, ell0: u64) -> CostArray {
    let mut work = 0u64;
    all_targets_t43_with_ell0_counted(coins, t, ell0, &mut work)
}

fn all_targets_t43_with_ell0_counted(
    coins: &CoinSet,
    t: u64,
    ell0: u64,
    work: &mut u64,
) -> CostArray {
    assert!(ell0.is_power_of_two(), "split threshold must be a power of two");
    if t == 0 {
        return CostArray::infeasible_table(1);
    }
    let split = HeavyLightSplit::split(coins, ell0);
    let mut d = heavy_min_counts_counted(&split.heavy, t, t / ell0, work);
    // No group (l, 2l] contains the value 1; one left-to-right pass adds it.
    if split.light.contains(1) {
        for j in 1..=t as usize {
            let cand = d[j - 1] + Cost::ONE;
            if cand < d[j] {
                d[j] = cand;
            }
        }
        *work += t;
    }
    let mut ell = 1u64;
    while ell < ell0 {
        let members: Vec<u64> = split
            .light
            .values()
            .iter()
            .copied()
            .filter(|&v| v > ell && v <= 2 * ell)
            .collect();
        if !members.is_empty() {
            let group = LightGroup::new(ell, members).expect("members lie in (ell, 2*ell]");
            d = add_light_group_counted(&d, &group, t, work);
        }
        ell *= 2;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::dp_all_targets;

    fn coins(v: &[u64]) -> CoinSet {
        CoinSet::new(v.iter().copied()).unwrap()
    }

    /// Min-count table using only `values` and at most `kmax` coins, by
    /// plain bounded DP; the oracle for heavy_min_counts.
    fn bounded_count_oracle(values: &[u64], t: usize, kmax: u64) -> CostArray {
        let mut d = CostArray::infeasible_table(t + 1);
        for j in 1..=t {
            for &v in values {
                let v = v as usize;
                if v <= j && d[j - v].is_finite() {
                    let cand = d[j - v] + Cost::ONE;
                    if cand < d[j] {
                        d[j] = cand;
                    }
                }
            }
        }
        for j in 0..=t {
            if d[j] > Cost::finite(kmax) {
                d[j] = Cost::INF;
            }
        }
        d
    }

    #[test]
    fn heavy_counts_trivial_cases() {
        let d = heavy_min_counts(&coins(&[]), 5, 3);
        assert_eq!(d, CostArray::from_signed(&[0, -1, -1, -1, -1, -1]));

        let d = heavy_min_counts(&coins(&[7]), 21, 3);
        let mut want = vec![-1i64; 22];
        want[0] = 0;
        want[7] = 1;
        want[14] = 2;
        want[21] = 3;
        assert_eq!(d, CostArray::from_signed(&want));
    }

    #[test]
    fn heavy_counts_match_bounded_oracle() {
        let cases: &[(&[u64], u64, u64)] = &[
            (&[10, 25], 60, 6),
            (&[10, 25], 60, 2),
            (&[3, 4, 5], 40, 13),
            (&[6, 9, 20], 100, 4),
            (&[11], 9, 5),
        ];
        for &(vs, t, kmax) in cases {
            let got = heavy_min_counts(&coins(vs), t, kmax);
            let want = bounded_count_oracle(vs, t as usize, kmax);
            assert_eq!(got, want, "coins {vs:?} t {t} kmax {kmax}");
        }
    }

    #[test]
    fn add_group_matches_frozen_example() {
        let d = dp_all_targets(&coins(&[5]), 10);
        let group = LightGroup::new(2, [3, 4]).unwrap();
        let got = add_light_group(&d, &group, 10);
        assert_eq!(
            got,
            CostArray::from_signed(&[0, -1, -1, 1, 1, 1, 2, 2, 2, 2, 2])
        );
    }

    #[test]
    fn add_group_equals_joint_dp() {
        // adding a group must give exactly the DP table of the union
        let cases: &[(&[u64], u64, &[u64], u64)] = &[
            (&[5], 2, &[3, 4], 57),
            (&[9, 17], 4, &[5, 7, 8], 80),
            (&[1], 1, &[2], 33),
            (&[40], 8, &[9, 11, 16], 100),
        ];
        for &(base, ell, members, t) in cases {
            let d = dp_all_targets(&coins(base), t);
            let group = LightGroup::new(ell, members.iter().copied()).unwrap();
            let got = add_light_group(&d, &group, t);
            let joint: Vec<u64> = base.iter().chain(members).copied().collect();
            let want = dp_all_targets(&coins(&joint), t);
            assert_eq!(got, want, "base {base:?} group {members:?} t {t}");
        }
    }

    #[test]
    fn add_group_with_empty_members_is_identity() {
        let d = dp_all_targets(&coins(&[5]), 10);
        let group = LightGroup::new(2, []).unwrap();
        assert_eq!(add_light_group(&d, &group, 10), d);
    }

    #[test]
    fn group_construction_validates() {
        assert_eq!(LightGroup::new(3, [4]).unwrap_err(), Error::NotPowerOfTwo(3));
        assert_eq!(
            LightGroup::new(2, [2]).unwrap_err(),
            Error::GroupMemberOutOfRange { value: 2, lo: 2, hi: 4 }
        );
        assert_eq!(
            LightGroup::new(2, [5]).unwrap_err(),
            Error::GroupMemberOutOfRange { value: 5, lo: 2, hi: 4 }
        );
    }

    #[test]
    fn block_locality_holds() {
        // Recomputing any block from the final table must change nothing:
        // the lagging window already carried all information the block needs.
        let base = coins(&[29, 31]);
        let t = 120u64;
        let d = dp_all_targets(&base, t);
        let group = LightGroup::new(8, [9, 11, 13, 16]).unwrap();
        let done = add_light_group(&d, &group, t);

        let ell = 8usize;
        let operand = BinaryCostArray::from_support(ell + 1, 8, [1usize, 3, 5, 8]);
        let mut block = 1usize;
        while ell * block <= t as usize {
            let blo = ell * block;
            let bhi = (ell * (block + 1) - 1).min(t as usize);
            let wlo = ell * block.saturating_sub(2);
            let window = &done.as_slice()[wlo..blo];
            let wanted: Vec<usize> = (blo..=bhi).map(|j| j - wlo - ell).collect();
            let mut work = 0u64;
            let vals =
                conv::minplus_selected_counted(window, &operand, &wanted, &mut work).unwrap();
            for (m, val) in wanted.into_iter().zip(vals) {
                let j = m + wlo + ell;
                let expect = val.min(d[j]);
                assert_eq!(expect, done[j], "block {block} target {j}");
            }
            block += 1;
        }
    }

    #[test]
    fn fast_tables_match_dp_on_small_instances() {
        let cases: &[(&[u64], u64)] = &[
            (&[1], 50),
            (&[2, 5], 100),
            (&[3, 5], 8),
            (&[7, 11, 13], 200),
            (&[1, 4, 9, 16, 25], 300),
            (&[40, 60, 99], 250),
            (&[17], 16),
        ];
        for &(vs, t) in cases {
            let c = coins(vs);
            let want = dp_all_targets(&c, t);
            assert_eq!(all_targets_t32(&c, t), want, "t32 coins {vs:?} t {t}");
            assert_eq!(all_targets_t43(&c, t), want, "t43 coins {vs:?} t {t}");
        }
    }

    #[test]
    fn heavy_phase_noop_when_all_coins_light() {
        let c = coins(&[2, 3, 5, 8]);
        let want = dp_all_targets(&c, 4096);
        assert_eq!(all_targets_t43(&c, 4096), want);
    }

    #[test]
    fn threshold_choice_does_not_change_output() {
        let c = coins(&[1, 6, 9, 14, 23, 31]);
        let t = 200u64;
        let want = dp_all_targets(&c, t);
        let mut ell0 = 2u64;
        while ell0 <= 2 * c.max_value() {
            assert_eq!(
                all_targets_t43_with_ell0(&c, t, ell0),
                want,
                "t43 ell0 {ell0}"
            );
            assert_eq!(
                all_targets_t32_with_ell0(&c, t, ell0),
                want,
                "t32 ell0 {ell0}"
            );
            ell0 *= 2;
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(all_targets_t43(&coins(&[]), 3), CostArray::from_signed(&[0, -1, -1, -1]));
        assert_eq!(all_targets_t43(&coins(&[4]), 0), CostArray::from_signed(&[0]));
        assert_eq!(all_targets_t32(&coins(&[]), 0), CostArray::from_signed(&[0]));
    }
}
