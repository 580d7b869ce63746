//! Problem instances: coin sets and unbounded knapsack item lists.

use crate::error::{Error, Result};

/// A set of distinct positive coin values, sorted ascending.
///
/// An empty set is the normal form of "every raw value exceeded the target":
/// downstream solvers then report target 0 feasible and everything else not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinSet {
    values: Vec<u64>,
}

impl CoinSet {
    /// Builds a set from already-positive values; sorts and deduplicates.
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<CoinSet> {
        let mut values: Vec<u64> = values.into_iter().collect();
        for (i, &v) in values.iter().enumerate() {
            if v == 0 {
                return Err(Error::NonPositiveValue { position: i, value: 0 });
            }
        }
        values.sort_unstable();
        values.dedup();
        Ok(CoinSet { values })
    }

    /// Validates raw input, drops duplicates and values above `t`.
    pub fn normalize(raw: &[i64], t: i64) -> Result<CoinSet> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if t < 0 {
            return Err(Error::NegativeTarget(t));
        }
        for (i, &v) in raw.iter().enumerate() {
            if v <= 0 {
                return Err(Error::NonPositiveValue { position: i, value: v });
            }
        }
        let mut values: Vec<u64> = raw
            .iter()
            .map(|&v| v as u64)
            .filter(|&v| v <= t as u64)
            .collect();
        values.sort_unstable();
        values.dedup();
        Ok(CoinSet { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest value, or 0 for the empty set.
    pub fn max_value(&self) -> u64 {
        self.values.last().copied().unwrap_or(0)
    }

    /// Smallest value, or 0 for the empty set.
    pub fn min_value(&self) -> u64 {
        self.values.first().copied().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    /// The values not exceeding `t` (a prefix, since values are sorted).
    pub fn up_to(&self, t: u64) -> &[u64] {
        let cut = self.values.partition_point(|&v| v <= t);
        &self.values[..cut]
    }

    pub fn gcd(&self) -> u64 {
        self.values.iter().copied().fold(0, gcd)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One unbounded knapsack item type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnapsackItem {
    pub weight: u64,
    pub profit: u64,
}

/// Items with distinct positive weights and positive profits, sorted by
/// weight. Duplicate weights keep the larger profit: a lighter-profit twin
/// can never appear in an optimal solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackInstance {
    items: Vec<KnapsackItem>,
}

impl KnapsackInstance {
    pub fn new(items: impl IntoIterator<Item = (u64, u64)>) -> Result<KnapsackInstance> {
        let raw: Vec<(u64, u64)> = items.into_iter().collect();
        for (i, &(w, p)) in raw.iter().enumerate() {
            if w == 0 {
                return Err(Error::NonPositiveValue { position: i, value: 0 });
            }
            if p == 0 {
                return Err(Error::NonPositiveValue { position: i, value: 0 });
            }
        }
        Ok(Self::dedupe(
            raw.into_iter()
                .map(|(weight, profit)| KnapsackItem { weight, profit })
                .collect(),
        ))
    }

    /// Validates raw input, keeps the best profit per weight, drops items
    /// heavier than the capacity `t`.
    pub fn normalize(raw: &[(i64, i64)], t: i64) -> Result<KnapsackInstance> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if t < 0 {
            return Err(Error::NegativeTarget(t));
        }
        for (i, &(w, p)) in raw.iter().enumerate() {
            if w <= 0 {
                return Err(Error::NonPositiveValue { position: i, value: w });
            }
            if p <= 0 {
                return Err(Error::NonPositiveValue { position: i, value: p });
            }
        }
        let items: Vec<KnapsackItem> = raw
            .iter()
            .filter(|&&(w, _)| w as u64 <= t as u64)
            .map(|&(w, p)| KnapsackItem {
                weight: w as u64,
                profit: p as u64,
            })
            .collect();
        Ok(Self::dedupe(items))
    }

    fn dedupe(mut items: Vec<KnapsackItem>) -> KnapsackInstance {
        items.sort_by_key(|it| (it.weight, std::cmp::Reverse(it.profit)));
        items.dedup_by_key(|it| it.weight);
        KnapsackInstance { items }
    }

    pub fn items(&self) -> &[KnapsackItem] {
        &self.items
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Largest weight, or 0 for the empty instance.
    pub fn max_weight(&self) -> u64 {
        self.items.last().map(|it| it.weight).unwrap_or(0)
    }

    pub fn weight_sum(&self) -> u64 {
        self.items.iter().map(|it| it.weight).sum()
    }

    /// Items with weight at most `t` (a prefix, since items are sorted).
    pub fn up_to(&self, t: u64) -> &[KnapsackItem] {
        let cut = self.items.partition_point(|it| it.weight <= t);
        &self.items[..cut]
    }
}

/// Items sorted by profit density, best first. Density comparisons are done
/// with exact cross-multiplication so no ratio ever touches floating point:
/// `p_i / w_i > p_j / w_j` iff `p_i * w_j > p_j * w_i`. Ties prefer the
/// higher profit, then the lower weight.
#[derive(Clone, Debug)]
pub struct RatioRankedItems {
    items: Vec<KnapsackItem>,
}

impl RatioRankedItems {
    pub fn rank(items: &[KnapsackItem]) -> RatioRankedItems {
        let mut items = items.to_vec();
        items.sort_by(|a, b| {
            let lhs = a.profit as u128 * b.weight as u128;
            let rhs = b.profit as u128 * a.weight as u128;
            rhs.cmp(&lhs)
                .then(b.profit.cmp(&a.profit))
                .then(a.weight.cmp(&b.weight))
        });
        RatioRankedItems { items }
    }

    pub fn items(&self) -> &[KnapsackItem] {
        &self.items
    }

    pub fn best(&self) -> Option<KnapsackItem> {
        self.items.first().copied()
    }
}

/// Coin values sorted descending, the order used by the top-k index bound.
#[derive(Clone, Debug)]
pub struct RankedCoins {
    values_desc: Vec<u64>,
}

impl RankedCoins {
    pub fn rank(coins: &CoinSet) -> RankedCoins {
        let mut values_desc = coins.values().to_vec();
        values_desc.reverse();
        RankedCoins { values_desc }
    }

    pub fn values_desc(&self) -> &[u64] {
        &self.values_desc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_sorts_dedupes_prunes() {
        let c = CoinSet::normalize(&[5, 1, 5, 25, 10], 12).unwrap();
        assert_eq!(c.values(), &[1, 5, 10]);
        assert_eq!(c.max_value(), 10);
        assert_eq!(c.sum(), 16);
    }

    #[test]
    fn normalize_rejects_bad_values() {
        assert_eq!(
            CoinSet::normalize(&[3, 0, 5], 10).unwrap_err(),
            Error::NonPositiveValue { position: 1, value: 0 }
        );
        assert_eq!(
            CoinSet::normalize(&[3, -2], 10).unwrap_err(),
            Error::NonPositiveValue { position: 1, value: -2 }
        );
        assert_eq!(CoinSet::normalize(&[], 10).unwrap_err(), Error::EmptyInput);
        assert_eq!(
            CoinSet::normalize(&[3], -1).unwrap_err(),
            Error::NegativeTarget(-1)
        );
    }

    #[test]
    fn normalize_can_empty_out() {
        let c = CoinSet::normalize(&[9, 12], 5).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.max_value(), 0);
    }

    #[test]
    fn up_to_is_a_prefix() {
        let c = CoinSet::new([2, 7, 11, 13]).unwrap();
        assert_eq!(c.up_to(11), &[2, 7, 11]);
        assert_eq!(c.up_to(1), &[] as &[u64]);
        assert_eq!(c.up_to(100), c.values());
    }

    #[test]
    fn gcd_of_values() {
        assert_eq!(CoinSet::new([6, 10]).unwrap().gcd(), 2);
        assert_eq!(CoinSet::new([3, 5]).unwrap().gcd(), 1);
        assert_eq!(CoinSet::new([]).unwrap().gcd(), 0);
    }

    #[test]
    fn knapsack_duplicate_weights_keep_best_profit() {
        let inst = KnapsackInstance::normalize(&[(3, 5), (3, 9), (2, 3), (9, 1)], 7).unwrap();
        assert_eq!(
            inst.items(),
            &[
                KnapsackItem { weight: 2, profit: 3 },
                KnapsackItem { weight: 3, profit: 9 },
            ]
        );
    }

    #[test]
    fn ratio_rank_cross_multiplies_exactly() {
        // 5/3 > 3/2 even though both round to the same float32-ish value
        // family; also exercise the profit and weight tie-breaks.
        let inst = KnapsackInstance::new([(2, 3), (3, 5), (4, 6), (6, 9)]).unwrap();
        let ranked = RatioRankedItems::rank(inst.items());
        let order: Vec<u64> = ranked.items().iter().map(|it| it.weight).collect();
        // densities: 5/3 > 3/2 = 6/4 = 9/6; ties resolved by higher profit
        // first, then lighter weight.
        assert_eq!(order, vec![3, 6, 4, 2]);
    }

    #[test]
    fn ranked_coins_descend() {
        let c = CoinSet::new([4, 9, 2]).unwrap();
        assert_eq!(RankedCoins::rank(&c).values_desc(), &[9, 4, 2]);
    }
}
