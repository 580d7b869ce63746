//! Saturating count-or-cost values and the array types shared by the solvers.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// A nonnegative coin count (or word count) that may be infinite.
///
/// Infinity marks an infeasible target. Addition saturates, so
/// `INF + x = INF` without branching at every call site.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(u64);

impl Cost {
    pub const INF: Cost = Cost(u64::MAX);
    pub const ZERO: Cost = Cost(0);
    pub const ONE: Cost = Cost(1);

    pub fn finite(v: u64) -> Cost {
        debug_assert!(v < u64::MAX, "finite cost overflow");
        Cost(v)
    }

    pub fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    pub fn value(self) -> Option<u64> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }

    /// Rendering used by the CLI and the text round-trip: infeasible is -1.
    pub fn to_signed(self) -> i64 {
        if self.is_finite() {
            self.0 as i64
        } else {
            -1
        }
    }

    pub fn from_signed(v: i64) -> Cost {
        if v < 0 {
            Cost::INF
        } else {
            Cost(v as u64)
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0.saturating_add(rhs.0))
    }
}

impl Add<u64> for Cost {
    type Output = Cost;

    fn add(self, rhs: u64) -> Cost {
        Cost(self.0.saturating_add(rhs))
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "INF")
        }
    }
}

/// Dense array of costs indexed by target value starting at 0.
#[derive(Clone, PartialEq, Eq)]
pub struct CostArray {
    entries: Vec<Cost>,
}

impl CostArray {
    pub fn new(entries: Vec<Cost>) -> CostArray {
        CostArray { entries }
    }

    /// All-infinite array of the given length with `[0] = 0`: the start
    /// state of every min-count table.
    pub fn infeasible_table(len: usize) -> CostArray {
        let mut entries = vec![Cost::INF; len];
        if !entries.is_empty() {
            entries[0] = Cost::ZERO;
        }
        CostArray { entries }
    }

    pub fn from_signed(values: &[i64]) -> CostArray {
        CostArray {
            entries: values.iter().map(|&v| Cost::from_signed(v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[Cost] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cost> {
        self.entries.iter()
    }
}

impl std::ops::Index<usize> for CostArray {
    type Output = Cost;

    fn index(&self, i: usize) -> &Cost {
        &self.entries[i]
    }
}

impl std::ops::IndexMut<usize> for CostArray {
    fn index_mut(&mut self, i: usize) -> &mut Cost {
        &mut self.entries[i]
    }
}

impl fmt::Debug for CostArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

impl From<Vec<Cost>> for CostArray {
    fn from(entries: Vec<Cost>) -> CostArray {
        CostArray { entries }
    }
}

/// Dense 0/1 indicator array (feasibility masks, convolution operands).
#[derive(Clone, PartialEq, Eq)]
pub struct BoolArray {
    bits: Vec<bool>,
}

impl BoolArray {
    pub fn new(bits: Vec<bool>) -> BoolArray {
        BoolArray { bits }
    }

    pub fn zeros(len: usize) -> BoolArray {
        BoolArray {
            bits: vec![false; len],
        }
    }

    /// Indicator of `support` within `[0, len)`; positions outside are ignored.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> BoolArray {
        let mut bits = vec![false; len];
        for p in support {
            if p < len {
                bits[p] = true;
            }
        }
        BoolArray { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, bool>> {
        self.bits.iter().copied()
    }
}

impl std::ops::Index<usize> for BoolArray {
    type Output = bool;

    fn index(&self, i: usize) -> &bool {
        &self.bits[i]
    }
}

impl fmt::Debug for BoolArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Cost array whose finite entries are all exactly 1.
///
/// This is the second operand of the binary (min,+)-convolutions: adding a
/// coin from a group, or one dictionary word, always costs 1. `offset` shifts
/// the logical indices: stored entry `k` describes logical index
/// `offset + k`. The convolution kernels operate on stored indices; callers
/// translate with `offset` when mapping results back to targets.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryCostArray {
    entries: Vec<Cost>,
    offset: u64,
}

impl BinaryCostArray {
    pub fn new(entries: Vec<Cost>, offset: u64) -> Result<BinaryCostArray> {
        for (i, e) in entries.iter().enumerate() {
            if *e != Cost::ONE && *e != Cost::INF {
                return Err(Error::NotBinaryCost(i));
            }
        }
        Ok(BinaryCostArray { entries, offset })
    }

    /// Array of length `len` with 1 exactly at the stored positions in
    /// `support` and infinity elsewhere.
    pub fn from_support(
        len: usize,
        offset: u64,
        support: impl IntoIterator<Item = usize>,
    ) -> BinaryCostArray {
        let mut entries = vec![Cost::INF; len];
        for p in support {
            if p < len {
                entries[p] = Cost::ONE;
            }
        }
        BinaryCostArray { entries, offset }
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[Cost] {
        &self.entries
    }

    /// Finite-support mask over stored indices.
    pub fn finite_mask(&self) -> BoolArray {
        BoolArray::new(self.entries.iter().map(|e| e.is_finite()).collect())
    }
}

impl std::ops::Index<usize> for BinaryCostArray {
    type Output = Cost;

    fn index(&self, i: usize) -> &Cost {
        &self.entries[i]
    }
}

impl fmt::Debug for BinaryCostArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryCostArray(offset={}, {:?})", self.offset, self.entries)
    }
}

/// Dense array of best profits indexed by capacity starting at 0.
///
/// Profits are plain integers: capacity 0 already admits the empty solution,
/// so every entry is finite and the array is nondecreasing.
#[derive(Clone, PartialEq, Eq)]
pub struct ProfitArray {
    entries: Vec<u64>,
}

impl ProfitArray {
    pub fn new(entries: Vec<u64>) -> ProfitArray {
        ProfitArray { entries }
    }

    pub fn zeros(len: usize) -> ProfitArray {
        ProfitArray {
            entries: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.entries
    }
}

impl std::ops::Index<usize> for ProfitArray {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.entries[i]
    }
}

impl std::ops::IndexMut<usize> for ProfitArray {
    fn index_mut(&mut self, i: usize) -> &mut u64 {
        &mut self.entries[i]
    }
}

impl fmt::Debug for ProfitArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}
