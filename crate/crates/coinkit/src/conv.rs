//! Exact convolution kernels.
//!
//! Boolean convolution is computed as an exact integer convolution over the
//! prime field Z/998244353 followed by thresholding at > 0. The prime
//! 998244353 = 119 * 2^23 + 1 admits radix-2 transforms up to length 2^23
//! with primitive root 3. Coefficients of a 0/1 convolution are bounded by
//! the shorter operand length, which is far below the modulus for every
//! supported size, so no coefficient can wrap and the threshold is exact.
//!
//! Binary (min,+)-convolution `(a * b)[j] = min_i a[i] + b[j-i]` with
//! `b[k] in {1, INF}` reduces to boolean convolutions: the finite entries of
//! `a` are ranked by value, split into ceil(sqrt(t')) buckets of consecutive
//! ranks (t' = number of requested outputs), and each bucket indicator is
//! convolved with the finite-support mask of `b`. For an output index the
//! smallest bucket with a set bit contains the minimum; a scan of that
//! bucket in rank order finds it.

use std::collections::BTreeSet;

use crate::cost::{BinaryCostArray, BoolArray, Cost, CostArray};
use crate::error::{Error, Result};

pub(crate) const NTT_PRIME: u64 = 998_244_353;
const NTT_ROOT: u64 = 3;
pub(crate) const NTT_MAX_LEN: usize = 1 << 23;

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= NTT_PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % NTT_PRIME;
        }
        base = base * base % NTT_PRIME;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, NTT_PRIME - 2)
}

/// In-place radix-2 transform. `a.len()` must be a power of two <= 2^23.
fn ntt(a: &mut [u64], invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two() && n <= NTT_MAX_LEN);
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2usize;
    while len <= n {
        let mut w0 = pow_mod(NTT_ROOT, (NTT_PRIME - 1) / len as u64);
        if invert {
            w0 = inv_mod(w0);
        }
        let half = len / 2;
        for start in (0..n).step_by(len) {
            let mut w = 1u64;
            for k in start..start + half {
                let x = a[k];
                let y = a[k + half] * w % NTT_PRIME;
                a[k] = if x + y >= NTT_PRIME { x + y - NTT_PRIME } else { x + y };
                a[k + half] = if x >= y { x - y } else { x + NTT_PRIME - y };
                w = w * w0 % NTT_PRIME;
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = inv_mod(n as u64);
        for x in a.iter_mut() {
            *x = *x * n_inv % NTT_PRIME;
        }
    }
}

/// Loop-iteration estimate of one transform; the unit of all work counters.
pub(crate) fn transform_work(size: usize) -> u64 {
    size as u64 * size.trailing_zeros().max(1) as u64
}

pub(crate) fn conv_size(out_len: usize) -> usize {
    out_len.next_power_of_two()
}

/// An operand carried in the frequency domain so it can be reused across
/// several convolutions of the same size.
pub(crate) struct FreqVec {
    pub size: usize,
    data: Vec<u64>,
}

pub(crate) fn bool_to_freq(bits: &[bool], size: usize, work: &mut u64) -> FreqVec {
    debug_assert!(bits.len() <= size);
    let mut data = vec![0u64; size];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            data[i] = 1;
        }
    }
    ntt(&mut data, false);
    *work += transform_work(size);
    FreqVec { size, data }
}

pub(crate) fn mul_freq_into(acc: &mut FreqVec, other: &FreqVec) {
    debug_assert_eq!(acc.size, other.size);
    for (x, y) in acc.data.iter_mut().zip(&other.data) {
        *x = *x * *y % NTT_PRIME;
    }
}

pub(crate) fn square_freq(f: &mut FreqVec) {
    for x in f.data.iter_mut() {
        *x = *x * *x % NTT_PRIME;
    }
}

/// Inverse transform, thresholded at > 0, truncated to `out_len` bits.
pub(crate) fn freq_to_bits(mut f: FreqVec, out_len: usize, work: &mut u64) -> Vec<bool> {
    ntt(&mut f.data, true);
    *work += transform_work(f.size);
    f.data.truncate(out_len);
    f.data.iter().map(|&c| c > 0).collect()
}

/// Exact boolean convolution of bit slices, truncated to `out_len` entries.
///
/// Requires `a` and `b` nonempty and the full product length within the
/// transform limit; coefficient exactness then holds (bound min(|a|,|b|)).
pub(crate) fn conv_bool_counted(
    a: &[bool],
    b: &[bool],
    out_len: usize,
    work: &mut u64,
) -> Vec<bool> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    let full = a.len() + b.len() - 1;
    assert!(
        full <= NTT_MAX_LEN,
        "convolution length {full} exceeds transform limit {NTT_MAX_LEN}"
    );
    let out_len = out_len.min(full);
    let size = conv_size(full);
    let mut fa = bool_to_freq(a, size, work);
    if std::ptr::eq(a, b) {
        square_freq(&mut fa);
    } else {
        let fb = bool_to_freq(b, size, work);
        mul_freq_into(&mut fa, &fb);
    }
    freq_to_bits(fa, out_len, work)
}

/// Boolean convolution: `out[k] = OR over i+j=k of a[i] AND b[j]`,
/// truncated to at most `truncate_len` entries.
pub fn boolean_convolve(a: &BoolArray, b: &BoolArray, truncate_len: usize) -> Result<BoolArray> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if truncate_len == 0 {
        return Err(Error::ZeroTruncation);
    }
    let mut work = 0u64;
    Ok(BoolArray::new(conv_bool_counted(
        a.as_slice(),
        b.as_slice(),
        truncate_len,
        &mut work,
    )))
}

/// Shared core of the two binary (min,+)-convolutions. Returns the values
/// for `wanted` (strictly increasing, in range), aligned with it.
pub(crate) fn minplus_selected_counted(
    a: &[Cost],
    b: &BinaryCostArray,
    wanted: &[usize],
    work: &mut u64,
) -> Result<Vec<Cost>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let la = a.len();
    let lb = b.len();
    let out_len = la + lb - 1;
    for &j in wanted {
        if j >= out_len {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: out_len,
            });
        }
    }
    if wanted.is_empty() {
        return Ok(Vec::new());
    }

    // Rank the finite entries of `a` by (value, index); ties are broken by
    // index so the bucketing is a function of the value multiset only.
    let mut ranked: Vec<usize> = (0..la).filter(|&i| a[i].is_finite()).collect();
    ranked.sort_by_key(|&i| (a[i], i));
    let bmask = b.finite_mask();
    if ranked.is_empty() || bmask.iter().all(|m| !m) {
        return Ok(vec![Cost::INF; wanted.len()]);
    }

    let tprime = wanted.len();
    let buckets_wanted = (tprime as f64).sqrt().ceil() as usize;
    let bucket_size = ranked.len().div_ceil(buckets_wanted.max(1)).max(1);

    let full = out_len;
    assert!(
        full <= NTT_MAX_LEN,
        "convolution length {full} exceeds transform limit {NTT_MAX_LEN}"
    );
    let size = conv_size(full);
    let fb = bool_to_freq(bmask.as_slice(), size, work);

    let mut bucket_bits: Vec<Vec<bool>> = Vec::with_capacity(ranked.len().div_ceil(bucket_size));
    for chunk in ranked.chunks(bucket_size) {
        let mut mask = vec![false; la];
        for &i in chunk {
            mask[i] = true;
        }
        let mut fa = bool_to_freq(&mask, size, work);
        mul_freq_into(&mut fa, &fb);
        bucket_bits.push(freq_to_bits(fa, out_len, work));
    }

    let mut out = Vec::with_capacity(tprime);
    for &j in wanted {
        let mut best = Cost::INF;
        for (bi, bits) in bucket_bits.iter().enumerate() {
            *work += 1;
            if !bits[j] {
                continue;
            }
            for &i in &ranked[bi * bucket_size..((bi + 1) * bucket_size).min(ranked.len())] {
                *work += 1;
                if i <= j && j - i < lb && bmask[j - i] {
                    best = a[i] + Cost::ONE;
                    break;
                }
            }
            debug_assert!(best.is_finite(), "bucket bit set but no witness at {j}");
            break;
        }
        out.push(best);
    }
    Ok(out)
}

/// Full binary (min,+)-convolution: all `len(a) + len(b) - 1` outputs.
pub fn minplus_binary_convolve(a: &CostArray, b: &BinaryCostArray) -> Result<CostArray> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let wanted: Vec<usize> = (0..a.len() + b.len() - 1).collect();
    let mut work = 0u64;
    let vals = minplus_selected_counted(a.as_slice(), b, &wanted, &mut work)?;
    Ok(CostArray::new(vals))
}

/// Binary (min,+)-convolution evaluated only at `wanted` output indices.
/// Duplicates in `wanted` are collapsed; the result maps index to value.
pub fn minplus_binary_convolve_selected(
    a: &CostArray,
    b: &BinaryCostArray,
    wanted: &[usize],
) -> Result<std::collections::BTreeMap<usize, Cost>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let uniq: Vec<usize> = wanted.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut work = 0u64;
    let vals = minplus_selected_counted(a.as_slice(), b, &uniq, &mut work)?;
    Ok(uniq.into_iter().zip(vals).collect())
}
