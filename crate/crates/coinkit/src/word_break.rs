//! Minimum word break: the fewest dictionary words whose concatenation
//! equals each prefix of a text.
//!
//! The fast solver groups words by length scale. For each power of two `q`
//! it builds a trie over the *reversed* words of length in `[q, 2q-1]` and
//! answers jump queries: given final costs `S[x-2q+1..=x]`, produce the
//! contribution of this scale to `S[x+1..=x+q]` in one pass. Candidate
//! predecessors for position `i` are exactly the marked trie nodes (one per
//! word) on the root path spelled by `text[..i]` read backwards. A path
//! decomposition of the marked nodes caps the per-position walk length and
//! lets whole root segments be charged to one binary (min,+)-convolution.

use std::collections::{BTreeMap, BTreeSet};

use crate::conv::minplus_selected_counted;
use crate::cost::{BinaryCostArray, Cost, CostArray};
use crate::error::{Error, Result};
use crate::top_k::icbrt_ceil;

/// Work budget for [`naive_word_break`], in elementary comparisons.
pub const NAIVE_BREAK_BUDGET: u64 = 10_000_000;

/// A text plus a dictionary of nonempty, deduplicated words.
#[derive(Debug, Clone)]
pub struct WordBreakInstance {
    text: Vec<u8>,
    words: Vec<Vec<u8>>,
    total_word_len: u64,
}

impl WordBreakInstance {
    /// Builds an instance, rejecting empty words and dropping duplicates.
    pub fn new<T, W, I>(text: T, words: I) -> Result<WordBreakInstance>
    where
        T: Into<Vec<u8>>,
        W: Into<Vec<u8>>,
        I: IntoIterator<Item = W>,
    {
        let mut ws: Vec<Vec<u8>> = Vec::new();
        for (i, w) in words.into_iter().enumerate() {
            let w = w.into();
            if w.is_empty() {
                return Err(Error::EmptyWord(i));
            }
            ws.push(w);
        }
        ws.sort();
        ws.dedup();
        let total_word_len = ws.iter().map(|w| w.len() as u64).sum();
        Ok(WordBreakInstance {
            text: text.into(),
            words: ws,
            total_word_len,
        })
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    /// Sum of the word lengths after deduplication.
    pub fn total_word_len(&self) -> u64 {
        self.total_word_len
    }
}

#[derive(Debug)]
struct TrieNode {
    children: BTreeMap<u8, usize>,
    parent: usize,
    depth: usize,
    marked: bool,
    /// Deepest marked ancestor-or-self; `None` above the highest mark.
    nearest_marked: Option<usize>,
    /// Set on the topmost marked node of each decomposition path.
    path_top: Option<usize>,
    /// Which decomposition path this marked node was assigned to.
    path_member: Option<usize>,
}

impl TrieNode {
    fn new(parent: usize, depth: usize) -> TrieNode {
        TrieNode {
            children: BTreeMap::new(),
            parent,
            depth,
            marked: false,
            nearest_marked: None,
            path_top: None,
            path_member: None,
        }
    }
}

/// Mask of marked depths on the root path down to one decomposition top.
#[derive(Debug)]
struct PathMask {
    top: usize,
    mask: BinaryCostArray,
}

/// Trie over the reversed dictionary words of length in `[q, 2q-1]`, with
/// the marked nodes grouped into vertical paths of `lambda` marks each.
#[derive(Debug)]
pub struct ScaleTrie {
    scale: usize,
    lambda: usize,
    nodes: Vec<TrieNode>,
    paths: Vec<PathMask>,
    marked_count: usize,
}

/// Structural measurements of a [`ScaleTrie`], for validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrieAudit {
    pub marked_nodes: usize,
    pub path_count: usize,
    /// Longest marked-ancestor walk from any node before it either reaches a
    /// path top or runs out of marks. Bounded by `2 * lambda`.
    pub max_walk_steps: usize,
    pub paths_node_disjoint: bool,
    pub paths_exactly_lambda: bool,
}

/// Builds the trie for scale `q`: reversed words of length in `[q, 2q-1]`,
/// one marked node per word at depth equal to the word length, and a maximal
/// set of node-disjoint vertical paths holding exactly `lambda` marks each.
pub fn build_scale_trie(words: &[Vec<u8>], q: usize, lambda: usize) -> Result<ScaleTrie> {
    if q == 0 || !q.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(q as u64));
    }
    if lambda == 0 {
        return Err(Error::ZeroPathQuota);
    }
    let mut nodes = vec![TrieNode::new(usize::MAX, 0)];
    let mut marked_count = 0usize;
    for w in words {
        if w.len() < q || w.len() > 2 * q - 1 {
            continue;
        }
        let mut cur = 0usize;
        for &ch in w.iter().rev() {
            cur = match nodes[cur].children.get(&ch) {
                Some(&c) => c,
                None => {
                    let id = nodes.len();
                    let depth = nodes[cur].depth + 1;
                    nodes.push(TrieNode::new(cur, depth));
                    nodes[cur].children.insert(ch, id);
                    id
                }
            };
        }
        if !nodes[cur].marked {
            nodes[cur].marked = true;
            marked_count += 1;
        }
    }

    // One depth-first sweep fixes `nearest_marked` and cuts the paths: the
    // pending stack holds the unassigned marks on the current root path, and
    // every time it reaches `lambda` entries they become one vertical path.
    // The stack never exceeds `lambda - 1` entries between cuts, which is
    // what caps the later query walks at `2 * lambda` marks.
    let mut paths: Vec<PathMask> = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    let mut events: Vec<(usize, bool)> = vec![(0, false)];
    while let Some((v, exited)) = events.pop() {
        if exited {
            if pending.last() == Some(&v) {
                pending.pop();
            }
            continue;
        }
        let nm = if nodes[v].marked {
            Some(v)
        } else if v == 0 {
            None
        } else {
            nodes[nodes[v].parent].nearest_marked
        };
        nodes[v].nearest_marked = nm;
        if nodes[v].marked {
            pending.push(v);
            if pending.len() == lambda {
                let id = paths.len();
                let top = pending[0];
                for &u in &pending {
                    nodes[u].path_member = Some(id);
                }
                nodes[top].path_top = Some(id);
                paths.push(PathMask {
                    top,
                    mask: root_path_mask(&nodes, top),
                });
                pending.clear();
            }
        }
        events.push((v, true));
        for &c in nodes[v].children.values().rev() {
            events.push((c, false));
        }
    }

    Ok(ScaleTrie {
        scale: q,
        lambda,
        nodes,
        paths,
        marked_count,
    })
}

/// Entry `d` is 1 exactly when the depth-`d` node on the root path to `top`
/// is marked. Covers every candidate at or above `top` in one convolution.
fn root_path_mask(nodes: &[TrieNode], top: usize) -> BinaryCostArray {
    let mut support = Vec::new();
    let mut cur = Some(top);
    while let Some(u) = cur {
        support.push(nodes[u].depth);
        cur = if u == 0 {
            None
        } else {
            nodes[nodes[u].parent].nearest_marked
        };
    }
    BinaryCostArray::from_support(nodes[top].depth + 1, 0, support)
}

impl ScaleTrie {
    pub fn scale(&self) -> usize {
        self.scale
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn marked_count(&self) -> usize {
        self.marked_count
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Re-measures the decomposition invariants from scratch.
    pub fn audit(&self) -> TrieAudit {
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (id, node) in self.nodes.iter().enumerate() {
            if let Some(p) = node.path_member {
                members.entry(p).or_default().push(id);
            }
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut disjoint = true;
        let mut exact = members.len() == self.paths.len();
        for (p, path) in self.paths.iter().enumerate() {
            let ms = members.remove(&p).unwrap_or_default();
            if ms.len() != self.lambda || !ms.contains(&path.top) {
                exact = false;
                continue;
            }
            // The path's node set is the vertical segment from its deepest
            // member up to its top; every mark inside must be a member.
            let bottom = *ms
                .iter()
                .max_by_key(|&&u| self.nodes[u].depth)
                .expect("lambda >= 1");
            let mut cur = bottom;
            let mut segment = Vec::new();
            let mut marks_inside = 0usize;
            loop {
                segment.push(cur);
                if self.nodes[cur].marked {
                    marks_inside += 1;
                    if self.nodes[cur].path_member != Some(p) {
                        exact = false;
                    }
                }
                if cur == path.top {
                    break;
                }
                if cur == 0 {
                    exact = false;
                    break;
                }
                cur = self.nodes[cur].parent;
            }
            if marks_inside != self.lambda {
                exact = false;
            }
            for u in segment {
                if !seen.insert(u) {
                    disjoint = false;
                }
            }
        }
        let mut max_walk = 0usize;
        for v in 0..self.nodes.len() {
            let mut steps = 0usize;
            let mut cur = self.nodes[v].nearest_marked;
            while let Some(u) = cur {
                steps += 1;
                if self.nodes[u].path_top.is_some() {
                    break;
                }
                cur = if u == 0 {
                    None
                } else {
                    self.nodes[self.nodes[u].parent].nearest_marked
                };
            }
            max_walk = max_walk.max(steps);
        }
        TrieAudit {
            marked_nodes: self.marked_count,
            path_count: self.paths.len(),
            max_walk_steps: max_walk,
            paths_node_disjoint: disjoint,
            paths_exactly_lambda: exact,
        }
    }
}

/// One scale's contribution to `S[x+1..=x+q]`, given the final entries
/// `s_in = S[max(0, x+1-2q)..=x]`. Output slot `k` holds the best cost for
/// prefix `x+1+k` using only words of this trie's scale as the last word.
pub fn jump_query(trie: &ScaleTrie, text: &[u8], x: usize, s_in: &[Cost]) -> Result<Vec<Cost>> {
    let mut work = 0u64;
    jump_query_counted(trie, text, x, s_in, &mut work)
}

/// [`jump_query`] plus an accounting of descent steps, walk steps and
/// convolution work.
pub fn jump_query_counted(
    trie: &ScaleTrie,
    text: &[u8],
    x: usize,
    s_in: &[Cost],
    work: &mut u64,
) -> Result<Vec<Cost>> {
    let n = text.len();
    if x >= n {
        return Err(Error::IndexOutOfRange { index: x, len: n });
    }
    let q = trie.scale;
    let wlo = (x + 1).saturating_sub(2 * q);
    let need = x - wlo + 1;
    if s_in.len() != need {
        return Err(Error::TooFewValues {
            need,
            got: s_in.len(),
        });
    }
    let count = q.min(n - x);
    let mut out = vec![Cost::INF; count];
    let mut batched: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in x + 1..=x + count {
        // Deepest node spelling a suffix of text[..i]; its marked ancestors
        // are exactly the scale-q words that can end at position i.
        let mut node = 0usize;
        for off in 0..i {
            match trie.nodes[node].children.get(&text[i - 1 - off]) {
                Some(&c) => {
                    node = c;
                    *work += 1;
                }
                None => break,
            }
        }
        let mut cur = trie.nodes[node].nearest_marked;
        while let Some(u) = cur {
            *work += 1;
            if trie.nodes[u].path_top.is_some() {
                // The mask for this top covers it and everything above; the
                // convolution finishes the climb in one batched evaluation.
                let id = trie.nodes[u].path_top.expect("checked");
                batched.entry(id).or_default().push(i);
                break;
            }
            let d = trie.nodes[u].depth;
            let cand = s_in[i - d - wlo] + 1u64;
            if cand < out[i - x - 1] {
                out[i - x - 1] = cand;
            }
            cur = if u == 0 {
                None
            } else {
                trie.nodes[trie.nodes[u].parent].nearest_marked
            };
        }
    }
    for (id, positions) in batched {
        let mask = &trie.paths[id].mask;
        let wanted: Vec<usize> = positions.iter().map(|&i| i - wlo).collect();
        let vals = minplus_selected_counted(s_in, mask, &wanted, work)?;
        for (&i, v) in positions.iter().zip(vals) {
            if v < out[i - x - 1] {
                out[i - x - 1] = v;
            }
        }
    }
    Ok(out)
}

/// Minimum number of dictionary words concatenating to each prefix of the
/// text; infinity where no split exists. Entry 0 is 0.
pub fn min_word_break(inst: &WordBreakInstance) -> Result<CostArray> {
    Ok(min_word_break_counted(inst)?.0)
}

/// [`min_word_break`] plus the total work counter.
pub fn min_word_break_counted(inst: &WordBreakInstance) -> Result<(CostArray, u64)> {
    let text = inst.text();
    let n = text.len();
    let mut work = 0u64;
    let mut s = CostArray::infeasible_table(n + 1);
    let lambda = (icbrt_ceil(inst.total_word_len() as u128) as usize).max(1);
    let mut tries = Vec::new();
    let mut q = 1usize;
    while q <= n {
        let trie = build_scale_trie(inst.words(), q, lambda)?;
        work += trie.node_count() as u64;
        tries.push(trie);
        q *= 2;
    }
    // Sweep left to right. The query at x only reads entries up to x, which
    // are final: every word ending in (x, x+q] is applied by the unique
    // aligned query at q*floor((end-1)/q) <= x, so later writes never land
    // at or before the current x.
    for x in 0..n {
        for trie in &tries {
            let q = trie.scale;
            if x % q != 0 {
                continue;
            }
            let wlo = (x + 1).saturating_sub(2 * q);
            let contribution =
                jump_query_counted(trie, text, x, &s.as_slice()[wlo..=x], &mut work)?;
            for (k, v) in contribution.into_iter().enumerate() {
                if v < s[x + 1 + k] {
                    s[x + 1 + k] = v;
                }
            }
        }
    }
    Ok((s, work))
}

/// Direct dynamic program with per-word byte comparisons. Refuses instances
/// whose text length times total dictionary length exceeds
/// [`NAIVE_BREAK_BUDGET`].
pub fn naive_word_break(inst: &WordBreakInstance) -> Result<CostArray> {
    let n = inst.text().len();
    let spend = (n as u64).saturating_mul(inst.total_word_len());
    if spend > NAIVE_BREAK_BUDGET {
        return Err(Error::OracleBudgetExceeded {
            work: spend,
            budget: NAIVE_BREAK_BUDGET,
        });
    }
    let text = inst.text();
    let mut s = CostArray::infeasible_table(n + 1);
    for i in 1..=n {
        for w in inst.words() {
            let l = w.len();
            if l > i || text[i - l..i] != w[..] {
                continue;
            }
            let cand = s[i - l] + 1u64;
            if cand < s[i] {
                s[i] = cand;
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::dp_all_targets;
    use crate::instance::CoinSet;

    fn inst(text: &str, words: &[&str]) -> WordBreakInstance {
        WordBreakInstance::new(text, words.iter().copied()).unwrap()
    }

    fn costs(s: &CostArray) -> Vec<i64> {
        s.iter().map(|c| c.to_signed()).collect()
    }

    struct XorShift(u64);

    impl XorShift {
        fn next(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }

        fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }

    #[test]
    fn instance_rejects_empty_words_and_dedups() {
        let err = WordBreakInstance::new("ab", vec!["a", "", "b"]).unwrap_err();
        assert_eq!(err, Error::EmptyWord(1));
        let ok = inst("ab", &["ab", "ab", "a"]);
        assert_eq!(ok.words().len(), 2);
        assert_eq!(ok.total_word_len(), 3);
    }

    #[test]
    fn naive_frozen_examples() {
        let s = naive_word_break(&inst("aaab", &["a", "aa", "ab"])).unwrap();
        assert_eq!(costs(&s), vec![0, 1, 1, 2, 2]);
        let s = naive_word_break(&inst("abc", &["ab"])).unwrap();
        assert_eq!(costs(&s), vec![0, -1, 1, -1]);
        let s = naive_word_break(&inst("", &["a"])).unwrap();
        assert_eq!(costs(&s), vec![0]);
        let unary = inst(
            "aaaaaaaaaaaa",
            &["a", "aaaa", "aaaaaaaaa"],
        );
        let s = naive_word_break(&unary).unwrap();
        assert_eq!(s[12], Cost::finite(3));
    }

    #[test]
    fn naive_budget_is_enforced() {
        let long_word = vec![b'a'; 2600];
        let wb = WordBreakInstance::new(vec![b'a'; 4000], vec![long_word]).unwrap();
        assert_eq!(
            naive_word_break(&wb).unwrap_err(),
            Error::OracleBudgetExceeded {
                work: 4000 * 2600,
                budget: NAIVE_BREAK_BUDGET
            }
        );
    }

    #[test]
    fn scale_trie_frozen_shapes() {
        let words = vec![b"ab".to_vec(), b"ba".to_vec()];
        let trie = build_scale_trie(&words, 2, 1).unwrap();
        assert_eq!(trie.marked_count(), 2);
        assert_eq!(trie.path_count(), 2);

        // Word outside [q, 2q-1] is ignored entirely.
        let trie = build_scale_trie(&[b"a".to_vec()], 2, 1).unwrap();
        assert_eq!(trie.marked_count(), 0);
        assert_eq!(trie.node_count(), 1);

        // Quota larger than the number of marks leaves no paths.
        let trie = build_scale_trie(&words, 2, 3).unwrap();
        assert_eq!(trie.marked_count(), 2);
        assert_eq!(trie.path_count(), 0);

        assert_eq!(
            build_scale_trie(&words, 3, 1).unwrap_err(),
            Error::NotPowerOfTwo(3)
        );
        assert_eq!(
            build_scale_trie(&words, 2, 0).unwrap_err(),
            Error::ZeroPathQuota
        );
    }

    #[test]
    fn jump_query_isolates_one_scale() {
        // Scale 2 only sees "ab"; "abab" belongs to scale 4. The position-4
        // entry through this trie alone is S[2] + 1 = 2, and the scale-4
        // query at x = 0 is what brings the merged table down to 1.
        let wb = inst("ababab", &["ab", "abab"]);
        let trie = build_scale_trie(wb.words(), 2, 2).unwrap();
        let s_in = [Cost::ZERO, Cost::INF, Cost::finite(1)];
        let out = jump_query(&trie, wb.text(), 2, &s_in).unwrap();
        assert_eq!(out, vec![Cost::INF, Cost::finite(2)]);

        let trie4 = build_scale_trie(wb.words(), 4, 2).unwrap();
        let out = jump_query(&trie4, wb.text(), 0, &[Cost::ZERO]).unwrap();
        assert_eq!(out, vec![Cost::INF, Cost::INF, Cost::INF, Cost::finite(1)]);

        let unary = inst("aaa", &["a"]);
        let trie1 = build_scale_trie(unary.words(), 1, 1).unwrap();
        let out = jump_query(&trie1, unary.text(), 0, &[Cost::ZERO]).unwrap();
        assert_eq!(out, vec![Cost::finite(1)]);
    }

    #[test]
    fn jump_query_validates_inputs() {
        let wb = inst("abab", &["ab"]);
        let trie = build_scale_trie(wb.words(), 2, 1).unwrap();
        assert_eq!(
            jump_query(&trie, wb.text(), 4, &[Cost::ZERO]).unwrap_err(),
            Error::IndexOutOfRange { index: 4, len: 4 }
        );
        assert_eq!(
            jump_query(&trie, wb.text(), 2, &[Cost::ZERO]).unwrap_err(),
            Error::TooFewValues { need: 3, got: 1 }
        );
    }

    #[test]
    fn min_break_frozen_examples() {
        let s = min_word_break(&inst("ababab", &["ab", "abab"])).unwrap();
        assert_eq!(costs(&s), vec![0, -1, 1, -1, 1, -1, 2]);
        let s = min_word_break(&inst("aaab", &["a", "aa", "ab"])).unwrap();
        assert_eq!(costs(&s), vec![0, 1, 1, 2, 2]);
        let s = min_word_break(&inst("abc", &["ab"])).unwrap();
        assert_eq!(costs(&s), vec![0, -1, 1, -1]);
        let s = min_word_break(&inst("", &["a"])).unwrap();
        assert_eq!(costs(&s), vec![0]);
    }

    #[test]
    fn min_break_matches_naive_on_random_instances() {
        let mut rng = XorShift(0x5eed_b6ea_4c8d_3b21);
        for round in 0..150 {
            let sigma = 2 + rng.below(2) as usize;
            let n = 1 + rng.below(60) as usize;
            let text: Vec<u8> = (0..n).map(|_| b'a' + rng.below(sigma as u64) as u8).collect();
            let wordc = 3 + rng.below(6) as usize;
            let words: Vec<Vec<u8>> = (0..wordc)
                .map(|_| {
                    let l = 1 + rng.below(7) as usize;
                    (0..l).map(|_| b'a' + rng.below(sigma as u64) as u8).collect()
                })
                .collect();
            let wb = WordBreakInstance::new(text, words).unwrap();
            let fast = min_word_break(&wb).unwrap();
            let slow = naive_word_break(&wb).unwrap();
            assert_eq!(costs(&fast), costs(&slow), "round {round}");
        }
    }

    #[test]
    fn unary_instances_match_coin_tables() {
        for (values, t) in [
            (vec![1u64, 4, 9], 12usize),
            (vec![3, 5], 17),
            (vec![2, 7], 25),
        ] {
            let text = vec![b'a'; t];
            let words: Vec<Vec<u8>> = values.iter().map(|&v| vec![b'a'; v as usize]).collect();
            let wb = WordBreakInstance::new(text, words).unwrap();
            let broken = min_word_break(&wb).unwrap();
            let coins = CoinSet::new(values).unwrap();
            let table = dp_all_targets(&coins, t as u64);
            assert_eq!(costs(&broken), costs(&table));
        }
    }

    #[test]
    fn audits_hold_on_random_dictionaries() {
        let mut rng = XorShift(0xa11d_17ab_7e57_0001);
        for _ in 0..40 {
            let wordc = 1 + rng.below(40) as usize;
            let words: Vec<Vec<u8>> = (0..wordc)
                .map(|_| {
                    let l = 1 + rng.below(24) as usize;
                    (0..l).map(|_| b'a' + rng.below(2) as u8).collect()
                })
                .collect();
            let m: usize = words.iter().map(|w| w.len()).sum();
            let lambda = (icbrt_ceil(m as u128) as usize).max(1);
            let mut q = 1usize;
            while q <= 32 {
                let trie = build_scale_trie(&words, q, lambda).unwrap();
                let audit = trie.audit();
                assert!(audit.paths_node_disjoint);
                assert!(audit.paths_exactly_lambda);
                assert!(audit.max_walk_steps <= 2 * lambda);
                assert!(audit.path_count <= audit.marked_nodes / lambda.max(1));
                assert!(audit.path_count <= m / (q * lambda).max(1));
                q *= 2;
            }
        }
    }

    #[test]
    fn deep_unary_decomposition_is_tight() {
        // 40 nested unary words force a single spine with many marks; the
        // decomposition must tile it and keep walks within twice the quota.
        let words: Vec<Vec<u8>> = (1..=40).map(|l| vec![b'a'; l]).collect();
        for (q, lambda) in [(1usize, 3usize), (2, 2), (4, 3), (8, 2), (16, 4), (32, 2)] {
            let trie = build_scale_trie(&words, q, lambda).unwrap();
            let audit = trie.audit();
            assert!(audit.paths_node_disjoint);
            assert!(audit.paths_exactly_lambda);
            assert!(audit.max_walk_steps <= 2 * lambda, "q={q} lambda={lambda}");
            assert_eq!(audit.path_count, audit.marked_nodes / lambda);
        }
    }
}
