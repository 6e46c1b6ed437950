//! Set partitions of `[k]` and the cross-part product statistic `f(π,t)`.
//!
//! Partitions are enumerated through restricted-growth strings: `rgs[i]` is the
//! part holding element `i+1`, with `rgs[0] = 0` and each value at most one more
//! than the running maximum. Parts come out ordered by their minimum element.

use std::fmt;

use crate::arith::binomial_u128;
use crate::error::{Error, Result};

/// Largest `k` accepted by [`enumerate_partitions`].
pub const MAX_ENUMERATION_K: usize = 12;
/// Largest `k` accepted by [`check_f_monotonicity`].
pub const MAX_LEMMA_K: usize = 9;

/// A partition of `{1, …, k}` into nonempty parts, sorted by minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    parts: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Canonicalizes arbitrary parts; fails unless they partition `{1, …, k}`.
    pub fn new(parts: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        let mut seen = vec![false; k + 1];
        let mut parts: Vec<Vec<usize>> = parts;
        for part in parts.iter_mut() {
            if part.is_empty() {
                return Err(Error::param("set partition has an empty part"));
            }
            part.sort_unstable();
            for &e in part.iter() {
                if e == 0 || e > k {
                    return Err(Error::param(format!("element {e} outside 1..={k}")));
                }
                if seen[e] {
                    return Err(Error::param(format!("element {e} appears in two parts")));
                }
                seen[e] = true;
            }
        }
        if let Some(missing) = (1..=k).find(|&e| !seen[e]) {
            return Err(Error::param(format!("element {missing} is not covered")));
        }
        parts.sort_unstable_by_key(|p| p[0]);
        Ok(SetPartition { parts })
    }

    fn from_rgs(rgs: &[usize]) -> Self {
        let s = rgs.iter().max().map_or(0, |&x| x + 1);
        let mut parts = vec![Vec::new(); s];
        for (i, &b) in rgs.iter().enumerate() {
            parts[b].push(i + 1);
        }
        SetPartition { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn k(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// Every partition obtained by splitting one part into two nonempty pieces.
    pub fn refinements(&self) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let k = self.k();
        for (p, part) in self.parts.iter().enumerate() {
            let len = part.len();
            if len < 2 {
                continue;
            }
            // Masks that keep the first element on the left enumerate each split once.
            for mask in 0..(1u64 << (len - 1)) {
                let right_mask = mask << 1;
                if right_mask == 0 {
                    continue;
                }
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (i, &e) in part.iter().enumerate() {
                    if right_mask >> i & 1 == 1 {
                        right.push(e);
                    } else {
                        left.push(e);
                    }
                }
                let mut parts: Vec<Vec<usize>> = self
                    .parts
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != p)
                    .map(|(_, v)| v.clone())
                    .collect();
                parts.push(left);
                parts.push(right);
                out.push(SetPartition::new(parts, k).expect("split of a partition"));
            }
        }
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for part in &self.parts {
            let elems: Vec<String> = part.iter().map(|e| e.to_string()).collect();
            write!(f, "{{{}}}", elems.join(","))?;
        }
        Ok(())
    }
}

/// Calls `visit` on every restricted-growth string of length `k`.
fn for_each_rgs(k: usize, mut visit: impl FnMut(&[usize])) {
    if k == 0 {
        return;
    }
    let mut rgs = vec![0usize; k];
    // prefix_max[i] = max(rgs[0..=i])
    let mut prefix_max = vec![0usize; k];
    loop {
        visit(&rgs);
        let mut i = k - 1;
        loop {
            if i == 0 {
                return;
            }
            if rgs[i] <= prefix_max[i - 1] {
                rgs[i] += 1;
                prefix_max[i] = prefix_max[i - 1].max(rgs[i]);
                for j in i + 1..k {
                    rgs[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// All partitions of `[k]`, in restricted-growth-string order.
pub fn all_partitions(k: usize) -> Result<Vec<SetPartition>> {
    if k == 0 || k > MAX_ENUMERATION_K {
        return Err(Error::param(format!("need 1 <= k <= {MAX_ENUMERATION_K}, got {k}")));
    }
    let mut out = Vec::new();
    for_each_rgs(k, |rgs| out.push(SetPartition::from_rgs(rgs)));
    Ok(out)
}

/// All partitions of `[k]` into exactly `s` parts.
pub fn enumerate_partitions(k: usize, s: usize) -> Result<Vec<SetPartition>> {
    if s == 0 || s > k || k > MAX_ENUMERATION_K {
        return Err(Error::param(format!(
            "need 1 <= s <= k <= {MAX_ENUMERATION_K}, got k = {k}, s = {s}"
        )));
    }
    let mut out = Vec::new();
    for_each_rgs(k, |rgs| {
        if rgs.iter().max().map_or(0, |&x| x + 1) == s {
            out.push(SetPartition::from_rgs(rgs));
        }
    });
    Ok(out)
}

/// `f(π,t)`: sum over `t`-sets of parts of the product of their sizes, i.e. the
/// elementary symmetric polynomial `e_t` of the part sizes.
pub fn f_pi(pi: &SetPartition, t: usize) -> u64 {
    elementary_symmetric(&pi.part_sizes(), t)
}

pub(crate) fn elementary_symmetric(values: &[usize], t: usize) -> u64 {
    // e[j] after processing a prefix is e_j of that prefix.
    let mut e = vec![0u64; t + 1];
    e[0] = 1;
    for &v in values {
        for j in (1..=t).rev() {
            e[j] += e[j - 1] * v as u64;
        }
    }
    e[t]
}

/// `min { f(π,t) : |π| = s }` in closed form: one part of size `k-s+1`, the rest
/// singletons.
pub fn min_f_formula(k: usize, s: usize, t: usize) -> Result<u64> {
    if !(t <= s && s <= k) {
        return Err(Error::param(format!("need t <= s <= k, got k = {k}, s = {s}, t = {t}")));
    }
    let big = (k - s + 1) as u128;
    let v = big * binomial_u128((s - 1) as u64, (t - 1) as u64).expect("small binomial")
        + binomial_u128((s - 1) as u64, t as u64).expect("small binomial");
    Ok(v as u64)
}

/// Stirling number of the second kind `S(k, s)`.
pub fn stirling2(k: usize, s: usize) -> u128 {
    let mut row = vec![0u128; s + 1];
    row[0] = 1;
    for _ in 0..k {
        for j in (1..=s).rev() {
            row[j] = row[j].saturating_mul(j as u128).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[s]
}

pub fn bell(k: usize) -> u128 {
    (0..=k).map(|s| stirling2(k, s)).sum()
}

/// A smallest-`f` partition with `s` parts, found by enumeration.
pub fn argmin_f(k: usize, s: usize, t: usize) -> Result<(u64, SetPartition)> {
    enumerate_partitions(k, s)?
        .into_iter()
        .map(|p| (f_pi(&p, t), p))
        .min_by(|a, b| a.0.cmp(&b.0))
        .ok_or_else(|| Error::param("no partitions"))
}

/// Outcome of [`check_f_monotonicity`]; both lists are empty when the
/// statistic behaves as claimed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonotonicityReport {
    /// `(π, π')` with `π'` a one-step refinement and `f(π) > f(π')`.
    pub refinement_violations: Vec<(SetPartition, SetPartition)>,
    /// `(π, π')` where `π'` moves all but one element of a part of size >= 2
    /// into a part at least as large, and `f(π') > f(π)`.
    pub merge_violations: Vec<(SetPartition, SetPartition)>,
    pub refinement_pairs_checked: usize,
    pub merge_pairs_checked: usize,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.refinement_violations.is_empty() && self.merge_violations.is_empty()
    }
}

/// Exhaustively checks, over partitions of `[k]` with at least `t` parts, that
/// `f(·,t)` never decreases under refinement and never increases when all but
/// one element of a part (size >= 2) move into a part at least as large.
pub fn check_f_monotonicity(k: usize, t: usize) -> Result<MonotonicityReport> {
    check_monotonicity_with(k, t, |p, t| f_pi(p, t) as i128)
}

/// [`check_f_monotonicity`] for an arbitrary statistic.
pub fn check_monotonicity_with(
    k: usize,
    t: usize,
    stat: impl Fn(&SetPartition, usize) -> i128,
) -> Result<MonotonicityReport> {
    if t < 2 || t > k || k > MAX_LEMMA_K {
        return Err(Error::param(format!(
            "need 2 <= t <= k <= {MAX_LEMMA_K}, got k = {k}, t = {t}"
        )));
    }
    let mut report = MonotonicityReport::default();
    for pi in all_partitions(k)? {
        if pi.num_parts() < t {
            continue;
        }
        let base = stat(&pi, t);
        for refined in pi.refinements() {
            report.refinement_pairs_checked += 1;
            if base > stat(&refined, t) {
                report.refinement_violations.push((pi.clone(), refined));
            }
        }
        let parts = pi.parts();
        for (big, p1) in parts.iter().enumerate() {
            for (small, p2) in parts.iter().enumerate() {
                if big == small || !(p1.len() >= p2.len() && p2.len() >= 2) {
                    continue;
                }
                for &a in p2 {
                    let mut merged: Vec<usize> = p1.clone();
                    merged.extend(p2.iter().copied().filter(|&x| x != a));
                    let mut new_parts: Vec<Vec<usize>> = parts
                        .iter()
                        .enumerate()
                        .filter(|&(q, _)| q != big && q != small)
                        .map(|(_, v)| v.clone())
                        .collect();
                    new_parts.push(merged);
                    new_parts.push(vec![a]);
                    let moved = SetPartition::new(new_parts, k).expect("rearranged partition");
                    report.merge_pairs_checked += 1;
                    if stat(&moved, t) > base {
                        report.merge_violations.push((pi.clone(), moved));
                    }
                }
            }
        }
    }
    Ok(report)
}
