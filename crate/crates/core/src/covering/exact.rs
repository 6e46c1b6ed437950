//! Exact `β_{k,t}(g)` and `f_{k,t}(n)` for tiny parameters, by branch and bound.
//!
//! A column is a `k`-tuple of nonempty subsets of `{0, …, g-1}` stored as bit
//! masks. A set of columns forms a Bollobás tuple iff every index tuple over it
//! satisfies the intersection condition; singles and pairs are checked up
//! front, larger combinations when a column is added. The search treats the
//! result as a maximum clique in the pair-compatibility graph.
//!
//! Symmetry: columns are taken in increasing order of their encoding, and the
//! first column must be the smallest encoding in its orbit under relabelings
//! of the ground set.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{distinct_count, tuple_to_cover, PartiteCover};
use crate::bitset::BitSet;
use crate::error::{saturating_pow, Error, Guard, Result};
use crate::family::FamilySystem;

/// Largest ground size searched by default for `k` families.
pub fn default_ground_limit(k: usize) -> usize {
    match k {
        2 => 5,
        3 => 5,
        4 => 3,
        _ => 2,
    }
}

/// Hard ceiling even with a guard override (masks are `u32`, the candidate
/// table is materialized).
const ABSOLUTE_GROUND_LIMIT: usize = 8;

#[derive(Clone, Debug)]
pub struct BetaResult {
    pub value: usize,
    /// A tuple attaining `value` (absent when `value == 0`).
    pub witness: Option<FamilySystem>,
    pub nodes: u64,
}

#[derive(Clone, Debug)]
pub struct MinCover {
    pub m: usize,
    pub certificate: PartiteCover,
}

/// Flat table of candidate columns, `k` masks each.
struct Candidates {
    k: usize,
    masks: Vec<u32>,
}

impl Candidates {
    fn len(&self) -> usize {
        self.masks.len() / self.k
    }

    fn column(&self, c: usize) -> &[u32] {
        &self.masks[c * self.k..(c + 1) * self.k]
    }

    /// Every `k`-tuple of nonempty masks whose common intersection is empty,
    /// in lexicographic order of `(A_1, …, A_k)`.
    fn enumerate(k: usize, g: usize) -> Candidates {
        let top = (1u32 << g) - 1;
        let mut masks = Vec::new();
        let mut cur = vec![1u32; k];
        if g == 0 {
            return Candidates { k, masks };
        }
        loop {
            if cur.iter().fold(top, |acc, &m| acc & m) == 0 {
                masks.extend_from_slice(&cur);
            }
            let mut p = k;
            loop {
                if p == 0 {
                    return Candidates { k, masks };
                }
                p -= 1;
                if cur[p] < top {
                    cur[p] += 1;
                    break;
                }
                cur[p] = 1;
            }
        }
    }
}

/// Whether adding `new` to `cols` keeps the condition on every index tuple
/// that uses `new` and at least `min_distinct` distinct columns.
fn extends(cols: &[&[u32]], new: &[u32], t: usize, min_distinct: usize, full: u32) -> bool {
    let k = new.len();
    let s = cols.len();
    let pick = |c: usize| if c == s { new } else { cols[c] };
    let mut idx = vec![0usize; k];
    loop {
        if idx.contains(&s) {
            let mut seen = 0u64;
            for &c in &idx {
                seen |= 1 << c;
            }
            let distinct = seen.count_ones() as usize;
            if distinct >= min_distinct {
                let meet = idx.iter().enumerate().fold(full, |acc, (j, &c)| acc & pick(c)[j]);
                if (meet != 0) != (distinct >= t) {
                    return false;
                }
            }
        }
        let mut p = k;
        loop {
            if p == 0 {
                return true;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] <= s {
                break;
            }
            idx[p] = 0;
        }
    }
}

fn permutations(g: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..g).collect();
    fn heap(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..n - 1 {
            heap(n - 1, cur, out);
            if n.is_multiple_of(2) {
                cur.swap(i, n - 1);
            } else {
                cur.swap(0, n - 1);
            }
        }
        heap(n - 1, cur, out);
    }
    heap(g, &mut cur, &mut out);
    out
}

fn relabel(mask: u32, perm: &[usize]) -> u32 {
    perm.iter()
        .enumerate()
        .filter(|&(e, _)| mask >> e & 1 == 1)
        .fold(0, |acc, (_, &to)| acc | 1 << to)
}

fn is_orbit_minimal(column: &[u32], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| {
        let image: Vec<u32> = column.iter().map(|&m| relabel(m, p)).collect();
        image.as_slice() >= column
    })
}

fn to_system(k: usize, g: usize, cols: &[&[u32]]) -> Result<FamilySystem> {
    let families = (0..k)
        .map(|j| {
            cols.iter()
                .map(|c| BitSet::from_elements(g, (0..g).filter(|&e| c[j] >> e & 1 == 1)))
                .collect()
        })
        .collect();
    FamilySystem::new(g, families)
}

fn check_search_params(k: usize, t: usize, g: usize, guard: Guard) -> Result<()> {
    if !(2 <= t && t <= k) {
        return Err(Error::param(format!("need 2 <= t <= k, got k = {k}, t = {t}")));
    }
    let limit = if guard.is_overridden() { ABSOLUTE_GROUND_LIMIT } else { default_ground_limit(k) };
    if g > limit {
        return Err(Error::GuardExceeded {
            what: format!("exact search over ground size {g} with k = {k}"),
            work: saturating_pow((1 << g.min(31)) - 1, k),
            limit: saturating_pow((1 << limit) - 1, k),
        });
    }
    Ok(())
}

/// Maximum number of columns of a `(k,t)`-tuple over `{0, …, g-1}`.
///
/// Counts every column set meeting the intersection condition; for `t >= 3` a
/// value below `t` means no tuple with `m >= t` exists.
pub fn exact_beta(k: usize, t: usize, g: usize, guard: Guard) -> Result<BetaResult> {
    check_search_params(k, t, g, guard)?;
    if g == 0 {
        return Ok(BetaResult { value: 0, witness: None, nodes: 0 });
    }
    let cands = Candidates::enumerate(k, g);
    let full = (1u32 << g) - 1;
    let count = cands.len();
    let words = count.div_ceil(64);

    // compat[a] bit b: every tuple over {a, b} using both columns is fine.
    let mut compat = vec![vec![0u64; words]; count];
    for a in 0..count {
        for b in a + 1..count {
            if extends(&[cands.column(a)], cands.column(b), t, 2, full) {
                compat[a][b / 64] |= 1 << (b % 64);
                compat[b][a / 64] |= 1 << (a % 64);
            }
        }
    }
    let perms = permutations(g);

    let mut search = Search {
        cands: &cands,
        compat: &compat,
        t,
        full,
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
    };
    for first in 0..count {
        if count - first <= search.best.len() {
            break;
        }
        if !is_orbit_minimal(cands.column(first), &perms) {
            continue;
        }
        let next: Vec<usize> = (first + 1..count)
            .filter(|&b| compat[first][b / 64] >> (b % 64) & 1 == 1)
            .collect();
        search.chosen.push(first);
        search.expand(&next);
        search.chosen.pop();
    }

    let value = search.best.len();
    let witness = if value == 0 {
        None
    } else {
        let cols: Vec<&[u32]> = search.best.iter().map(|&c| cands.column(c)).collect();
        Some(to_system(k, g, &cols)?)
    };
    Ok(BetaResult { value, witness, nodes: search.nodes })
}

struct Search<'a> {
    cands: &'a Candidates,
    compat: &'a [Vec<u64>],
    t: usize,
    full: u32,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn expand(&mut self, cand: &[usize]) {
        self.nodes += 1;
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        for (pos, &c) in cand.iter().enumerate() {
            if self.chosen.len() + (cand.len() - pos) <= self.best.len() {
                return;
            }
            if self.chosen.len() >= 2 {
                let cols: Vec<&[u32]> = self.chosen.iter().map(|&x| self.cands.column(x)).collect();
                if !extends(&cols, self.cands.column(c), self.t, 3, self.full) {
                    continue;
                }
            }
            let row = &self.compat[c];
            let next: Vec<usize> = cand[pos + 1..]
                .iter()
                .copied()
                .filter(|&b| row[b / 64] >> (b % 64) & 1 == 1)
                .collect();
            self.chosen.push(c);
            self.expand(&next);
            self.chosen.pop();
        }
    }
}

/// A lower bound on `f_{k,t}(n)` that is cheap to evaluate, used only to
/// refuse hopeless searches early (the search itself still starts at 1).
///
/// For `t = 2` the threshold formula. For `t = k` a clean box has pairwise
/// disjoint sides, so it holds at most the largest product of `k` disjoint
/// parts of `[n]` out of the `n!/(n-k)!` edges.
fn quick_lower_bound(k: usize, t: usize, n: usize) -> usize {
    if t == 2 {
        return crate::bounds::threshold_min_m(n as u64, k).unwrap_or(0);
    }
    if t == k && n >= k {
        let edges: u128 = (0..k as u128).map(|i| n as u128 - i).product();
        let (q, r) = (n / k, n % k);
        let biggest = ((q + 1) as u128).pow(r as u32) * (q as u128).pow((k - r) as u32);
        return usize::try_from(edges.div_ceil(biggest)).unwrap_or(usize::MAX);
    }
    0
}

/// `f_{k,t}(n) = min { m : β_{k,t}(m) >= n }` with a witness cover.
pub fn exact_min_cover(k: usize, t: usize, n: usize, guard: Guard) -> Result<MinCover> {
    if !(2 <= t && t <= k) {
        return Err(Error::param(format!("need 2 <= t <= k, got k = {k}, t = {t}")));
    }
    if n == 0 {
        return Err(Error::param("need n >= 1"));
    }
    if n < t {
        // No edge has t distinct indices.
        return Ok(MinCover { m: 0, certificate: PartiteCover::new(k, t, n, Vec::new())? });
    }
    let lower = quick_lower_bound(k, t, n);
    if lower > 1 {
        check_search_params(k, t, lower, guard)?;
    }
    let mut g = 1;
    loop {
        let beta = exact_beta(k, t, g, guard)?;
        if beta.value >= n {
            let witness = beta.witness.expect("value >= n >= 1");
            let columns: Vec<usize> = (0..n).collect();
            let tuple = witness.select_columns(&columns)?.validate(t, guard)?;
            let certificate = tuple_to_cover(&tuple)?;
            if certificate.len() != g {
                return Err(Error::Invariant(format!(
                    "witness cover has {} blocks but the search minimum is {g}",
                    certificate.len()
                )));
            }
            return Ok(MinCover { m: g, certificate });
        }
        g += 1;
    }
}

/// A random `(k,t)`-tuple with `m` columns over at most `max_ground` points,
/// or `None` if `tries` attempts all needed more points.
///
/// Uses the cover correspondence: each ground point is a block of `H_{k,t}(m)`
/// grown at random from an uncovered edge while it stays free of non-edges,
/// until every edge is covered. The number of blocks is the ground size.
pub fn random_tuple<R: Rng + ?Sized>(
    k: usize,
    t: usize,
    m: usize,
    max_ground: usize,
    tries: usize,
    rng: &mut R,
) -> Result<Option<FamilySystem>> {
    if !(2 <= t && t <= k && t <= m) {
        return Err(Error::param(format!("need 2 <= t <= k and m >= t, got k = {k}, t = {t}, m = {m}")));
    }
    if m > 16 {
        return Err(Error::param(format!("random tuples are limited to m <= 16, got {m}")));
    }
    let total = saturating_pow(m, k);
    Guard::default().check("edge list of H_{k,t}(m)", total)?;
    let edges: Vec<Vec<usize>> = (0..total as usize)
        .map(|mut code| {
            let mut e = vec![0; k];
            for slot in e.iter_mut().rev() {
                *slot = code % m;
                code /= m;
            }
            e
        })
        .filter(|e| distinct_count(e) >= t)
        .collect();
    let mut additions: Vec<(usize, usize)> = (0..k).flat_map(|j| (0..m).map(move |i| (j, i))).collect();

    'attempt: for _ in 0..tries {
        let mut uncovered: Vec<bool> = vec![true; edges.len()];
        let mut left = edges.len();
        // Block sides as masks over [m].
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        while left > 0 {
            if blocks.len() == max_ground {
                continue 'attempt;
            }
            let pick = rng.gen_range(0..left);
            let seed = uncovered.iter().enumerate().filter(|(_, &u)| u).nth(pick).unwrap().0;
            let mut sides: Vec<u32> = edges[seed].iter().map(|&i| 1 << i).collect();
            additions.shuffle(rng);
            for &(j, i) in &additions {
                if sides[j] >> i & 1 == 0 {
                    sides[j] |= 1 << i;
                    if !box_is_clean(&sides, t) {
                        sides[j] &= !(1 << i);
                    }
                }
            }
            for (e, u) in edges.iter().zip(uncovered.iter_mut()) {
                if *u && e.iter().zip(&sides).all(|(&i, &s)| s >> i & 1 == 1) {
                    *u = false;
                    left -= 1;
                }
            }
            blocks.push(sides);
        }
        let g = blocks.len();
        let families = (0..k)
            .map(|j| {
                (0..m)
                    .map(|i| BitSet::from_elements(g, (0..g).filter(|&r| blocks[r][j] >> i & 1 == 1)))
                    .collect()
            })
            .collect();
        return FamilySystem::new(g, families).map(Some);
    }
    Ok(None)
}

/// No index tuple in the box `sides[0] × … × sides[k-1]` has fewer than `t`
/// distinct entries.
fn box_is_clean(sides: &[u32], t: usize) -> bool {
    fn walk(sides: &[u32], t: usize, used: u32) -> bool {
        match sides.split_first() {
            None => used.count_ones() as usize >= t,
            Some((&s, rest)) => {
                let mut bits = s;
                while bits != 0 {
                    let i = bits.trailing_zeros();
                    bits &= bits - 1;
                    if !walk(rest, t, used | 1 << i) {
                        return false;
                    }
                }
                true
            }
        }
    }
    walk(sides, t, 0)
}
