//! Randomized covers built from uniformly colored blocks.
//!
//! For each `t`-subset `T` of the sides, `N` independent colorings
//! `χ : [n] → T` each yield the block with `Y_i = χ^{-1}(i)` for `i ∈ T` and
//! `Y_i = X_i` otherwise. Such a block never contains an edge with fewer than
//! `t` distinct indices. The draw is repeated until it covers `H_{k,t}(n)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{count_uncovered, verify_cover, CoverVerdict, PartiteBlock, PartiteCover};
use crate::arith::ExactRational;
use crate::bitset::BitSet;
use crate::constructions::combinations;
use crate::error::{Error, Guard, Result};
use crate::partitions::{all_partitions, f_pi, stirling2};

/// `N = ⌊(t+1) t^t log₂ n / ((k-t+1) log₂ e)⌋`, the number of colorings per `T`.
pub fn sample_count(k: usize, t: usize, n: usize) -> u64 {
    if n < 2 || t > k {
        return 0;
    }
    // log₂ n / log₂ e = ln n
    let v = (t as f64 + 1.0) * (t as f64).powi(t as i32) * (n as f64).ln() / (k - t + 1) as f64;
    v.floor() as u64
}

/// Smallest `n` for which the expectation argument is stated to go through:
/// `k · S(k,t)`.
pub fn size_threshold(k: usize, t: usize) -> u128 {
    (k as u128).saturating_mul(stirling2(k, t))
}

#[derive(Clone, Copy, Debug)]
pub struct RandomCoverConfig {
    pub seed: u64,
    pub max_attempts: u32,
    /// Overrides `N` from [`sample_count`].
    pub samples_per_subset: Option<u64>,
    pub guard: Guard,
}

impl Default for RandomCoverConfig {
    fn default() -> Self {
        RandomCoverConfig {
            seed: 0,
            max_attempts: 1000,
            samples_per_subset: None,
            guard: Guard::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomCover {
    pub cover: PartiteCover,
    /// 1-based index of the draw that covered.
    pub attempts: u32,
    pub samples_per_subset: u64,
    /// `n < k·S(k,t)`: below the size where the expectation bound is argued.
    pub below_size_threshold: bool,
}

/// Las Vegas cover of `H_{k,t}(n)`: the returned cover always passes
/// [`verify_cover`]; only the number of draws is random.
///
/// Each block draws from its own ChaCha stream keyed by
/// `(attempt, subset index, copy index)`, so the output depends only on the
/// seed and not on the number of worker threads.
pub fn random_cover(k: usize, t: usize, n: usize, cfg: &RandomCoverConfig) -> Result<RandomCover> {
    if !(2 <= t && t <= k && k <= n) {
        return Err(Error::param(format!("need 2 <= t <= k <= n, got k = {k}, t = {t}, n = {n}")));
    }
    let per_subset = cfg.samples_per_subset.unwrap_or_else(|| sample_count(k, t, n));
    if per_subset == 0 {
        return Err(Error::param(format!("N = 0 colorings per subset at k = {k}, t = {t}, n = {n}")));
    }
    if cfg.max_attempts == 0 {
        return Err(Error::param("max_attempts must be at least 1"));
    }
    let subsets = combinations(k, t);
    let below = (n as u128) < size_threshold(k, t);

    let mut last = None;
    for attempt in 0..cfg.max_attempts {
        let blocks = draw_blocks(k, n, &subsets, per_subset, cfg.seed, attempt);
        let cover = PartiteCover::new(k, t, n, blocks)?;
        match verify_cover(&cover, cfg.guard)? {
            CoverVerdict::Valid => {
                return Ok(RandomCover {
                    cover,
                    attempts: attempt + 1,
                    samples_per_subset: per_subset,
                    below_size_threshold: below,
                })
            }
            CoverVerdict::BadBlock { block, edge } => {
                return Err(Error::Invariant(format!(
                    "colored block {block} contains non-edge {edge:?}"
                )))
            }
            CoverVerdict::Uncovered { .. } => last = Some(cover),
        }
    }
    let uncovered = count_uncovered(&last.expect("at least one attempt"), cfg.guard)?;
    Err(Error::AttemptsExhausted { attempts: cfg.max_attempts, uncovered })
}

fn draw_blocks(
    k: usize,
    n: usize,
    subsets: &[Vec<usize>],
    per_subset: u64,
    seed: u64,
    attempt: u32,
) -> Vec<PartiteBlock> {
    let jobs: Vec<(usize, u64)> = (0..subsets.len())
        .flat_map(|s| (0..per_subset).map(move |c| (s, c)))
        .collect();
    jobs.into_par_iter()
        .filter_map(|(s, copy)| {
            let stream = (attempt as u64 * subsets.len() as u64 + s as u64) * per_subset + copy;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let subset = &subsets[s];
            let mut parts: Vec<BitSet> = (0..k).map(|_| BitSet::full(n)).collect();
            for &side in subset {
                parts[side] = BitSet::new(n);
            }
            for j in 0..n {
                let color = subset[rng.gen_range(0..subset.len())];
                parts[color].insert(j);
            }
            // An empty color class covers nothing.
            PartiteBlock::new(parts).ok()
        })
        .collect()
}

/// `Σ_{π : |π| >= t} n^{|π|} (1 - t^{-t})^{N f(π,t)}` over partitions `π` of
/// `[k]`, computed exactly.
pub fn expected_uncovered_bound(k: usize, t: usize, n: usize, samples: u64) -> Result<ExactRational> {
    if !(2 <= t && t <= k) {
        return Err(Error::param(format!("need 2 <= t <= k, got k = {k}, t = {t}")));
    }
    // Tally (|π|, f) so each power is computed once.
    let mut tally: Vec<(usize, u64, u64)> = Vec::new();
    for pi in all_partitions(k)? {
        let s = pi.num_parts();
        if s < t {
            continue;
        }
        let f = f_pi(&pi, t);
        match tally.iter_mut().find(|(ts, tf, _)| *ts == s && *tf == f) {
            Some(entry) => entry.2 += 1,
            None => tally.push((s, f, 1)),
        }
    }
    let base = BigInt::from(t).pow(t as u32);
    let keep = &base - BigInt::one();
    let exp = |f: u64| -> Result<u32> {
        u32::try_from(samples.checked_mul(f).ok_or_else(|| Error::param("N·f overflows"))?)
            .map_err(|_| Error::param("N·f too large for exact evaluation"))
    };
    let max_exp = tally.iter().map(|&(_, f, _)| exp(f)).try_fold(0u32, |a, e| e.map(|e| a.max(e)))?;
    // Common denominator (t^t)^{max N·f}.
    let mut numer = BigInt::zero();
    for &(s, f, count) in &tally {
        let e = exp(f)?;
        numer += BigInt::from(count)
            * BigInt::from(n).pow(s as u32)
            * Pow::pow(&keep, e)
            * Pow::pow(&base, max_exp - e);
    }
    Ok(BigRational::new(numer, Pow::pow(&base, max_exp)))
}
