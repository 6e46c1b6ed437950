//! Permutation chain families of a `(k,k)`-tuple.
//!
//! For `σ ∈ [m]_{(k-1)}` with derived sets `A_{1,σ}, …, A_{k,σ}` (identity
//! surjection), `𝒞_σ` is the set of orderings of the ground set `X` that place
//! all of `A_{1,σ}` before all of `A_{2,σ}`, and so on. The families are
//! pairwise disjoint for a valid tuple, and `|𝒞_σ| = n! / multinomial(...)`,
//! so summing over `σ` recovers the inequality with `t = k`.
//!
//! A permutation is a rank array over `X` sorted ascending: `perm[p]` is the
//! 0-based rank of the `p`-th smallest element of `X`. An empty derived set
//! imposes no constraint; its neighbours are compared directly.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::arith::{binomial, factorial, multinomial, ExactRational};
use crate::error::{Error, Guard, Result};
use crate::family::{BollobasTuple, FamilySystem, IndexSequence, Surjection};
use crate::inequality::{derived_sets, theorem_sum};

/// Largest ground set whose permutations are enumerated.
pub const MAX_CHAIN_GROUND: usize = 9;

#[derive(Clone, Debug)]
pub struct ChainContext {
    k: usize,
    ground: Vec<usize>,
    sigmas: Vec<IndexSequence>,
    /// Per `σ`, per block, positions in `ground`.
    blocks: Vec<Vec<Vec<usize>>>,
}

impl ChainContext {
    pub fn new(tuple: &BollobasTuple) -> Result<Self> {
        if tuple.t() != tuple.k() {
            return Err(Error::param(format!(
                "chain families need a (k,k)-tuple, got k = {}, t = {}",
                tuple.k(),
                tuple.t()
            )));
        }
        Self::build(tuple.system())
    }

    /// Skips validation. Only meant for negative controls: on an invalid
    /// system the families may overlap.
    pub fn unchecked(sys: &FamilySystem) -> Result<Self> {
        Self::build(sys)
    }

    fn build(sys: &FamilySystem) -> Result<Self> {
        let k = sys.k();
        let ground = sys.support().to_vec();
        if ground.is_empty() {
            return Err(Error::param("the system has an empty ground set"));
        }
        if ground.len() > MAX_CHAIN_GROUND {
            return Err(Error::param(format!(
                "|X| = {} exceeds the enumeration limit of {MAX_CHAIN_GROUND}",
                ground.len()
            )));
        }
        let phi = Surjection::identity(k);
        let sigmas = IndexSequence::all(sys.m(), k - 1);
        let blocks = sigmas
            .iter()
            .map(|sigma| {
                let sets = derived_sets(sys, &phi, sigma)?;
                Ok(sets
                    .iter()
                    .map(|s| s.iter().map(|e| ground.binary_search(&e).expect("in support")).collect())
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainContext { k, ground, sigmas, blocks })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `X`, ascending.
    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// `[m]_{(k-1)}` in lexicographic order.
    pub fn sigmas(&self) -> &[IndexSequence] {
        &self.sigmas
    }

    fn sigma_index(&self, sigma: &IndexSequence) -> Result<usize> {
        self.sigmas
            .iter()
            .position(|s| s == sigma)
            .ok_or_else(|| Error::param(format!("{:?} is not an index sequence of length k - 1", sigma.entries())))
    }

    fn enumeration_work(&self, sigmas: usize) -> u128 {
        factorial(self.n()).to_u128().unwrap_or(u128::MAX).saturating_mul(sigmas.max(1) as u128)
    }
}

fn block_member(blocks: &[Vec<usize>], perm: &[usize]) -> bool {
    let mut prev_max: Option<usize> = None;
    for block in blocks.iter().filter(|b| !b.is_empty()) {
        let lo = block.iter().map(|&p| perm[p]).min().expect("nonempty");
        if prev_max.is_some_and(|hi| hi >= lo) {
            return false;
        }
        prev_max = block.iter().map(|&p| perm[p]).max();
    }
    true
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n || !perm.iter().all(|&r| r < n && !std::mem::replace(&mut seen[r], true)) {
        return Err(Error::param(format!("{perm:?} is not a rank array of length {n}")));
    }
    Ok(())
}

/// Whether `perm` lies in `𝒞_σ`.
pub fn chain_membership(ctx: &ChainContext, sigma: &IndexSequence, perm: &[usize]) -> Result<bool> {
    let idx = ctx.sigma_index(sigma)?;
    check_perm(perm, ctx.n())?;
    Ok(block_member(&ctx.blocks[idx], perm))
}

/// Rank arrays starting with `first`, in lexicographic order.
fn for_each_perm_from(n: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = std::iter::once(first).chain((0..n).filter(|&r| r != first)).collect();
    loop {
        visit(&perm);
        // next permutation of perm[1..]
        let tail = &mut perm[1..];
        let Some(i) = (1..tail.len()).rev().find(|&i| tail[i - 1] < tail[i]) else {
            return;
        };
        let j = (i..tail.len()).rev().find(|&j| tail[j] > tail[i - 1]).expect("pivot");
        tail.swap(i - 1, j);
        tail[i..].reverse();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCount {
    pub sigma: IndexSequence,
    /// `|A_{j,σ}|`.
    pub sizes: Vec<usize>,
    /// `C(n, |U_σ|) · ∏ |A_{j,σ}|! · (n - |U_σ|)!`.
    pub formula: BigUint,
    pub enumerated: u64,
}

impl ChainCount {
    pub fn has_empty_block(&self) -> bool {
        self.sizes.contains(&0)
    }
}

/// The counting formula, evaluated as `n! / multinomial` and as the product
/// form; the two must agree.
fn formula(n: usize, sizes: &[usize]) -> Result<BigUint> {
    let union: usize = sizes.iter().sum();
    let quotient = factorial(n) / multinomial(union, sizes)?;
    let product = binomial(n, union)
        * sizes.iter().map(|&s| factorial(s)).product::<BigUint>()
        * factorial(n - union);
    if quotient != product {
        return Err(Error::Invariant(format!(
            "chain formula forms disagree for sizes {sizes:?} in n = {n}: {quotient} vs {product}"
        )));
    }
    Ok(product)
}

/// `|𝒞_σ|` by formula, checked against enumeration of all `n!` permutations.
pub fn chain_count(ctx: &ChainContext, sigma: &IndexSequence, guard: Guard) -> Result<ChainCount> {
    let idx = ctx.sigma_index(sigma)?;
    guard.check("chain enumeration", ctx.enumeration_work(1))?;
    let n = ctx.n();
    let blocks = &ctx.blocks[idx];
    let enumerated: u64 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut c = 0u64;
            for_each_perm_from(n, first, |perm| {
                c += block_member(blocks, perm) as u64;
            });
            c
        })
        .sum();
    row(n, sigma.clone(), blocks, enumerated)
}

fn row(n: usize, sigma: IndexSequence, blocks: &[Vec<usize>], enumerated: u64) -> Result<ChainCount> {
    let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let formula = formula(n, &sizes)?;
    if formula != BigUint::from(enumerated) {
        return Err(Error::Invariant(format!(
            "σ = {:?}: counting formula gives {formula}, enumeration finds {enumerated}",
            sigma.entries()
        )));
    }
    Ok(ChainCount { sigma, sizes, formula, enumerated })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Disjointness {
    Disjoint,
    /// The lexicographically first permutation lying in two families.
    Collision { first: IndexSequence, second: IndexSequence, perm: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct DisjointnessReport {
    pub verdict: Disjointness,
    /// `|𝒞_σ|` by enumeration, aligned with [`ChainContext::sigmas`].
    pub counts: Vec<u64>,
}

/// Classifies every permutation of `X` against every `σ`.
/// Two `σ` indices and a rank array in both families.
type Collision = (usize, usize, Vec<usize>);

pub fn verify_disjointness(ctx: &ChainContext, guard: Guard) -> Result<DisjointnessReport> {
    guard.check("chain disjointness enumeration", ctx.enumeration_work(ctx.sigmas.len()))?;
    let n = ctx.n();
    let s = ctx.sigmas.len();
    let partial: Vec<(Vec<u64>, Option<Collision>)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0u64; s];
            let mut collision = None;
            for_each_perm_from(n, first, |perm| {
                let mut owner = None;
                for (i, blocks) in ctx.blocks.iter().enumerate() {
                    if block_member(blocks, perm) {
                        counts[i] += 1;
                        match owner {
                            None => owner = Some(i),
                            Some(o) if collision.is_none() => collision = Some((o, i, perm.to_vec())),
                            Some(_) => {}
                        }
                    }
                }
            });
            (counts, collision)
        })
        .collect();
    let mut counts = vec![0u64; s];
    let mut collision = None;
    for (c, col) in partial {
        for (acc, x) in counts.iter_mut().zip(c) {
            *acc += x;
        }
        if collision.is_none() {
            collision = col;
        }
    }
    let verdict = match collision {
        None => Disjointness::Disjoint,
        Some((a, b, perm)) => Disjointness::Collision {
            first: ctx.sigmas[a].clone(),
            second: ctx.sigmas[b].clone(),
            perm,
        },
    };
    Ok(DisjointnessReport { verdict, counts })
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub n: usize,
    pub verdict: Disjointness,
    pub rows: Vec<ChainCount>,
    /// `Σ_σ |𝒞_σ|`.
    pub total: BigUint,
    /// `n! · Σ_σ multinomial^{-1}`.
    pub scaled_sum: ExactRational,
}

impl ChainReport {
    /// Disjoint families whose sizes add up to `n!` times the inequality sum.
    pub fn holds(&self) -> bool {
        self.verdict == Disjointness::Disjoint
            && ExactRational::from_integer(self.total.clone().into()) == self.scaled_sum
    }
}

/// Disjointness, per-`σ` counts (formula against enumeration) and the summed
/// identity for a `(k,k)`-tuple.
pub fn verify_chains(tuple: &BollobasTuple, guard: Guard) -> Result<ChainReport> {
    let ctx = ChainContext::new(tuple)?;
    let report = verify_disjointness(&ctx, guard)?;
    let n = ctx.n();
    let rows = ctx
        .sigmas
        .iter()
        .zip(&ctx.blocks)
        .zip(&report.counts)
        .map(|((sigma, blocks), &count)| row(n, sigma.clone(), blocks, count))
        .collect::<Result<Vec<_>>>()?;
    let total = rows.iter().map(|r| &r.formula).sum();
    let sum = theorem_sum(tuple, &Surjection::identity(tuple.k()))?;
    let scaled_sum = sum * ExactRational::from_integer(factorial(n).into());
    Ok(ChainReport { n, verdict: report.verdict, rows, total, scaled_sum })
}
