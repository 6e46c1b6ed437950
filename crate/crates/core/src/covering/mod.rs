//! Covers of `H_{k,t}(n)` by complete `k`-partite `k`-graphs.
//!
//! `H_{k,t}(n)` has parts `X_1, …, X_k`, each a copy of `{0, …, n-1}`, and an
//! edge `(i_1, …, i_k)` whenever at least `t` of the indices are distinct. A
//! block picks a nonempty `Y_i ⊆ X_i` per side and contributes every edge of
//! `Y_1 × ⋯ × Y_k`.
//!
//! A cover with blocks `H_0, …, H_{b-1}` corresponds to the tuple
//! `A_{i,j} = { r : x_{i,j} ∈ H_r }` with `n` columns over the ground set of
//! block indices, and the cover is valid exactly when that tuple is a
//! Bollobás `(k,t)`-tuple.

mod exact;
mod random;

use std::fmt;

use rayon::prelude::*;

use crate::bitset::{words_for, BitSet};
use crate::error::{saturating_pow, Error, Guard, Result};
use crate::family::{BollobasTuple, FamilySystem, Verdict, ViolationKind};

pub use exact::{
    default_ground_limit, exact_beta, exact_min_cover, random_tuple, BetaResult, MinCover,
};
pub use random::{
    expected_uncovered_bound, random_cover, sample_count, size_threshold, RandomCover,
    RandomCoverConfig,
};

/// `true` iff the edge has at least `t` distinct indices.
pub fn hkt_contains(k: usize, t: usize, n: usize, indices: &[usize]) -> Result<bool> {
    if indices.len() != k {
        return Err(Error::param(format!("edge has {} coordinates, expected k = {k}", indices.len())));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
        return Err(Error::param(format!("index {bad} out of range (n = {n})")));
    }
    Ok(distinct_count(indices) >= t)
}

pub(crate) fn distinct_count(indices: &[usize]) -> usize {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// One complete `k`-partite `k`-graph: `parts[i] = Y_i ⊆ X_i`, all nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteBlock {
    parts: Vec<BitSet>,
}

impl PartiteBlock {
    pub fn new(parts: Vec<BitSet>) -> Result<Self> {
        if let Some(i) = parts.iter().position(BitSet::is_empty) {
            return Err(Error::param(format!("block part {i} is empty")));
        }
        Ok(PartiteBlock { parts })
    }

    pub fn parts(&self) -> &[BitSet] {
        &self.parts
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.parts.iter().zip(edge).all(|(p, &v)| p.contains(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteCover {
    k: usize,
    t: usize,
    n: usize,
    blocks: Vec<PartiteBlock>,
}

impl PartiteCover {
    /// Checks shapes only; coverage is [`verify_cover`]'s job.
    pub fn new(k: usize, t: usize, n: usize, blocks: Vec<PartiteBlock>) -> Result<Self> {
        if t < 2 || t > k {
            return Err(Error::param(format!("need 2 <= t <= k, got k = {k}, t = {t}")));
        }
        if n == 0 {
            return Err(Error::param("need n >= 1"));
        }
        for (r, b) in blocks.iter().enumerate() {
            if b.parts.len() != k {
                return Err(Error::param(format!("block {r} has {} parts, expected {k}", b.parts.len())));
            }
            if let Some(i) = b.parts.iter().position(|p| p.universe() != n) {
                return Err(Error::param(format!("block {r} part {i} is not over [0, {n})")));
            }
        }
        Ok(PartiteCover { k, t, n, blocks })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[PartiteBlock] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn without_block(&self, r: usize) -> PartiteCover {
        let mut blocks = self.blocks.clone();
        blocks.remove(r);
        PartiteCover { blocks, ..self.clone() }
    }

    /// The incidence system `A_{i,j} = { r : j ∈ Y_i^{(r)} }` (not validated).
    fn incidence(&self) -> Result<FamilySystem> {
        let b = self.blocks.len();
        let families = (0..self.k)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        BitSet::from_elements(
                            b,
                            self.blocks
                                .iter()
                                .enumerate()
                                .filter(|(_, blk)| blk.parts[i].contains(j))
                                .map(|(r, _)| r),
                        )
                    })
                    .collect()
            })
            .collect();
        FamilySystem::new(b, families)
    }

    /// Lexicographically first edge of `H_{k,t}(n)`, if the hypergraph is nonempty.
    fn first_edge(&self) -> Option<Vec<usize>> {
        if self.n < self.t {
            return None;
        }
        let zeros = self.k - (self.t - 1);
        Some((0..self.k).map(|p| if p < zeros { 0 } else { p - zeros + 1 }).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    Valid,
    /// Block `block` contains `edge`, which has fewer than `t` distinct indices.
    BadBlock { block: usize, edge: Vec<usize> },
    /// `edge` lies in `H_{k,t}(n)` but in no block.
    Uncovered { edge: Vec<usize> },
}

impl CoverVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CoverVerdict::Valid)
    }
}

impl fmt::Display for CoverVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: &[usize]| e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self {
            CoverVerdict::Valid => write!(f, "valid"),
            CoverVerdict::BadBlock { block, edge } => {
                write!(f, "block {block} contains non-edge ({})", show(edge))
            }
            CoverVerdict::Uncovered { edge } => write!(f, "edge ({}) is uncovered", show(edge)),
        }
    }
}

/// Checks that every block lies inside `H_{k,t}(n)` and that the blocks cover
/// it, reporting the first failure in lexicographic edge order.
pub fn verify_cover(cover: &PartiteCover, guard: Guard) -> Result<CoverVerdict> {
    guard.check("cover verification", saturating_pow(cover.n, cover.k))?;
    if cover.blocks.is_empty() {
        return Ok(match cover.first_edge() {
            None => CoverVerdict::Valid,
            Some(edge) => CoverVerdict::Uncovered { edge },
        });
    }
    if cover.n < cover.t {
        // Every edge of every block is a non-edge; report the lex-smallest.
        let (block, edge) = cover
            .blocks
            .iter()
            .enumerate()
            .map(|(r, b)| (r, b.parts.iter().map(|p| p.iter().next().unwrap()).collect::<Vec<_>>()))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("nonempty");
        return Ok(CoverVerdict::BadBlock { block, edge });
    }
    let sys = cover.incidence()?;
    Ok(match sys.check(cover.t, guard)? {
        Verdict::Valid => CoverVerdict::Valid,
        Verdict::Invalid(c) => match c.kind {
            ViolationKind::ForbiddenNonempty => {
                let block = sys.intersection(&c.indices).iter().next().expect("nonempty");
                CoverVerdict::BadBlock { block, edge: c.indices }
            }
            ViolationKind::MissingNonempty => CoverVerdict::Uncovered { edge: c.indices },
        },
    })
}

/// Number of edges of `H_{k,t}(n)` lying in no block.
pub fn count_uncovered(cover: &PartiteCover, guard: Guard) -> Result<u64> {
    guard.check("uncovered-edge count", saturating_pow(cover.n, cover.k))?;
    let (k, n, t) = (cover.k, cover.n, cover.t);
    let words = words_for(cover.blocks.len());
    // inc[i][j]: blocks whose side i contains vertex j.
    let inc: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut w = vec![0u64; words];
                    for (r, b) in cover.blocks.iter().enumerate() {
                        if b.parts[i].contains(j) {
                            w[r / 64] |= 1 << (r % 64);
                        }
                    }
                    w
                })
                .collect()
        })
        .collect();

    fn walk(
        depth: usize,
        edge: &mut [usize],
        acc: &mut [Vec<u64>],
        inc: &[Vec<Vec<u64>>],
        t: usize,
    ) -> u64 {
        let k = edge.len();
        if depth == k {
            let in_h = distinct_count(edge) >= t;
            let covered = acc[k - 1].iter().any(|&w| w != 0);
            return u64::from(in_h && !covered);
        }
        let mut total = 0;
        for v in 0..inc[depth].len() {
            edge[depth] = v;
            let (prev, cur) = acc.split_at_mut(depth);
            for ((c, p), s) in cur[0].iter_mut().zip(&prev[depth - 1]).zip(&inc[depth][v]) {
                *c = p & s;
            }
            total += walk(depth + 1, edge, acc, inc, t);
        }
        total
    }

    Ok((0..n)
        .into_par_iter()
        .map(|first| {
            let mut edge = vec![0; k];
            edge[0] = first;
            let mut acc = vec![vec![0u64; words]; k];
            acc[0].copy_from_slice(&inc[0][first]);
            if k == 1 {
                return u64::from(1 >= t && acc[0].iter().all(|&w| w == 0));
            }
            walk(1, &mut edge, &mut acc, &inc, t)
        })
        .sum())
}

/// The Bollobás tuple of a valid cover: `k` families, `n` columns, ground set
/// the block indices.
pub fn cover_to_tuple(cover: &PartiteCover, guard: Guard) -> Result<BollobasTuple> {
    if cover.n < cover.t {
        return Err(Error::param(format!(
            "cover of H_{{{},{}}}({}) yields m = {} < t columns",
            cover.k, cover.t, cover.n, cover.n
        )));
    }
    match verify_cover(cover, guard)? {
        CoverVerdict::Valid => {}
        bad => return Err(Error::InvalidCover(bad)),
    }
    let sys = cover.incidence()?;
    sys.validate(cover.t, guard)
}

/// The cover of `H_{k,t}(m)` given by a tuple with `m` columns: one block per
/// ground element `r`, with side `i` equal to `{ j : r ∈ A_{i,j} }`.
///
/// Elements missing from every set of some family would give a block with an
/// empty side; they contribute no edges and are skipped.
pub fn tuple_to_cover(tuple: &BollobasTuple) -> Result<PartiteCover> {
    let (k, m) = (tuple.k(), tuple.m());
    let blocks = (0..tuple.n())
        .filter_map(|r| {
            let parts: Vec<BitSet> = (0..k)
                .map(|i| BitSet::from_elements(m, (0..m).filter(|&j| tuple.set(i, j).contains(r))))
                .collect();
            PartiteBlock::new(parts).ok()
        })
        .collect();
    PartiteCover::new(k, tuple.t(), m, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(n: usize, parts: &[&[usize]]) -> PartiteBlock {
        PartiteBlock::new(parts.iter().map(|p| BitSet::from_elements(n, p.iter().copied())).collect())
            .unwrap()
    }

    fn two_by_two() -> PartiteCover {
        PartiteCover::new(2, 2, 2, vec![block(2, &[&[0], &[1]]), block(2, &[&[1], &[0]])]).unwrap()
    }

    #[test]
    fn membership() {
        assert!(!hkt_contains(3, 2, 2, &[0, 0, 0]).unwrap());
        assert!(hkt_contains(3, 2, 2, &[0, 0, 1]).unwrap());
        assert!(hkt_contains(4, 3, 3, &[0, 0, 1, 2]).unwrap());
        assert!(!hkt_contains(4, 3, 3, &[0, 0, 1, 1]).unwrap());
        assert!(hkt_contains(3, 2, 2, &[0, 2, 1]).is_err());
    }

    #[test]
    fn complement_of_matching() {
        assert_eq!(verify_cover(&two_by_two(), Guard::default()).unwrap(), CoverVerdict::Valid);
        let whole = PartiteCover::new(2, 2, 2, vec![block(2, &[&[0, 1], &[0, 1]])]).unwrap();
        assert_eq!(
            verify_cover(&whole, Guard::default()).unwrap(),
            CoverVerdict::BadBlock { block: 0, edge: vec![0, 0] }
        );
        assert_eq!(
            verify_cover(&two_by_two().without_block(1), Guard::default()).unwrap(),
            CoverVerdict::Uncovered { edge: vec![1, 0] }
        );
    }

    #[test]
    fn empty_blocks_and_degenerate_n() {
        let none = PartiteCover::new(2, 2, 1, vec![]).unwrap();
        assert!(verify_cover(&none, Guard::default()).unwrap().is_valid());
        assert!(matches!(cover_to_tuple(&none, Guard::default()), Err(Error::Parameter(_))));
        let none3 = PartiteCover::new(3, 2, 3, vec![]).unwrap();
        assert_eq!(
            verify_cover(&none3, Guard::default()).unwrap(),
            CoverVerdict::Uncovered { edge: vec![0, 0, 1] }
        );
        let bad = PartiteCover::new(2, 2, 1, vec![block(1, &[&[0], &[0]])]).unwrap();
        assert!(matches!(verify_cover(&bad, Guard::default()).unwrap(), CoverVerdict::BadBlock { .. }));
        assert!(PartiteBlock::new(vec![BitSet::new(2), BitSet::full(2)]).is_err());
    }

    #[test]
    fn correspondence_on_smallest_case() {
        let tuple = cover_to_tuple(&two_by_two(), Guard::default()).unwrap();
        assert_eq!(tuple.to_elements(), vec![vec![vec![0], vec![1]], vec![vec![1], vec![0]]]);
        assert_eq!(tuple_to_cover(&tuple).unwrap(), two_by_two());
    }

    #[test]
    fn uncovered_count() {
        assert_eq!(count_uncovered(&two_by_two(), Guard::default()).unwrap(), 0);
        assert_eq!(count_uncovered(&two_by_two().without_block(0), Guard::default()).unwrap(), 1);
        let none3 = PartiteCover::new(3, 2, 3, vec![]).unwrap();
        // 27 edges minus 3 constant ones
        assert_eq!(count_uncovered(&none3, Guard::default()).unwrap(), 24);
    }
}
