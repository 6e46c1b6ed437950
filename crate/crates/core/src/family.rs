//! Set-family systems and the `(k,t)` intersection condition.
//!
//! A [`FamilySystem`] holds `k` families of `m` sets each over the ground set
//! `{0, …, n-1}`. It is a Bollobás `(k,t)`-tuple when, for every index tuple
//! `(i_1, …, i_k) ∈ [m]^k`, the intersection `A_{1,i_1} ∩ ⋯ ∩ A_{k,i_k}` is
//! nonempty exactly when at least `t` of the indices are distinct.
//!
//! Family and column indices are 0-based throughout.

use std::fmt;
use std::ops::Deref;

use rayon::prelude::*;

use crate::bitset::{words_for, BitSet};
use crate::error::{saturating_pow, Error, Guard, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilySystem {
    n: usize,
    k: usize,
    m: usize,
    /// Row-major: `sets[j * m + i]` is `A_{j,i}`.
    sets: Vec<BitSet>,
}

impl FamilySystem {
    /// Builds a system from `families[j][i] = A_{j,i}`.
    pub fn new(n: usize, families: Vec<Vec<BitSet>>) -> Result<Self> {
        let k = families.len();
        if n == 0 {
            return Err(Error::param("ground set must be nonempty (n >= 1)"));
        }
        if k < 2 {
            return Err(Error::param(format!("need at least two families, got k = {k}")));
        }
        let m = families[0].len();
        if m == 0 {
            return Err(Error::param("families must have at least one set (m >= 1)"));
        }
        let mut sets = Vec::with_capacity(k * m);
        for (j, fam) in families.into_iter().enumerate() {
            if fam.len() != m {
                return Err(Error::param(format!(
                    "family {j} has {} sets, family 0 has {m}",
                    fam.len()
                )));
            }
            for (i, s) in fam.into_iter().enumerate() {
                if s.universe() != n {
                    return Err(Error::param(format!(
                        "set ({j},{i}) lives in a ground set of size {}, expected {n}",
                        s.universe()
                    )));
                }
                sets.push(s);
            }
        }
        Ok(FamilySystem { n, k, m, sets })
    }

    /// Builds a system from element lists, `families[j][i]` listing `A_{j,i}`.
    pub fn from_elements(n: usize, families: &[Vec<Vec<usize>>]) -> Result<Self> {
        let mut fams = Vec::with_capacity(families.len());
        for (j, fam) in families.iter().enumerate() {
            let mut col = Vec::with_capacity(fam.len());
            for (i, elems) in fam.iter().enumerate() {
                let mut s = BitSet::new(n);
                for &e in elems {
                    if e >= n {
                        return Err(Error::Range { family: j, column: i, element: e, n });
                    }
                    if s.contains(e) {
                        return Err(Error::Duplicate { family: j, column: i, element: e });
                    }
                    s.insert(e);
                }
                col.push(s);
            }
            fams.push(col);
        }
        FamilySystem::new(n, fams)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `A_{j,i}`.
    pub fn set(&self, j: usize, i: usize) -> &BitSet {
        &self.sets[j * self.m + i]
    }

    pub fn family(&self, j: usize) -> &[BitSet] {
        &self.sets[j * self.m..(j + 1) * self.m]
    }

    /// Element lists per family and column, each sorted ascending.
    pub fn to_elements(&self) -> Vec<Vec<Vec<usize>>> {
        (0..self.k)
            .map(|j| self.family(j).iter().map(BitSet::to_vec).collect())
            .collect()
    }

    /// The system restricted to the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<FamilySystem> {
        if let Some(&bad) = columns.iter().find(|&&c| c >= self.m) {
            return Err(Error::param(format!("column {bad} out of range (m = {})", self.m)));
        }
        let families = (0..self.k)
            .map(|j| columns.iter().map(|&i| self.set(j, i).clone()).collect())
            .collect();
        FamilySystem::new(self.n, families)
    }

    pub fn without_column(&self, column: usize) -> Result<FamilySystem> {
        let keep: Vec<usize> = (0..self.m).filter(|&i| i != column).collect();
        self.select_columns(&keep)
    }

    /// `⋂_j A_{j, indices[j]}`.
    pub fn intersection(&self, indices: &[usize]) -> BitSet {
        let mut acc = BitSet::full(self.n);
        for (j, &i) in indices.iter().enumerate() {
            acc.intersect_with(self.set(j, i));
        }
        acc
    }

    /// Union of every set in the system.
    pub fn support(&self) -> BitSet {
        let mut acc = BitSet::new(self.n);
        for s in &self.sets {
            acc.union_with(s);
        }
        acc
    }

    /// Runs the `(k,t)` check; see [`is_bollobas_tuple`].
    pub fn check(&self, t: usize, guard: Guard) -> Result<Verdict> {
        is_bollobas_tuple(self, t, guard)
    }

    /// Consumes the system and returns it as a validated `(k,t)`-tuple.
    pub fn validate(self, t: usize, guard: Guard) -> Result<BollobasTuple> {
        match is_bollobas_tuple(&self, t, guard)? {
            Verdict::Valid => Ok(BollobasTuple { sys: self, t }),
            Verdict::Invalid(counterexample) => Err(Error::NotBollobas {
                k: self.k,
                t,
                counterexample,
            }),
        }
    }
}

/// A system that passed [`is_bollobas_tuple`] for its `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BollobasTuple {
    sys: FamilySystem,
    t: usize,
}

impl BollobasTuple {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn system(&self) -> &FamilySystem {
        &self.sys
    }

    pub fn into_system(self) -> FamilySystem {
        self.sys
    }
}

impl Deref for BollobasTuple {
    type Target = FamilySystem;

    fn deref(&self) -> &FamilySystem {
        &self.sys
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Fewer than `t` distinct indices, yet the intersection is nonempty.
    ForbiddenNonempty,
    /// At least `t` distinct indices, yet the intersection is empty.
    MissingNonempty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub indices: Vec<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        let what = match self.kind {
            ViolationKind::ForbiddenNonempty => "forbidden-nonempty",
            ViolationKind::MissingNonempty => "missing-nonempty",
        };
        write!(f, "index tuple ({}) is {what}", idx.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Counterexample),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks the `(k,t)` condition over all `m^k` index tuples.
///
/// Tuples are visited in lexicographic order and the first violation is
/// reported. Work is split over the first index; the reported counterexample
/// does not depend on the number of workers.
pub fn is_bollobas_tuple(sys: &FamilySystem, t: usize, guard: Guard) -> Result<Verdict> {
    let (k, m) = (sys.k, sys.m);
    if t < 2 || t > k {
        return Err(Error::param(format!("need 2 <= t <= k, got t = {t}, k = {k}")));
    }
    if m < t {
        return Err(Error::param(format!("need m >= t, got m = {m}, t = {t}")));
    }
    guard.check("(k,t)-tuple verification", saturating_pow(m, k))?;

    let found = (0..m)
        .into_par_iter()
        .find_map_first(|first| TupleWalker::new(sys, t).first_violation(first));
    Ok(match found {
        None => Verdict::Valid,
        Some(c) => Verdict::Invalid(c),
    })
}

struct TupleWalker<'a> {
    sys: &'a FamilySystem,
    t: usize,
    idx: Vec<usize>,
    /// `acc[d]` holds the words of `A_{0,idx[0]} ∩ ⋯ ∩ A_{d,idx[d]}`.
    acc: Vec<Vec<u64>>,
    counts: Vec<u32>,
    distinct: usize,
}

impl<'a> TupleWalker<'a> {
    fn new(sys: &'a FamilySystem, t: usize) -> Self {
        let words = words_for(sys.n);
        TupleWalker {
            sys,
            t,
            idx: vec![0; sys.k],
            acc: vec![vec![0; words]; sys.k],
            counts: vec![0; sys.m],
            distinct: 0,
        }
    }

    fn first_violation(mut self, first: usize) -> Option<Counterexample> {
        self.idx[0] = first;
        self.acc[0].copy_from_slice(self.sys.set(0, first).words());
        self.counts[first] = 1;
        self.distinct = 1;
        self.walk(1).map(|kind| Counterexample {
            indices: self.idx.clone(),
            kind,
        })
    }

    fn walk(&mut self, depth: usize) -> Option<ViolationKind> {
        let k = self.sys.k;
        if depth == k {
            let nonempty = self.acc[k - 1].iter().any(|&w| w != 0);
            let should = self.distinct >= self.t;
            return match (nonempty, should) {
                (true, false) => Some(ViolationKind::ForbiddenNonempty),
                (false, true) => Some(ViolationKind::MissingNonempty),
                _ => None,
            };
        }
        for i in 0..self.sys.m {
            self.idx[depth] = i;
            {
                let (prev, cur) = self.acc.split_at_mut(depth);
                let set = self.sys.set(depth, i).words();
                for ((c, p), s) in cur[0].iter_mut().zip(&prev[depth - 1]).zip(set) {
                    *c = p & s;
                }
            }
            self.counts[i] += 1;
            if self.counts[i] == 1 {
                self.distinct += 1;
            }
            let r = self.walk(depth + 1);
            self.counts[i] -= 1;
            if self.counts[i] == 0 {
                self.distinct -= 1;
            }
            if r.is_some() {
                return r;
            }
        }
        None
    }
}

/// A surjection `[k] → [t]`, stored 0-based: `image[h]` is the class of family `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surjection {
    t: usize,
    image: Vec<usize>,
}

impl Surjection {
    pub fn new(image: Vec<usize>, t: usize) -> Result<Self> {
        if t == 0 || t > image.len() {
            return Err(Error::param(format!(
                "surjection needs 1 <= t <= k, got t = {t}, k = {}",
                image.len()
            )));
        }
        let mut hit = vec![false; t];
        for &v in &image {
            if v >= t {
                return Err(Error::param(format!("surjection value {v} outside [0, {t})")));
            }
            hit[v] = true;
        }
        if let Some(missing) = hit.iter().position(|&h| !h) {
            return Err(Error::param(format!(
                "map is not surjective: class {} is never attained",
                missing + 1
            )));
        }
        Ok(Surjection { t, image })
    }

    /// Parses the 1-based notation `φ = (φ(1), …, φ(k))`.
    pub fn from_one_based(image: &[usize], t: usize) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::param("surjection values are 1-based"));
        }
        Surjection::new(image.iter().map(|v| v - 1).collect(), t)
    }

    pub fn identity(k: usize) -> Self {
        Surjection { t: k, image: (0..k).collect() }
    }

    /// Family `j` alone in the first class, all others in the second.
    pub fn singleton(k: usize, j: usize) -> Result<Self> {
        if j >= k {
            return Err(Error::param(format!("family {j} out of range (k = {k})")));
        }
        Surjection::new((0..k).map(|h| usize::from(h != j)).collect(), 2)
    }

    /// The default collapse: families `0..t-1` keep their own class and every
    /// later family joins the last class. For `t = 2` this is `singleton(k, 0)`.
    pub fn canonical(k: usize, t: usize) -> Result<Self> {
        Surjection::new((0..k).map(|h| h.min(t.saturating_sub(1))).collect(), t)
    }

    /// Every surjection `[k] → [t]`, in lexicographic order of the image.
    pub fn all(k: usize, t: usize) -> Vec<Surjection> {
        let mut out = Vec::new();
        if t == 0 || t > k {
            return out;
        }
        let mut image = vec![0; k];
        loop {
            if let Ok(s) = Surjection::new(image.clone(), t) {
                out.push(s);
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                image[pos] += 1;
                if image[pos] < t {
                    break;
                }
                image[pos] = 0;
            }
        }
    }

    pub fn k(&self) -> usize {
        self.image.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Families mapped to class `class`.
    pub fn preimage(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter(move |(_, &v)| v == class)
            .map(|(h, _)| h)
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.image.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "({})", vals.join(","))
    }
}

/// A sequence of pairwise-distinct column indices, read cyclically so that
/// position `len` wraps back to position 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSequence {
    entries: Vec<usize>,
}

impl IndexSequence {
    pub fn new(entries: Vec<usize>, m: usize) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::param("index sequence must have at least one entry"));
        }
        for (p, &e) in entries.iter().enumerate() {
            if e >= m {
                return Err(Error::param(format!("index {e} out of range (m = {m})")));
            }
            if entries[..p].contains(&e) {
                return Err(Error::param(format!("index {e} repeated in sequence")));
            }
        }
        Ok(IndexSequence { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at `pos`, where `pos == len` wraps to the first entry.
    pub fn at(&self, pos: usize) -> usize {
        self.entries[pos % self.entries.len()]
    }

    /// All sequences of `len` distinct elements of `[m]`, lexicographically.
    pub fn all(m: usize, len: usize) -> Vec<IndexSequence> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        let mut used = vec![false; m];
        fn rec(
            m: usize,
            len: usize,
            cur: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<IndexSequence>,
        ) {
            if cur.len() == len {
                out.push(IndexSequence { entries: cur.clone() });
                return;
            }
            for i in 0..m {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(m, len, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        if len >= 1 && len <= m {
            rec(m, len, &mut cur, &mut used, &mut out);
        }
        out
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", vals.join(","))
    }
}
