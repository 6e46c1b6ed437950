//! Explicit Bollobás tuples.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{saturating_pow, Error, Guard, Result};
use crate::family::FamilySystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    ClassicalPairs,
    SharpnessK2,
    ModularK2,
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical-pairs" => Ok(ConstructionKind::ClassicalPairs),
            "sharpness-k2" => Ok(ConstructionKind::SharpnessK2),
            "modular-k2" => Ok(ConstructionKind::ModularK2),
            other => Err(Error::param(format!(
                "unknown construction '{other}' (expected classical-pairs, sharpness-k2 or modular-k2)"
            ))),
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionKind::ClassicalPairs => "classical-pairs",
            ConstructionKind::SharpnessK2 => "sharpness-k2",
            ConstructionKind::ModularK2 => "modular-k2",
        })
    }
}

/// A named construction with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    ClassicalPairs { a: usize, b: usize },
    SharpnessK2 { k: usize, n: usize },
    ModularK2 { k: usize, n: usize },
}

impl ConstructionSpec {
    /// `(p, q)` is `(a, b)` for classical pairs and `(k, n)` otherwise.
    pub fn new(kind: ConstructionKind, p: usize, q: usize) -> Self {
        match kind {
            ConstructionKind::ClassicalPairs => ConstructionSpec::ClassicalPairs { a: p, b: q },
            ConstructionKind::SharpnessK2 => ConstructionSpec::SharpnessK2 { k: p, n: q },
            ConstructionKind::ModularK2 => ConstructionSpec::ModularK2 { k: p, n: q },
        }
    }

    /// The `t` the output is a tuple for.
    pub fn t(&self) -> usize {
        2
    }

    pub fn build(&self, guard: Guard) -> Result<FamilySystem> {
        match *self {
            ConstructionSpec::ClassicalPairs { a, b } => classical_pairs(a, b),
            ConstructionSpec::SharpnessK2 { k, n } => sharpness_k2(k, n),
            ConstructionSpec::ModularK2 { k, n } => modular_k2(k, n, guard),
        }
    }
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::ClassicalPairs { a, b } => write!(f, "classical-pairs(a={a}, b={b})"),
            ConstructionSpec::SharpnessK2 { k, n } => write!(f, "sharpness-k2(k={k}, n={n})"),
            ConstructionSpec::ModularK2 { k, n } => write!(f, "modular-k2(k={k}, n={n})"),
        }
    }
}

/// `r`-subsets of `{0, …, n-1}` in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - r + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All ordered partitions `(A, B)` of `{0, …, a+b-1}` with `|A| = a`, ordered
/// by the element list of `A`. The tight case of the two-family inequality.
pub fn classical_pairs(a: usize, b: usize) -> Result<FamilySystem> {
    if a == 0 || b == 0 {
        return Err(Error::param(format!("classical pairs need a, b >= 1, got ({a},{b})")));
    }
    let n = a + b;
    let (firsts, seconds): (Vec<BitSet>, Vec<BitSet>) = combinations(n, a)
        .into_iter()
        .map(|c| {
            let first = BitSet::from_elements(n, c);
            let second = first.complement();
            (first, second)
        })
        .unzip();
    FamilySystem::new(n, vec![firsts, seconds])
}

/// The `(k,2)`-tuple on `Z_n` with `A_{1,i} = {i}^c`,
/// `A_{j,i} = {i-(j-1), i+(j-1)}^c` for the middle families, and
/// `A_{k,i} = {i-k+2, …, i+k-2}`. Requires `n >= 4k`.
pub fn sharpness_k2(k: usize, n: usize) -> Result<FamilySystem> {
    if k < 2 {
        return Err(Error::param(format!("sharpness construction needs k >= 2, got {k}")));
    }
    if n < 4 * k {
        return Err(Error::param(format!("sharpness construction needs n >= 4k = {}, got {n}", 4 * k)));
    }
    let modn = |x: isize| x.rem_euclid(n as isize) as usize;
    let mut families = Vec::with_capacity(k);
    for j in 1..=k {
        let column = (0..n)
            .map(|i| {
                let i = i as isize;
                let span = j as isize - 1;
                if j == 1 {
                    let mut s = BitSet::full(n);
                    s.remove(modn(i));
                    s
                } else if j < k {
                    let mut s = BitSet::full(n);
                    s.remove(modn(i - span));
                    s.remove(modn(i + span));
                    s
                } else {
                    let reach = k as isize - 2;
                    BitSet::from_elements(n, (-reach..=reach).map(|x| modn(i + x)))
                }
            })
            .collect();
        families.push(column);
    }
    FamilySystem::new(n, families)
}

/// The `(k,2)`-tuple on `n` blocks of size `k`. Column `f` (a map
/// `[n] → {0,1}`, counted in binary with block 0 as the most significant bit)
/// has `A_{j,f}` equal to the complement of `{ x_{b, (f(b)+j) mod k} }`.
/// Element `x_{b,c}` is `b*k + c`.
pub fn modular_k2(k: usize, n: usize, guard: Guard) -> Result<FamilySystem> {
    if k < 3 {
        return Err(Error::param(format!("modular construction needs k >= 3, got {k}")));
    }
    if n == 0 {
        return Err(Error::param("modular construction needs n >= 1"));
    }
    if n >= 64 {
        return Err(Error::param(format!("modular construction with n = {n} has more than 2^63 columns")));
    }
    let m = 1usize << n;
    guard.check("modular construction (2^n)^k verification", saturating_pow(m, k))?;
    let ground = k * n;
    let families = (0..k)
        .map(|j| {
            (0..m)
                .map(|f| {
                    let mut s = BitSet::full(ground);
                    for b in 0..n {
                        let bit = (f >> (n - 1 - b)) & 1;
                        s.remove(b * k + (bit + j) % k);
                    }
                    s
                })
                .collect()
        })
        .collect();
    FamilySystem::new(ground, families)
}

/// The `(k,k)`-tuple whose ground set is the injective words `[m]^k`, with
/// `A_{j,i}` the words having `i` in position `j`. Each index tuple with
/// distinct entries meets in exactly one word.
pub fn injective_words(k: usize, m: usize) -> Result<FamilySystem> {
    if k < 2 || m < k {
        return Err(Error::param(format!("injective words need 2 <= k <= m, got k = {k}, m = {m}")));
    }
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        words = words
            .iter()
            .flat_map(|w| (0..m).filter(|i| !w.contains(i)).map(|i| [w.as_slice(), &[i]].concat()))
            .collect();
    }
    let n = words.len();
    let families = (0..k)
        .map(|j| {
            (0..m)
                .map(|i| BitSet::from_elements(n, (0..n).filter(|&x| words[x][j] == i)))
                .collect()
        })
        .collect();
    FamilySystem::new(n, families)
}
