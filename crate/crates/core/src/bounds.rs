//! Closed-form bounds on `β_{k,t}(n)` and `f_{k,t}(n)`.
//!
//! Binomial thresholds use exact integers; everything involving logarithms or
//! entropy is `f64`, compared with [`TOLERANCE`]. Bounds that only hold for
//! unspecified "large enough" `n` are annotated, not asserted.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::binomial;
use crate::covering::size_threshold;
use crate::error::{Error, Result};

pub const TOLERANCE: f64 = 1e-12;

/// `H(q) = -q log₂ q - (1-q) log₂(1-q)` for `0 < q < 1`.
///
/// At `q ∈ {0, 1}` this returns an error; use [`binary_entropy_or_limit`]
/// for the continuous extension.
pub fn binary_entropy(q: f64) -> Result<f64> {
    match binary_entropy_or_limit(q)? {
        (h, false) => Ok(h),
        (_, true) => Err(Error::param(format!("H({q}) is outside the open domain (the limit is 0)"))),
    }
}

/// `(H(q), at_boundary)`, with `H(0) = H(1) = 0` flagged.
pub fn binary_entropy_or_limit(q: f64) -> Result<(f64, bool)> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::param(format!("entropy argument {q} is not in [0, 1]")));
    }
    if q == 0.0 || q == 1.0 {
        return Ok((0.0, true));
    }
    Ok((-q * q.log2() - (1.0 - q) * (1.0 - q).log2(), false))
}

fn min_m(n: u64, mut enough: impl FnMut(usize) -> BigUint) -> usize {
    let n = BigUint::from(n);
    (1..).find(|&m| enough(m) >= n).expect("binomials grow without bound")
}

/// `min { m >= 1 : C(m, ⌈m/k⌉) >= n }`.
pub fn threshold_min_m(n: u64, k: usize) -> Result<usize> {
    if n == 0 || k < 2 {
        return Err(Error::param(format!("threshold needs n >= 1 and k >= 2, got n = {n}, k = {k}")));
    }
    Ok(min_m(n, |m| binomial(m, m.div_ceil(k))))
}

/// `min { m >= 1 : 2·C(m-1, ⌊m/2⌋) >= n }`, the clique cover number of `K_n`
/// minus a perfect matching.
pub fn orlin(n: u64) -> Result<usize> {
    if n < 2 {
        return Err(Error::param(format!("need n >= 2, got {n}")));
    }
    Ok(min_m(n, |m| binomial(m - 1, m / 2) * 2u32))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CliqueCoverFormulas {
    pub orlin: usize,
    /// `log₂(n/k) / H(1/k)`, for `k >= 3`.
    pub hypergraph_lb: Option<f64>,
    /// `k log₂(n/k) / log₂(ke)`, the weaker closed form.
    pub hypergraph_lb_simple: Option<f64>,
}

pub fn clique_cover_formulas(n: u64, k: usize) -> Result<CliqueCoverFormulas> {
    let orlin = orlin(n)?;
    let (lb, simple) = if k >= 3 {
        let kf = k as f64;
        let log = (n as f64 / kf).log2();
        (Some(log / binary_entropy(1.0 / kf)?), Some(kf * log / (kf * std::f64::consts::E).log2()))
    } else {
        (None, None)
    };
    Ok(CliqueCoverFormulas { orlin, hypergraph_lb: lb, hypergraph_lb_simple: simple })
}

/// `1/k <= H(1/k) <= log₂(ke)/k` within [`TOLERANCE`].
pub fn entropy_chain_holds(k: usize) -> Result<bool> {
    let kf = k as f64;
    let h = binary_entropy(1.0 / kf)?;
    Ok(1.0 / kf <= h + TOLERANCE && h <= (kf * std::f64::consts::E).log2() / kf + TOLERANCE)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
    Exact,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
            Direction::Exact => "exact",
        })
    }
}

/// Range of `n` over which a bound is claimed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    AllN,
    /// Asymptotic statement with no explicit threshold.
    LargeN,
    NAtLeast(u128),
}

impl Validity {
    /// Whether the bound is known to apply at `n`. `LargeN` never is.
    pub fn applies(&self, n: u64) -> bool {
        match *self {
            Validity::AllN => true,
            Validity::LargeN => false,
            Validity::NAtLeast(x) => n as u128 >= x,
        }
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::AllN => f.write_str("all n"),
            Validity::LargeN => f.write_str("large n"),
            Validity::NAtLeast(x) => write!(f, "n >= {x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedBound {
    pub name: &'static str,
    pub direction: Direction,
    pub value: f64,
    pub validity: Validity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub k: usize,
    pub t: usize,
    pub n: u64,
    pub bounds: Vec<NamedBound>,
    /// The exact quantity, when the caller computed it.
    pub exact: Option<f64>,
}

impl BoundReport {
    fn push(&mut self, name: &'static str, direction: Direction, value: f64, validity: Validity) {
        self.bounds.push(NamedBound { name, direction, value, validity });
    }

    pub fn get(&self, name: &str) -> Option<&NamedBound> {
        self.bounds.iter().find(|b| b.name == name)
    }

    /// Bounds that apply at `n` but disagree with `exact`.
    pub fn violations(&self) -> Vec<&NamedBound> {
        let Some(x) = self.exact else { return Vec::new() };
        self.bounds
            .iter()
            .filter(|b| b.validity.applies(self.n))
            .filter(|b| match b.direction {
                Direction::Lower => x + TOLERANCE < b.value,
                Direction::Upper => x > b.value + TOLERANCE,
                Direction::Exact => (x - b.value).abs() > TOLERANCE,
            })
            .collect()
    }

    /// Matched lower/upper pairs that both apply must not cross.
    pub fn crossings(&self) -> Vec<(&NamedBound, &NamedBound)> {
        let applies = |b: &&NamedBound| b.validity.applies(self.n);
        let lows = self.bounds.iter().filter(|b| b.direction != Direction::Upper).filter(applies);
        lows.flat_map(|lo| {
            self.bounds
                .iter()
                .filter(|b| b.direction != Direction::Lower)
                .filter(applies)
                .filter(move |hi| lo.value > hi.value + TOLERANCE)
                .map(move |hi| (lo, hi))
        })
        .collect()
    }

    pub fn csv_rows(&self, out: &mut String) {
        for b in &self.bounds {
            let _ = writeln!(out, "{},{},{},{}", b.name, b.direction, b.value, b.validity);
        }
    }
}

pub const CSV_HEADER: &str = "bound-name,direction,value,validity";

fn check_kt(k: usize, t: usize) -> Result<()> {
    if !(2 <= t && t <= k) {
        return Err(Error::param(format!("need 2 <= t <= k, got k = {k}, t = {t}")));
    }
    Ok(())
}

fn binom_f64(n: usize, r: usize) -> f64 {
    binomial(n, r).to_f64().unwrap_or(f64::INFINITY)
}

/// Per-`n` rates `(lower, upper)` for `log₂ β_{k,t}(n) / n`, `k >= 3`.
pub fn beta_rates(k: usize, t: usize) -> Result<(f64, f64)> {
    check_kt(k, t)?;
    if k < 3 {
        return Err(Error::param("rate bounds need k >= 3"));
    }
    let kf = k as f64;
    if t == 2 {
        return Ok((1.0 / kf, binary_entropy(1.0 / kf)?));
    }
    let c = binom_f64(k, t - 1);
    let tf = t as f64;
    let lower = std::f64::consts::LOG2_E / (c * (tf + 1.0) * tf.powi(t as i32 - 1));
    let upper = 2.0 / (c * (tf - 1.0).powi(t as i32 - 3));
    Ok((lower, upper))
}

/// Bounds on `log₂ β_{k,t}(n)`.
pub fn beta_bounds(k: usize, t: usize, n: u64) -> Result<BoundReport> {
    check_kt(k, t)?;
    if n == 0 {
        return Err(Error::param("need n >= 1"));
    }
    let mut r = BoundReport { k, t, n, bounds: Vec::new(), exact: None };
    let nf = n as f64;
    let kf = k as f64;
    if t == 2 {
        let nu = n as usize;
        let log_binom = binomial(nu, nu / k).to_f64().map_or(f64::INFINITY, f64::log2);
        let dir = if k == 2 { Direction::Exact } else { Direction::Upper };
        r.push("log2-beta-binomial", dir, log_binom, if k == 2 { Validity::NAtLeast(2) } else { Validity::AllN });
    }
    if k >= 3 {
        let (lo, hi) = beta_rates(k, t)?;
        if t == 2 {
            r.push("log2-beta-rate-lower", Direction::Lower, nf * lo, Validity::LargeN);
            r.push("log2-beta-entropy-upper", Direction::Upper, nf * hi, Validity::LargeN);
            r.push("log2-beta-log-upper", Direction::Upper, nf * (kf * std::f64::consts::E).log2() / kf, Validity::LargeN);
        } else {
            r.push("log2-beta-general-lower", Direction::Lower, nf * lo, Validity::LargeN);
            r.push("log2-beta-general-upper", Direction::Upper, nf * hi, Validity::LargeN);
        }
    }
    Ok(r)
}

/// Bounds on `f_{k,t}(n)`.
pub fn f_bounds(k: usize, t: usize, n: u64) -> Result<BoundReport> {
    check_kt(k, t)?;
    if n == 0 {
        return Err(Error::param("need n >= 1"));
    }
    let mut r = BoundReport { k, t, n, bounds: Vec::new(), exact: None };
    let log_n = (n as f64).log2();
    let kf = k as f64;
    let tf = t as f64;
    if t == 2 {
        let threshold = threshold_min_m(n, k)? as f64;
        if k == 2 {
            r.push("f-biclique", Direction::Exact, threshold, Validity::AllN);
        } else {
            r.push("f-threshold-lower", Direction::Lower, threshold, Validity::AllN);
            r.push("f-entropy-lower", Direction::Lower, log_n / binary_entropy(1.0 / kf)?, Validity::LargeN);
            r.push("f-log-lower", Direction::Lower, kf * log_n / (kf * std::f64::consts::E).log2(), Validity::LargeN);
            r.push("f-k-upper", Direction::Upper, kf * log_n, Validity::LargeN);
        }
    } else {
        let c = binom_f64(k, t - 1);
        r.push("f-general-lower", Direction::Lower, c * (tf - 1.0).powi(t as i32 - 3) / 2.0 * log_n, Validity::LargeN);
        if t == k {
            r.push("f-square-lower", Direction::Lower, kf.powi(k as i32 - 2) / 2.0 * log_n, Validity::LargeN);
        }
        r.push(
            "f-general-upper",
            Direction::Upper,
            (tf + 1.0) * tf.powi(t as i32 - 1) / std::f64::consts::LOG2_E * c * log_n,
            Validity::LargeN,
        );
    }
    // Randomized construction: C(k,t) subsets times N colorings, argued for n >= k·S(k,t).
    let random = binom_f64(k, t) * (tf + 1.0) * tf.powi(t as i32) * log_n
        / ((k - t + 1) as f64 * std::f64::consts::LOG2_E);
    r.push("f-random-upper", Direction::Upper, random, Validity::NAtLeast(size_threshold(k, t)));
    Ok(r)
}
