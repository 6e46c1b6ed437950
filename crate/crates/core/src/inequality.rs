//! Surjection collapse, the disjointified sets `A_{j,σ}(φ)`, and the exact
//! multinomial sum they bound.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::{multinomial, reciprocal, ExactRational};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::family::{BollobasTuple, FamilySystem, IndexSequence, Surjection};

/// Collapses a `(k,t)`-tuple to `t` families: class `ℓ`, column `i` becomes
/// `⋂_{h : φ(h) = ℓ} A_{h,i}`.
pub fn reduce_via_surjection(tuple: &BollobasTuple, phi: &Surjection) -> Result<FamilySystem> {
    if phi.k() != tuple.k() || phi.t() != tuple.t() {
        return Err(Error::param(format!(
            "surjection maps [{}] -> [{}], tuple is a ({},{})-tuple",
            phi.k(),
            phi.t(),
            tuple.k(),
            tuple.t()
        )));
    }
    Ok(collapse(tuple.system(), phi))
}

fn collapse(sys: &FamilySystem, phi: &Surjection) -> FamilySystem {
    let families = (0..phi.t())
        .map(|class| {
            (0..sys.m())
                .map(|i| {
                    let mut acc = BitSet::full(sys.n());
                    for h in phi.preimage(class) {
                        acc.intersect_with(sys.set(h, i));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    FamilySystem::new(sys.n(), families).expect("collapse preserves shape")
}

/// `A_{1,σ}(φ), …, A_{t,σ}(φ)`: class `j` intersects its families at column
/// `σ(j)` (with `σ(t) = σ(1)`) and then drops everything claimed by earlier
/// classes. The result is pairwise disjoint.
pub fn derived_sets(
    sys: &FamilySystem,
    phi: &Surjection,
    sigma: &IndexSequence,
) -> Result<Vec<BitSet>> {
    let t = phi.t();
    if phi.k() != sys.k() {
        return Err(Error::param(format!(
            "surjection has domain [{}], system has k = {}",
            phi.k(),
            sys.k()
        )));
    }
    if sigma.len() + 1 != t {
        return Err(Error::param(format!(
            "index sequence has length {}, expected t - 1 = {}",
            sigma.len(),
            t - 1
        )));
    }
    if let Some(&bad) = sigma.entries().iter().find(|&&e| e >= sys.m()) {
        return Err(Error::param(format!("index {bad} out of range (m = {})", sys.m())));
    }
    let mut claimed = BitSet::new(sys.n());
    let mut out = Vec::with_capacity(t);
    for class in 0..t {
        let column = sigma.at(class);
        let mut set = BitSet::full(sys.n());
        for h in phi.preimage(class) {
            set.intersect_with(sys.set(h, column));
        }
        set.difference_with(&claimed);
        claimed.union_with(&set);
        out.push(set);
    }
    Ok(out)
}

/// One summand of the inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTerm {
    pub sigma: IndexSequence,
    /// `|A_{j,σ}(φ)|` for each class `j`.
    pub sizes: Vec<usize>,
    pub multinomial: BigUint,
}

impl SigmaTerm {
    pub fn union_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn has_empty_block(&self) -> bool {
        self.sizes.contains(&0)
    }
}

/// Every summand, one per `σ ∈ [m]_{(t-1)}` in lexicographic order.
pub fn sum_terms(sys: &FamilySystem, phi: &Surjection) -> Result<Vec<SigmaTerm>> {
    let t = phi.t();
    if t < 2 {
        return Err(Error::param("need t >= 2"));
    }
    IndexSequence::all(sys.m(), t - 1)
        .into_iter()
        .map(|sigma| {
            let sets = derived_sets(sys, phi, &sigma)?;
            let sizes: Vec<usize> = sets.iter().map(BitSet::count).collect();
            let total = sizes.iter().sum();
            let multinomial = multinomial(total, &sizes)?;
            Ok(SigmaTerm { sigma, sizes, multinomial })
        })
        .collect()
}

/// `Σ_σ multinomial(|⋃_j A_{j,σ}(φ)|; |A_{1,σ}(φ)|, …, |A_{t,σ}(φ)|)^{-1}`, exactly.
///
/// Only defined for validated tuples; the value is at most 1.
pub fn theorem_sum(tuple: &BollobasTuple, phi: &Surjection) -> Result<ExactRational> {
    if phi.t() != tuple.t() {
        return Err(Error::param(format!(
            "surjection targets [{}], tuple has t = {}",
            phi.t(),
            tuple.t()
        )));
    }
    let terms = sum_terms(tuple.system(), phi)?;
    Ok(terms
        .iter()
        .fold(ExactRational::zero(), |acc, term| acc + reciprocal(&term.multinomial)))
}
