//! Tuple validity and the inequality sum against naive set-based oracles.

use std::collections::BTreeSet;

use bollobas::constructions::{classical_pairs, injective_words, modular_k2, sharpness_k2};
use bollobas::covering::random_tuple;
use bollobas::family::{is_bollobas_tuple, ViolationKind};
use bollobas::inequality::{reduce_via_surjection, theorem_sum};
use bollobas::partitions::stirling2;
use bollobas::{ExactRational, FamilySystem, Guard, IndexSequence, Surjection, Verdict};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Sets = Vec<Vec<BTreeSet<usize>>>;

fn as_sets(sys: &FamilySystem) -> Sets {
    sys.to_elements()
        .into_iter()
        .map(|f| f.into_iter().map(|s| s.into_iter().collect()).collect())
        .collect()
}

fn index_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0..m.pow(k as u32))
        .map(|mut c| {
            let mut v = vec![0; k];
            for x in v.iter_mut().rev() {
                *x = c % m;
                c /= m;
            }
            v
        })
        .collect()
}

fn naive_valid(sets: &Sets, n: usize, t: usize) -> bool {
    let k = sets.len();
    let m = sets[0].len();
    index_tuples(m, k).into_iter().all(|idx| {
        let distinct: BTreeSet<_> = idx.iter().collect();
        let meets = (0..n).any(|x| (0..k).all(|j| sets[j][idx[j]].contains(&x)));
        meets == (distinct.len() >= t)
    })
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// The sum written out directly from the definition of the derived sets.
fn naive_sum(sets: &Sets, n: usize, phi: &[usize], t: usize) -> ExactRational {
    let k = sets.len();
    let m = sets[0].len();
    let mut total = ExactRational::zero();
    for sigma in index_tuples(m, t - 1) {
        if sigma.iter().collect::<BTreeSet<_>>().len() != t - 1 {
            continue;
        }
        let col = |j: usize| if j == t - 1 { sigma[0] } else { sigma[j] };
        let mut earlier: BTreeSet<usize> = BTreeSet::new();
        let mut sizes = Vec::new();
        for class in 0..t {
            let block: BTreeSet<usize> = (0..n)
                .filter(|x| (0..k).filter(|&h| phi[h] == class).all(|h| sets[h][col(class)].contains(x)))
                .filter(|x| !earlier.contains(x))
                .collect();
            sizes.push(block.len());
            earlier.extend(block);
        }
        let union: usize = sizes.iter().sum();
        let denom = factorial(union) / sizes.iter().map(|&s| factorial(s)).product::<BigInt>();
        total += ExactRational::new(BigInt::one(), denom);
    }
    total
}

fn random_system() -> impl Strategy<Value = (usize, usize, Vec<Vec<Vec<usize>>>)> {
    (2usize..=3, 1usize..=5).prop_flat_map(|(k, n)| {
        (2usize..=k, k.max(2)..=4).prop_flat_map(move |(t, m)| {
            let set = proptest::collection::btree_set(0..n, 0..=n).prop_map(|s| s.into_iter().collect::<Vec<_>>());
            let fams = proptest::collection::vec(proptest::collection::vec(set, m), k);
            fams.prop_map(move |f| (n, t, f))
        })
    })
}

proptest! {
    #[test]
    fn checker_matches_naive_oracle((n, t, fams) in random_system()) {
        let sys = FamilySystem::from_elements(n, &fams).unwrap();
        let verdict = is_bollobas_tuple(&sys, t, Guard::default()).unwrap();
        prop_assert_eq!(verdict.is_valid(), naive_valid(&as_sets(&sys), n, t));
        if let Verdict::Invalid(c) = verdict {
            let distinct = c.indices.iter().collect::<BTreeSet<_>>().len();
            let meets = !sys.intersection(&c.indices).is_empty();
            match c.kind {
                ViolationKind::ForbiddenNonempty => prop_assert!(distinct < t && meets),
                ViolationKind::MissingNonempty => prop_assert!(distinct >= t && !meets),
            }
        }
    }
}

#[test]
fn sums_match_naive_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for (k, t, m) in [(2, 2, 3), (2, 2, 5), (3, 2, 3), (3, 2, 4), (3, 3, 3)] {
        for _ in 0..15 {
            let Some(sys) = random_tuple(k, t, m, 6, 30, &mut rng).unwrap() else { continue };
            let sets = as_sets(&sys);
            let n = sys.n();
            let tuple = sys.validate(t, Guard::default()).unwrap();
            for phi in Surjection::all(k, t) {
                let ours = theorem_sum(&tuple, &phi).unwrap();
                assert_eq!(ours, naive_sum(&sets, n, phi.image(), t), "phi = {phi}");
                assert!(ours <= ExactRational::one());
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn constructions_satisfy_inequality_for_every_surjection() {
    let systems = [
        (sharpness_k2(3, 12).unwrap(), 2),
        (modular_k2(3, 2, Guard::default()).unwrap(), 2),
        (modular_k2(4, 2, Guard::default()).unwrap(), 2),
        (injective_words(3, 4).unwrap(), 3),
        (injective_words(4, 4).unwrap(), 4),
    ];
    for (sys, t) in systems {
        let sets = as_sets(&sys);
        let n = sys.n();
        let k = sys.k();
        let tuple = sys.validate(t, Guard::default()).unwrap();
        for phi in Surjection::all(k, t) {
            let sum = theorem_sum(&tuple, &phi).unwrap();
            assert!(sum <= ExactRational::one());
            assert_eq!(sum, naive_sum(&sets, n, phi.image(), t));
        }
    }
}

#[test]
fn sharpness_is_tight_only_when_the_first_family_stands_alone() {
    let tuple = sharpness_k2(3, 12).unwrap().validate(2, Guard::default()).unwrap();
    for phi in Surjection::all(3, 2) {
        let sum = theorem_sum(&tuple, &phi).unwrap();
        let alone = phi.image()[0] != phi.image()[1] && phi.image()[1] == phi.image()[2];
        assert_eq!(sum.is_one(), alone, "phi = {phi}: {sum}");
    }
}

#[test]
fn classical_pairs_are_tight() {
    for (a, b) in [(1, 1), (2, 3), (3, 3), (1, 5)] {
        let tuple = classical_pairs(a, b).unwrap().validate(2, Guard::default()).unwrap();
        assert!(theorem_sum(&tuple, &Surjection::identity(2)).unwrap().is_one());
    }
}

#[test]
fn surjection_count() {
    // t!·S(k,t) surjections [k] → [t].
    for k in 2..=5 {
        for t in 2..=k {
            let expect = (1..=t as u128).product::<u128>() * stirling2(k, t);
            assert_eq!(Surjection::all(k, t).len() as u128, expect, "k = {k}, t = {t}");
        }
    }
}

#[test]
fn reduction_gives_a_square_tuple() {
    let tuple = modular_k2(4, 2, Guard::default()).unwrap().validate(2, Guard::default()).unwrap();
    for phi in Surjection::all(4, 2) {
        let reduced = reduce_via_surjection(&tuple, &phi).unwrap();
        assert!(reduced.check(2, Guard::default()).unwrap().is_valid(), "phi = {phi}");
    }
}

#[test]
fn perturbed_sharpness_is_rejected() {
    let sys = sharpness_k2(2, 8).unwrap();
    let mut fams = sys.to_elements();
    // Put column 3's missing point back into A_{1,3}: the diagonal (3,3) now meets.
    fams[0][3].push(3);
    fams[0][3].sort();
    let bad = FamilySystem::from_elements(8, &fams).unwrap();
    match is_bollobas_tuple(&bad, 2, Guard::default()).unwrap() {
        Verdict::Invalid(c) => {
            assert_eq!(c.indices, vec![3, 3]);
            assert_eq!(c.kind, ViolationKind::ForbiddenNonempty);
        }
        Verdict::Valid => panic!("perturbation not detected"),
    }
}

#[test]
fn three_colour_modular_variant_fails() {
    // Columns indexed by maps [n] → {0,1,2} instead of {0,1}: already at n = 1
    // some index tuple with distinct entries has an empty intersection.
    let (k, n) = (3, 1);
    let cols: Vec<usize> = (0..3).collect();
    let fams: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|j| cols.iter().map(|&f| (0..k * n).filter(|&x| x != (f + j) % k).collect()).collect())
        .collect();
    let sys = FamilySystem::from_elements(k * n, &fams).unwrap();
    let v = is_bollobas_tuple(&sys, 2, Guard::default()).unwrap();
    assert!(!v.is_valid());
    assert!(!naive_valid(&as_sets(&sys), k * n, 2));
}

#[test]
fn index_sequences_wrap() {
    let s = IndexSequence::new(vec![2, 0], 3).unwrap();
    assert_eq!(s.at(2), 2);
    assert_eq!(IndexSequence::all(4, 2).len(), 12);
    assert!(IndexSequence::new(vec![1, 1], 3).is_err());
}
