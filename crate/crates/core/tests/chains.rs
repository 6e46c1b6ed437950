//! Chain families against a pairwise-order oracle.

use bollobas::chains::{
    chain_count, chain_membership, verify_chains, verify_disjointness, ChainContext, Disjointness,
};
use bollobas::constructions::{classical_pairs, injective_words, sharpness_k2};
use bollobas::inequality::derived_sets;
use bollobas::{FamilySystem, Guard, Surjection};
use num_bigint::BigUint;

/// Membership from the definition: every point of an earlier nonempty block
/// comes before every point of a later one.
fn pairwise_member(blocks: &[Vec<usize>], rank: impl Fn(usize) -> usize) -> bool {
    blocks.iter().enumerate().all(|(i, a)| {
        blocks[i + 1..].iter().all(|b| a.iter().all(|&x| b.iter().all(|&y| rank(x) < rank(y))))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |pos| {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, n - 1);
                q
            })
        })
        .collect()
}

#[test]
fn membership_matches_pairwise_oracle() {
    for sys in [sharpness_k2(2, 8).unwrap(), classical_pairs(2, 3).unwrap()] {
        let tuple = sys.clone().validate(2, Guard::default()).unwrap();
        let ctx = ChainContext::new(&tuple).unwrap();
        let ground = ctx.ground().to_vec();
        let perms = permutations(ctx.n());
        for sigma in ctx.sigmas() {
            let blocks: Vec<Vec<usize>> =
                derived_sets(&sys, &Surjection::identity(2), sigma).unwrap().iter().map(|b| b.to_vec()).collect();
            let mut count = 0u64;
            for perm in &perms {
                let rank = |x: usize| perm[ground.binary_search(&x).unwrap()];
                let expect = pairwise_member(&blocks, rank);
                assert_eq!(chain_membership(&ctx, sigma, perm).unwrap(), expect);
                count += expect as u64;
            }
            assert!(count > 0);
        }
    }
}

#[test]
fn per_sigma_counts_agree_across_entry_points() {
    let tuple = classical_pairs(2, 2).unwrap().validate(2, Guard::default()).unwrap();
    let ctx = ChainContext::new(&tuple).unwrap();
    let report = verify_disjointness(&ctx, Guard::default()).unwrap();
    assert_eq!(report.verdict, Disjointness::Disjoint);
    for (sigma, &count) in ctx.sigmas().iter().zip(&report.counts) {
        let c = chain_count(&ctx, sigma, Guard::default()).unwrap();
        assert_eq!(c.enumerated, count);
        // |A| = |B| = 2 in n = 4: 2!·2! orderings
        assert_eq!(c.formula, BigUint::from(4u32));
    }
    assert_eq!(report.counts.iter().sum::<u64>(), 24);
}

#[test]
fn square_tuples_sum_to_n_factorial_times_the_sum() {
    for (k, m) in [(3, 3), (2, 3)] {
        let tuple = injective_words(k, m).unwrap().validate(k, Guard::default()).unwrap();
        let r = verify_chains(&tuple, Guard::default()).unwrap();
        assert!(r.holds(), "injective words ({k},{m})");
    }
}

#[test]
fn empty_blocks_are_flagged_and_vacuous() {
    // B_0 ⊆ A_0, so σ = (0) leaves the second block empty.
    let sys = FamilySystem::from_elements(3, &[vec![vec![0, 1], vec![2]], vec![vec![1], vec![0]]]).unwrap();
    let ctx = ChainContext::unchecked(&sys).unwrap();
    let sigma = &ctx.sigmas()[0];
    let c = chain_count(&ctx, sigma, Guard::default()).unwrap();
    assert!(c.has_empty_block());
    assert_eq!(c.enumerated, 6);
}

#[test]
fn invalid_system_collides() {
    // A_0 and B_0 share the point 1.
    let sys = FamilySystem::from_elements(3, &[vec![vec![0, 1], vec![2]], vec![vec![1], vec![0]]]).unwrap();
    assert!(!sys.check(2, Guard::default()).unwrap().is_valid());
    let ctx = ChainContext::unchecked(&sys).unwrap();
    let r = verify_disjointness(&ctx, Guard::default()).unwrap();
    match r.verdict {
        Disjointness::Collision { perm, first, second } => {
            assert!(chain_membership(&ctx, &first, &perm).unwrap());
            assert!(chain_membership(&ctx, &second, &perm).unwrap());
        }
        Disjointness::Disjoint => panic!("expected a collision"),
    }
}

#[test]
fn guards() {
    let big = sharpness_k2(2, 10).unwrap().validate(2, Guard::default()).unwrap();
    assert!(ChainContext::new(&big).is_err());
    let not_square = sharpness_k2(3, 12).unwrap().validate(2, Guard::default()).unwrap();
    assert!(ChainContext::new(&not_square).is_err());
    let small = classical_pairs(3, 3).unwrap().validate(2, Guard::default()).unwrap();
    let ctx = ChainContext::new(&small).unwrap();
    assert!(verify_disjointness(&ctx, Guard::with_limit(100)).is_err());
}
