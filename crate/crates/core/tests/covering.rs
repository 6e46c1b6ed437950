//! Covers of H_{k,t}(n): exact search against brute force, the tuple/cover
//! correspondence, and the randomized construction.

use bollobas::covering::{
    count_uncovered, cover_to_tuple, exact_beta, exact_min_cover, expected_uncovered_bound, hkt_contains,
    random_cover, random_tuple, sample_count, size_threshold, tuple_to_cover, verify_cover, CoverVerdict,
    PartiteCover, RandomCoverConfig,
};
use bollobas::{Error, Guard};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn edges(k: usize, t: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n.pow(k as u32))
        .map(|mut c| {
            let mut v = vec![0; k];
            for x in v.iter_mut().rev() {
                *x = c % n;
                c /= n;
            }
            v
        })
        .filter(|e| hkt_contains(k, t, n, e).unwrap())
        .collect()
}

/// Minimum cover by brute force: enumerate every box free of non-edges, keep
/// the inclusion-maximal ones, then try all r-subsets for r = 1, 2, ….
fn brute_min_cover(k: usize, t: usize, n: usize) -> usize {
    let es = edges(k, t, n);
    let full = (1u32 << n) - 1;
    let mut boxes: Vec<Vec<u32>> = Vec::new();
    let total = (full as usize).pow(k as u32);
    for mut c in 0..total {
        let sides: Vec<u32> = (0..k)
            .map(|_| {
                let s = (c % full as usize) as u32 + 1;
                c /= full as usize;
                s
            })
            .collect();
        let clean = (0..n.pow(k as u32)).all(|mut code| {
            let idx: Vec<usize> = (0..k)
                .map(|_| {
                    let i = code % n;
                    code /= n;
                    i
                })
                .collect();
            let inside = idx.iter().zip(&sides).all(|(&i, &s)| s >> i & 1 == 1);
            !inside || hkt_contains(k, t, n, &idx).unwrap()
        });
        if clean {
            boxes.push(sides);
        }
    }
    let maximal: Vec<u64> = boxes
        .iter()
        .filter(|b| {
            !boxes
                .iter()
                .any(|o| o != *b && o.iter().zip(b.iter()).all(|(&x, &y)| x & y == y))
        })
        .map(|b| {
            es.iter()
                .enumerate()
                .filter(|(_, e)| e.iter().zip(b).all(|(&i, &s)| s >> i & 1 == 1))
                .fold(0u64, |acc, (p, _)| acc | 1 << p)
        })
        .collect();
    let goal = if es.len() == 64 { u64::MAX } else { (1u64 << es.len()) - 1 };
    fn search(masks: &[u64], from: usize, left: usize, acc: u64, goal: u64) -> bool {
        if acc == goal {
            return true;
        }
        left > 0 && (from..masks.len()).any(|i| search(masks, i + 1, left - 1, acc | masks[i], goal))
    }
    (0..).find(|&r| search(&maximal, 0, r, 0, goal)).unwrap()
}

#[test]
fn exact_search_agrees_with_brute_force() {
    for (k, t, n) in [(2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5), (3, 2, 2), (3, 2, 3)] {
        let ours = exact_min_cover(k, t, n, Guard::default()).unwrap();
        assert_eq!(ours.m, brute_min_cover(k, t, n), "f_{k},{t}({n})");
        assert!(verify_cover(&ours.certificate, Guard::default()).unwrap().is_valid());
        assert_eq!(ours.certificate.len(), ours.m);
    }
}

#[test]
fn beta_two_two_is_central_binomial() {
    for (g, expect) in [(1, 0), (2, 2), (3, 3), (4, 6), (5, 10)] {
        assert_eq!(exact_beta(2, 2, g, Guard::default()).unwrap().value, expect);
    }
}

#[test]
fn beta_witnesses_validate() {
    for (k, t, g) in [(2, 2, 5), (3, 2, 3), (3, 3, 4)] {
        let r = exact_beta(k, t, g, Guard::default()).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.m(), r.value);
        if r.value >= t {
            assert!(w.check(t, Guard::default()).unwrap().is_valid());
        }
    }
}

#[test]
fn edge_count_matches_empty_cover() {
    for (k, t, n) in [(2, 2, 4), (3, 2, 3), (3, 3, 4), (4, 3, 3)] {
        let empty = PartiteCover::new(k, t, n, Vec::new()).unwrap();
        assert_eq!(count_uncovered(&empty, Guard::default()).unwrap(), edges(k, t, n).len() as u64);
    }
    // n^k - n for t = 2
    assert_eq!(edges(3, 2, 5).len(), 125 - 5);
}

#[test]
fn tuple_cover_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (k, t, m) in [(2, 2, 4), (3, 2, 3), (3, 3, 3)] {
        for _ in 0..10 {
            let sys = random_tuple(k, t, m, 6, 50, &mut rng).unwrap().unwrap();
            let tuple = sys.clone().validate(t, Guard::default()).unwrap();
            let cover = tuple_to_cover(&tuple).unwrap();
            assert_eq!((cover.k(), cover.t(), cover.n()), (k, t, m));
            assert_eq!(verify_cover(&cover, Guard::default()).unwrap(), CoverVerdict::Valid);
            let back = cover_to_tuple(&cover, Guard::default()).unwrap();
            // Random tuples have no dead points, so the ground set survives intact.
            assert_eq!(back.to_elements(), sys.to_elements());
        }
    }
}

#[test]
fn broken_cover_is_reported() {
    let cover = exact_min_cover(2, 2, 4, Guard::default()).unwrap().certificate;
    let thinner = cover.without_block(0);
    assert!(matches!(verify_cover(&thinner, Guard::default()).unwrap(), CoverVerdict::Uncovered { .. }));
    assert!(count_uncovered(&thinner, Guard::default()).unwrap() > 0);
    assert!(matches!(cover_to_tuple(&thinner, Guard::default()), Err(Error::InvalidCover(_))));
}

#[test]
fn random_cover_depends_only_on_seed() {
    let cfg = RandomCoverConfig { seed: 42, ..Default::default() };
    let a = random_cover(3, 2, 20, &cfg).unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = single.install(|| random_cover(3, 2, 20, &cfg).unwrap());
    assert_eq!(a.cover, b.cover);
    assert_eq!(a.attempts, b.attempts);
    let other = random_cover(3, 2, 20, &RandomCoverConfig { seed: 43, ..cfg }).unwrap();
    assert_ne!(a.cover, other.cover);
}

#[test]
fn small_n_is_flagged() {
    assert_eq!(size_threshold(3, 2), 9);
    let r = random_cover(3, 2, 8, &RandomCoverConfig::default()).unwrap();
    assert!(r.below_size_threshold);
    assert!(verify_cover(&r.cover, Guard::default()).unwrap().is_valid());
}

#[test]
fn too_few_colourings_exhaust_attempts() {
    let cfg = RandomCoverConfig { samples_per_subset: Some(1), max_attempts: 3, ..Default::default() };
    match random_cover(3, 2, 30, &cfg) {
        Err(Error::AttemptsExhausted { attempts: 3, uncovered }) => assert!(uncovered > 0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn expectation_bound_matches_float_oracle_for_k3() {
    for n in [5usize, 27, 64] {
        for samples in [0u64, 1, 5, 24] {
            let nf = n as f64;
            let q2: f64 = 3.0 / 4.0;
            // partitions of [3]: three with two parts (f = 2), one with three (f = 3)
            let t2 = 3.0 * nf.powi(2) * q2.powi(2 * samples as i32) + nf.powi(3) * q2.powi(3 * samples as i32);
            let got = expected_uncovered_bound(3, 2, n, samples).unwrap().to_f64().unwrap();
            assert!((got - t2).abs() <= 1e-9 * t2.max(1.0), "t=2 n={n} N={samples}: {got} vs {t2}");
            let q3: f64 = 26.0 / 27.0;
            let t3 = nf.powi(3) * q3.powi(samples as i32);
            let got = expected_uncovered_bound(3, 3, n, samples).unwrap().to_f64().unwrap();
            assert!((got - t3).abs() <= 1e-9 * t3.max(1.0), "t=3 n={n} N={samples}: {got} vs {t3}");
        }
    }
}

#[test]
fn expectation_bound_nonincreasing_in_samples() {
    for (k, t, n) in [(3, 2, 16), (4, 2, 10), (4, 3, 10), (3, 3, 27)] {
        let mut prev = None;
        for samples in 0..40 {
            let b = expected_uncovered_bound(k, t, n, samples).unwrap();
            if let Some(p) = prev {
                assert!(b <= p, "({k},{t},{n}) N={samples}");
            }
            prev = Some(b);
        }
    }
}

#[test]
fn sample_count_formula() {
    // (t+1) t^t ln n / (k - t + 1)
    for (k, t, n) in [(3, 2, 64), (4, 2, 64), (3, 3, 27), (5, 3, 100)] {
        let expect = ((t + 1) as f64 * (t as f64).powi(t as i32) * (n as f64).log2()
            / ((k - t + 1) as f64 * std::f64::consts::E.log2()))
        .floor() as u64;
        assert_eq!(sample_count(k, t, n), expect);
    }
}
