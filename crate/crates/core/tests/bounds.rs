//! Closed-form bounds against exact values and independent integer searches.

use bollobas::bounds::{
    beta_bounds, binary_entropy, clique_cover_formulas, entropy_chain_holds, f_bounds, orlin, threshold_min_m,
    Direction, Validity, CSV_HEADER, TOLERANCE,
};
use bollobas::covering::{exact_beta, exact_min_cover, random_cover, RandomCoverConfig};
use bollobas::Guard;

fn binom(n: u128, r: u128) -> u128 {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn threshold_oracle(n: u128, k: u128) -> u128 {
    (1..).find(|&m| binom(m, m.div_ceil(k)) >= n).unwrap()
}

fn orlin_oracle(n: u128) -> u128 {
    (1..).find(|&m| 2 * binom(m - 1, m / 2) >= n).unwrap()
}

#[test]
fn thresholds_match_integer_search() {
    for k in 2..=6u128 {
        for n in (1..=2000u128).chain([10u128.pow(6), 10u128.pow(9)]) {
            assert_eq!(threshold_min_m(n as u64, k as usize).unwrap() as u128, threshold_oracle(n, k), "n={n} k={k}");
        }
    }
    for n in 2..=2000u128 {
        assert_eq!(orlin(n as u64).unwrap() as u128, orlin_oracle(n));
    }
}

#[test]
fn thresholds_are_monotone() {
    for k in 2..=6 {
        let mut prev = 0;
        for n in 1..=5000 {
            let m = threshold_min_m(n, k).unwrap();
            assert!(m >= prev);
            prev = m;
            // Finer parts make ⌈m/k⌉ smaller, so more ground points are needed.
            assert!(threshold_min_m(n, k + 1).unwrap() >= m, "n={n} k={k}");
        }
    }
}

#[test]
fn orlin_within_one_of_threshold() {
    // Both sides are step functions; checking every breakpoint and its
    // neighbour settles all n up to 10^6.
    let mut points: Vec<u64> = (2..=100).collect();
    for m in 1..=25u128 {
        for b in [binom(m, m.div_ceil(2)), 2 * binom(m - 1, m / 2)] {
            for n in [b, b + 1] {
                if (2..=1_000_000).contains(&n) {
                    points.push(n as u64);
                }
            }
        }
    }
    points.push(1_000_000);
    for n in points {
        assert!(orlin(n).unwrap() <= threshold_min_m(n, 2).unwrap() + 1, "n = {n}");
    }
}

#[test]
fn entropy_and_its_chain() {
    for k in 2..=1000 {
        assert!(entropy_chain_holds(k).unwrap(), "k = {k}");
    }
    let h3 = -(1.0f64 / 3.0) * (1.0f64 / 3.0).log2() - (2.0 / 3.0) * (2.0f64 / 3.0).log2();
    assert!((binary_entropy(1.0 / 3.0).unwrap() - h3).abs() < TOLERANCE);
    assert!((binary_entropy(0.1).unwrap() - binary_entropy(0.9).unwrap()).abs() < TOLERANCE);
}

#[test]
fn exact_values_respect_applicable_bounds() {
    let mut cases: Vec<(usize, usize, usize)> = (2..=6).map(|n| (2, 2, n)).collect();
    cases.extend([(3, 2, 2), (3, 3, 2)]);
    for (k, t, n) in cases {
        let exact = exact_min_cover(k, t, n, Guard::default()).unwrap().m;
        let mut r = f_bounds(k, t, n as u64).unwrap();
        r.exact = Some(exact as f64);
        assert!(r.violations().is_empty(), "f_{k},{t}({n}) = {exact}: {:?}", r.violations());
        assert!(r.crossings().is_empty());
    }
    for g in 2..=5 {
        let b = exact_beta(2, 2, g, Guard::default()).unwrap().value;
        let mut r = beta_bounds(2, 2, g as u64).unwrap();
        r.exact = Some((b as f64).log2());
        assert!(r.violations().is_empty(), "beta_2,2({g})");
    }
}

#[test]
fn random_covers_stay_under_their_bound() {
    for (k, t, n) in [(3, 2, 9), (3, 2, 40), (3, 3, 18), (4, 2, 28)] {
        let report = f_bounds(k, t, n as u64).unwrap();
        let bound = report.get("f-random-upper").unwrap();
        assert!(bound.validity.applies(n as u64));
        let r = random_cover(k, t, n, &RandomCoverConfig { seed: 7, ..Default::default() }).unwrap();
        assert!(r.cover.len() as f64 <= bound.value + TOLERANCE, "({k},{t},{n}): {} blocks", r.cover.len());
    }
}

#[test]
fn reported_values() {
    let r = f_bounds(3, 2, 1024).unwrap();
    let h = binary_entropy(1.0 / 3.0).unwrap();
    assert_eq!(r.get("f-threshold-lower").unwrap().value, threshold_min_m(1024, 3).unwrap() as f64);
    assert!((r.get("f-entropy-lower").unwrap().value - 10.0 / h).abs() < 1e-9);
    assert!((r.get("f-k-upper").unwrap().value - 30.0).abs() < 1e-9);
    assert!((r.get("f-log-lower").unwrap().value - 30.0 / (3.0 * std::f64::consts::E).log2()).abs() < 1e-9);
    // t = k = 4: C(4,3)·3/2 = 6 and 4²/2 = 8 per log₂ n.
    let sq = f_bounds(4, 4, 256).unwrap();
    assert!((sq.get("f-general-lower").unwrap().value - 48.0).abs() < 1e-9);
    assert!((sq.get("f-square-lower").unwrap().value - 64.0).abs() < 1e-9);
    assert_eq!(sq.get("f-random-upper").unwrap().validity, Validity::NAtLeast(4));
    assert_eq!(f_bounds(2, 2, 6).unwrap().get("f-biclique").unwrap().direction, Direction::Exact);

    let c = clique_cover_formulas(3u64.pow(10), 3).unwrap();
    assert!((c.hypergraph_lb.unwrap() - 9.0 * 3f64.log2() / h).abs() < 1e-9);
}

#[test]
fn csv_rows_parse_back() {
    let r = f_bounds(4, 3, 100).unwrap();
    let mut out = String::new();
    r.csv_rows(&mut out);
    assert_eq!(CSV_HEADER.split(',').count(), 4);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), r.bounds.len());
    for (line, b) in lines.iter().zip(&r.bounds) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4);
        assert_eq!(cols[0], b.name);
        assert_eq!(cols[2].parse::<f64>().unwrap(), b.value);
    }
    assert!(out.contains("large n"));
}
