//! The ten acceptance criteria, shared by the `selftest` subcommand and the
//! `acceptance` test target. Each criterion returns a one-line outcome.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{binomial, ExactRational};
use crate::bounds::{entropy_chain_holds, orlin, threshold_min_m};
use crate::chains::verify_chains;
use crate::constructions::{classical_pairs, injective_words, modular_k2, sharpness_k2};
use crate::covering::{
    count_uncovered, default_ground_limit, exact_beta, exact_min_cover, expected_uncovered_bound, random_cover,
    random_tuple, sample_count, size_threshold, verify_cover, RandomCoverConfig,
};
use crate::error::Guard;
use crate::family::{BollobasTuple, FamilySystem, Surjection};
use crate::inequality::{reduce_via_surjection, theorem_sum};
use crate::partitions::{check_f_monotonicity, enumerate_partitions, f_pi, min_f_formula};

pub use crate::bounds::TOLERANCE as ENTROPY_TOLERANCE;
/// Random tuples certified in criterion 3.
pub const RANDOM_TUPLES: usize = 500;
/// Seeds per parameter set in criterion 8.
pub const COVER_SEEDS: u64 = 20;
/// Draws allowed per randomized cover in criterion 8.
pub const COVER_ATTEMPTS: u32 = 10;

pub const TITLES: [&str; 10] = [
    "tightness of the sharpness construction at t = 2",
    "classical set-pair tightness",
    "inequality on random tuples",
    "exact biclique covers against the closed form",
    "threshold lower bound on exact f_{3,2}(n)",
    "set-partition monotonicity and min f(pi,t)",
    "chain families: disjointness and counting",
    "randomized covers",
    "modular construction",
    "entropy chain and clique cover formula",
];

/// Runtime budget per criterion (criterion 1: per instance).
fn time_limit(id: usize) -> Option<Duration> {
    let secs = match id {
        1 => 10,
        3 | 7 => 300,
        4 | 8 => 600,
        6 => 60,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} [{:.2}s] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.title,
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn s<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(id: usize) -> Outcome {
    assert!((1..=10).contains(&id), "criteria are numbered 1..=10");
    let start = Instant::now();
    let result = match id {
        1 => tightness_sharpness(),
        2 => tightness_classical(),
        3 => random_inequality(),
        4 => biclique_exact(),
        5 => threshold_vs_exact(),
        6 => partition_statistics(),
        7 => chain_families(),
        8 => randomized_covers(),
        9 => modular(),
        _ => bounds_sanity(),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if id != 1 {
        if let Some(limit) = time_limit(id).filter(|&l| elapsed > l) {
            passed = false;
            detail = format!("{detail}; exceeded the {}s budget", limit.as_secs());
        }
    }
    Outcome { id, title: TITLES[id - 1], passed, detail, elapsed }
}

pub fn run_all() -> Vec<Outcome> {
    (1..=10).map(run).collect()
}

fn tightness_sharpness() -> Check {
    let limit = time_limit(1).expect("criterion 1 has a budget");
    let cases = [(2, 8), (2, 12), (2, 16), (3, 12), (3, 16), (4, 16)];
    let mut slowest = Duration::ZERO;
    for (k, n) in cases {
        let start = Instant::now();
        let tuple = sharpness_k2(k, n).map_err(s)?.validate(2, Guard::default()).map_err(s)?;
        let phi = Surjection::canonical(k, 2).map_err(s)?;
        let sum = theorem_sum(&tuple, &phi).map_err(s)?;
        ensure!(sum.is_one(), "sharpness({k},{n}) with phi = {phi}: sum = {sum}, expected 1");
        let took = start.elapsed();
        ensure!(took <= limit, "sharpness({k},{n}) took {took:?}");
        slowest = slowest.max(took);
    }
    Ok(format!("{} instances valid with sum exactly 1; slowest {slowest:.2?}", cases.len()))
}

fn tightness_classical() -> Check {
    let betas: Vec<(usize, usize)> = (2..=default_ground_limit(2))
        .map(|g| exact_beta(2, 2, g, Guard::default()).map(|r| (g, r.value)))
        .collect::<crate::Result<_>>()
        .map_err(s)?;
    let mut count = 0;
    for n in 2..=7 {
        for a in 1..n {
            let b = n - a;
            let tuple = classical_pairs(a, b).map_err(s)?.validate(2, Guard::default()).map_err(s)?;
            let sum = theorem_sum(&tuple, &Surjection::identity(2)).map_err(s)?;
            ensure!(sum.is_one(), "classical({a},{b}): sum = {sum}");
            let expect = binomial(n, a).to_usize().expect("small");
            ensure!(tuple.m() == expect, "classical({a},{b}) has {} columns, expected {expect}", tuple.m());
            if let Some(&(_, beta)) = betas.iter().find(|&&(g, _)| g == n) {
                ensure!(expect <= beta, "classical({a},{b}) has more columns than beta_2,2({n}) = {beta}");
            }
            count += 1;
        }
    }
    Ok(format!("{count} pairs (a+b <= 7) with sum 1 and C(a+b,a) columns; exact beta checked up to ground {}", betas.len() + 1))
}

fn random_inequality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB011_0BA5);
    let shapes: Vec<(usize, usize, usize)> = [(2, 2), (3, 2), (3, 3)]
        .into_iter()
        .flat_map(|(k, t)| (t..=5).map(move |m| (k, t, m)))
        .collect();
    let mut found = vec![0usize; shapes.len()];
    let mut sums_checked = 0usize;
    let mut largest = ExactRational::from_integer(0.into());
    let mut draws = 0;
    while found.iter().sum::<usize>() < RANDOM_TUPLES {
        draws += 1;
        ensure!(draws <= 50 * RANDOM_TUPLES, "only {} tuples after {draws} draws", found.iter().sum::<usize>());
        let which = rng.gen_range(0..shapes.len());
        let (k, t, m) = shapes[which];
        let Some(sys) = random_tuple(k, t, m, 6, 20, &mut rng).map_err(s)? else { continue };
        let tuple = sys.validate(t, Guard::default()).map_err(s)?;
        for phi in Surjection::all(k, t) {
            let sum = theorem_sum(&tuple, &phi).map_err(s)?;
            ensure!(sum <= ExactRational::one(), "sum {sum} > 1 for phi = {phi} on {:?}", tuple.to_elements());
            if sum > largest {
                largest = sum;
            }
            sums_checked += 1;
        }
        found[which] += 1;
    }
    let shape_counts: Vec<String> = shapes
        .iter()
        .zip(&found)
        .filter(|(_, &c)| c > 0)
        .map(|((k, t, m), c)| format!("({k},{t},m={m})x{c}"))
        .collect();
    Ok(format!(
        "{RANDOM_TUPLES} tuples, {sums_checked} sums <= 1 (max {largest}); shapes {}",
        shape_counts.join(" ")
    ))
}

fn biclique_exact() -> Check {
    let mut values = Vec::new();
    for n in 2..=6u64 {
        let cover = exact_min_cover(2, 2, n as usize, Guard::default()).map_err(s)?;
        let closed = threshold_min_m(n, 2).map_err(s)?;
        ensure!(cover.m == closed, "f_2,2({n}) = {} but the closed form gives {closed}", cover.m);
        let verdict = verify_cover(&cover.certificate, Guard::default()).map_err(s)?;
        ensure!(verdict.is_valid() && cover.certificate.len() == cover.m, "certificate for n = {n}: {verdict}");
        values.push(cover.m);
    }
    for m in 2..=4 {
        let beta = exact_beta(2, 2, m, Guard::default()).map_err(s)?.value;
        let expect = binomial(m, m / 2).to_usize().expect("small");
        ensure!(beta == expect, "beta_2,2({m}) = {beta}, expected {expect}");
    }
    Ok(format!("f_2,2(2..=6) = {values:?} matches the closed form; beta_2,2(2..=4) = C(m, m/2)"))
}

fn threshold_vs_exact() -> Check {
    let limit = default_ground_limit(3);
    let betas: Vec<usize> = (1..=limit)
        .map(|g| exact_beta(3, 2, g, Guard::default()).map(|r| r.value))
        .collect::<crate::Result<_>>()
        .map_err(s)?;
    let mut rows = Vec::new();
    for n in 2..=betas[limit - 1] {
        let f = 1 + betas.iter().position(|&b| b >= n).expect("n <= beta(limit)");
        let lower = threshold_min_m(n as u64, 3).map_err(s)?;
        ensure!(f >= lower, "f_3,2({n}) = {f} < threshold {lower}");
        rows.push(format!("n={n}: {f}>={lower}"));
    }
    let direct = exact_min_cover(3, 2, 2, Guard::default()).map_err(s)?;
    ensure!(direct.m == 1 + betas.iter().position(|&b| b >= 2).unwrap(), "exact_min_cover disagrees with the beta table");
    Ok(format!("beta_3,2(1..={limit}) = {betas:?}; {}", rows.join(", ")))
}

fn partition_statistics() -> Check {
    let mut pairs = 0;
    let mut formula_checks = 0;
    for k in 2..=8 {
        for t in 2..=k {
            let report = check_f_monotonicity(k, t).map_err(s)?;
            ensure!(report.holds(), "monotonicity fails at k = {k}, t = {t}: {report:?}");
            pairs += report.refinement_pairs_checked + report.merge_pairs_checked;
            for s_ in t..=k {
                let brute = enumerate_partitions(k, s_)
                    .map_err(s)?
                    .iter()
                    .map(|p| f_pi(p, t))
                    .min()
                    .expect("S(k,s) >= 1");
                let formula = min_f_formula(k, s_, t).map_err(s)?;
                ensure!(brute == formula, "min f at k={k}, s={s_}, t={t}: brute {brute}, formula {formula}");
                formula_checks += 1;
            }
        }
    }
    Ok(format!("no violations over {pairs} comparable pairs; {formula_checks} minimum formulas match"))
}

fn chain_instances() -> std::result::Result<Vec<(String, BollobasTuple)>, String> {
    let mut out = Vec::new();
    for n in 2..=7 {
        for a in 1..n {
            let t = classical_pairs(a, n - a).map_err(s)?.validate(2, Guard::default()).map_err(s)?;
            out.push((format!("classical({a},{})", n - a), t));
        }
    }
    out.push(("sharpness(2,8)".into(), sharpness_k2(2, 8).map_err(s)?.validate(2, Guard::default()).map_err(s)?));
    for (k, n) in [(3, 1), (3, 2), (4, 2)] {
        let tuple = modular_k2(k, n, Guard::default()).map_err(s)?.validate(2, Guard::default()).map_err(s)?;
        for phi in Surjection::all(k, 2) {
            let reduced = reduce_via_surjection(&tuple, &phi).map_err(s)?;
            out.push((format!("modular({k},{n}) via {phi}"), reduced.validate(2, Guard::default()).map_err(s)?));
        }
    }
    out.push(("injective-words(3,3)".into(), injective_words(3, 3).map_err(s)?.validate(3, Guard::default()).map_err(s)?));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..5 {
        let sys: FamilySystem = random_tuple(3, 3, 3, 6, 50, &mut rng).map_err(s)?.ok_or("no random (3,3)-tuple")?;
        out.push((format!("random-(3,3)#{i}"), sys.validate(3, Guard::default()).map_err(s)?));
    }
    Ok(out)
}

fn chain_families() -> Check {
    let instances = chain_instances()?;
    let mut largest = 0;
    for (name, tuple) in &instances {
        let report = verify_chains(tuple, Guard::default()).map_err(s)?;
        ensure!(report.n <= 8, "{name} has |X| = {}", report.n);
        ensure!(
            report.holds(),
            "{name}: verdict {:?}, total {} vs n!·sum {}",
            report.verdict,
            report.total,
            report.scaled_sum
        );
        largest = largest.max(report.n);
    }
    Ok(format!("{} instances disjoint with sum |C_sigma| = n!·sum (largest |X| = {largest})", instances.len()))
}

fn randomized_covers() -> Check {
    let mut notes = Vec::new();
    for (k, t, n) in [(3, 2, 64), (3, 3, 27), (4, 2, 64)] {
        let samples = sample_count(k, t, n);
        let bound = expected_uncovered_bound(k, t, n, samples).map_err(s)?.to_f64().unwrap_or(f64::INFINITY);
        let mut worst = 0;
        for seed in 0..COVER_SEEDS {
            let cfg = RandomCoverConfig { seed, max_attempts: COVER_ATTEMPTS, ..Default::default() };
            let r = random_cover(k, t, n, &cfg).map_err(|e| format!("({k},{t},{n}) seed {seed}: {e}"))?;
            let verdict = verify_cover(&r.cover, Guard::default()).map_err(s)?;
            ensure!(verdict.is_valid(), "({k},{t},{n}) seed {seed}: {verdict}");
            let left = count_uncovered(&r.cover, Guard::default()).map_err(s)?;
            ensure!(left == 0, "({k},{t},{n}) seed {seed}: {left} edges uncovered");
            worst = worst.max(r.attempts);
        }
        let regime = if bound < 1.0 {
            format!("bound {bound:.3e} < 1")
        } else {
            format!("bound {bound:.3e} >= 1, flagged: n < k·S(k,t) = {}", size_threshold(k, t))
        };
        notes.push(format!("({k},{t},{n}) N={samples} max attempts {worst}, {regime}"));
    }
    Ok(notes.join("; "))
}

fn modular() -> Check {
    for (k, n) in [(3, 3), (3, 4), (4, 3), (5, 2)] {
        let tuple = modular_k2(k, n, Guard::default()).map_err(s)?.validate(2, Guard::default()).map_err(s)?;
        ensure!(tuple.m() == 1 << n && tuple.n() == k * n, "modular({k},{n}) has shape ({}, {})", tuple.n(), tuple.m());
        for j in 0..k {
            for i in 0..tuple.m() {
                ensure!(tuple.set(j, i).count() == k * n - n, "modular({k},{n}) set ({j},{i}) has wrong size");
            }
        }
    }
    Ok("valid with m = 2^n on k·n points, so log2 beta_k,2(kn) >= n".into())
}

fn bounds_sanity() -> Check {
    for k in 3..=30 {
        ensure!(entropy_chain_holds(k).map_err(s)?, "1/k <= H(1/k) <= log2(ke)/k fails at k = {k}");
    }
    let mut prev = 0;
    for n in 2..=10_000u64 {
        let v = orlin(n).map_err(s)?;
        ensure!(v >= prev, "orlin({n}) = {v} < orlin({}) = {prev}", n - 1);
        prev = v;
    }
    Ok(format!("entropy chain holds for k = 3..=30 (tol {ENTROPY_TOLERANCE:e}); orlin nondecreasing up to 10^4 (orlin(10^4) = {prev})"))
}
