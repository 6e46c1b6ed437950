use std::io::Write;

use bollobas::acceptance;
use bollobas::bounds::{beta_bounds, f_bounds, BoundReport, CSV_HEADER};
use bollobas::chains::{verify_chains, Disjointness};
use bollobas::constructions::{ConstructionKind, ConstructionSpec};
use bollobas::covering::{
    cover_to_tuple, exact_min_cover, random_cover, size_threshold, tuple_to_cover, verify_cover, RandomCoverConfig,
};
use bollobas::inequality::{sum_terms, theorem_sum};
use bollobas::io::{emit_cover, emit_system, parse_cover, parse_system};
use bollobas::partitions::{argmin_f, check_f_monotonicity, stirling2};
use bollobas::{BollobasTuple, Error, ExactRational, FamilySystem, Result, Surjection};
use num_traits::One;

use crate::{ChainsCommand, Command, CoverCommand, Ctx, Status};

pub(crate) fn dispatch(ctx: &mut Ctx, command: Command) -> Result<Status> {
    match command {
        Command::Verify { t, phi } => verify(ctx, t, phi),
        Command::Sum { t, phi, all, terms } => sum(ctx, t, phi, all, terms),
        Command::Construct { kind, k, n, a, b } => construct(ctx, kind, k, n, a, b),
        Command::Cover(c) => cover(ctx, c),
        Command::Partitions { k, t, s, check } => partitions(ctx, k, t, s, check),
        Command::Chains(ChainsCommand::Verify) => chains(ctx),
        Command::Bounds { k, t, n, csv, exact } => bounds(ctx, k, t, n, csv, exact),
        Command::Selftest { criterion } => selftest(ctx, criterion),
    }
}

fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

fn instance(sys: &FamilySystem, t: usize) -> String {
    format!("k={} t={} n={} m={}", sys.k(), t, sys.n(), sys.m())
}

fn ratio(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `1,2,2` → the surjection with 1-based values; default is the canonical one.
fn parse_phi(spec: Option<&str>, k: usize, t: usize) -> Result<Surjection> {
    let Some(spec) = spec else { return Surjection::canonical(k, t) };
    let vals = spec
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|_| param(format!("bad surjection value '{v}'"))))
        .collect::<Result<Vec<_>>>()?;
    if vals.len() != k {
        return Err(param(format!("surjection lists {} values, the system has k = {k}", vals.len())));
    }
    Surjection::from_one_based(&vals, t)
}

/// Reads a system file and validates it, printing the counterexample on failure.
fn read_tuple(ctx: &mut Ctx, op: &str, t: Option<usize>) -> Result<Option<BollobasTuple>> {
    let file = parse_system(&ctx.read_input()?)?;
    let t = t.unwrap_or(file.t);
    let label = instance(&file.system, t);
    match file.system.validate(t, ctx.guard()) {
        Ok(tuple) => Ok(Some(tuple)),
        Err(Error::NotBollobas { counterexample, .. }) => {
            writeln!(ctx.out, "{op} {label}: invalid: {counterexample}")?;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn verify(ctx: &mut Ctx, t: Option<usize>, phi: Option<String>) -> Result<Status> {
    let Some(tuple) = read_tuple(ctx, "verify", t)? else { return Ok(Status::Failed) };
    let label = instance(tuple.system(), tuple.t());
    writeln!(ctx.out, "verify {label}: valid")?;
    let phi = parse_phi(phi.as_deref(), tuple.k(), tuple.t())?;
    let s = theorem_sum(&tuple, &phi)?;
    writeln!(ctx.out, "sum {label} phi={phi}: {}", ratio(&s))?;
    if s > ExactRational::one() {
        writeln!(ctx.out, "sum {label} phi={phi}: exceeds 1")?;
        return Ok(Status::Failed);
    }
    Ok(Status::Ok)
}

fn sum(ctx: &mut Ctx, t: Option<usize>, phi: Option<String>, all: bool, terms: bool) -> Result<Status> {
    let Some(tuple) = read_tuple(ctx, "sum", t)? else { return Ok(Status::Failed) };
    let label = instance(tuple.system(), tuple.t());
    let phis = if all {
        Surjection::all(tuple.k(), tuple.t())
    } else {
        vec![parse_phi(phi.as_deref(), tuple.k(), tuple.t())?]
    };
    let mut status = Status::Ok;
    for phi in phis {
        let s = theorem_sum(&tuple, &phi)?;
        let over = s > ExactRational::one();
        writeln!(ctx.out, "sum {label} phi={phi}: {}{}", ratio(&s), if over { " (exceeds 1)" } else { "" })?;
        if over {
            status = Status::Failed;
        }
        if terms {
            for term in sum_terms(tuple.system(), &phi)? {
                let sizes: Vec<String> = term.sizes.iter().map(usize::to_string).collect();
                writeln!(ctx.out, "  sigma={} sizes=[{}] multinomial={}", term.sigma, sizes.join(","), term.multinomial)?;
            }
        }
    }
    Ok(status)
}

fn construct(
    ctx: &mut Ctx,
    kind: ConstructionKind,
    k: Option<usize>,
    n: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
) -> Result<Status> {
    let (p, q) = match kind {
        ConstructionKind::ClassicalPairs => match (a, b) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(param("classical-pairs needs --a and --b")),
        },
        _ => match (k, n) {
            (Some(k), Some(n)) => (k, n),
            _ => return Err(param(format!("{kind} needs --k and --n"))),
        },
    };
    let spec = ConstructionSpec::new(kind, p, q);
    let sys = spec.build(ctx.guard())?;
    ctx.out.write_all(emit_system(&sys, spec.t()).as_bytes())?;
    eprintln!("construct {spec}: {}", instance(&sys, spec.t()));
    Ok(Status::Ok)
}

fn cover(ctx: &mut Ctx, command: CoverCommand) -> Result<Status> {
    match command {
        CoverCommand::Verify => {
            let cover = parse_cover(&ctx.read_input()?)?;
            let verdict = verify_cover(&cover, ctx.guard())?;
            writeln!(
                ctx.out,
                "cover verify k={} t={} n={} blocks={}: {verdict}",
                cover.k(),
                cover.t(),
                cover.n(),
                cover.len()
            )?;
            Ok(if verdict.is_valid() { Status::Ok } else { Status::Failed })
        }
        CoverCommand::Random { k, t, n, samples } => {
            let cfg = RandomCoverConfig {
                seed: ctx.global.seed,
                max_attempts: ctx.global.max_attempts,
                samples_per_subset: samples,
                guard: ctx.guard(),
            };
            let r = random_cover(k, t, n, &cfg)?;
            ctx.out.write_all(emit_cover(&r.cover).as_bytes())?;
            eprintln!(
                "cover random k={k} t={t} n={n} seed={}: {} blocks after {} draw(s), N={}{}",
                cfg.seed,
                r.cover.len(),
                r.attempts,
                r.samples_per_subset,
                if r.below_size_threshold {
                    format!(" (n below k*S(k,t) = {}; size bound not claimed)", size_threshold(k, t))
                } else {
                    String::new()
                }
            );
            Ok(Status::Ok)
        }
        CoverCommand::Exact { k, t, n } => {
            let r = exact_min_cover(k, t, n, ctx.guard())?;
            ctx.out.write_all(emit_cover(&r.certificate).as_bytes())?;
            eprintln!("cover exact k={k} t={t} n={n}: m={}", r.m);
            Ok(Status::Ok)
        }
        CoverCommand::FromTuple => {
            let Some(tuple) = read_tuple(ctx, "cover from-tuple", None)? else { return Ok(Status::Failed) };
            let cover = tuple_to_cover(&tuple)?;
            ctx.out.write_all(emit_cover(&cover).as_bytes())?;
            eprintln!("cover from-tuple {}: {} blocks", instance(tuple.system(), tuple.t()), cover.len());
            Ok(Status::Ok)
        }
        CoverCommand::ToTuple => {
            let cover = parse_cover(&ctx.read_input()?)?;
            let tuple = cover_to_tuple(&cover, ctx.guard())?;
            ctx.out.write_all(emit_system(tuple.system(), tuple.t()).as_bytes())?;
            eprintln!("cover to-tuple: {}", instance(tuple.system(), tuple.t()));
            Ok(Status::Ok)
        }
    }
}

fn partitions(ctx: &mut Ctx, k: usize, t: usize, s: Option<usize>, check: bool) -> Result<Status> {
    if !(2 <= t && t <= k) {
        return Err(param(format!("need 2 <= t <= k, got k = {k}, t = {t}")));
    }
    let range = match s {
        Some(s) if (t..=k).contains(&s) => s..=s,
        Some(s) => return Err(param(format!("need t <= s <= k, got s = {s}"))),
        None => t..=k,
    };
    writeln!(ctx.out, "s,stirling2,min_f,argmin")?;
    for s in range {
        let (min, pi) = argmin_f(k, s, t)?;
        writeln!(ctx.out, "{s},{},{min},\"{pi}\"", stirling2(k, s))?;
    }
    if check {
        let report = check_f_monotonicity(k, t)?;
        eprintln!(
            "partitions k={k} t={t}: refinement monotonicity {}",
            if report.holds() { "holds" } else { "FAILS" }
        );
        if !report.holds() {
            return Ok(Status::Failed);
        }
    }
    Ok(Status::Ok)
}

fn chains(ctx: &mut Ctx) -> Result<Status> {
    let Some(tuple) = read_tuple(ctx, "chains verify", None)? else { return Ok(Status::Failed) };
    let label = instance(tuple.system(), tuple.t());
    let report = verify_chains(&tuple, ctx.guard())?;
    for row in &report.rows {
        let sizes: Vec<String> = row.sizes.iter().map(usize::to_string).collect();
        writeln!(
            ctx.out,
            "chains sigma={} sizes=[{}] formula={} enumerated={}{}",
            row.sigma,
            sizes.join(","),
            row.formula,
            row.enumerated,
            if row.has_empty_block() { " empty-block" } else { "" }
        )?;
    }
    let verdict = match &report.verdict {
        Disjointness::Disjoint => "disjoint".to_string(),
        Disjointness::Collision { first, second, perm } => {
            format!("families {first} and {second} share the ordering {perm:?}")
        }
    };
    writeln!(
        ctx.out,
        "chains verify {label}: {verdict}; total={} n!*sum={} {}",
        report.total,
        ratio(&report.scaled_sum),
        if report.holds() { "ok" } else { "MISMATCH" }
    )?;
    Ok(if report.holds() { Status::Ok } else { Status::Failed })
}

fn write_table(out: &mut dyn Write, reports: &[&BoundReport], csv: bool) -> std::io::Result<()> {
    if csv {
        let mut text = format!("{CSV_HEADER}\n");
        for r in reports {
            r.csv_rows(&mut text);
        }
        return out.write_all(text.as_bytes());
    }
    for r in reports {
        for b in &r.bounds {
            writeln!(out, "{:<26} {:<6} {:>16.6} {}", b.name, b.direction, b.value, b.validity)?;
        }
    }
    Ok(())
}

fn bounds(ctx: &mut Ctx, k: usize, t: usize, n: u64, csv: bool, exact: bool) -> Result<Status> {
    let mut f = f_bounds(k, t, n)?;
    let beta = beta_bounds(k, t, n)?;
    let mut status = Status::Ok;
    if exact {
        let m = exact_min_cover(k, t, n as usize, ctx.guard())?.m;
        f.exact = Some(m as f64);
        let bad: Vec<&str> = f.violations().iter().map(|b| b.name).collect();
        eprintln!(
            "bounds k={k} t={t} n={n}: f exact = {m}, {}",
            if bad.is_empty() { "no applicable bound violated".to_string() } else { format!("violated: {}", bad.join(", ")) }
        );
        if !bad.is_empty() {
            status = Status::Failed;
        }
    }
    write_table(&mut ctx.out, &[&f, &beta], csv)?;
    if let Some(m) = f.exact {
        if csv {
            writeln!(ctx.out, "f-exact,exact,{m},computed")?;
        } else {
            writeln!(ctx.out, "{:<26} {:<6} {:>16.6} computed", "f-exact", "exact", m)?;
        }
    }
    Ok(status)
}

fn selftest(ctx: &mut Ctx, criteria: Vec<usize>) -> Result<Status> {
    let ids = if criteria.is_empty() { (1..=10).collect() } else { criteria };
    if let Some(bad) = ids.iter().find(|id| !(1..=10).contains(*id)) {
        return Err(param(format!("criteria are numbered 1-10, got {bad}")));
    }
    let mut failed = 0;
    for id in &ids {
        let outcome = acceptance::run(*id);
        writeln!(ctx.out, "{outcome}")?;
        ctx.out.flush()?;
        failed += usize::from(!outcome.passed);
    }
    writeln!(ctx.out, "selftest: {} of {} criteria passed", ids.len() - failed, ids.len())?;
    Ok(if failed == 0 { Status::Ok } else { Status::Failed })
}
