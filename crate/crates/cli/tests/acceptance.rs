//! Acceptance suite. Runs without the libtest harness so that the ten
//! PASS/FAIL lines always reach stdout; exits non-zero if any criterion fails.
//!
//! Every comparison is exact (big rationals, integer counts). The only
//! tolerances are the wall-clock limits pinned below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use committee_cli::generators::{gen_example2, gen_random, gen_regular_qgon, Profile};
use committee_core::builder::{build_committee, polygon_minimal_committee, prop43_check, three_committee, three_committee_criterion, GeneralPositionSystem};
use committee_core::fixtures::t1;
use committee_core::geom::{rat, HalfPlane, Point, Rational};
use committee_core::mcs::{all_marked_mcs, determining_pair_check};
use committee_core::oracle::{arrangement_cells, brute_mcs, brute_min_committee, verify_committee};
use committee_core::polar::{check_solution, check_solution_polar, committee_to_halfplanes, point_system_of, verify_point_committee};
use committee_core::{Committee, Error, System};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const T1_LIMIT: Duration = Duration::from_secs(1);
const QGON_LIMIT: Duration = Duration::from_secs(30);
const EXAMPLE2_LIMIT: Duration = Duration::from_secs(60);
const SUITE_LIMIT: Duration = Duration::from_secs(300);

const POLYGON_INSTANCES: u64 = 100;
const THREE_INSTANCES: u64 = 200;
const BRIDGE_TRIPLES: usize = 500;
const BUILD_INSTANCES: u64 = 100;
/// Search bound for the oracle minimum on random suites.
const Q_MAX: usize = 9;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, detail: detail.into() }
    }
}

/// Instances gathered along the way, reused by the cross-cutting criteria.
#[derive(Default)]
struct Pool {
    /// (label, system, committee) for criterion 6.
    committees: Vec<(String, System, Committee)>,
    /// Systems for criteria 7 and 10.
    systems: Vec<(String, System)>,
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e <= limit, format!("{:.2}s of {}s", e.as_secs_f64(), limit.as_secs()))
}

fn criterion1(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let sys = t1();
    let Ok((Some(k), _)) = three_committee(&sys) else { return Outcome::new(false, "no three-member committee") };
    let verified = verify_committee(&sys, &k).map(|v| v.0).unwrap_or(false);
    let oracle = brute_min_committee(&sys, Q_MAX).min_committee_size;
    let marked: BTreeSet<Vec<usize>> = all_marked_mcs(&sys).map(|v| v.into_iter().map(|t| t.members).collect()).unwrap_or_default();
    let want: BTreeSet<Vec<usize>> = [vec![0, 1], vec![0, 2], vec![1, 2]].into_iter().collect();
    let (fast, time) = within(t, T1_LIMIT);
    pool.committees.push(("t1".into(), sys.clone(), k.clone()));
    pool.systems.push(("t1".into(), sys));
    let ok = k.size() == 3 && verified && oracle == Some(3) && marked == want && fast;
    Outcome::new(ok, format!("size {}, verified {verified}, oracle {oracle:?}, marked {marked:?}, {time}", k.size()))
}

fn criterion2(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for q in [3usize, 5] {
        let Ok(inst) = gen_regular_qgon(q, 0) else { return Outcome::new(false, format!("q = {q}: generator failed")) };
        let min = brute_min_committee(&inst.system, Q_MAX).min_committee_size;
        let marked = all_marked_mcs(&inst.system).map(|v| v.len()).unwrap_or(0);
        ok &= min == Some(q) && marked == q;
        notes.push(format!("q={q}: oracle {min:?}, marked {marked}"));
        pool.systems.push((format!("qgon-{q}"), inst.system));
    }
    let q = 7usize;
    let Ok(inst) = gen_regular_qgon(q, 0) else { return Outcome::new(false, "q = 7: generator failed") };
    match polygon_minimal_committee(&inst.system) {
        Ok((k, plan)) => {
            let verified = verify_committee(&inst.system, &k).map(|v| v.0).unwrap_or(false);
            let bound = plan.p - plan.q0;
            ok &= verified && k.size() == bound && bound == q;
            notes.push(format!("q=7: polygon committee {} = p - q0 = {} - {}, verified {verified}", k.size(), plan.p, plan.q0));
            pool.committees.push(("qgon-7".into(), inst.system.clone(), k));
        }
        Err(e) => {
            ok = false;
            notes.push(format!("q=7: {e}"));
        }
    }
    pool.systems.push(("qgon-7".into(), inst.system));
    let (fast, time) = within(t, QGON_LIMIT);
    Outcome::new(ok && fast, format!("{}; {time}", notes.join("; ")))
}

fn criterion3(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for q in [5usize, 7] {
        let Ok(inst) = gen_example2(q, 0) else { return Outcome::new(false, format!("q = {q}: generator failed")) };
        let min = brute_min_committee(&inst.system, Q_MAX).min_committee_size;
        let marked = all_marked_mcs(&inst.system).map(|v| v.len()).unwrap_or(0);
        ok &= min == Some(q) && marked == 3;
        notes.push(format!("q={q}: oracle {min:?}, marked {marked}"));
        if let Some(k) = brute_min_committee(&inst.system, Q_MAX).witness_committee {
            pool.committees.push((format!("example2-{q}"), inst.system.clone(), k));
        }
        pool.systems.push((format!("example2-{q}"), inst.system));
    }
    let (fast, time) = within(t, EXAMPLE2_LIMIT);
    Outcome::new(ok && fast, format!("{}; {time}", notes.join("; ")))
}

fn criterion4(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut compared = 0;
    for seed in 0..POLYGON_INSTANCES {
        let m = 3 + (seed % 6) as usize;
        let inst = match gen_random(m, Profile::Polygon, seed, Q_MAX) {
            Ok(i) => i,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let label = format!("polygon-{m}-{seed}");
        match polygon_minimal_committee(&inst.system) {
            Ok((k, plan)) => {
                let verified = verify_committee(&inst.system, &k).map(|v| v.0).unwrap_or(false);
                let mut good = verified && k.size() == plan.p - plan.q0;
                if m <= 6 {
                    compared += 1;
                    let min = brute_min_committee(&inst.system, 2 * m + 1).min_committee_size;
                    good &= min == Some(k.size());
                    if !good {
                        failures.push(format!("{label}: size {}, p - q0 = {}, oracle {min:?}, verified {verified}", k.size(), plan.p - plan.q0));
                    }
                } else if !good {
                    failures.push(format!("{label}: size {}, p - q0 = {}, verified {verified}", k.size(), plan.p - plan.q0));
                }
                pool.committees.push((label.clone(), inst.system.clone(), k));
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
        pool.systems.push((label, inst.system));
    }
    let (fast, time) = within(t, SUITE_LIMIT);
    let head = format!("{} instances, {compared} compared with the oracle, {} failures; {time}", POLYGON_INSTANCES, failures.len());
    Outcome::new(failures.is_empty() && fast, with_failures(head, &failures))
}

fn criterion5(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut found = 0;
    for seed in 0..THREE_INSTANCES {
        let m = 3 + (seed % 5) as usize;
        let inst = match gen_random(m, Profile::WithCommittee, seed, Q_MAX) {
            Ok(i) => i,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let label = format!("with-committee-{m}-{seed}");
        let sys = &inst.system;
        let three = match three_committee(sys) {
            Ok((k, _)) => k,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let criterion = three_committee_criterion(sys).holds;
        let oracle = brute_min_committee(sys, Q_MAX).min_committee_size.is_some_and(|q| q <= 3);
        let verified = three.as_ref().is_none_or(|k| k.size() == 3 && verify_committee(sys, k).map(|v| v.0).unwrap_or(false));
        if three.is_some() != criterion || criterion != oracle || !verified {
            failures.push(format!("{label}: search {}, criterion {criterion}, oracle <= 3 {oracle}, verified {verified}", three.is_some()));
        }
        if let Some(k) = three {
            found += 1;
            pool.committees.push((label.clone(), sys.clone(), k));
        }
        pool.systems.push((label, inst.system));
    }
    let (fast, time) = within(t, SUITE_LIMIT);
    let head = format!("{THREE_INSTANCES} instances, {found} with three members, {} failures; {time}", failures.len());
    Outcome::new(failures.is_empty() && fast, with_failures(head, &failures))
}

fn small_rat(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=4))
}

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    Point::new(small_rat(rng, 12), small_rat(rng, 12))
}

/// A point off every border and away from `avoid`.
fn random_origin(rng: &mut ChaCha8Rng, sys: &System, avoid: &[Point]) -> Point {
    loop {
        let z = random_point(rng);
        if sys.ineqs().iter().all(|h| !h.slack(&z).is_zero()) && !avoid.contains(&z) {
            return z;
        }
    }
}

fn criterion6(pool: &Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut triples = 0;
    while triples < BRIDGE_TRIPLES {
        let m = rng.gen_range(1..=8);
        let hs: Vec<HalfPlane> = (0..m)
            .map(|_| {
                let c = Point::new(small_rat(&mut rng, 6), small_rat(&mut rng, 6));
                HalfPlane::new(c, small_rat(&mut rng, 8))
            })
            .collect();
        let Ok(sys) = System::new(hs) else { continue };
        let x0 = random_point(&mut rng);
        let z = random_origin(&mut rng, &sys, std::slice::from_ref(&x0));
        triples += 1;
        let direct = check_solution(&sys, &x0);
        match check_solution_polar(&sys, &x0, &z) {
            Ok(polar) if polar == direct => {}
            other => failures.push(format!("triple {triples}: direct {direct}, polar {other:?}")),
        }
    }
    let mut checked = 0;
    for (label, sys, k) in &pool.committees {
        let members: Vec<Point> = k.members().iter().map(|(p, _)| p.clone()).collect();
        let direct = verify_committee(sys, k).map(|v| v.0).unwrap_or(false);
        for _ in 0..3 {
            let z = random_origin(&mut rng, sys, &members);
            let polar = point_system_of(sys, &z)
                .and_then(|ps| committee_to_halfplanes(k, &z).and_then(|hk| verify_point_committee(&ps, &hk)))
                .map(|v| v.is_committee);
            checked += 1;
            if polar != Ok(direct) || !direct {
                failures.push(format!("{label} at {z}: direct {direct}, polar {polar:?}"));
            }
        }
    }
    let head = format!("{BRIDGE_TRIPLES} solution triples, {checked} committee checks over {} committees, {} failures", pool.committees.len(), failures.len());
    Outcome::new(failures.is_empty() && !pool.committees.is_empty(), with_failures(head, &failures))
}

fn homogeneous(sys: &System) -> Option<System> {
    System::new(sys.ineqs().iter().map(|h| HalfPlane::new(h.c.clone(), Rational::from_integer(0.into()))).collect()).ok()
}

fn criterion7(pool: &Pool) -> Outcome {
    let mut failures = Vec::new();
    let mut bounded = 0;
    let mut counted = 0;
    for (label, sys) in &pool.systems {
        if sys.is_consistent() {
            continue;
        }
        let marked = match all_marked_mcs(sys) {
            Ok(v) => v.len(),
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        counted += 1;
        if marked < 3 {
            failures.push(format!("{label}: only {marked} marked"));
        }
        let has_h = homogeneous(sys).is_some_and(|h| brute_min_committee(&h, 2 * sys.len() + 1).min_committee_size.is_some());
        if has_h {
            bounded += 1;
            let min = brute_min_committee(sys, 2 * sys.len() + 1).min_committee_size;
            if min.is_none_or(|q| marked > q) {
                failures.push(format!("{label}: {marked} marked, oracle minimum {min:?}"));
            }
        }
    }
    let head = format!("{counted} systems, upper bound checked on {bounded}, {} failures", failures.len());
    Outcome::new(failures.is_empty() && bounded > 0, with_failures(head, &failures))
}

fn criterion8(pool: &Pool) -> Outcome {
    let mut failures = Vec::new();
    let mut n = 0;
    for (label, sys) in pool.systems.iter().filter(|(l, _)| l.starts_with("with-committee")) {
        n += 1;
        let marked = match all_marked_mcs(sys) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let emitted: BTreeSet<(usize, usize)> = marked.iter().map(|t| t.pair).collect();
        let mut predicate = BTreeSet::new();
        for i in 0..sys.len() {
            for j in i + 1..sys.len() {
                if determining_pair_check(sys, i, j).unwrap_or(false) {
                    predicate.insert((i, j));
                }
            }
        }
        if emitted != predicate {
            failures.push(format!("{label}: emitted {emitted:?}, predicate {predicate:?}"));
        }
        let cells = arrangement_cells(sys);
        let mcs = brute_mcs(sys);
        for t in &marked {
            let (a, b) = t.pair;
            let together: Vec<usize> = (0..sys.len())
                .filter(|&j| cells.iter().any(|c| [a, b, j].iter().all(|&i| c.satisfied().contains(&i))))
                .collect();
            if together != t.members || !mcs.contains(&t.members) {
                failures.push(format!("{label}: pair {:?} members {:?}, cells give {together:?}", t.pair, t.members));
            }
        }
    }
    let head = format!("{n} systems, {} failures", failures.len());
    Outcome::new(failures.is_empty() && n > 0, with_failures(head, &failures))
}

/// Reference points tried in order; the first off every border is used.
fn build_origin(sys: &System) -> Point {
    let candidates = [Point::origin(), Point::new(rat(1, 3), rat(1, 7)), Point::new(rat(-2, 5), rat(3, 11)), Point::new(rat(5, 13), rat(-7, 17))];
    candidates.into_iter().find(|z| sys.ineqs().iter().all(|h| !h.slack(z).is_zero())).expect("some candidate avoids every border")
}

fn criterion9(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut hypotheses = 0;
    let mut guard_hits = 0;
    for seed in 0..BUILD_INSTANCES {
        let seed = 10_000 + seed;
        let m = 3 + (seed % 5) as usize;
        let inst = match gen_random(m, Profile::WithCommittee, seed, Q_MAX) {
            Ok(i) => i,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let label = format!("build-{m}-{seed}");
        let Ok(gps) = GeneralPositionSystem::new(inst.system.clone()) else {
            failures.push(format!("{label}: not in general position"));
            continue;
        };
        let z = build_origin(&inst.system);
        match build_committee(&gps, &z) {
            Ok((k, _)) => {
                let verified = verify_committee(&inst.system, &k).map(|v| v.0).unwrap_or(false);
                if !verified {
                    failures.push(format!("{label}: committee fails verification"));
                }
                pool.committees.push((label.clone(), inst.system.clone(), k));
            }
            Err(Error::NoCommitteeDetected { .. }) => {
                guard_hits += 1;
                failures.push(format!("{label}: guard triggered at {z}"));
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
        let violated: Vec<usize> = (0..m).filter(|&j| !inst.system.get(j).contains(&z)).collect();
        if three_committee(&inst.system).is_ok_and(|(k, _)| k.is_some()) && !inst.system.subset_consistent(&violated) {
            hypotheses += 1;
        }
        match prop43_check(&gps, &z) {
            Ok(true) => {}
            other => failures.push(format!("{label}: three-member bound {other:?}")),
        }
        pool.systems.push((label, inst.system));
    }
    let (fast, time) = within(t, SUITE_LIMIT);
    let head = format!(
        "{BUILD_INSTANCES} instances, {guard_hits} guard hits, three-member bound hypotheses met on {hypotheses}, {} failures; {time}",
        failures.len()
    );
    Outcome::new(failures.is_empty() && fast, with_failures(head, &failures))
}

fn criterion10(pool: &Pool) -> Outcome {
    let mut failures = Vec::new();
    let mut n = 0;
    for (label, sys) in &pool.systems {
        if GeneralPositionSystem::new(sys.clone()).is_err() {
            continue;
        }
        n += 1;
        let m = sys.len();
        let cells = arrangement_cells(sys).len();
        if cells != 1 + m + m * (m - 1) / 2 {
            failures.push(format!("{label}: {cells} cells for m = {m}"));
        }
    }
    let head = format!("{n} general-position systems, {} failures", failures.len());
    Outcome::new(failures.is_empty() && n > 0, with_failures(head, &failures))
}

fn with_failures(head: String, failures: &[String]) -> String {
    let mut s = head;
    for f in failures.iter().take(5) {
        s.push_str("\n      ");
        s.push_str(f);
    }
    if failures.len() > 5 {
        s.push_str(&format!("\n      ... and {} more", failures.len() - 5));
    }
    s
}

fn main() -> ExitCode {
    let mut pool = Pool::default();
    // Criterion 9 runs before 6 so its committees join the polar check.
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "T1 three-member committee", criterion1(&mut pool)),
        (2, "regular q-gon", criterion2(&mut pool)),
        (3, "three marked MCSs with growing minimum", criterion3(&mut pool)),
        (4, "polygon construction is minimal", criterion4(&mut pool)),
        (5, "three-member search matches criterion and oracle", criterion5(&mut pool)),
        (9, "general construction", criterion9(&mut pool)),
    ];
    results.push((6, "polar bridge", criterion6(&pool)));
    results.push((7, "marked MCS count bounds", criterion7(&pool)));
    results.push((8, "determining pairs", criterion8(&pool)));
    results.push((10, "cell count in general position", criterion10(&pool)));
    results.sort_by_key(|r| r.0);
    for (n, name, o) in &results {
        println!("criterion {n:>2} [{}] {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.2.ok).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
