//! Instance generators: the regular q-gon pattern, the three-arc pattern
//! whose marked MCSs stay at three, and seeded random systems.
//!
//! Circle points are rational: `t -> ((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`
//! with `t` a dyadic approximation of the half-angle tangent. Floats only
//! steer placement. Every claimed property is then checked exactly, and
//! placement is refined when a check fails.

use std::f64::consts::PI;

use committee_core::builder::GeneralPositionSystem;
use committee_core::geom::{int, HalfPlane, Point, Rational};
use committee_core::mcs::all_marked_mcs;
use committee_core::oracle::{brute_mcs, brute_min_committee};
use committee_core::System;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::instance::Instance;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GenError {
    #[error("{0}")]
    BadArgument(String),
    #[error("no instance found after {0} attempts")]
    GenerationTimeout(usize),
    #[error("construction check failed: {0}")]
    CheckFailed(String),
}

pub type GenResult = Result<Instance, GenError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Profile {
    /// Small integer data in general position.
    Generic,
    /// Tangents of a circle bounding a convex polygon; inconsistent.
    Polygon,
    /// General position, inconsistent, with a committee of at most `q_max` members.
    WithCommittee,
}

/// Rational point on the unit circle near angle `theta`, on a grid of `2^-bits` in `t`.
pub fn circle_point(theta: f64, bits: u32) -> Point {
    let mut th = theta.rem_euclid(2.0 * PI);
    if th > PI {
        th -= 2.0 * PI;
    }
    // Stay away from the pole of tan(theta / 2) by reflecting through the origin.
    let flip = th.abs() > PI / 2.0;
    if flip {
        th -= PI.copysign(th);
    }
    let scale = (1u64 << bits) as f64;
    let n = ((th / 2.0).tan() * scale).round() as i64;
    let t = Rational::new(BigInt::from(n), BigInt::from(1u64 << bits));
    let p = circle_from_t(&t);
    if flip {
        -p
    } else {
        p
    }
}

pub fn circle_from_t(t: &Rational) -> Point {
    let t2 = t * t;
    let den = Rational::one() + &t2;
    Point::new((Rational::one() - &t2) / &den, (t * int(2)) / &den)
}

fn rotation(rng: &mut ChaCha8Rng, span: f64) -> f64 {
    rng.gen_range(0.0..span)
}

fn unit_system(normals: &[Point]) -> System {
    System::new(normals.iter().map(|c| HalfPlane::new(c.clone(), int(1))).collect()).expect("distinct normals")
}

/// The `q` cyclic runs of `(q + 1) / 2` consecutive indices.
pub fn qgon_runs(q: usize) -> Vec<Vec<usize>> {
    let mut runs: Vec<Vec<usize>> = (0..q)
        .map(|k| {
            let mut r: Vec<usize> = (0..q.div_ceil(2)).map(|i| (k + i) % q).collect();
            r.sort_unstable();
            r
        })
        .collect();
    runs.sort();
    runs
}

/// `(c, h) > 1` over `q` rational unit normals near a regular q-gon.
pub fn gen_regular_qgon(q: usize, seed: u64) -> GenResult {
    if q < 3 || q.is_multiple_of(2) {
        return Err(GenError::BadArgument(format!("q must be odd and at least 3, got {q}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase = rotation(&mut rng, 2.0 * PI / q as f64);
    let want = qgon_runs(q);
    for bits in (4..=40).step_by(4) {
        let normals: Vec<Point> = (0..q).map(|k| circle_point(phase + 2.0 * PI * k as f64 / q as f64, bits)).collect();
        let Ok(sys) = System::new(normals.iter().map(|c| HalfPlane::new(c.clone(), int(1))).collect()) else { continue };
        if brute_mcs(&sys) == want {
            let meta = json!({
                "generator": "qgon",
                "q": q,
                "seed": seed,
                "grid_bits": bits,
                "note": "rational unit normals; MCSs certified to be the q cyclic runs of (q+1)/2",
            });
            let mut inst = Instance::new(unit_system(&normals)).named(format!("qgon-{q}"));
            inst.metadata = meta;
            return Ok(inst);
        }
    }
    Err(GenError::CheckFailed(format!("q = {q}: no grid reproduced the regular MCS pattern")))
}

/// Which of the three open arcs `(0, pi/3)`, `(2pi/3, pi)`, `(4pi/3, 5pi/3)` holds `p`.
pub fn arc_of(p: &Point) -> Option<usize> {
    let steep = &p.y * &p.y > int(3) * &p.x * &p.x;
    let shallow = &p.y * &p.y < int(3) * &p.x * &p.x;
    if p.y.is_positive() && p.x.is_positive() && shallow {
        Some(0)
    } else if p.y.is_positive() && p.x.is_negative() && shallow {
        Some(1)
    } else if p.y.is_negative() && steep {
        Some(2)
    } else {
        None
    }
}

/// Sizes of the three black groups for odd `q`.
pub fn example2_sizes(q: usize) -> [usize; 3] {
    let p = (q + 3) / 6;
    let r = ((q + 3) / 2) % 3;
    let mut s = [p; 3];
    for x in s.iter_mut().take(r) {
        *x += 1;
    }
    s
}

/// `(a, h) > 1` for black circle points on three separated arcs and
/// `(b, h) < 1` for one red point between each pair of neighbors.
pub fn gen_example2(q: usize, seed: u64) -> GenResult {
    if q < 5 || q.is_multiple_of(2) {
        return Err(GenError::BadArgument(format!("q must be odd and at least 5, got {q}")));
    }
    let sizes = example2_sizes(q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];
    let arc = PI / 3.0;
    for bits in (6..=40).step_by(2) {
        let mut blacks: Vec<Point> = Vec::new();
        let mut reds: Vec<Point> = Vec::new();
        let mut ok = true;
        for (i, &n) in sizes.iter().enumerate() {
            let gap = arc / (n + 1) as f64;
            let ang: Vec<f64> = (0..n).map(|k| starts[i] + gap * (k as f64 + 1.0 + rng.gen_range(-0.25..0.25))).collect();
            let pts: Vec<Point> = ang.iter().map(|&a| circle_point(a, bits)).collect();
            for w in 0..n.saturating_sub(1) {
                let b = circle_point((ang[w] + ang[w + 1]) / 2.0, bits);
                ok &= pts[w].cross(&b).is_positive() && b.cross(&pts[w + 1]).is_positive() && arc_of(&b) == Some(i);
                reds.push(b);
            }
            ok &= pts.iter().all(|p| arc_of(p) == Some(i));
            ok &= pts.windows(2).all(|w| w[0].cross(&w[1]).is_positive());
            blacks.extend(pts);
        }
        if !ok {
            continue;
        }
        let mut hs: Vec<HalfPlane> = blacks.iter().map(|a| HalfPlane::new(a.clone(), int(1))).collect();
        hs.extend(reds.iter().map(|b| HalfPlane::new(-b, int(-1))));
        let Ok(sys) = System::new(hs) else { continue };
        if blacks.len() != (q + 3) / 2 || reds.len() != (q - 3) / 2 {
            return Err(GenError::CheckFailed(format!("q = {q}: group sizes {} and {}", blacks.len(), reds.len())));
        }
        if q <= 7 {
            let min = brute_min_committee(&sys, q).min_committee_size;
            let marked = all_marked_mcs(&sys).map(|v| v.len()).ok();
            if min != Some(q) || marked != Some(3) {
                continue;
            }
        }
        let mut inst = Instance::new(sys).named(format!("example2-{q}"));
        inst.metadata = json!({
            "generator": "example2",
            "q": q,
            "seed": seed,
            "grid_bits": bits,
            "black": blacks.len(),
            "red": reds.len(),
            "note": "red points are rational circle points strictly between black neighbors, not exact arc midpoints",
        });
        return Ok(inst);
    }
    Err(GenError::CheckFailed(format!("q = {q}: no placement passed the checks")))
}

const ATTEMPTS: usize = 20_000;

fn random_generic(rng: &mut ChaCha8Rng, m: usize) -> Option<System> {
    let hs: Vec<HalfPlane> = (0..m)
        .map(|_| loop {
            let (a, b) = (rng.gen_range(-6i64..=6), rng.gen_range(-6i64..=6));
            if a != 0 || b != 0 {
                break HalfPlane::from_ints(a, b, rng.gen_range(-4i64..=8));
            }
        })
        .collect();
    let sys = System::new(hs).ok()?;
    GeneralPositionSystem::new(sys).ok().map(|g| g.into_system())
}

/// Normals not inside any closed half-plane through the origin.
fn surrounds_origin(normals: &[Point]) -> bool {
    normals.iter().all(|c| {
        let pos = normals.iter().any(|d| c.cross(d).is_positive());
        let neg = normals.iter().any(|d| c.cross(d).is_negative());
        pos && neg
    })
}

fn random_polygon(rng: &mut ChaCha8Rng, m: usize) -> Option<(System, Point)> {
    let mut normals: Vec<Point> = Vec::new();
    while normals.len() < m {
        let t = Rational::new(BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(rng.gen_range(1i64..=5)));
        let c = if rng.gen_bool(0.1) { -circle_from_t(&t) } else { circle_from_t(&t) };
        // Opposite tangents could be flipped onto the same normal direction.
        if !normals.contains(&c) && !normals.contains(&-&c) {
            normals.push(c);
        }
    }
    if !surrounds_origin(&normals) {
        return None;
    }
    let w = Point::from_ints(rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
    let hs: Vec<HalfPlane> = normals
        .iter()
        .map(|c| {
            // Tangent to the unit circle around w; outward or inward at random.
            let b = Rational::one() + c.dot(&w);
            if rng.gen_bool(0.5) {
                HalfPlane::new(c.clone(), b)
            } else {
                HalfPlane::new(-c, -b)
            }
        })
        .collect();
    let sys = System::new(hs).ok()?;
    let outside = sys.ineqs().iter().filter(|h| !h.contains(&w)).count();
    if outside < 2 || sys.is_consistent() || sys.inconsistent_pair().is_some() {
        return None;
    }
    Some((sys, w))
}

pub fn gen_random(m: usize, profile: Profile, seed: u64, q_max: usize) -> GenResult {
    let lo = if profile == Profile::Polygon { 3 } else { 1 };
    if m < lo {
        return Err(GenError::BadArgument(format!("m must be at least {lo}, got {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let found = match profile {
            Profile::Generic => random_generic(&mut rng, m).map(|s| (s, None)),
            Profile::Polygon => random_polygon(&mut rng, m).map(|(s, w)| (s, Some(w))),
            Profile::WithCommittee => random_generic(&mut rng, m)
                .filter(|s| !s.is_consistent() && brute_min_committee(s, q_max).min_committee_size.is_some())
                .map(|s| (s, None)),
        };
        if let Some((sys, origin)) = found {
            let name = format!("random-{}-{m}-{seed}", format!("{profile:?}").to_lowercase());
            let mut inst = Instance::new(sys).named(name);
            inst.origin = origin;
            inst.metadata = json!({ "generator": "random", "profile": format!("{profile:?}"), "m": m, "seed": seed });
            return Ok(inst);
        }
    }
    Err(GenError::GenerationTimeout(ATTEMPTS))
}
