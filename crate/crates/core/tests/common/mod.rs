//! Random small systems for the property suites.
#![allow(dead_code)]

use committee_core::builder::GeneralPositionSystem;
use committee_core::geom::{rat, HalfPlane, Point, Rational};
use committee_core::System;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::Config;

pub fn config(cases: u32) -> Config {
    Config { cases, max_global_rejects: 200_000, ..Config::default() }
}

pub fn rational(span: i64) -> impl Strategy<Value = Rational> {
    (-span..=span, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn point(span: i64) -> impl Strategy<Value = Point> {
    (rational(span), rational(span)).prop_map(|(x, y)| Point::new(x, y))
}

pub fn halfplane() -> impl Strategy<Value = HalfPlane> {
    (-5i64..=5, -5i64..=5, rational(8))
        .prop_filter("zero normal", |(a, b, _)| *a != 0 || *b != 0)
        .prop_map(|(a, b, r)| HalfPlane::new(Point::from_ints(a, b), r))
}

pub fn system(lo: usize, hi: usize) -> impl Strategy<Value = System> {
    vec(halfplane(), lo..=hi).prop_filter_map("identical inequalities", |hs| System::new(hs).ok())
}

/// Inconsistent, every pair consistent, normals of rank two.
pub fn engine_system(lo: usize, hi: usize) -> impl Strategy<Value = System> {
    system(lo, hi).prop_filter("not an engine input", |s| !s.is_consistent() && s.inconsistent_pair().is_none())
}

pub fn gp_engine_system(lo: usize, hi: usize) -> impl Strategy<Value = GeneralPositionSystem> {
    engine_system(lo, hi).prop_filter_map("not in general position", |s| GeneralPositionSystem::new(s).ok())
}

/// A point off every border of `sys`, searched on a fixed grid from `seed`.
pub fn off_borders(sys: &System, seed: &Point) -> Point {
    let mut k = 0i64;
    loop {
        let z = Point::new(&seed.x + rat(k, 7), &seed.y + rat(k * k, 13));
        if sys.ineqs().iter().all(|h| h.slack(&z) != Rational::from_integer(0.into())) {
            return z;
        }
        k += 1;
    }
}
