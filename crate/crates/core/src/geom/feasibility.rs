//! Fourier-Motzkin feasibility for mixed strict / non-strict planar constraints.
//!
//! Deliberately unrelated to the sweep-based procedure in `mcs`, so that the
//! two can check each other.

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use super::{HalfPlane, Rational};

/// `a * x + b * y  (> or >=)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub a: Rational,
    pub b: Rational,
    pub rhs: Rational,
    pub strict: bool,
}

impl From<&HalfPlane> for Constraint {
    fn from(h: &HalfPlane) -> Self {
        Constraint { a: h.c.x.clone(), b: h.c.y.clone(), rhs: h.b.clone(), strict: h.strict }
    }
}

/// Whether some point of the plane satisfies every constraint.
pub fn feasible(cons: &[Constraint]) -> bool {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut rest: Vec<(Rational, Rational, bool)> = Vec::new();
    for c in cons {
        if c.a.is_positive() {
            pos.push(c);
        } else if c.a.is_negative() {
            neg.push(c);
        } else {
            rest.push((c.b.clone(), c.rhs.clone(), c.strict));
        }
    }
    // Eliminate x: (-n.a) * P + p.a * N keeps the direction of the inequality,
    // and the result is strict when either parent is.
    for p in &pos {
        for n in &neg {
            let na = -&n.a;
            let b = &na * &p.b + &p.a * &n.b;
            let rhs = &na * &p.rhs + &p.a * &n.rhs;
            rest.push((b, rhs, p.strict || n.strict));
        }
    }
    feasible_1d(&rest)
}

/// `b * y (> | >=) rhs` for each entry.
fn feasible_1d(cons: &[(Rational, Rational, bool)]) -> bool {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for (b, rhs, strict) in cons {
        if b.is_zero() {
            let ok = if *strict { rhs.is_negative() } else { !rhs.is_positive() };
            if !ok {
                return false;
            }
            continue;
        }
        let v = rhs / b;
        if b.is_positive() {
            // y > v
            lo = Some(match lo {
                Some((l, ls)) if l > v || (l == v && ls) => (l, ls),
                Some((l, ls)) if l == v => (l, ls || *strict),
                _ => (v, *strict),
            });
        } else {
            // y < v
            hi = Some(match hi {
                Some((h, hs)) if h < v || (h == v && hs) => (h, hs),
                Some((h, hs)) if h == v => (h, hs || *strict),
                _ => (v, *strict),
            });
        }
    }
    match (lo, hi) {
        (Some((l, ls)), Some((h, hs))) => l < h || (l == h && !ls && !hs),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::HalfPlane;
    use alloc::vec;

    fn cons(hps: &[HalfPlane]) -> Vec<Constraint> {
        hps.iter().map(Constraint::from).collect()
    }

    #[test]
    fn strictness_matters_at_a_single_point() {
        // x >= 0, -x >= 0 is the line x = 0; x > 0 with -x >= 0 is empty.
        let mut a = HalfPlane::from_ints(1, 0, 0);
        let mut b = HalfPlane::from_ints(-1, 0, 0);
        a.strict = false;
        b.strict = false;
        assert!(feasible(&cons(&[a.clone(), b.clone()])));
        a.strict = true;
        assert!(!feasible(&cons(&[a, b])));
    }

    #[test]
    fn triangle_and_its_complement_pieces() {
        let t = vec![
            HalfPlane::from_ints(1, 0, 0),
            HalfPlane::from_ints(0, 1, 0),
            HalfPlane::from_ints(-1, -1, -1),
        ];
        assert!(feasible(&cons(&t)));
        let mut bad = t.clone();
        bad.push(HalfPlane::from_ints(1, 1, 1));
        assert!(!feasible(&cons(&bad)));
    }
}
