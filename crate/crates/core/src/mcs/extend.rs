use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{edge_into, sweep};
use crate::error::{Error, Result};
use crate::geom::{int, materialize, normal_rank, Direction, HalfPlane, PerturbedPoint, Point, Rational};
use crate::polar::System;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    Point(Point),
    Perturbed(PerturbedPoint),
    /// For homogeneous systems: any positive multiple solves the set.
    Direction(Direction),
}

impl Witness {
    /// A concrete point with the witness's side pattern against `hps`.
    pub fn to_point(&self, hps: &[HalfPlane]) -> Point {
        match self {
            Witness::Point(p) => p.clone(),
            Witness::Perturbed(p) => materialize(p, hps),
            Witness::Direction(d) => d.vector().clone(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct McsSet {
    /// Sorted indices.
    pub indices: Vec<usize>,
    pub witness: Witness,
}

/// Solve a set of inequalities whose normals are all parallel, on the
/// transversal coordinate `t = (n, x)`.
fn solve_parallel(hs: &[&HalfPlane]) -> Option<Point> {
    let n = hs.first()?.c.clone();
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for h in hs {
        // c = lam * n, so (c, x) > b reads lam * t > b.
        let lam = if n.x.is_zero() { &h.c.y / &n.y } else { &h.c.x / &n.x };
        let v = &h.b / &lam;
        if lam.is_positive() {
            if lo.as_ref().is_none_or(|(l, ls)| v > *l || (v == *l && h.strict && !ls)) {
                lo = Some((v, h.strict));
            }
        } else if hi.as_ref().is_none_or(|(u, us)| v < *u || (v == *u && h.strict && !us)) {
            hi = Some((v, h.strict));
        }
    }
    let t = match (lo, hi) {
        (Some((l, ls)), Some((u, us))) => {
            if l < u {
                (l + u) / int(2)
            } else if l == u && !ls && !us {
                l
            } else {
                return None;
            }
        }
        (Some((l, _)), None) => l + Rational::one(),
        (None, Some((u, _))) => u - Rational::one(),
        (None, None) => Rational::zero(),
    };
    Some(n.scale(&(t / n.norm2())))
}

/// A solution of a consistent system obtained from one sweep.
pub fn solve_consistent(sys: &System) -> Result<Point> {
    if !sys.is_consistent() {
        return Err(Error::Inconsistent);
    }
    let hs = sys.ineqs();
    if normal_rank(hs.iter().map(|h| &h.c)) < 2 {
        let refs: Vec<&HalfPlane> = hs.iter().collect();
        return solve_parallel(&refs).ok_or_else(|| Error::Internal("parallel solve failed on a consistent system".into()));
    }
    let e = (1..hs.len()).find(|&k| !hs[0].parallel_to(&hs[k])).expect("rank two");
    let dir = Direction::new(edge_into(&hs[0], &hs[e])).expect("nonzero");
    let all: Vec<usize> = (0..hs.len()).collect();
    let (_, w) = sweep(hs, &all, 0, &dir)?;
    let p = materialize(&w, hs);
    if hs.iter().all(|h| h.contains(&p)) {
        Ok(p)
    } else {
        // Only reachable when non-strict inequalities leave no open solution set.
        Err(Error::Degenerate(format!("sweep witness {w} misses a closed constraint")))
    }
}

/// Grow the consistent subsystem `j0` (solved by `h0`) to an MCS, trying the
/// remaining inequalities in index order.
pub fn extend_to_mcs(sys: &System, j0: &[usize], h0: &Point) -> Result<McsSet> {
    let hs = sys.ineqs();
    if let Some(&bad) = j0.iter().find(|&&j| j >= hs.len()) {
        return Err(Error::IndexOutOfRange(bad));
    }
    if !j0.iter().all(|&j| hs[j].contains(h0)) {
        return Err(Error::InconsistentSeed);
    }
    let mut cur: Vec<usize> = j0.to_vec();
    cur.sort_unstable();
    cur.dedup();
    let mut witness = Witness::Point(h0.clone());
    for e in 0..hs.len() {
        if cur.contains(&e) {
            continue;
        }
        let mut cand = cur.clone();
        cand.push(e);
        cand.sort_unstable();
        let refs: Vec<&HalfPlane> = cand.iter().map(|&k| &hs[k]).collect();
        let (keep, w) = if normal_rank(refs.iter().map(|h| &h.c)) < 2 {
            match solve_parallel(&refs) {
                Some(p) => (true, Some(Witness::Point(p))),
                None => (false, None),
            }
        } else {
            let ebar = cur.iter().copied().find(|&k| !hs[k].parallel_to(&hs[e])).expect("rank two");
            let dir = Direction::new(edge_into(&hs[e], &hs[ebar])).expect("nonzero");
            match sweep(hs, &cand, e, &dir) {
                Ok((_, w)) if refs.iter().all(|h| h.contains_perturbed(&w)) => (true, Some(Witness::Perturbed(w))),
                _ => (false, None),
            }
        };
        let fm = sys.subset_consistent(&cand);
        if keep != fm && refs.iter().all(|h| h.strict) {
            return Err(Error::Internal(format!("sweep and elimination disagree on adding inequality {}", e + 1)));
        }
        if keep {
            cur = cand;
            witness = w.expect("kept with witness");
        }
    }
    Ok(McsSet { indices: cur, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p5, t1};
    use crate::geom::rat;
    use alloc::vec;

    #[test]
    fn consistent_examples() {
        let sys = System::new(vec![HalfPlane::from_ints(1, 0, 1), HalfPlane::from_ints(0, 1, 1)]).unwrap();
        let p = solve_consistent(&sys).unwrap();
        assert!(p.x > int(1) && p.y > int(1));
        let sys = System::new(vec![
            HalfPlane::from_ints(1, 0, 1),
            HalfPlane::from_ints(1, 0, 2),
            HalfPlane::from_ints(0, 1, 0),
        ])
        .unwrap();
        let p = solve_consistent(&sys).unwrap();
        assert!(p.x > int(2) && p.y > int(0));
        assert_eq!(solve_consistent(&t1()), Err(Error::Inconsistent));
    }

    #[test]
    fn parallel_fallback() {
        let sys = System::new(vec![HalfPlane::from_ints(1, 0, 1), HalfPlane::from_ints(-2, 0, -6)]).unwrap();
        let p = solve_consistent(&sys).unwrap();
        assert_eq!(p, Point::from_ints(2, 0));
    }

    #[test]
    fn extend_on_t1() {
        let m = extend_to_mcs(&t1(), &[0], &Point::from_ints(2, 0)).unwrap();
        assert!(m.indices == vec![0, 1] || m.indices == vec![0, 2]);
        let m = extend_to_mcs(&t1(), &[1, 2], &Point::from_ints(-2, 0)).unwrap();
        assert_eq!(m.indices, vec![1, 2]);
        assert_eq!(extend_to_mcs(&t1(), &[0], &Point::origin()), Err(Error::InconsistentSeed));
    }

    #[test]
    fn extend_on_p5() {
        let m = extend_to_mcs(&p5(), &[0], &Point::new(rat(3, 2), int(0))).unwrap();
        assert_eq!(m.indices.len(), 3);
        assert!(m.indices.contains(&0));
        let p = m.witness.to_point(p5().ineqs());
        assert_eq!(p5().satisfied_by(&p), m.indices);
    }
}
