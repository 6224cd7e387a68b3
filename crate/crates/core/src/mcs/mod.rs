//! Maximal consistent subsystems through the border-line sweep.
//!
//! The sweep starts on the border of one half-plane, walks along a ray,
//! and repeatedly jumps to the half-plane that cuts the walked ray the
//! latest, choosing the narrowest cone among those that tie. It stops once
//! two consecutive vertices coincide. The last two half-planes form the
//! determining pair of a marked MCS, and a point just inside their cone (a
//! [`PerturbedPoint`]) solves it.

mod extend;
mod homogeneous;

pub use extend::{extend_to_mcs, solve_consistent, McsSet, Witness};
pub use homogeneous::{homogeneous_mcs_enumeration, HomogeneousMcs};

use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{halfplane_cap_line, line_intersect, normal_rank, Direction, HalfPlane, LineRelation, LineSet, PerturbedPoint, Point, Sign};
use crate::polar::System;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ray {
    pub vertex: Point,
    pub dir: Direction,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedMcs {
    /// Sorted indices of the subsystem.
    pub members: Vec<usize>,
    /// Determining pair, smaller index first.
    pub pair: (usize, usize),
    pub witness: PerturbedPoint,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProcedureTrace {
    /// `D0 .. D_k0` as inequality indices.
    pub halfplanes: Vec<usize>,
    /// `h1 .. h_k0`.
    pub vertices: Vec<Point>,
    /// `r0 .. r_{k0-1}`.
    pub rays: Vec<Ray>,
    pub k0: usize,
}

impl ProcedureTrace {
    /// The determining pair in sweep order `(D_{k0-1}, D_k0)`.
    pub fn last_pair(&self) -> (usize, usize) {
        let n = self.halfplanes.len();
        (self.halfplanes[n - 2], self.halfplanes[n - 1])
    }
}

/// Direction along the border of `on` that points into `into`.
pub(crate) fn edge_into(on: &HalfPlane, into: &HalfPlane) -> Point {
    let d = on.c.rot90();
    if into.c.dot(&d).is_negative() {
        -d
    } else {
        d
    }
}

fn meet(a: &HalfPlane, b: &HalfPlane) -> Option<Point> {
    match line_intersect(&a.border(), &b.border()) {
        LineRelation::Point(p) => Some(p),
        _ => None,
    }
}

/// One sweep over `hps[active]`, starting on the border of `hps[start]` in
/// direction `dir`. Returns the trace and the perturbed witness.
pub(crate) fn sweep(hps: &[HalfPlane], active: &[usize], start: usize, dir: &Direction) -> Result<(ProcedureTrace, PerturbedPoint)> {
    if !hps[start].c.dot(dir.vector()).is_zero() {
        return Err(Error::Degenerate(format!("ray direction {dir} is not along border {}", start + 1)));
    }
    let mut cur = start;
    let mut ray_dir = dir.vector().clone();
    // The reported r0 starts at the extreme crossing behind the walk.
    let behind = active
        .iter()
        .filter(|&&k| k != start)
        .filter_map(|&k| meet(&hps[start], &hps[k]))
        .min_by(|p, q| p.dot(&ray_dir).cmp(&q.dot(&ray_dir)))
        .ok_or(Error::RankDeficient)?;
    let mut trace = ProcedureTrace {
        halfplanes: alloc::vec![start],
        vertices: Vec::new(),
        rays: alloc::vec![Ray { vertex: behind, dir: dir.clone() }],
        k0: 0,
    };
    for _ in 0..=active.len() + 1 {
        // Half-planes cutting the current ray in a sub-ray: non-parallel and
        // opening towards `ray_dir`. Parallel ones contain the ray or miss it.
        let mut best: Option<(Point, Vec<usize>)> = None;
        for &k in active {
            if k == cur || !hps[k].c.dot(&ray_dir).is_positive() {
                continue;
            }
            let Some(v) = meet(&hps[cur], &hps[k]) else { continue };
            match &mut best {
                None => best = Some((v, alloc::vec![k])),
                Some((bv, ks)) => {
                    let (s, bs) = (v.dot(&ray_dir), bv.dot(&ray_dir));
                    if s > bs {
                        best = Some((v, alloc::vec![k]));
                    } else if s == bs {
                        ks.push(k);
                    }
                }
            }
        }
        let Some((vertex, ties)) = best else {
            return Err(Error::Degenerate(format!("no half-plane opens along the ray on border {}", cur + 1)));
        };
        // Narrowest cone at the vertex: the winner's edge must lie inside
        // every other tied half-plane; ties are nested, so one pass suffices.
        let mut win = ties[0];
        let mut w = edge_into(&hps[win], &hps[cur]);
        for &k in &ties[1..] {
            if hps[k].c.dot(&w).is_negative() {
                win = k;
                w = edge_into(&hps[k], &hps[cur]);
            }
        }
        let repeat = trace.vertices.last() == Some(&vertex);
        trace.halfplanes.push(win);
        trace.vertices.push(vertex.clone());
        if repeat {
            trace.k0 = trace.vertices.len();
            let dir = Direction::new(&ray_dir + &w).expect("edges of a cone are not opposite");
            return Ok((trace, PerturbedPoint::new(vertex, dir)));
        }
        trace.rays.push(Ray { vertex: vertex.clone(), dir: Direction::new(w.clone()).expect("nonzero") });
        cur = win;
        ray_dir = w;
    }
    Err(Error::Internal(format!("sweep from border {} did not settle", start + 1)))
}

fn check_preconditions(sys: &System) -> Result<()> {
    if normal_rank(sys.ineqs().iter().map(|h| &h.c)) < 2 {
        return Err(Error::RankDeficient);
    }
    if let Some((i, j)) = sys.inconsistent_pair() {
        return Err(Error::PairwiseInconsistent(i, j));
    }
    if sys.is_consistent() {
        return Err(Error::ConsistentSystem);
    }
    Ok(())
}

/// The admissible starting rays on the border of `start`: both directions
/// from the two extreme crossings, or the single lexicographically larger
/// direction when all crossings coincide.
pub fn canonical_rays(sys: &System, start: usize) -> Result<Vec<Ray>> {
    if start >= sys.len() {
        return Err(Error::IndexOutOfRange(start));
    }
    let hs = sys.ineqs();
    let d = hs[start].c.rot90();
    let pts: Vec<Point> = (0..hs.len()).filter(|&k| k != start).filter_map(|k| meet(&hs[start], &hs[k])).collect();
    let lo = pts.iter().min_by(|p, q| p.dot(&d).cmp(&q.dot(&d))).ok_or(Error::RankDeficient)?;
    let hi = pts.iter().max_by(|p, q| p.dot(&d).cmp(&q.dot(&d))).expect("nonempty");
    let fwd = Direction::new(d.clone()).expect("nonzero");
    let back = fwd.reversed();
    if lo == hi {
        let pick = if (&d.x, &d.y) > (&back.vector().x, &back.vector().y) { fwd } else { back };
        return Ok(alloc::vec![Ray { vertex: lo.clone(), dir: pick }]);
    }
    Ok(alloc::vec![Ray { vertex: lo.clone(), dir: fwd }, Ray { vertex: hi.clone(), dir: back }])
}

/// Sweep from `start` along `ray` and report the marked MCS it lands on.
pub fn find_marked_mcs(sys: &System, start: usize, ray: &Direction) -> Result<(MarkedMcs, ProcedureTrace)> {
    if start >= sys.len() {
        return Err(Error::IndexOutOfRange(start));
    }
    check_preconditions(sys)?;
    marked_from(sys, start, ray)
}

fn marked_from(sys: &System, start: usize, ray: &Direction) -> Result<(MarkedMcs, ProcedureTrace)> {
    let all: Vec<usize> = (0..sys.len()).collect();
    let (trace, witness) = sweep(sys.ineqs(), &all, start, ray)?;
    let (a, b) = trace.last_pair();
    let members: Vec<usize> = (0..sys.len()).filter(|&j| sys.subset_consistent(&[a, b, j])).collect();
    for (j, h) in sys.ineqs().iter().enumerate() {
        let inside = match h.side_of_perturbed(&witness) {
            Sign::Inside => true,
            Sign::Outside => false,
            Sign::Boundary => {
                return Err(Error::Degenerate(format!("witness {witness} sits on border {}", j + 1)));
            }
        };
        if inside != members.contains(&j) {
            return Err(Error::Internal(format!(
                "witness {witness} disagrees with pair ({}, {}) on inequality {}",
                a + 1,
                b + 1,
                j + 1
            )));
        }
    }
    let pair = if a < b { (a, b) } else { (b, a) };
    Ok((MarkedMcs { members, pair, witness }, trace))
}

/// Every marked MCS, found by sweeping both ways along every border.
/// Sorted by index set; one entry per index set.
pub fn all_marked_mcs(sys: &System) -> Result<Vec<MarkedMcs>> {
    check_preconditions(sys)?;
    let mut out: Vec<MarkedMcs> = Vec::new();
    for start in 0..sys.len() {
        let d = Direction::new(sys.get(start).c.rot90()).expect("nonzero");
        for dir in [d.clone(), d.reversed()] {
            let (m, _) = marked_from(sys, start, &dir)?;
            match out.iter_mut().find(|o| o.members == m.members) {
                Some(o) if m.pair < o.pair => *o = m,
                Some(_) => {}
                None => out.push(m),
            }
        }
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// `D_a ∩ l_on` equals the intersection of `D ∩ l_on` over every `D` for
/// which `D ∩ D_a ∩ l_on` is a ray.
fn ray_is_minimal(hs: &[HalfPlane], on: usize, a: usize) -> bool {
    let l = hs[on].border();
    let target = halfplane_cap_line(&hs[a], &l);
    let mut acc = LineSet::FullLine;
    for d in hs {
        let cap = halfplane_cap_line(d, &l);
        if cap.intersect(&target, &l).is_ray() {
            acc = acc.intersect(&cap, &l);
        }
    }
    acc.same_set(&target, &l)
}

/// Among half-planes through `h` whose ray on the border of `on` equals the
/// one opening along `u`, the cone with edge `w` is contained in all.
fn cone_is_minimal(hs: &[HalfPlane], on: usize, h: &Point, u: &Point, w: &Point) -> bool {
    hs.iter().enumerate().all(|(k, d)| {
        if k == on || !d.c.dot(u).is_positive() || !d.slack(h).is_zero() {
            return true;
        }
        !d.c.dot(w).is_negative()
    })
}

/// Whether inequalities `i` and `j` form the determining pair of some
/// marked MCS, decided from the ray and cone conditions at `l_i ∩ l_j`.
pub fn determining_pair_check(sys: &System, i: usize, j: usize) -> Result<bool> {
    if i == j {
        return Err(Error::SameIndex);
    }
    if i >= sys.len() || j >= sys.len() {
        return Err(Error::IndexOutOfRange(i.max(j)));
    }
    let hs = sys.ineqs();
    let h = meet(&hs[i], &hs[j]).ok_or(Error::ParallelBorders(i, j))?;
    // u_i runs along l_j into D_i, u_j along l_i into D_j.
    let ui = edge_into(&hs[j], &hs[i]);
    let uj = edge_into(&hs[i], &hs[j]);
    Ok(ray_is_minimal(hs, j, i)
        && ray_is_minimal(hs, i, j)
        && cone_is_minimal(hs, j, &h, &ui, &uj)
        && cone_is_minimal(hs, i, &h, &uj, &ui))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p5, t1};
    use alloc::vec;

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(Point::from_ints(x, y)).unwrap()
    }

    #[test]
    fn t1_from_first_border() {
        let sys = t1();
        let (up, tr) = find_marked_mcs(&sys, 0, &dir(0, 1)).unwrap();
        let (down, _) = find_marked_mcs(&sys, 0, &dir(0, -1)).unwrap();
        let mut got = vec![(up.members.clone(), up.witness.vertex.clone()), (down.members.clone(), down.witness.vertex.clone())];
        got.sort();
        assert_eq!(got, vec![(vec![0, 1], Point::from_ints(1, 2)), (vec![0, 2], Point::from_ints(1, -2))]);
        assert!(tr.k0 >= 2);
        assert_eq!(tr.vertices[tr.k0 - 1], tr.vertices[tr.k0 - 2]);
    }

    #[test]
    fn t1_all_marked() {
        let all = all_marked_mcs(&t1()).unwrap();
        let sets: Vec<Vec<usize>> = all.iter().map(|m| m.members.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        for m in &all {
            assert!(determining_pair_check(&t1(), m.pair.0, m.pair.1).unwrap());
        }
    }

    #[test]
    fn p5_marked_are_adjacent_triples() {
        let sys = p5();
        let all = all_marked_mcs(&sys).unwrap();
        assert_eq!(all.len(), 5);
        for m in &all {
            assert_eq!(m.members.len(), 3);
            let (a, b) = m.pair;
            // Determining pair is the outer two of a cyclic run of three.
            assert!((b - a) == 2 || (a + 5 - b) == 2, "{:?}", m);
        }
        assert!(!determining_pair_check(&sys, 0, 1).unwrap());
        assert!(determining_pair_check(&sys, 0, 2).unwrap());
    }

    #[test]
    fn preconditions() {
        let sys = System::new(vec![HalfPlane::from_ints(1, 0, 1), HalfPlane::from_ints(0, 1, 1)]).unwrap();
        assert_eq!(find_marked_mcs(&sys, 0, &dir(0, 1)).unwrap_err(), Error::ConsistentSystem);
        let par = System::new(vec![HalfPlane::from_ints(1, 0, 1), HalfPlane::from_ints(-1, 0, 0)]).unwrap();
        assert_eq!(all_marked_mcs(&par).unwrap_err(), Error::RankDeficient);
        assert_eq!(determining_pair_check(&t1(), 1, 1), Err(Error::SameIndex));
        assert_eq!(determining_pair_check(&par, 0, 1), Err(Error::ParallelBorders(0, 1)));
    }

    #[test]
    fn canonical_rays_on_t1() {
        let rays = canonical_rays(&t1(), 0).unwrap();
        assert_eq!(rays.len(), 2);
        assert_eq!(rays[0].vertex, Point::from_ints(1, -2));
        assert_eq!(rays[1].vertex, Point::from_ints(1, 2));
    }
}
